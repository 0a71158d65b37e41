#include "cflab/sim.hpp"

#include <cfloat>
#include <cmath>
#include <sstream>

#include "cflab/errors.hpp"
#include "cflab/update.hpp"

namespace cflab {

void GridRange::validate() const {
    if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step)) {
        throw InvalidInputError("grid range must be finite");
    }
    if (!(step > 0.0)) throw InvalidInputError("grid step must be positive");
    if (!(min < max)) throw InvalidInputError("grid requires min < max");
}

std::vector<double> GridRange::points() const {
    validate();
    const double span = (max - min) / step;
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9));
    std::vector<double> out;
    out.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out.push_back(min + static_cast<double>(k) * step);
    return out;
}

GridRange GridRange::parse(const std::string& text) {
    std::istringstream in(text);
    std::string part;
    std::vector<double> values;
    while (std::getline(in, part, ':')) {
        std::size_t used = 0;
        try {
            values.push_back(std::stod(part, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != part.size()) {
            throw InvalidInputError("cannot parse grid component '" + part + "' in '" + text + "'");
        }
    }
    if (values.size() != 3) throw InvalidInputError("grid must be min:max:step, got '" + text + "'");
    GridRange range{values[0], values[1], values[2]};
    range.validate();
    return range;
}

void KernelSimConfig::validate() const {
    (void)LearningRate{eta};
    if (!(lambda > 0.0)) throw InvalidInputError("lambda must be positive");
    if (!(y > 0.0) || !std::isfinite(y)) throw InvalidInputError("y must be positive");
    if (!std::isfinite(x_init)) throw InvalidInputError("x_init must be finite");
    kernel.validate();
    x_curr_grid.validate();
}

void FractionalSimConfig::validate() const {
    (void)LearningRate{eta};
    if (!(b_prev > 0.0)) throw InvalidInputError("b_prev must be positive");
    if (!std::isfinite(a_prev) || !std::isfinite(a_new)) throw InvalidInputError("A values must be finite");
    b_new_grid.validate();
    if (!(b_new_grid.min > 0.0)) throw InvalidInputError("b_new grid must be strictly positive");
}

double scalar_kernel(double x, const KernelSimConfig& cfg, std::size_t* clamp_count) {
    double k = 0.0;
    switch (cfg.kernel.kind) {
        case KernelKind::gaussian: {
            const double s2 = cfg.kernel.sigma * cfg.kernel.sigma;
            k = std::exp(-(2.0 * cfg.x_init * cfg.x_init - 2.0 * x * x) / s2);
            break;
        }
        case KernelKind::polynomial:
            k = std::pow(x * x + cfg.kernel.additive_term, cfg.kernel.exponent);
            break;
        case KernelKind::linear:
            k = x * x;
            break;
    }
    if (std::isinf(k) || std::isnan(k)) {
        if (clamp_count != nullptr) ++*clamp_count;
        k = std::isnan(k) ? DBL_MAX : std::copysign(DBL_MAX, k);
    }
    return k;
}

CurveTable simulate_kernel_update(const KernelSimConfig& cfg, std::size_t* clamp_count) {
    cfg.validate();
    const LearningRate eta(cfg.eta);
    const auto alpha = [&](double v) { return cfg.y / (scalar_kernel(v, cfg, clamp_count) + cfg.lambda); };

    CurveTable table("x_upd", {"alpha_red", "alpha_green"});
    const double alpha_init = alpha(cfg.x_init);
    for (double x_curr : cfg.x_curr_grid.points()) {
        const double x_upd = std::lerp(cfg.x_init, x_curr, eta.value());
        const double red = alpha(x_upd);
        const double green = std::lerp(alpha_init, alpha(x_curr), eta.value());
        table.add_row(x_upd, {red, green});
    }
    return table;
}

CurveTable simulate_fractional(const FractionalSimConfig& cfg) {
    cfg.validate();
    const LearningRate eta(cfg.eta);
    const ScalarRatio prev{cfg.a_prev, cfg.b_prev};

    CurveTable table("b_new", {"filter_direct", "filter_fractional", "r_asef", "r_mosse"});
    for (double b_new : cfg.b_new_grid.points()) {
        const double direct = update_direct_ratio(prev.filter(), cfg.a_new, b_new, eta);
        const double fractional =
            update_fractional(prev, cfg.a_new, b_new, eta, cfg.plus_eta_variant).filter();
        const RobustnessPair r =
            robustness_closed_forms(cfg.a_new, b_new, cfg.a_prev, cfg.b_prev, eta, cfg.plus_eta_variant);
        table.add_row(b_new, {direct, fractional, r.asef, r.mosse});
    }
    return table;
}

}  // namespace cflab
