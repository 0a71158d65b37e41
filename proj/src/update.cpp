#include "cflab/update.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cflab/spectral.hpp"

namespace cflab {

namespace {

Complex lerp(Complex a, Complex b, double t) {
    return {std::lerp(a.real(), b.real(), t), std::lerp(a.imag(), b.imag(), t)};
}

void require_nonzero(double b, const char* name) {
    if (b == 0.0 || !std::isfinite(b)) {
        throw InvalidInputError(std::string("robustness: ") + name + " must be finite and nonzero");
    }
}

}  // namespace

LearningRate::LearningRate(double eta) : eta_(eta) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        std::ostringstream msg;
        msg << "learning rate must lie in (0, 1], got " << eta;
        throw InvalidInputError(msg.str());
    }
}

std::string to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::spatial: return "spatial";
        case Strategy::frequency: return "frequency";
        case Strategy::dual: return "dual";
        case Strategy::feature_first: return "feature-first";
        case Strategy::mosse_fractional: return "mosse-fractional";
        case Strategy::asef_direct: return "asef-direct";
    }
    return "unknown";
}

Strategy parse_strategy(const std::string& id) {
    for (Strategy s : all_strategies()) {
        if (to_string(s) == id) return s;
    }
    throw InvalidInputError("unknown strategy '" + id +
                            "' (expected spatial|frequency|dual|feature-first|mosse-fractional|"
                            "asef-direct)");
}

std::vector<Strategy> parse_strategy_list(const std::string& comma_separated) {
    std::vector<Strategy> out;
    std::istringstream in(comma_separated);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(parse_strategy(item));
    }
    if (out.empty()) throw InvalidInputError("strategy list is empty");
    return out;
}

const std::vector<Strategy>& all_strategies() {
    static const std::vector<Strategy> list = {Strategy::spatial,          Strategy::frequency,
                                               Strategy::dual,             Strategy::feature_first,
                                               Strategy::mosse_fractional, Strategy::asef_direct};
    return list;
}

bool is_kernel_strategy(Strategy strategy) {
    return strategy != Strategy::mosse_fractional && strategy != Strategy::asef_direct;
}

RealGrid update_spatial(const RealGrid& T_prev, const RealGrid& T_curr, LearningRate eta) {
    const double t = eta.value();
    return zip(T_prev, T_curr, [t](double a, double b) { return std::lerp(a, b, t); },
               "update_spatial");
}

Spectrum update_frequency(const Spectrum& X_prev, const Spectrum& X_curr, LearningRate eta) {
    const double t = eta.value();
    return zip(X_prev, X_curr, [t](Complex a, Complex b) { return lerp(a, b, t); },
               "update_frequency");
}

DualModel update_dual(const DualModel& m, const Spectrum& Mhat_curr, const Spectrum& alpha_curr,
                      LearningRate eta) {
    require_same_shape(m.alpha_hat, m.Mhat, "update_dual");
    return DualModel{update_frequency(m.alpha_hat, alpha_curr, eta),
                     update_frequency(m.Mhat, Mhat_curr, eta)};
}

double ratio_stabilizer(const Spectrum& B) {
    double acc = 0.0;
    for (Complex v : B) acc += std::abs(v);
    return 1e-5 * acc / static_cast<double>(B.size()) + 1e-12;
}

Spectrum realize_ratio(const Spectrum& A, const Spectrum& B) {
    const double eps = ratio_stabilizer(B);
    return zip(A, B, [eps](Complex a, Complex b) { return a / (b + eps); }, "realize_ratio");
}

RatioModel make_ratio_model(Spectrum A, Spectrum B, RatioMode mode) {
    require_same_shape(A, B, "make_ratio_model");
    Spectrum filter = realize_ratio(A, B);
    return RatioModel{std::move(A), std::move(B), mode, std::move(filter)};
}

RatioModel update_fractional(const RatioModel& m, const Spectrum& A_new, const Spectrum& B_new,
                             LearningRate eta, bool plus_eta) {
    if (m.mode != RatioMode::fractional) {
        throw InvalidInputError("update_fractional: model is not in fractional mode");
    }
    require_same_shape(m.A, A_new, "update_fractional");
    require_same_shape(m.B, B_new, "update_fractional");
    RatioModel out;
    out.mode = RatioMode::fractional;
    if (plus_eta) {
        const double t = eta.value();
        const auto blend = [t](Complex prev, Complex curr) { return t * curr + (1.0 + t) * prev; };
        out.A = zip(m.A, A_new, blend);
        out.B = zip(m.B, B_new, blend);
    } else {
        out.A = update_frequency(m.A, A_new, eta);
        out.B = update_frequency(m.B, B_new, eta);
    }
    out.filter = realize_ratio(out.A, out.B);
    return out;
}

Spectrum update_direct_ratio(const Spectrum& H_prev, const Spectrum& A_new, const Spectrum& B_new,
                             LearningRate eta) {
    require_same_shape(H_prev, A_new, "update_direct_ratio");
    return update_frequency(H_prev, realize_ratio(A_new, B_new), eta);
}

ChangeRate filter_change_rate(const Spectrum& H_prev, const Spectrum& H_curr) {
    require_same_shape(H_prev, H_curr, "filter_change_rate");
    ChangeRate rate;
    for (std::size_t k = 0; k < H_prev.size(); ++k) {
        const double d = std::abs(H_curr[k] - H_prev[k]);
        rate.mean += d;
        rate.max = std::max(rate.max, d);
    }
    rate.mean /= static_cast<double>(H_prev.size());
    return rate;
}

ScalarRatio update_fractional(ScalarRatio prev, double a_new, double b_new, LearningRate eta,
                              bool plus_eta) {
    const double t = eta.value();
    if (plus_eta) return {t * a_new + (1.0 + t) * prev.a, t * b_new + (1.0 + t) * prev.b};
    return {std::lerp(prev.a, a_new, t), std::lerp(prev.b, b_new, t)};
}

double update_direct_ratio(double h_prev, double a_new, double b_new, LearningRate eta) {
    return std::lerp(h_prev, a_new / b_new, eta.value());
}

double robustness(double a_i, double b_i, double a_prev, double b_prev) {
    require_nonzero(b_i, "B_i");
    require_nonzero(b_prev, "B_prev");
    const double change = std::abs(a_i / b_i - a_prev / b_prev);
    if (change == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / change;
}

RobustnessPair robustness_closed_forms(double a_new, double b_new, double a_prev, double b_prev,
                                       LearningRate eta, bool plus_eta) {
    if (!(b_new > 0.0) || !(b_prev > 0.0)) {
        throw InvalidInputError("robustness_closed_forms: B_new and B_prev must be positive");
    }
    const double t = eta.value();
    const double cross = a_new * b_prev - a_prev * b_new;
    if (cross == 0.0) {
        const double inf = std::numeric_limits<double>::infinity();
        return {inf, inf};
    }
    const double denom = std::abs(t * cross);
    const double b_blend = plus_eta ? t * b_new + (1.0 + t) * b_prev : t * b_new + (1.0 - t) * b_prev;
    return {b_new * b_prev / denom, b_blend * b_prev / denom};
}

}  // namespace cflab
