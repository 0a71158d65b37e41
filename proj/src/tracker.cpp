#include "cflab/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cflab/spectral.hpp"

namespace cflab {

namespace {

std::size_t even_cells(double extent) {
    const auto n = static_cast<std::size_t>(std::lround(extent / 2.0)) * 2;
    return std::max<std::size_t>(n, 2);
}

double sample_bilinear(const RealGrid& img, double row, double col) {
    const auto clamp_index = [](long v, std::size_t n) {
        return static_cast<std::size_t>(std::clamp<long>(v, 0, static_cast<long>(n) - 1));
    };
    const double r0f = std::floor(row);
    const double c0f = std::floor(col);
    const double fr = row - r0f;
    const double fc = col - c0f;
    const auto r0 = static_cast<long>(r0f);
    const auto c0 = static_cast<long>(c0f);
    const std::size_t ra = clamp_index(r0, img.height());
    const std::size_t rb = clamp_index(r0 + 1, img.height());
    const std::size_t ca = clamp_index(c0, img.width());
    const std::size_t cb = clamp_index(c0 + 1, img.width());
    const double top = img(ra, ca) + fc * (img(ra, cb) - img(ra, ca));
    const double bottom = img(rb, ca) + fc * (img(rb, cb) - img(rb, ca));
    return top + fr * (bottom - top);
}

// Window extent in pixels per model cell along each axis.
std::pair<double, double> cell_scale(const BoundingBox& box, const TrackerConfig& config,
                                     const RealGrid& window) {
    const double win_h = (1.0 + config.padding) * box.h;
    const double win_w = (1.0 + config.padding) * box.w;
    return {win_h / static_cast<double>(window.height()), win_w / static_cast<double>(window.width())};
}

RealGrid kernel_input(const RealGrid& features) {
    return scaled(features, 1.0 / std::sqrt(static_cast<double>(features.size())));
}

Spectrum train_from_template(const RealGrid& normalized, const TrackerState& state) {
    const RealGrid kxx = kernel_correlation(normalized, normalized, state.config.kernel);
    return train_alpha(fft2(kxx), state.label_hat, state.config.lambda);
}

// Rebuilds `filter` and `kernel_template` from `model`.
void refresh_derived(TrackerState& state) {
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, SpatialTemplate>) {
                state.kernel_template = kernel_input(m.T);
                state.filter = train_from_template(state.kernel_template, state);
            } else if constexpr (std::is_same_v<M, FrequencyTemplate>) {
                state.kernel_template = kernel_input(ifft2(m.Xhat));
                state.filter = train_from_template(state.kernel_template, state);
            } else if constexpr (std::is_same_v<M, DualModel>) {
                state.kernel_template = kernel_input(ifft2(m.Mhat));
                state.filter = m.alpha_hat;
            } else {
                state.filter = m.filter;
            }
        },
        state.model);
}

struct RatioTerms {
    Spectrum A;
    Spectrum B;
};

RatioTerms ratio_terms(const Spectrum& label_hat, const Spectrum& F) {
    const Spectrum F_conj = conj(F);
    return {multiply(label_hat, F_conj), multiply(F, F_conj)};
}

FilterModel initial_model(const TrackerState& state, const RealGrid& features) {
    const Spectrum F = fft2(features);
    switch (state.config.strategy) {
        case Strategy::spatial: return SpatialTemplate{features};
        case Strategy::frequency: return FrequencyTemplate{F};
        case Strategy::dual:
            return DualModel{train_from_template(kernel_input(features), state), F};
        case Strategy::feature_first:
            // Always retrained from the stored spectrum, at init and on update.
            return DualModel{train_from_template(kernel_input(ifft2(F)), state), F};
        case Strategy::mosse_fractional:
        case Strategy::asef_direct: {
            auto [A, B] = ratio_terms(state.label_hat, F);
            const auto mode = state.config.strategy == Strategy::mosse_fractional ? RatioMode::fractional
                                                                                    : RatioMode::direct;
            return make_ratio_model(std::move(A), std::move(B), mode);
        }
    }
    throw InvalidInputError("unhandled strategy");
}

void update_model(TrackerState& state, const RealGrid& features) {
    const LearningRate eta(state.config.eta);
    const Spectrum F = fft2(features);
    switch (state.config.strategy) {
        case Strategy::spatial: {
            auto& m = std::get<SpatialTemplate>(state.model);
            m.T = update_spatial(m.T, features, eta);
            break;
        }
        case Strategy::frequency: {
            auto& m = std::get<FrequencyTemplate>(state.model);
            m.Xhat = update_frequency(m.Xhat, F, eta);
            break;
        }
        case Strategy::dual: {
            auto& m = std::get<DualModel>(state.model);
            const Spectrum alpha_curr = train_from_template(kernel_input(features), state);
            m = update_dual(m, F, alpha_curr, eta);
            break;
        }
        case Strategy::feature_first: {
            auto& m = std::get<DualModel>(state.model);
            m.Mhat = update_frequency(m.Mhat, F, eta);
            m.alpha_hat = train_from_template(kernel_input(ifft2(m.Mhat)), state);
            break;
        }
        case Strategy::mosse_fractional: {
            auto& m = std::get<RatioModel>(state.model);
            const auto terms = ratio_terms(state.label_hat, F);
            m = update_fractional(m, terms.A, terms.B, eta, state.config.mosse_plus_eta);
            break;
        }
        case Strategy::asef_direct: {
            auto& m = std::get<RatioModel>(state.model);
            auto terms = ratio_terms(state.label_hat, F);
            m.filter = update_direct_ratio(m.filter, terms.A, terms.B, eta);
            m.A = std::move(terms.A);
            m.B = std::move(terms.B);
            break;
        }
    }
    refresh_derived(state);
}

long wrapped_shift(std::size_t index, std::size_t n) {
    const auto i = static_cast<long>(index);
    const auto len = static_cast<long>(n);
    return i > len / 2 ? i - len : i;
}

}  // namespace

bool BoundingBox::valid() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(w) && std::isfinite(h) && w > 0.0 &&
           h > 0.0;
}

void TrackerConfig::validate() const {
    (void)LearningRate{eta};
    if (!(lambda > 0.0)) throw InvalidInputError("lambda must be positive");
    kernel.validate();
    if (!(padding >= 0.0) || !std::isfinite(padding)) throw InvalidInputError("padding must be >= 0");
    if (!(output_sigma_factor > 0.0)) throw InvalidInputError("output sigma factor must be positive");
}

std::pair<std::size_t, std::size_t> model_size_for(const BoundingBox& box, const TrackerConfig& config) {
    if (!box.valid()) throw InvalidInputError("bounding box must have positive, finite size");
    return {even_cells((1.0 + config.padding) * box.h), even_cells((1.0 + config.padding) * box.w)};
}

RealGrid extract_features(const RealGrid& frame, const BoundingBox& box, const TrackerConfig& config,
                          const RealGrid& window) {
    if (frame.empty()) throw InvalidInputError("extract_features: empty frame");
    if (!box.valid()) throw InvalidInputError("extract_features: degenerate bounding box");
    const auto [scale_r, scale_c] = cell_scale(box, config, window);
    const double top = box.center_y() - 0.5 * (1.0 + config.padding) * box.h;
    const double left = box.center_x() - 0.5 * (1.0 + config.padding) * box.w;

    RealGrid out(window.height(), window.width());
    for (std::size_t i = 0; i < out.height(); ++i) {
        // Pixel p covers [p, p+1); sample cell centers.
        const double row = top + (static_cast<double>(i) + 0.5) * scale_r - 0.5;
        for (std::size_t j = 0; j < out.width(); ++j) {
            const double col = left + (static_cast<double>(j) + 0.5) * scale_c - 0.5;
            out(i, j) = (sample_bilinear(frame, row, col) / 255.0 - 0.5) * window(i, j);
        }
    }
    return out;
}

TrackerState init_tracker(const RealGrid& frame, const BoundingBox& box, const TrackerConfig& config) {
    config.validate();
    const auto [rows, cols] = model_size_for(box, config);

    TrackerState state;
    state.config = config;
    state.window = hann_window(rows, cols);
    const double sigma_y = config.output_sigma_factor * std::sqrt(static_cast<double>(rows * cols));
    state.label_hat = fft2(gaussian_label(rows, cols, sigma_y));
    state.current_box = box;
    state.frame_index = 0;

    const RealGrid features = extract_features(frame, box, config, state.window);
    state.model = initial_model(state, features);
    refresh_derived(state);
    state.init_psr = peak_to_sidelobe(response_map(state, features));
    return state;
}

RealGrid response_map(const TrackerState& state, const RealGrid& features) {
    if (is_kernel_strategy(state.config.strategy)) {
        const RealGrid k = kernel_correlation(state.kernel_template, kernel_input(features),
                                              state.config.kernel);
        return detect_response(state.filter, k);
    }
    return ifft2(multiply(state.filter, fft2(features)));
}

StepResult track_step(TrackerState& state, const RealGrid& frame) {
    const RealGrid z = extract_features(frame, state.current_box, state.config, state.window);
    const RealGrid response = response_map(state, z);
    const auto [pi, pj] = argmax(response);

    const auto [scale_r, scale_c] = cell_scale(state.current_box, state.config, state.window);
    BoundingBox moved = state.current_box;
    moved.y += static_cast<double>(wrapped_shift(pi, response.height())) * scale_r;
    moved.x += static_cast<double>(wrapped_shift(pj, response.width())) * scale_c;
    state.current_box = moved;

    const Spectrum previous_filter = state.filter;
    update_model(state, extract_features(frame, moved, state.config, state.window));
    ++state.frame_index;

    StepResult result;
    result.box = moved;
    result.psr = peak_to_sidelobe(response);
    result.change = filter_change_rate(previous_filter, state.filter);
    return result;
}

RealGrid model_image(const TrackerState& state) {
    return std::visit(
        [](const auto& m) -> RealGrid {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, SpatialTemplate>) {
                return m.T;
            } else if constexpr (std::is_same_v<M, FrequencyTemplate>) {
                return ifft2(m.Xhat);
            } else if constexpr (std::is_same_v<M, DualModel>) {
                return ifft2(m.Mhat);
            } else {
                return ifft2(m.filter);
            }
        },
        state.model);
}

std::pair<std::size_t, std::size_t> argmax(const RealGrid& g) {
    const auto it = std::max_element(g.begin(), g.end());
    const auto k = static_cast<std::size_t>(it - g.begin());
    return {k / g.width(), k % g.width()};
}

double peak_to_sidelobe(const RealGrid& response) {
    const auto [pi, pj] = argmax(response);
    const double peak = response(pi, pj);
    constexpr long half = 5;

    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < response.height(); ++i) {
        const long di = std::abs(wrapped_shift((i + response.height() - pi) % response.height(),
                                               response.height()));
        for (std::size_t j = 0; j < response.width(); ++j) {
            const long dj = std::abs(wrapped_shift((j + response.width() - pj) % response.width(),
                                                   response.width()));
            if (di <= half && dj <= half) continue;
            sum += response(i, j);
            sum_sq += response(i, j) * response(i, j);
            ++count;
        }
    }
    if (count == 0) return 0.0;
    const double mean = sum / static_cast<double>(count);
    const double var = std::max(0.0, sum_sq / static_cast<double>(count) - mean * mean);
    const double sd = std::sqrt(var);
    if (!(sd > 0.0) || sd < 1e-12 * std::max(1.0, std::abs(mean))) return 0.0;
    return (peak - mean) / sd;
}

}  // namespace cflab
