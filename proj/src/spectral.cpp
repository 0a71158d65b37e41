#include "cflab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

namespace cflab {

namespace {

// FFTW planning is not thread-safe, execution is. Plans are created once per
// (height, width, direction) under a lock and executed through the new-array
// interface, so every call is free of shared mutable state.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t height, std::size_t width, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_tuple(height, width, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;

        const auto n = height * width;
        auto* in = fftw_alloc_complex(n);
        auto* out = fftw_alloc_complex(n);
        fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(height), static_cast<int>(width), in, out,
                                          sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(in);
        fftw_free(out);
        if (plan == nullptr) throw NumericalError("fftw failed to create a plan");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

Spectrum transform(const Spectrum& in, int sign) {
    Spectrum out(in.height(), in.width());
    fftw_plan plan = plan_cache().get(in.height(), in.width(), sign);
    // Out-of-place complex transforms leave the input untouched.
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.values().data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.values().data());
    fftw_execute_dft(plan, src, dst);
    return out;
}

double hann1d(std::size_t n, std::size_t length) {
    if (length == 1) return 1.0;
    return 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                 static_cast<double>(length - 1)));
}

std::size_t wrap_index(long i, std::size_t n) {
    const auto m = static_cast<long>(n);
    return static_cast<std::size_t>(((i % m) + m) % m);
}

}  // namespace

Spectrum conj(const Spectrum& s) {
    return map(s, [](Complex v) { return std::conj(v); });
}

Spectrum multiply(const Spectrum& a, const Spectrum& b) {
    return zip(a, b, [](Complex x, Complex y) { return x * y; }, "multiply");
}

Spectrum to_complex(const RealGrid& g) {
    return map(g, [](double v) { return Complex(v, 0.0); });
}

RealGrid scaled(const RealGrid& g, double factor) {
    return map(g, [factor](double v) { return v * factor; });
}

double sum_of_squares(const RealGrid& g) {
    double acc = 0.0;
    for (double v : g) acc += v * v;
    return acc;
}

double max_abs(const RealGrid& g) {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const Spectrum& s) {
    double m = 0.0;
    for (Complex v : s) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const RealGrid& a, const RealGrid& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

double max_abs_diff(const Spectrum& a, const Spectrum& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

bool all_finite(const RealGrid& g) {
    return std::all_of(g.begin(), g.end(), [](double v) { return std::isfinite(v); });
}

bool all_finite(const Spectrum& s) {
    return std::all_of(s.begin(), s.end(), [](Complex v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

Spectrum fft2(const RealGrid& g) {
    if (g.empty()) throw DimensionError("fft2: empty grid");
    return transform(to_complex(g), FFTW_FORWARD);
}

Spectrum fft2(const Spectrum& s) {
    if (s.empty()) throw DimensionError("fft2: empty spectrum");
    return transform(s, FFTW_FORWARD);
}

Spectrum ifft2_complex(const Spectrum& s) {
    if (s.empty()) throw DimensionError("ifft2: empty spectrum");
    Spectrum out = transform(s, FFTW_BACKWARD);
    const double norm = 1.0 / static_cast<double>(s.size());
    for (Complex& v : out) v *= norm;
    return out;
}

RealGrid ifft2(const Spectrum& s) {
    const Spectrum full = ifft2_complex(s);
    RealGrid out(full.height(), full.width());
    double max_real = 0.0;
    double max_imag = 0.0;
    for (std::size_t k = 0; k < full.size(); ++k) {
        out[k] = full[k].real();
        max_real = std::max(max_real, std::abs(full[k].real()));
        max_imag = std::max(max_imag, std::abs(full[k].imag()));
    }
    if (!(max_imag < 1e-8 * (1.0 + max_real))) {
        std::ostringstream msg;
        msg << "ifft2: imaginary residue " << max_imag << " exceeds tolerance for max real "
            << max_real << " (spectrum is not conjugate-symmetric)";
        throw NumericalError(msg.str());
    }
    return out;
}

RealGrid cyclic_shift(const RealGrid& g, long di, long dj) {
    RealGrid out(g.height(), g.width());
    for (std::size_t i = 0; i < g.height(); ++i) {
        const std::size_t si = wrap_index(static_cast<long>(i) - di, g.height());
        for (std::size_t j = 0; j < g.width(); ++j) {
            out(i, j) = g(si, wrap_index(static_cast<long>(j) - dj, g.width()));
        }
    }
    return out;
}

RealGrid hann_window(std::size_t height, std::size_t width) {
    RealGrid win(height, width);
    for (std::size_t i = 0; i < height; ++i) {
        const double wi = hann1d(i, height);
        for (std::size_t j = 0; j < width; ++j) win(i, j) = wi * hann1d(j, width);
    }
    return win;
}

RealGrid gaussian_label(std::size_t height, std::size_t width, double sigma_y) {
    if (!(sigma_y > 0.0) || !std::isfinite(sigma_y)) {
        throw InvalidInputError("gaussian_label: sigma_y must be positive and finite");
    }
    RealGrid label(height, width);
    const double denom = 2.0 * sigma_y * sigma_y;
    for (std::size_t i = 0; i < height; ++i) {
        const auto di = static_cast<double>(std::min(i, height - i));
        for (std::size_t j = 0; j < width; ++j) {
            const auto dj = static_cast<double>(std::min(j, width - j));
            label(i, j) = std::exp(-(di * di + dj * dj) / denom);
        }
    }
    return label;
}

}  // namespace cflab
