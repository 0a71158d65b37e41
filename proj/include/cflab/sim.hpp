#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cflab/curve_table.hpp"
#include "cflab/kernel.hpp"

namespace cflab {

/// Inclusive sampling range min, min+step, ..., max.
struct GridRange {
    double min = 0.0;
    double max = 1.0;
    double step = 0.1;

    void validate() const;
    /// Points are computed as min + k*step so that exact grid values stay exact.
    std::vector<double> points() const;

    /// Parses "min:max:step".
    static GridRange parse(const std::string& text);
};

/// Scalar kernel-trick comparison: how the dual coefficient moves when the
/// feature is interpolated first versus when the coefficient is.
struct KernelSimConfig {
    double x_init = 2.0;
    double eta = 0.025;
    double y = 1.0;
    double lambda = 1e-4;
    KernelSpec kernel = KernelSpec::gaussian(60.0);
    GridRange x_curr_grid{-300.0, 300.0, 0.5};

    void validate() const;
};

/// Scalar fractional (numerator/denominator) versus direct filter updates.
struct FractionalSimConfig {
    double a_prev = 1.0;
    double b_prev = 2.0;
    double a_new = 1.0;
    GridRange b_new_grid{1.0, 3.0, 0.01};
    double eta = 0.025;
    bool plus_eta_variant = false;

    void validate() const;
};

/// Scalar kernel value with the squared norm frozen at x_init^2:
///   gaussian   exp(-(2 x_init^2 - 2 x^2) / sigma^2)
///   polynomial (x^2 + a)^b
///   linear     x^2
/// Results beyond the double range are clamped to +/-DBL_MAX and counted in
/// `clamp_count` when given.
double scalar_kernel(double x, const KernelSimConfig& cfg, std::size_t* clamp_count = nullptr);

/// Columns: x_upd (abscissa), alpha_red (feature interpolated, then kernel),
/// alpha_green (coefficients interpolated).
CurveTable simulate_kernel_update(const KernelSimConfig& cfg, std::size_t* clamp_count = nullptr);

/// Columns: b_new (abscissa), filter_direct, filter_fractional, r_asef, r_mosse.
CurveTable simulate_fractional(const FractionalSimConfig& cfg);

}  // namespace cflab
