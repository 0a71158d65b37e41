#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cflab/errors.hpp"

namespace cflab {

using Complex = std::complex<double>;

/// Dense row-major 2D array. RealGrid and Spectrum are the two instantiations
/// used throughout; keeping them distinct types stops a spatial grid from
/// being passed where a spectrum is expected.
template <typename T>
class Grid {
public:
    using value_type = T;

    Grid() = default;

    Grid(std::size_t height, std::size_t width, T fill = T{})
        : height_(height), width_(width), values_(checked_size(height, width), fill) {}

    Grid(std::size_t height, std::size_t width, std::vector<T> values)
        : height_(height), width_(width), values_(std::move(values)) {
        if (values_.size() != checked_size(height, width)) {
            throw DimensionError("grid value count " + std::to_string(values_.size()) +
                                 " does not match " + std::to_string(height) + "x" +
                                 std::to_string(width));
        }
    }

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    T& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * width_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * width_ + j]; }

    T& operator[](std::size_t k) noexcept { return values_[k]; }
    const T& operator[](std::size_t k) const noexcept { return values_[k]; }

    std::span<T> values() noexcept { return values_; }
    std::span<const T> values() const noexcept { return values_; }

    auto begin() noexcept { return values_.begin(); }
    auto end() noexcept { return values_.end(); }
    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    template <typename U>
    bool same_shape(const Grid<U>& other) const noexcept {
        return height_ == other.height() && width_ == other.width();
    }

    bool operator==(const Grid&) const = default;

private:
    static std::size_t checked_size(std::size_t height, std::size_t width) {
        if (height == 0 || width == 0) {
            throw DimensionError("grid dimensions must be positive, got " + std::to_string(height) +
                                 "x" + std::to_string(width));
        }
        return height * width;
    }

    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<T> values_;
};

using RealGrid = Grid<double>;
using Spectrum = Grid<Complex>;

template <typename T, typename U>
void require_same_shape(const Grid<T>& a, const Grid<U>& b, const char* what) {
    if (!a.same_shape(b)) {
        throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.height()) +
                             "x" + std::to_string(a.width()) + " vs " +
                             std::to_string(b.height()) + "x" + std::to_string(b.width()));
    }
}

// Elementwise helpers. Shapes are checked; results are fresh grids.

template <typename T, typename F>
auto map(const Grid<T>& g, F&& f) {
    using R = decltype(f(g[0]));
    Grid<R> out(g.height(), g.width());
    for (std::size_t k = 0; k < g.size(); ++k) out[k] = f(g[k]);
    return out;
}

template <typename T, typename U, typename F>
auto zip(const Grid<T>& a, const Grid<U>& b, F&& f, const char* what = "zip") {
    require_same_shape(a, b, what);
    using R = decltype(f(a[0], b[0]));
    Grid<R> out(a.height(), a.width());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = f(a[k], b[k]);
    return out;
}

Spectrum conj(const Spectrum& s);
Spectrum multiply(const Spectrum& a, const Spectrum& b);
Spectrum to_complex(const RealGrid& g);
RealGrid scaled(const RealGrid& g, double factor);

double sum_of_squares(const RealGrid& g);
double max_abs(const RealGrid& g);
double max_abs(const Spectrum& s);
double max_abs_diff(const RealGrid& a, const RealGrid& b);
double max_abs_diff(const Spectrum& a, const Spectrum& b);
bool all_finite(const RealGrid& g);
bool all_finite(const Spectrum& s);

}  // namespace cflab
