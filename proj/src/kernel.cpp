#include "cflab/kernel.hpp"

#include <cmath>

#include "cflab/spectral.hpp"

namespace cflab {

namespace {

RealGrid cross_correlation(const RealGrid& x, const RealGrid& xp) {
    return ifft2(multiply(conj(fft2(x)), fft2(xp)));
}

}  // namespace

std::string to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::gaussian: return "gaussian";
        case KernelKind::polynomial: return "polynomial";
        case KernelKind::linear: return "linear";
    }
    return "unknown";
}

KernelKind parse_kernel_kind(const std::string& name) {
    if (name == "gaussian") return KernelKind::gaussian;
    if (name == "polynomial") return KernelKind::polynomial;
    if (name == "linear") return KernelKind::linear;
    throw InvalidInputError("unknown kernel '" + name + "' (expected gaussian|polynomial|linear)");
}

KernelSpec KernelSpec::gaussian(double sigma) {
    KernelSpec spec;
    spec.kind = KernelKind::gaussian;
    spec.sigma = sigma;
    spec.validate();
    return spec;
}

KernelSpec KernelSpec::polynomial(double additive_term, int exponent) {
    KernelSpec spec;
    spec.kind = KernelKind::polynomial;
    spec.additive_term = additive_term;
    spec.exponent = exponent;
    spec.validate();
    return spec;
}

KernelSpec KernelSpec::linear() {
    KernelSpec spec;
    spec.kind = KernelKind::linear;
    return spec;
}

void KernelSpec::validate() const {
    switch (kind) {
        case KernelKind::gaussian:
            if (!(sigma > 0.0) || !std::isfinite(sigma)) {
                throw InvalidInputError("gaussian kernel requires sigma > 0");
            }
            break;
        case KernelKind::polynomial:
            if (!(additive_term >= 0.0) || !std::isfinite(additive_term)) {
                throw InvalidInputError("polynomial kernel requires additive term >= 0");
            }
            if (exponent < 1) throw InvalidInputError("polynomial kernel requires exponent >= 1");
            break;
        case KernelKind::linear:
            break;
    }
}

RealGrid kernel_correlation(const RealGrid& x, const RealGrid& xp, const KernelSpec& spec) {
    require_same_shape(x, xp, "kernel_correlation");
    spec.validate();
    RealGrid c = cross_correlation(x, xp);
    switch (spec.kind) {
        case KernelKind::gaussian: {
            // Norms in the spatial domain, literally as in the expanded kernel.
            const double norms = sum_of_squares(x) + sum_of_squares(xp);
            const double inv_var = 1.0 / (spec.sigma * spec.sigma);
            return map(c, [&](double v) { return std::exp(-inv_var * (norms - 2.0 * v)); });
        }
        case KernelKind::polynomial:
            return map(c, [&](double v) { return std::pow(v + spec.additive_term, spec.exponent); });
        case KernelKind::linear:
            return c;
    }
    return c;
}

Spectrum train_alpha(const Spectrum& khat_xx, const Spectrum& yhat, double lambda) {
    require_same_shape(khat_xx, yhat, "train_alpha");
    if (!(lambda > 0.0)) throw InvalidInputError("train_alpha: lambda must be positive");
    Spectrum alpha(yhat.height(), yhat.width());
    for (std::size_t k = 0; k < yhat.size(); ++k) {
        const Complex denom = khat_xx[k] + lambda;
        if (std::abs(denom) < 1e-12) {
            throw NumericalError("train_alpha: singular denominator |khat + lambda| < 1e-12");
        }
        alpha[k] = yhat[k] / denom;
    }
    return alpha;
}

RealGrid detect_response(const Spectrum& alpha_hat, const RealGrid& k_xz) {
    require_same_shape(alpha_hat, k_xz, "detect_response");
    return ifft2(multiply(fft2(k_xz), alpha_hat));
}

std::pair<Spectrum, Spectrum> gaussian_autocorr_factorization(const RealGrid& x, double sigma) {
    const KernelSpec spec = KernelSpec::gaussian(sigma);
    Spectrum lhs = fft2(kernel_correlation(x, x, spec));

    const double scale = 2.0 / (sigma * sigma);
    const RealGrid auto_corr = cross_correlation(x, x);
    const RealGrid mapped = map(auto_corr, [scale](double v) { return std::exp(scale * v); });
    const double damping = std::exp(-scale * sum_of_squares(x));
    Spectrum rhs = map(fft2(mapped), [damping](Complex v) { return damping * v; });
    return {std::move(lhs), std::move(rhs)};
}

}  // namespace cflab
