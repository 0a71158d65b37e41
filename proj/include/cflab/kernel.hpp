#pragma once

#include <string>
#include <utility>

#include "cflab/grid.hpp"

namespace cflab {

enum class KernelKind { gaussian, polynomial, linear };

std::string to_string(KernelKind kind);
KernelKind parse_kernel_kind(const std::string& name);

/// Kernel selection and its parameters. Use the factories; they validate.
struct KernelSpec {
    KernelKind kind = KernelKind::gaussian;
    double sigma = 0.5;          // gaussian bandwidth
    double additive_term = 1.5;  // polynomial (c + a)^b
    int exponent = 7;

    static KernelSpec gaussian(double sigma);
    static KernelSpec polynomial(double additive_term, int exponent);
    static KernelSpec linear();

    void validate() const;
};

/// Kernel values between xp and every cyclic shift of x, all at once.
///
/// Entry (i, j) equals kappa(xp, P^(i,j) x) where P is cyclic_shift. The cross
/// term c = ifft2(conj(fft2(x)) .* fft2(xp)) is shared by every kernel:
///   gaussian:   exp(-(|x|^2 + |xp|^2 - 2c) / sigma^2)
///   polynomial: (c + a)^b
///   linear:     c
RealGrid kernel_correlation(const RealGrid& x, const RealGrid& xp, const KernelSpec& spec);

/// Dual ridge-regression coefficients yhat / (khat_xx + lambda).
Spectrum train_alpha(const Spectrum& khat_xx, const Spectrum& yhat, double lambda);

/// ifft2(fft2(k_xz) .* alpha_hat). The argmax is the displacement of z
/// relative to the model.
RealGrid detect_response(const Spectrum& alpha_hat, const RealGrid& k_xz);

/// Both sides of the Gaussian autocorrelation factorization:
///   lhs = fft2(kernel_correlation(x, x, gaussian(sigma)))
///   rhs = exp(-2|x|^2/sigma^2) * fft2(exp((2/sigma^2) * ifft2(conj(xhat) .* xhat)))
/// A diagnostic; agreement is pure round-off.
std::pair<Spectrum, Spectrum> gaussian_autocorr_factorization(const RealGrid& x, double sigma);

}  // namespace cflab
