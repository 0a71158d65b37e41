#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cflab/grid.hpp"

namespace cflab {

/// Model learning rate, restricted to (0, 1].
class LearningRate {
public:
    explicit LearningRate(double eta);
    double value() const noexcept { return eta_; }

private:
    double eta_;
};

/// Strategy identifiers shared by the tracker, the CLI and every CSV header.
enum class Strategy { spatial, frequency, dual, feature_first, mosse_fractional, asef_direct };

std::string to_string(Strategy strategy);
Strategy parse_strategy(const std::string& id);
std::vector<Strategy> parse_strategy_list(const std::string& comma_separated);
const std::vector<Strategy>& all_strategies();
bool is_kernel_strategy(Strategy strategy);

// ---------------------------------------------------------------------------
// Model state

struct SpatialTemplate {
    RealGrid T;
    bool operator==(const SpatialTemplate&) const = default;
};

struct FrequencyTemplate {
    Spectrum Xhat;
    bool operator==(const FrequencyTemplate&) const = default;
};

struct DualModel {
    Spectrum alpha_hat;
    Spectrum Mhat;
    bool operator==(const DualModel&) const = default;
};

enum class RatioMode { fractional, direct };

/// Numerator/denominator filter. `filter` is the realized A/(B+eps) for the
/// fractional mode and the running directly-averaged filter for the direct
/// mode, where A and B hold the latest frame's numerator and energy.
struct RatioModel {
    Spectrum A;
    Spectrum B;
    RatioMode mode = RatioMode::fractional;
    Spectrum filter;
    bool operator==(const RatioModel&) const = default;
};

using FilterModel = std::variant<SpatialTemplate, FrequencyTemplate, DualModel, RatioModel>;

// ---------------------------------------------------------------------------
// Grid updates. Every rule is written as prev + eta*(curr - prev) through
// std::lerp so that prev == curr is an exact fixed point and eta == 1 returns
// curr bit for bit.

/// (1 - eta) * T_prev + eta * T_curr.
RealGrid update_spatial(const RealGrid& T_prev, const RealGrid& T_curr, LearningRate eta);

/// Same interpolation over complex spectra.
Spectrum update_frequency(const Spectrum& X_prev, const Spectrum& X_curr, LearningRate eta);

/// Interpolates both the feature spectrum and the dual coefficients.
DualModel update_dual(const DualModel& m, const Spectrum& Mhat_curr, const Spectrum& alpha_curr,
                      LearningRate eta);

/// Running numerator and denominator, A <- eta*A_new + (1-eta)*A, same for B,
/// then refreshes the realized filter. `plus_eta` selects the (1+eta) weight
/// on the previous terms instead, for comparison only.
RatioModel update_fractional(const RatioModel& m, const Spectrum& A_new, const Spectrum& B_new,
                             LearningRate eta, bool plus_eta = false);

/// H <- eta * A_new/(B_new + eps) + (1 - eta) * H_prev.
Spectrum update_direct_ratio(const Spectrum& H_prev, const Spectrum& A_new, const Spectrum& B_new,
                             LearningRate eta);

/// eps = 1e-5 * mean|B| + 1e-12, added wherever a ratio filter is realized.
double ratio_stabilizer(const Spectrum& B);

/// A / (B + ratio_stabilizer(B)).
Spectrum realize_ratio(const Spectrum& A, const Spectrum& B);

/// Single-frame ratio model: fractional mode keeps (A, B); direct mode
/// starts its running filter at A/(B+eps).
RatioModel make_ratio_model(Spectrum A, Spectrum B, RatioMode mode);

/// Entrywise |H_curr - H_prev| summarized over the grid. This is the grid form
/// of the reciprocal robustness indicator.
struct ChangeRate {
    double mean = 0.0;
    double max = 0.0;
};
ChangeRate filter_change_rate(const Spectrum& H_prev, const Spectrum& H_curr);

// ---------------------------------------------------------------------------
// Scalar forms. These carry no stabilizer: they are the exact rules the
// scalar simulations and the closed-form robustness checks are built on.

struct ScalarRatio {
    double a = 0.0;
    double b = 1.0;
    double filter() const { return a / b; }
};

ScalarRatio update_fractional(ScalarRatio prev, double a_new, double b_new, LearningRate eta,
                              bool plus_eta = false);

double update_direct_ratio(double h_prev, double a_new, double b_new, LearningRate eta);

/// R = 1 / |A_i/B_i - A_prev/B_prev|; +infinity when the two filters agree.
/// Throws InvalidInputError on a zero denominator.
double robustness(double a_i, double b_i, double a_prev, double b_prev);

struct RobustnessPair {
    double asef = 0.0;   // direct update
    double mosse = 0.0;  // fractional update
};

/// Closed forms of R for one direct and one fractional step from the same
/// previous (A, B). Both are +infinity when A_new*B_prev == A_prev*B_new.
RobustnessPair robustness_closed_forms(double a_new, double b_new, double a_prev, double b_prev,
                                       LearningRate eta, bool plus_eta = false);

}  // namespace cflab
