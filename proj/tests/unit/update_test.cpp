#include "cflab/update.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "cflab/spectral.hpp"
#include "oracles.hpp"

namespace cflab {
namespace {

TEST(LearningRate, Domain) {
    EXPECT_THROW(LearningRate(0.0), InvalidInputError);
    EXPECT_THROW(LearningRate(1.0000001), InvalidInputError);
    EXPECT_THROW(LearningRate(std::nan("")), InvalidInputError);
    EXPECT_EQ(LearningRate(1.0).value(), 1.0);
}

TEST(StrategyIds, RoundTrip) {
    for (Strategy s : all_strategies()) EXPECT_EQ(parse_strategy(to_string(s)), s);
    EXPECT_EQ(to_string(Strategy::feature_first), "feature-first");
    EXPECT_THROW(parse_strategy("kcf"), InvalidInputError);
    EXPECT_EQ(parse_strategy_list("spatial,asef-direct").size(), 2u);
}

TEST(UpdateSpatial, EtaOneReturnsCurrent) {
    std::mt19937 rng(1);
    const RealGrid prev = oracle::random_grid(rng, 4, 5);
    const RealGrid curr = oracle::random_grid(rng, 4, 5);
    EXPECT_EQ(update_spatial(prev, curr, LearningRate(1.0)), curr);
}

TEST(UpdateSpatial, TinyEtaStaysAtPrevious) {
    std::mt19937 rng(2);
    const RealGrid prev = oracle::random_grid(rng, 4, 4);
    const RealGrid curr = oracle::random_grid(rng, 4, 4);
    const double spread = max_abs_diff(prev, curr);
    EXPECT_LE(max_abs_diff(update_spatial(prev, curr, LearningRate(1e-9)), prev), 1e-9 * spread);
}

TEST(UpdateSpatial, ScalarValue) {
    EXPECT_DOUBLE_EQ(update_spatial(RealGrid(1, 1, 0.0), RealGrid(1, 1, 1.0), LearningRate(0.025))(0, 0), 0.025);
}

TEST(UpdateSpatial, ConvexityBound) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> eta(1e-6, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const RealGrid prev = oracle::random_grid(rng, 6, 6, -5.0, 5.0);
        const RealGrid curr = oracle::random_grid(rng, 6, 6, -5.0, 5.0);
        const RealGrid out = update_spatial(prev, curr, LearningRate(eta(rng)));
        for (std::size_t k = 0; k < out.size(); ++k) {
            EXPECT_GE(out[k], std::min(prev[k], curr[k]));
            EXPECT_LE(out[k], std::max(prev[k], curr[k]));
        }
    }
}

TEST(UpdateSpatial, DimensionMismatch) {
    EXPECT_THROW(update_spatial(RealGrid(2, 2), RealGrid(2, 3), LearningRate(0.5)), DimensionError);
}

TEST(UpdateFrequency, EtaOneAndFixedPoint) {
    std::mt19937 rng(4);
    const Spectrum prev = oracle::random_spectrum(rng, 3, 4);
    const Spectrum curr = oracle::random_spectrum(rng, 3, 4);
    EXPECT_EQ(update_frequency(prev, curr, LearningRate(1.0)), curr);
    for (double eta : {0.01, 0.3, 0.77}) EXPECT_EQ(update_frequency(prev, prev, LearningRate(eta)), prev);
}

TEST(UpdateFrequency, CommutesWithFourierTransform) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> eta(1e-3, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const RealGrid a = oracle::random_grid(rng, 16, 16);
        const RealGrid b = oracle::random_grid(rng, 16, 16);
        const LearningRate rate(eta(rng));
        EXPECT_LT(max_abs_diff(fft2(update_spatial(a, b, rate)), update_frequency(fft2(a), fft2(b), rate)), 1e-10);
    }
}

TEST(UpdateDual, EndpointsAndScalar) {
    std::mt19937 rng(6);
    const DualModel m{oracle::random_spectrum(rng, 2, 2), oracle::random_spectrum(rng, 2, 2)};
    const Spectrum M = oracle::random_spectrum(rng, 2, 2);
    const Spectrum a = oracle::random_spectrum(rng, 2, 2);
    const DualModel one = update_dual(m, M, a, LearningRate(1.0));
    EXPECT_EQ(one.Mhat, M);
    EXPECT_EQ(one.alpha_hat, a);
    const DualModel same = update_dual(m, m.Mhat, m.alpha_hat, LearningRate(0.4));
    EXPECT_EQ(same.Mhat, m.Mhat);
    EXPECT_EQ(same.alpha_hat, m.alpha_hat);

    const DualModel s{Spectrum(1, 1, Complex(0.5, 0.0)), Spectrum(1, 1, Complex(1.0, 0.0))};
    const DualModel out = update_dual(s, s.Mhat, Spectrum(1, 1, Complex(1.0, 0.0)), LearningRate(0.025));
    EXPECT_NEAR(out.alpha_hat(0, 0).real(), 0.5125, 1e-15);
}

TEST(UpdateFractional, GridEndpointAndFixedPoint) {
    std::mt19937 rng(7);
    const Spectrum A = oracle::random_spectrum(rng, 3, 3);
    const Spectrum B = map(oracle::random_spectrum(rng, 3, 3), [](Complex v) { return Complex(1.0 + std::abs(v), 0.0); });
    const RatioModel m = make_ratio_model(A, B, RatioMode::fractional);
    const Spectrum A2 = oracle::random_spectrum(rng, 3, 3);
    const RatioModel one = update_fractional(m, A2, B, LearningRate(1.0));
    EXPECT_EQ(one.A, A2);
    EXPECT_EQ(one.B, B);
    const RatioModel same = update_fractional(m, A, B, LearningRate(0.3));
    EXPECT_EQ(same.A, A);
    EXPECT_EQ(same.B, B);
    EXPECT_EQ(same.filter, m.filter);
}

TEST(UpdateFractional, RejectsDirectModeModel) {
    const RatioModel m = make_ratio_model(Spectrum(1, 1), Spectrum(1, 1, Complex(1.0, 0.0)), RatioMode::direct);
    EXPECT_THROW(update_fractional(m, m.A, m.B, LearningRate(0.5)), InvalidInputError);
}

TEST(UpdateFractional, ScalarExamples) {
    const LearningRate eta(0.025);
    EXPECT_EQ(update_fractional(ScalarRatio{1.0, 2.0}, 1.0, 2.0, eta).filter(), 0.5);
    EXPECT_NEAR(update_fractional(ScalarRatio{1.0, 2.0}, 1.0, 3.0, eta).filter(), 1.0 / 2.025, 1e-15);
    EXPECT_NEAR(update_fractional(ScalarRatio{1.0, 2.0}, 1.0, 3.0, eta).filter(), 0.493827, 1e-6);
    const ScalarRatio one = update_fractional(ScalarRatio{1.0, 2.0}, 4.0, 5.0, LearningRate(1.0));
    EXPECT_EQ(one.a, 4.0);
    EXPECT_EQ(one.b, 5.0);
}

TEST(UpdateFractional, GridScalarWithStabilizer) {
    const RatioModel m = make_ratio_model(Spectrum(1, 1, Complex(1.0, 0.0)), Spectrum(1, 1, Complex(2.0, 0.0)),
                                          RatioMode::fractional);
    const RatioModel out = update_fractional(m, Spectrum(1, 1, Complex(1.0, 0.0)), Spectrum(1, 1, Complex(3.0, 0.0)),
                                             LearningRate(0.025));
    EXPECT_NEAR(out.filter(0, 0).real(), 1.0 / 2.025, 1e-5);
}

TEST(UpdateDirectRatio, ScalarExamples) {
    EXPECT_EQ(update_direct_ratio(0.5, 1.0, 2.0, LearningRate(0.025)), 0.5);
    EXPECT_EQ(update_direct_ratio(0.5, 1.0, 2.0, LearningRate(0.9)), 0.5);
    EXPECT_NEAR(update_direct_ratio(0.5, 1.0, 3.0, LearningRate(0.025)), 0.025 / 3.0 + 0.975 / 2.0, 1e-15);
    EXPECT_NEAR(update_direct_ratio(0.5, 1.0, 3.0, LearningRate(0.025)), 0.495833, 1e-6);
}

TEST(UpdateDirectRatio, GridEtaOneIsSingleFrameFilter) {
    std::mt19937 rng(8);
    const Spectrum A = oracle::random_spectrum(rng, 2, 3);
    const Spectrum B(2, 3, Complex(2.0, 0.0));
    const Spectrum H = update_direct_ratio(oracle::random_spectrum(rng, 2, 3), A, B, LearningRate(1.0));
    EXPECT_EQ(H, realize_ratio(A, B));
    EXPECT_LT(max_abs_diff(H, map(A, [](Complex v) { return v / 2.0; })), 1e-5);
}

TEST(RatioUpdates, CoincideWhenEnergyUnchanged) {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> pos(0.5, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Spectrum A_prev = oracle::random_spectrum(rng, 4, 4);
        Spectrum B(4, 4);
        for (Complex& v : B) v = Complex(pos(rng), 0.0);
        const Spectrum A_new = oracle::random_spectrum(rng, 4, 4);
        const LearningRate eta(0.2);
        const RatioModel frac = update_fractional(make_ratio_model(A_prev, B, RatioMode::fractional), A_new, B, eta);
        const RatioModel init_direct = make_ratio_model(A_prev, B, RatioMode::direct);
        const Spectrum direct = update_direct_ratio(init_direct.filter, A_new, B, eta);
        EXPECT_LT(max_abs_diff(frac.filter, direct), 1e-12);
    }
}

TEST(RatioUpdates, JensenOrdering) {
    std::mt19937 rng(10);
    std::uniform_real_distribution<double> pos(0.01, 10.0);
    std::uniform_real_distribution<double> rate(1e-4, 0.9999);
    for (int trial = 0; trial < 2000; ++trial) {
        const double a = pos(rng);
        const double b_prev = pos(rng);
        const double b_new = pos(rng);
        const LearningRate eta(rate(rng));
        const double direct = update_direct_ratio(a / b_prev, a, b_new, eta);
        const double fractional = update_fractional(ScalarRatio{a, b_prev}, a, b_new, eta).filter();
        EXPECT_GE(direct, fractional * (1.0 - 1e-14));
    }
}

TEST(Robustness, Definition) {
    EXPECT_EQ(robustness(1.0, 2.0, 2.0, 4.0), std::numeric_limits<double>::infinity());
    EXPECT_NEAR(robustness(0.6, 1.0, 0.5, 1.0), 10.0, 1e-12);
    EXPECT_NEAR(robustness(1.8, 3.0, 2.0, 4.0), 10.0, 1e-12);
    const double c = -3.7;
    EXPECT_NEAR(robustness(0.6 * c, c, 0.5 * c, c), 10.0, 1e-12);
    EXPECT_THROW(robustness(1.0, 0.0, 1.0, 1.0), InvalidInputError);
    EXPECT_THROW(robustness(1.0, 1.0, 1.0, 0.0), InvalidInputError);
}

TEST(Robustness, ClosedFormExample) {
    const RobustnessPair r = robustness_closed_forms(1.0, 3.0, 1.0, 2.0, LearningRate(0.025));
    EXPECT_NEAR(r.asef, 240.0, 1e-9);
    EXPECT_NEAR(r.mosse, 162.0, 1e-9);
}

TEST(Robustness, CrossoverPoint) {
    const RobustnessPair equal = robustness_closed_forms(1.3, 2.0, 0.7, 2.0, LearningRate(0.1));
    EXPECT_EQ(equal.asef, equal.mosse);
    const RobustnessPair same = robustness_closed_forms(1.0, 2.0, 1.0, 2.0, LearningRate(0.1));
    EXPECT_TRUE(std::isinf(same.asef));
    EXPECT_TRUE(std::isinf(same.mosse));
}

TEST(Robustness, ClosedFormsMatchDefinitionAndCrossover) {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    std::uniform_real_distribution<double> pos(0.05, 10.0);
    std::uniform_real_distribution<double> rate(1e-3, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double a_new = val(rng);
        const double a_prev = val(rng);
        const double b_new = pos(rng);
        const double b_prev = pos(rng);
        const LearningRate eta(rate(rng));
        const RobustnessPair closed = robustness_closed_forms(a_new, b_new, a_prev, b_prev, eta);
        const double h_direct = update_direct_ratio(a_prev / b_prev, a_new, b_new, eta);
        const ScalarRatio frac = update_fractional(ScalarRatio{a_prev, b_prev}, a_new, b_new, eta);
        const double r_direct = robustness(h_direct, 1.0, a_prev, b_prev);
        const double r_frac = robustness(frac.a, frac.b, a_prev, b_prev);
        EXPECT_NEAR(closed.asef, r_direct, 1e-10 * closed.asef);
        EXPECT_NEAR(closed.mosse, r_frac, 1e-10 * closed.mosse);
        EXPECT_EQ(closed.asef > closed.mosse, b_new > b_prev);
    }
}

TEST(Robustness, PlusEtaVariantMovesCrossover) {
    const LearningRate eta(0.025);
    const RobustnessPair standard = robustness_closed_forms(1.0, 2.01, 1.0, 2.0, eta);
    const RobustnessPair plus = robustness_closed_forms(1.0, 2.01, 1.0, 2.0, eta, true);
    EXPECT_GT(standard.asef, standard.mosse);
    EXPECT_LT(plus.asef, plus.mosse);
}

TEST(FilterChangeRate, MeanAndMax) {
    Spectrum a(1, 2, Complex(0.0, 0.0));
    Spectrum b(1, 2);
    b(0, 0) = Complex(3.0, 4.0);
    b(0, 1) = Complex(1.0, 0.0);
    const ChangeRate r = filter_change_rate(a, b);
    EXPECT_DOUBLE_EQ(r.mean, 3.0);
    EXPECT_DOUBLE_EQ(r.max, 5.0);
}

}  // namespace
}  // namespace cflab
