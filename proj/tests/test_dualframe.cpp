#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "wavuniq/dualframe.hpp"
#include "wavuniq/error.hpp"
#include "wavuniq/transform.hpp"

using namespace wavuniq;

namespace {

WaveletSpec band_wavelet(double lo, double hi) {
    WaveletSpec::Traits traits;
    traits.real = false;
    return make_custom_wavelet([](double) { return Complex{}; },
                               WaveletSpec::Function([lo, hi](double w) { return Complex(normalized_bump(w, lo, hi)); }),
                               traits);
}

DualWavelet dual_for(const WaveletSpec& psi) {
    const auto cover = find_cover(psi, 0.1 * spectrum_sup(psi), 2.0, true);
    return build_dual(psi, make_bump(cover), cover.common_base());
}

// k-th forward difference of f at x with step h, divided by h^k.
template <class F>
double forward_derivative(F f, double x, double h, int k) {
    double sum = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= k; ++i) {
        const double sign = ((k - i) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binom * f(x + i * h);
        binom = binom * (k - i) / (i + 1);
    }
    return sum / std::pow(h, k);
}

double l2(const SampledSignal& f) { return std::sqrt(signal_energy(f)); }

}  // namespace

TEST(FindCover, MexicanHat) {
    const auto mex = make_wavelet(WaveletKind::mexican_hat);
    const double tau = 0.1 * spectrum_sup(mex);
    const auto e = find_cover(mex, Side::positive, tau, 2.0);
    EXPECT_GE(e.b, 2.0);
    EXPECT_GE(e.floor, tau);
    // Scan-grid oracle: |ψ̂| = sqrt(2π)(2πω)^2 e^{-2π^2ω^2} stays above τ on the cover.
    for (int i = 0; i <= 64; ++i) {
        const double w = e.r * std::pow(e.b, i / 64.0);
        EXPECT_GE(std::sqrt(2.0 * kPi) * std::pow(2.0 * kPi * w, 2) * std::exp(-2.0 * kPi * kPi * w * w),
                  tau * (1.0 - 1e-12));
    }
}

TEST(FindCover, Failures) {
    const auto zero = make_custom_wavelet([](double) { return Complex{}; },
                                          WaveletSpec::Function([](double) { return Complex{}; }), {});
    EXPECT_THROW(find_cover(zero, Side::positive, 1e-6, 2.0), TauberianFail);
    EXPECT_THROW(find_cover(zero, 1e-6, 2.0, false), TauberianFail);
    const auto band = band_wavelet(1.0, 2.0);
    EXPECT_THROW(find_cover(band, Side::positive, 1e-6, 4.0), TauberianFail);
    EXPECT_NO_THROW(find_cover(band, Side::positive, 1e-6, 1.5));
    EXPECT_THROW(find_cover(band, 1e-6, 1.5, true), TauberianFail);
    const auto one = find_cover(band, 1e-6, 1.5, false);
    EXPECT_TRUE(one.positive.has_value());
    EXPECT_FALSE(one.negative.has_value());
    EXPECT_THROW(find_cover(band, Side::positive, 0.0, 1.5), ValidationError);
    EXPECT_THROW(find_cover(band, Side::positive, 1e-6, 1.0), ValidationError);
}

TEST(CoverResult, CommonBaseIsMinimum) {
    CoverResult c;
    c.positive = CoverEntry{1.0, 3.0, 0.5};
    c.negative = CoverEntry{1.0, 2.5, 0.5};
    EXPECT_DOUBLE_EQ(c.common_base(), 2.5);
    c.negative.reset();
    EXPECT_DOUBLE_EQ(c.common_base(), 3.0);
}

TEST(Bump, SupportAndPositivity) {
    CoverResult cover;
    cover.positive = CoverEntry{1.0, 2.0, 0.5};
    cover.negative = CoverEntry{0.5, 4.0, 0.5};
    const auto lambda = make_bump(cover, 0.05);
    const auto& p = *lambda.interval(Side::positive);
    EXPECT_DOUBLE_EQ(p.a, 0.95);
    EXPECT_DOUBLE_EQ(p.c, 2.1);
    EXPECT_EQ(lambda(0.95), 0.0);
    EXPECT_EQ(lambda(2.1), 0.0);
    EXPECT_EQ(lambda(0.5), 0.0);
    EXPECT_EQ(lambda(0.0), 0.0);
    EXPECT_EQ(lambda(3.0), 0.0);
    // Exactly 1 on the closed cover, rising through the collars.
    for (double q : {1.0, 1.5, 2.0}) EXPECT_EQ(lambda(q), 1.0);
    for (double q : {0.5, 1.0, 2.0}) EXPECT_EQ(lambda(-q), 1.0);
    EXPECT_EQ(lambda(-2.1), 0.0);
    EXPECT_GT(lambda(0.97), 0.0);
    EXPECT_LT(lambda(0.97), 1.0);
    EXPECT_LT(lambda(0.96), lambda(0.97));
    // Without a plateau the peak sits at the geometric midpoint.
    const AnnularBump plain(AnnularBump::Interval{1.0, 4.0}, std::nullopt);
    EXPECT_EQ(plain(2.0), 1.0);
    EXPECT_LT(plain(1.9), 1.0);
    EXPECT_NEAR(plain(1.5), plain(4.0 / 1.5), 1e-15);
    EXPECT_THROW(make_bump(cover, 0.0), ValidationError);
    EXPECT_THROW(make_bump(cover, 0.5), ValidationError);
    EXPECT_THROW(make_bump(CoverResult{}, 0.05), ValidationError);
    EXPECT_THROW(AnnularBump(AnnularBump::Interval{2.0, 1.0}, std::nullopt), ValidationError);
    EXPECT_THROW(AnnularBump(AnnularBump::Interval{1.0, 2.0, 0.5, 1.5}, std::nullopt), ValidationError);
}

TEST(Bump, RawProfileMidpointAndSmoothness) {
    const double a = 0.95;
    const double c = 2.1;
    EXPECT_NEAR(bump_profile(0.5 * (a + c), a, c), std::exp(-4.0 / ((c - a) * (c - a))), 1e-15);
    const double h = 1e-3 * (c - a);
    EXPECT_LE(std::abs(forward_derivative([&](double q) { return bump_profile(q, a, c); }, a, h, 6)), 1e-6);
    EXPECT_LE(std::abs(forward_derivative([&](double q) { return bump_profile(q, a, c); }, c - 6 * h, h, 6)), 1e-6);
}

TEST(Bump, LibraryProfileDerivativesVanishAtEdges) {
    const AnnularBump lambda(AnnularBump::Interval{1.0, 2.5, 1.1, 2.2}, std::nullopt);
    for (int k : {1, 3, 6}) {
        double previous = INFINITY;
        for (double rel : {1e-3, 3e-4, 1e-4}) {
            const double h = rel * 1.5;
            const double left = std::abs(forward_derivative(lambda, 1.0, h, k));
            const double right = std::abs(forward_derivative(lambda, 2.5 - k * h, h, k));
            const double worst = std::max(left, right);
            EXPECT_LT(worst, previous) << "k=" << k << " h=" << h;
            previous = worst;
        }
        EXPECT_LE(previous, 1e-6) << "k=" << k;
    }
}

TEST(DualWavelet, VanishesOutsideBumpAndSingleTermIdentity) {
    const auto mex = make_wavelet(WaveletKind::mexican_hat);
    const auto mu = dual_for(mex);
    const auto& iv = *mu.lambda().interval(Side::positive);
    EXPECT_EQ(mu.spectrum(0.0), Complex{});
    EXPECT_EQ(mu.spectrum(iv.a), Complex{});
    EXPECT_EQ(mu.spectrum(iv.c * 1.01), Complex{});
    EXPECT_EQ(mu.spectrum(-iv.a * 0.5), Complex{});
    EXPECT_GT(mu.min_denominator(), 0.0);

    // Find probes where exactly one dilate of λ is active.
    std::size_t single = 0;
    for (int i = 0; i < 2000; ++i) {
        const double w = iv.a * std::pow(iv.c / iv.a, (i + 0.5) / 2000.0);
        if (mu.contributing_j(w).size() != 1 || mu.lambda()(w) == 0.0) continue;
        ++single;
        EXPECT_NEAR(std::abs(eval_spectrum(mex, w) * mu.spectrum(w) - 1.0), 0.0, 1e-14);
    }
    EXPECT_GT(single, 0u);
}

TEST(DualWavelet, DegenerateDenominatorNamesFrequency) {
    // A base so wide that the dilates of λ leave gaps.
    const auto mex = make_wavelet(WaveletKind::mexican_hat);
    const AnnularBump lambda(AnnularBump::Interval{0.3, 0.4}, AnnularBump::Interval{0.3, 0.4});
    try {
        build_dual(mex, lambda, 2.0);
        FAIL() << "expected DegenerateDenominator";
    } catch (const DegenerateDenominator& e) {
        EXPECT_GT(std::abs(e.omega()), 0.0);
    }
    EXPECT_THROW(build_dual(mex, lambda, 1.0), ValidationError);
}

TEST(Partition, ClosedFormZoo) {
    WaveletParams order3;
    order3.order = 3;
    for (const auto& psi : {make_wavelet(WaveletKind::mexican_hat), make_wavelet(WaveletKind::gaussian),
                            make_wavelet(WaveletKind::gaussian_derivative, order3),
                            make_wavelet(WaveletKind::poisson), make_wavelet(WaveletKind::poisson_derivative),
                            make_wavelet(WaveletKind::haar)}) {
        const auto mu = dual_for(psi);
        const auto rep = partition_check(psi, mu, 1e-3, 1e3, 512);
        EXPECT_EQ(rep.probes, 1024u) << psi.name();
        EXPECT_LE(rep.max_deviation, 1e-10) << psi.name();

        // Finite-sum property, asserted exactly per side.
        for (Side side : kBothSides) {
            const auto& iv = *mu.lambda().interval(side);
            const auto bound = static_cast<std::size_t>(std::ceil(std::log(iv.c / iv.a) / std::log(mu.base()))) + 1;
            for (int i = 0; i < 512; ++i) {
                const double w = sign_of(side) * 1e-3 * std::pow(1e6, i / 511.0);
                EXPECT_LE(mu.contributing_j(w).size(), bound) << psi.name();
            }
        }
    }
}

TEST(Partition, SampledSpectrum) {
    const auto mex = make_wavelet(WaveletKind::mexican_hat);
    WaveletParams params;
    params.samples = SampledSignal::sample(UniformGrid::covering(-16.0, 16.0, 1024), [&](double x) { return mex(x); }, true);
    const auto sampled = make_wavelet(WaveletKind::sampled, params);
    const auto rep = partition_check(sampled, dual_for(sampled), 1e-3, 1e3, 512);
    EXPECT_LE(rep.max_deviation, 1e-6);
    EXPECT_THROW(partition_check(sampled, dual_for(sampled), 1.0, 1.0, 8), ValidationError);
}

TEST(Partition, OneSidedConstructionServesItsSide) {
    const auto band = band_wavelet(1.0, 2.5);
    const auto cover = find_cover(band, 1e-3, 1.5, false);
    const auto mu = build_dual(band, make_bump(cover), cover.common_base());
    const auto rep = partition_check(band, mu, 0.1, 10.0, 128);
    EXPECT_EQ(rep.probes, 128u);
    EXPECT_LE(rep.max_deviation, 1e-10);
}

TEST(Reconstruct, SpectralTemporalAndLinearity) {
    const auto grid = UniformGrid::covering(-32.0, 32.0, 2048);
    const auto g = make_test_function(1.0, 2.0, true, grid);
    const auto mex = make_wavelet(WaveletKind::mexican_hat);
    const auto mu = dual_for(mex);
    const auto range = required_j_range(g, mu);
    EXPECT_LE(range.min, range.max);
    const auto spec = reconstruct(g, mex, mu, std::nullopt, ReconstructMode::spectral);
    const auto temp = reconstruct(g, mex, mu, range, ReconstructMode::temporal);
    EXPECT_LE(l2(spec - g) / l2(g), 1e-6);
    EXPECT_LE(l2(temp - g) / l2(g), 1e-3);
    EXPECT_LE(l2(spec - temp) / l2(g), 1e-3);

    const Complex alpha(-1.7, 0.4);
    const auto scaled = reconstruct(alpha * g, mex, mu, range, ReconstructMode::spectral);
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.n; ++k) worst = std::max(worst, std::abs(scaled[k] - alpha * spec[k]));
    EXPECT_LE(worst, 1e-12);
}

TEST(Reconstruct, BandCoverageErrors) {
    const auto grid = UniformGrid::covering(-32.0, 32.0, 2048);
    const auto mex = make_wavelet(WaveletKind::mexican_hat);
    const auto mu = dual_for(mex);
    const auto dc = SampledSignal::sample(grid, [](double x) { return std::exp(-kPi * x * x); }, true);
    EXPECT_THROW(required_j_range(dc, mu), BandCoverage);
    EXPECT_THROW(reconstruct(dc, mex, mu, std::nullopt, ReconstructMode::spectral), BandCoverage);

    const auto g = make_test_function(1.0, 2.0, true, grid);
    const auto range = required_j_range(g, mu);
    EXPECT_THROW(reconstruct(g, mex, mu, JRange{range.max + 1, range.max + 2}, ReconstructMode::spectral),
                 BandCoverage);
}

TEST(Reproducing, PairingBoundWitness) {
    const auto grid = UniformGrid::covering(-32.0, 32.0, 2048);
    const auto mex = make_wavelet(WaveletKind::mexican_hat);
    const auto mu = dual_for(mex);
    const auto g = make_test_function(1.0, 2.0, true, grid);
    const auto range = required_j_range(g, mu);
    const auto scales = ScaleGrid::geometric(mu.base(), range.min, range.max);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> lo(0.3, 3.0);
    for (int trial = 0; trial < 4; ++trial) {
        const double a = lo(rng);
        auto f = make_test_function(a, a + 0.8, true, grid);
        if (trial == 3) f = Complex(1e-9) * f;  // nearly annihilated
        Complex direct{};
        for (std::size_t k = 0; k < grid.n; ++k) direct += f[k] * g[k];
        direct *= grid.dx;

        const double tolerance = cwt(f, mex, scales).max_abs();
        EXPECT_LE(std::abs(direct), pairing_bound(g, mu, range, tolerance) * (1.0 + 1e-12)) << trial;

        const Complex reproduced = reproduced_pairing(f, g, mex, mu, range);
        EXPECT_LE(std::abs(reproduced - direct), 1e-6 * l2(f) * l2(g)) << trial;
    }
}
