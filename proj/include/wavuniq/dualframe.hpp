#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wavuniq/admissibility.hpp"
#include "wavuniq/spectral.hpp"
#include "wavuniq/wavelets.hpp"

namespace wavuniq {

/// An interval [r, b r] on one side on which |ψ̂| stays at or above `floor`.
struct CoverEntry {
    double r;
    double b;
    double floor;
};

struct CoverResult {
    std::optional<CoverEntry> positive;
    std::optional<CoverEntry> negative;

    const std::optional<CoverEntry>& get(Side side) const {
        return side == Side::positive ? positive : negative;
    }
    /// Smallest b over the sides that have a cover.
    double common_base() const;
};

/// Longest window of the radial scan on which min |ψ̂(σ r)| >= τ. Throws
/// TauberianFail when no window reaches ratio b_min.
CoverEntry find_cover(const WaveletSpec& psi, Side side, double tau, double b_min,
                      const RadialScan& scan = {});

/// Both sides. A failing side is left empty unless require_both_sides is set,
/// in which case its TauberianFail propagates.
CoverResult find_cover(const WaveletSpec& psi, double tau, double b_min, bool require_both_sides,
                       const RadialScan& scan = {});

/// Smooth bump on an interval per side, zero near the origin.
///
/// On (a, c) the bump is 1 on the plateau [lo, hi] and rises and falls in
/// ln|ω| through the C∞ step e^{-1/x} / (e^{-1/x} + e^{-1/(1-x)}) over the
/// collars (a, lo) and (hi, c). Without a plateau it collapses to the
/// geometric midpoint.
class AnnularBump {
public:
    struct Interval {
        double a;
        double c;
        double lo = 0.0;  // plateau; both zero means none
        double hi = 0.0;
    };

    AnnularBump(std::optional<Interval> positive, std::optional<Interval> negative);

    double operator()(double omega) const;
    const std::optional<Interval>& interval(Side side) const {
        return side == Side::positive ? positive_ : negative_;
    }

private:
    std::optional<Interval> positive_;
    std::optional<Interval> negative_;
};

/// (a, c) = (r(1 - ε), b r (1 + ε)) with plateau [r, b r] on each covered side.
AnnularBump make_bump(const CoverResult& cover, double margin = 0.05);

/// μ with μ̂(ω) = conj(ψ̂(ω)) λ(ω) / Σ_j |ψ̂(b^j ω)|^2 λ(b^j ω), evaluated on
/// demand.
class DualWavelet {
public:
    DualWavelet(WaveletSpec source, AnnularBump lambda, double base, double min_denominator);

    const WaveletSpec& source() const { return source_; }
    const AnnularBump& lambda() const { return lambda_; }
    double base() const { return base_; }
    /// Smallest denominator seen while validating the construction.
    double min_denominator() const { return min_denominator_; }

    /// Integers j with λ(b^j ω) > 0, ascending.
    std::vector<int> contributing_j(double omega) const;
    double denominator(double omega) const;
    Complex spectrum(double omega) const;
    double power(int j) const;

private:
    WaveletSpec source_;
    AnnularBump lambda_;
    double base_;
    double log_base_;
    double min_denominator_;
};

/// Validates D(ω) >= 1e-12 sup|ψ̂|^2 over one log-period per side and throws
/// DegenerateDenominator with the offending ω otherwise.
DualWavelet build_dual(const WaveletSpec& psi, const AnnularBump& lambda, double base);

struct PartitionReport {
    double max_deviation;
    std::size_t probes;
    std::size_t max_terms;  // most j-terms contributing at any probe
};

/// max |Σ_j ψ̂(b^j ω) μ̂(b^j ω) - 1| over n_probe log-spaced ω per covered side.
PartitionReport partition_check(const WaveletSpec& psi, const DualWavelet& mu, double omega_lo,
                                double omega_hi, std::size_t n_probe);

enum class ReconstructMode { spectral, temporal };

struct JRange {
    int min;
    int max;
};

/// Smallest j-range reproducing every significant frequency of g. Throws
/// BandCoverage when g has content at 0 or on a side without a bump.
JRange required_j_range(const SampledSignal& g, const DualWavelet& mu);

/// Σ_j ψ_{b^j} * μ_{b^j} * g with L^1-normalized dilates. The convolving
/// wavelet is the one whose spectrum defined μ.
SampledSignal reconstruct(const SampledSignal& g, const WaveletSpec& psi, const DualWavelet& mu,
                          std::optional<JRange> j_range, ReconstructMode mode);

/// μ_{b^j} * g, computed spectrally.
SampledSignal dual_filter(const SampledSignal& g, const DualWavelet& mu, int j);

/// tolerance · Σ_j ||μ_{b^j} * g||_1 b^{-j/2}: bound on |∫ f g| when
/// |<f, ψ_{b^j,t}>| <= tolerance for every j in range and every t.
double pairing_bound(const SampledSignal& g, const DualWavelet& mu, JRange j_range, double tolerance);

/// Σ_j b^{-j/2} ∫ W(b^j, t) (μ_{b^j} * g)(t) dt, where W is the transform of f
/// with respect to conj of the wavelet that defined μ. Equals ∫ f g when the
/// j-range covers g.
Complex reproduced_pairing(const SampledSignal& f, const SampledSignal& g, const WaveletSpec& analysing,
                           const DualWavelet& mu, JRange j_range);

}  // namespace wavuniq
