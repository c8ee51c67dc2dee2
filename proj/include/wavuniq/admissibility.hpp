#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "wavuniq/spectral.hpp"
#include "wavuniq/wavelets.hpp"

namespace wavuniq {

/// The unit sphere of the real line: the two half-lines.
enum class Side : int { positive = 1, negative = -1 };

inline constexpr std::array<Side, 2> kBothSides{Side::positive, Side::negative};

inline double sign_of(Side side) { return side == Side::positive ? 1.0 : -1.0; }
std::string_view to_string(Side side);

/// Log-spaced radial scan r_i = r_min 2^{i / per_octave}.
struct RadialScan {
    double r_min = 0x1p-20;
    double r_max = 0x1p20;
    int per_octave = 64;

    std::vector<double> nodes() const;
};

struct TauberianResult {
    bool nontrivial = false;
    double measure = 0.0;  // Σ dr over cells where |ψ̂(σ r)| > τ
};

/// sup |ψ̂| over the scan on both sides.
double spectrum_sup(const WaveletSpec& psi, const RadialScan& scan = {});

/// Default threshold τ = 1e-9 sup |ψ̂|.
double default_threshold(const WaveletSpec& psi, const RadialScan& scan = {});

TauberianResult tauberian_check(const WaveletSpec& psi, Side side, double tau,
                                const RadialScan& scan = {});

/// ∫_0^∞ |ψ̂(σ s)|^2 ds/s, or nullopt when the integral diverges.
struct CalderonValue {
    std::optional<double> value;
    bool divergent() const { return !value.has_value(); }
};

CalderonValue calderon_constant(const WaveletSpec& psi, Side side);

/// ∫_0^∞ |ψ̂(σ r)|^2 dr by per-decade quadrature (the wavelet factor of the
/// directional energy product).
double wavelet_directional_energy(const WaveletSpec& psi, Side side);

/// Σ over frequencies with sign σ of |ĝ(ω)|^2 dω.
double directional_energy(const SpectralSignal& g, Side side);

struct SideCertificate {
    Side side;
    double signal_energy;
    double wavelet_energy;
    double product;
};

/// Per-side products of signal and wavelet directional energies, with ψ̂
/// sampled on the signal's spectral grid.
std::array<SideCertificate, 2> uniqueness_certificate(const SampledSignal& f, const WaveletSpec& psi);

struct SideReport {
    Side side;
    bool tauberian;
    double tauberian_measure;
    CalderonValue calderon;
    double directional_energy;
};

struct AdmissibilityReport {
    double threshold;
    std::array<SideReport, 2> sides;
};

/// Combines the checks above; τ defaults to default_threshold(psi).
AdmissibilityReport admissibility_report(const WaveletSpec& psi, std::optional<double> tau = {});

}  // namespace wavuniq
