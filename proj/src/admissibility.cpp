#include "wavuniq/admissibility.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

#include "wavuniq/error.hpp"

namespace wavuniq {

namespace {

constexpr int kMaxDecades = 40;
constexpr int kPanelsPerDecade = 16;
constexpr double kCauchyRatio = 1e-8;
const double kLn10 = std::log(10.0);

// ∫ over one decade [10^k, 10^{k+1}] of |ψ̂(σ s)|^2 s^p ds/s, in u = ln s.
double decade_integral(const WaveletSpec& psi, double sigma, int p, int k) {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const double u0 = k * kLn10;
    const double h = kLn10 / kPanelsPerDecade;
    double sum = 0.0;
    for (int i = 0; i < kPanelsPerDecade; ++i) {
        const double a = u0 + i * h;
        sum += Rule::integrate(
            [&](double u) {
                const double s = std::exp(u);
                return std::norm(eval_spectrum(psi, sigma * s)) * (p == 0 ? 1.0 : std::pow(s, p));
            },
            a, a + h);
    }
    return sum;
}

// Sums decades outward from the peak; nullopt if either direction fails the
// Cauchy criterion within kMaxDecades.
std::optional<double> radial_integral(const WaveletSpec& psi, Side side, int p) {
    const double sigma = sign_of(side);
    RadialScan scan;
    double peak = 0.0;
    double peak_r = 1.0;
    for (double r : scan.nodes()) {
        const double v = std::abs(eval_spectrum(psi, sigma * r));
        if (v > peak) {
            peak = v;
            peak_r = r;
        }
    }
    if (peak == 0.0) return 0.0;

    const int k0 = static_cast<int>(std::floor(std::log10(peak_r)));
    double total = decade_integral(psi, sigma, p, k0);
    for (int direction : {-1, +1}) {
        bool converged = false;
        for (int step = 1; step <= kMaxDecades; ++step) {
            const double part = decade_integral(psi, sigma, p, k0 + direction * step);
            total += part;
            if (part <= kCauchyRatio * total) {
                converged = true;
                break;
            }
        }
        if (!converged) return std::nullopt;
    }
    return total;
}

}  // namespace

std::string_view to_string(Side side) { return side == Side::positive ? "+" : "-"; }

std::vector<double> RadialScan::nodes() const {
    if (!(r_min > 0.0) || !(r_max > r_min) || per_octave < 1) {
        throw ValidationError("RadialScan: invalid range");
    }
    const auto count = static_cast<std::size_t>(std::llround(std::log2(r_max / r_min) * per_octave));
    std::vector<double> out(count + 1);
    for (std::size_t i = 0; i <= count; ++i) {
        out[i] = r_min * std::exp2(static_cast<double>(i) / per_octave);
    }
    return out;
}

double spectrum_sup(const WaveletSpec& psi, const RadialScan& scan) {
    double sup = 0.0;
    for (double r : scan.nodes()) {
        sup = std::max({sup, std::abs(eval_spectrum(psi, r)), std::abs(eval_spectrum(psi, -r))});
    }
    return sup;
}

double default_threshold(const WaveletSpec& psi, const RadialScan& scan) {
    return 1e-9 * spectrum_sup(psi, scan);
}

TauberianResult tauberian_check(const WaveletSpec& psi, Side side, double tau, const RadialScan& scan) {
    if (!(tau > 0.0)) throw ValidationError("tauberian_check: threshold must be positive");
    const double sigma = sign_of(side);
    const auto r = scan.nodes();
    TauberianResult out;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double mid = std::sqrt(r[i] * r[i + 1]);
        if (std::abs(eval_spectrum(psi, sigma * mid)) > tau) out.measure += r[i + 1] - r[i];
    }
    out.nontrivial = out.measure > 0.0;
    return out;
}

CalderonValue calderon_constant(const WaveletSpec& psi, Side side) {
    return CalderonValue{radial_integral(psi, side, 0)};
}

double wavelet_directional_energy(const WaveletSpec& psi, Side side) {
    const auto v = radial_integral(psi, side, 1);
    if (!v) throw ValidationError("wavelet_directional_energy: integral does not converge");
    return *v;
}

double directional_energy(const SpectralSignal& g, Side side) {
    const double sigma = sign_of(side);
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (sigma * g.omega(i) > 0.0) sum += std::norm(g[i]);
    }
    return sum * g.grid().domega;
}

std::array<SideCertificate, 2> uniqueness_certificate(const SampledSignal& f, const WaveletSpec& psi) {
    const SpectralSignal fhat = forward_ft(f);
    std::vector<Complex> sampled(fhat.size());
    for (std::size_t i = 0; i < fhat.size(); ++i) sampled[i] = eval_spectrum(psi, fhat.omega(i));
    const SpectralSignal psihat(fhat.grid(), std::move(sampled));

    std::array<SideCertificate, 2> out{};
    for (std::size_t i = 0; i < 2; ++i) {
        const Side side = kBothSides[i];
        const double fe = directional_energy(fhat, side);
        const double we = directional_energy(psihat, side);
        out[i] = SideCertificate{side, fe, we, fe * we};
    }
    return out;
}

AdmissibilityReport admissibility_report(const WaveletSpec& psi, std::optional<double> tau) {
    const double threshold = tau ? *tau : default_threshold(psi);
    AdmissibilityReport report{threshold, {}};
    for (std::size_t i = 0; i < 2; ++i) {
        const Side side = kBothSides[i];
        const auto t = tauberian_check(psi, side, threshold);
        const auto energy = radial_integral(psi, side, 1);
        report.sides[i] = SideReport{side, t.nontrivial, t.measure, calderon_constant(psi, side),
                                     energy.value_or(std::numeric_limits<double>::infinity())};
    }
    return report;
}

}  // namespace wavuniq
