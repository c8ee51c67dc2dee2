#include "wavuniq/dualframe.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wavuniq/error.hpp"
#include "wavuniq/transform.hpp"

namespace wavuniq {

namespace {

constexpr double kSignificant = 1e-12;     // relative spectral magnitude treated as signal content
constexpr double kKernelTail = 1e-12;      // temporal kernels truncated below this fraction of peak
constexpr std::size_t kDenominatorProbes = 4096;

struct SignificantBins {
    SpectralSignal spectrum;
    std::vector<std::size_t> bins;
};

SignificantBins significant_bins(const SampledSignal& g) {
    SpectralSignal ghat = forward_ft(g);
    double peak = 0.0;
    for (const auto& v : ghat.values()) peak = std::max(peak, std::abs(v));
    std::vector<std::size_t> bins;
    if (peak > 0.0) {
        for (std::size_t i = 0; i < ghat.size(); ++i) {
            if (std::abs(ghat[i]) > kSignificant * peak) bins.push_back(i);
        }
    }
    return {std::move(ghat), std::move(bins)};
}

[[noreturn]] void throw_uncovered(const std::vector<double>& omegas, const std::string& why) {
    std::ostringstream msg;
    msg.precision(6);
    msg << why << " (" << omegas.size() << " frequencies, e.g.";
    for (std::size_t i = 0; i < std::min<std::size_t>(omegas.size(), 4); ++i) msg << ' ' << omegas[i];
    msg << ')';
    throw BandCoverage(msg.str());
}

// Adds kernel(x_m) for integer offsets m in [m_lo, m_hi] into a length-n
// periodic table indexed by m mod n.
template <typename Kernel>
void fold_kernel(std::vector<Complex>& table, long long m_lo, long long m_hi, double dx, Kernel&& kernel) {
    const auto n = static_cast<long long>(table.size());
    for (long long m = m_lo; m <= m_hi; ++m) {
        table[static_cast<std::size_t>(((m % n) + n) % n)] += kernel(static_cast<double>(m) * dx);
    }
}

// Circular convolution on the grid: out[m] = dx Σ_k kernel[k] in[m - k].
std::vector<Complex> circular_convolve(const std::vector<Complex>& kernel, std::span<const Complex> in,
                                       double dx) {
    const std::size_t n = in.size();
    std::vector<std::size_t> taps;
    for (std::size_t k = 0; k < n; ++k) {
        if (kernel[k] != Complex{}) taps.push_back(k);
    }
    std::vector<Complex> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        Complex acc{};
        for (std::size_t k : taps) acc += kernel[k] * in[(m + n - k) % n];
        out[m] = acc * dx;
    }
    return out;
}

// Radius beyond which |μ| stays below kKernelTail of its peak, from an FFT of
// μ̂ on a window that is widened until the radius sits well inside it.
double dual_time_radius(const DualWavelet& mu) {
    double c_max = 0.0;
    for (Side side : kBothSides) {
        if (const auto& iv = mu.lambda().interval(side)) c_max = std::max(c_max, iv->c);
    }
    const double dy = 0.25 / c_max;
    for (std::size_t ny = 1024; ny <= (1u << 22); ny *= 2) {
        const UniformGrid grid = UniformGrid::make(-0.5 * static_cast<double>(ny) * dy, dy, ny);
        const SpectralGrid sg = SpectralGrid::dual_of(grid);
        std::vector<Complex> spec(ny);
        for (std::size_t i = 0; i < ny; ++i) spec[i] = mu.spectrum(sg.omega(i));
        const SampledSignal base = inverse_ft(SpectralSignal(sg, std::move(spec)), grid);
        double peak = 0.0;
        for (const auto& v : base.values()) peak = std::max(peak, std::abs(v));
        double radius = 0.0;
        for (std::size_t k = 0; k < ny; ++k) {
            if (std::abs(base[k]) > kKernelTail * peak) radius = std::max(radius, std::abs(grid.x(k)));
        }
        if (radius < 0.4 * grid.length() * 0.5) return radius + dy;
    }
    throw ValidationError("dual wavelet does not decay within the supported window");
}

// C∞ step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double p = std::exp(-1.0 / x);
    const double q = std::exp(-1.0 / (1.0 - x));
    return p / (p + q);
}

}  // namespace

// ---------------------------------------------------------------- cover

double CoverResult::common_base() const {
    double b = 0.0;
    for (const auto* e : {&positive, &negative}) {
        if (*e) b = (b == 0.0) ? (*e)->b : std::min(b, (*e)->b);
    }
    if (b == 0.0) throw TauberianFail("cover is empty on both sides");
    return b;
}

CoverEntry find_cover(const WaveletSpec& psi, Side side, double tau, double b_min, const RadialScan& scan) {
    if (!(tau > 0.0)) throw ValidationError("find_cover: threshold must be positive");
    if (!(b_min > 1.0)) throw ValidationError("find_cover: b_min must exceed 1");
    const double sigma = sign_of(side);
    const auto r = scan.nodes();
    std::vector<double> mag(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) mag[i] = std::abs(eval_spectrum(psi, sigma * r[i]));

    std::optional<CoverEntry> best;
    std::size_t i = 0;
    while (i < r.size()) {
        if (mag[i] < tau) {
            ++i;
            continue;
        }
        std::size_t j = i;
        double floor = mag[i];
        while (j + 1 < r.size() && mag[j + 1] >= tau) floor = std::min(floor, mag[++j]);
        const double ratio = r[j] / r[i];
        if (!best || ratio > best->b) best = CoverEntry{r[i], ratio, floor};
        i = j + 1;
    }
    if (!best || best->b < b_min) {
        std::ostringstream msg;
        msg << "no interval [r, b r] with b >= " << b_min << " and |psi_hat| >= " << tau << " on side "
            << to_string(side);
        if (best) msg << " (best ratio " << best->b << ")";
        throw TauberianFail(msg.str());
    }
    return *best;
}

CoverResult find_cover(const WaveletSpec& psi, double tau, double b_min, bool require_both_sides,
                       const RadialScan& scan) {
    CoverResult out;
    for (Side side : kBothSides) {
        try {
            (side == Side::positive ? out.positive : out.negative) = find_cover(psi, side, tau, b_min, scan);
        } catch (const TauberianFail&) {
            if (require_both_sides) throw;
        }
    }
    if (!out.positive && !out.negative) throw TauberianFail("no cover on either side");
    return out;
}

// ---------------------------------------------------------------- bump

AnnularBump::AnnularBump(std::optional<Interval> positive, std::optional<Interval> negative)
    : positive_(positive), negative_(negative) {
    for (auto* iv : {&positive_, &negative_}) {
        if (!*iv) continue;
        auto& v = **iv;
        if (!(v.a > 0.0 && v.c > v.a)) throw ValidationError("AnnularBump: need 0 < a < c");
        if (v.lo == 0.0 && v.hi == 0.0) {
            v.lo = v.hi = std::sqrt(v.a * v.c);
        } else if (!(v.a < v.lo && v.lo <= v.hi && v.hi < v.c)) {
            throw ValidationError("AnnularBump: plateau must lie inside (a, c)");
        }
    }
}

double AnnularBump::operator()(double omega) const {
    if (omega == 0.0) return 0.0;
    const auto& iv = omega > 0.0 ? positive_ : negative_;
    if (!iv) return 0.0;
    const double q = std::abs(omega);
    if (!(q > iv->a && q < iv->c)) return 0.0;
    if (q >= iv->lo && q <= iv->hi) return 1.0;
    if (q < iv->lo) return smooth_step(std::log(q / iv->a) / std::log(iv->lo / iv->a));
    return smooth_step(std::log(iv->c / q) / std::log(iv->c / iv->hi));
}

AnnularBump make_bump(const CoverResult& cover, double margin) {
    if (!(margin > 0.0 && margin < 0.5)) throw ValidationError("make_bump: margin must lie in (0, 1/2)");
    auto interval = [margin](const std::optional<CoverEntry>& e) -> std::optional<AnnularBump::Interval> {
        if (!e) return std::nullopt;
        return AnnularBump::Interval{e->r * (1.0 - margin), e->b * e->r * (1.0 + margin), e->r, e->b * e->r};
    };
    if (!cover.positive && !cover.negative) throw ValidationError("make_bump: empty cover");
    return AnnularBump(interval(cover.positive), interval(cover.negative));
}

// ---------------------------------------------------------------- dual

DualWavelet::DualWavelet(WaveletSpec source, AnnularBump lambda, double base, double min_denominator)
    : source_(std::move(source)),
      lambda_(std::move(lambda)),
      base_(base),
      log_base_(std::log(base)),
      min_denominator_(min_denominator) {
    if (!(base > 1.0)) throw ValidationError("DualWavelet: base must exceed 1");
}

double DualWavelet::power(int j) const { return std::pow(base_, j); }

std::vector<int> DualWavelet::contributing_j(double omega) const {
    std::vector<int> out;
    if (omega == 0.0) return out;
    const auto& iv = lambda_.interval(omega > 0.0 ? Side::positive : Side::negative);
    if (!iv) return out;
    const double q = std::abs(omega);
    const int lo = static_cast<int>(std::floor(std::log(iv->a / q) / log_base_));
    const int hi = static_cast<int>(std::ceil(std::log(iv->c / q) / log_base_));
    for (int j = lo; j <= hi; ++j) {
        if (lambda_(power(j) * omega) > 0.0) out.push_back(j);
    }
    return out;
}

double DualWavelet::denominator(double omega) const {
    double sum = 0.0;
    for (int j : contributing_j(omega)) {
        const double w = power(j) * omega;
        sum += std::norm(eval_spectrum(source_, w)) * lambda_(w);
    }
    return sum;
}

Complex DualWavelet::spectrum(double omega) const {
    const double lam = lambda_(omega);
    if (lam == 0.0) return {};
    return std::conj(eval_spectrum(source_, omega)) * lam / denominator(omega);
}

DualWavelet build_dual(const WaveletSpec& psi, const AnnularBump& lambda, double base) {
    if (!(base > 1.0)) throw ValidationError("build_dual: base must exceed 1");
    const double sup = spectrum_sup(psi);
    const double delta = 1e-12 * sup * sup;
    DualWavelet probe(psi, lambda, base, 0.0);

    double min_d = std::numeric_limits<double>::infinity();
    bool any = false;
    for (Side side : kBothSides) {
        const auto& iv = lambda.interval(side);
        if (!iv) continue;
        any = true;
        // D(b ω) = D(ω), so one log-period starting at the bump's left edge suffices.
        for (std::size_t i = 0; i < kDenominatorProbes; ++i) {
            const double u = static_cast<double>(i) / kDenominatorProbes;
            const double omega = sign_of(side) * iv->a * std::pow(base, u);
            const double d = probe.denominator(omega);
            if (!(d >= delta)) {
                std::ostringstream msg;
                msg << "denominator " << d << " below " << delta << " at omega = " << omega;
                throw DegenerateDenominator(msg.str(), omega);
            }
            min_d = std::min(min_d, d);
        }
    }
    if (!any) throw ValidationError("build_dual: bump has no support");
    return DualWavelet(psi, lambda, base, min_d);
}

PartitionReport partition_check(const WaveletSpec& psi, const DualWavelet& mu, double omega_lo,
                                double omega_hi, std::size_t n_probe) {
    if (!(omega_lo > 0.0) || !(omega_hi > omega_lo) || n_probe < 2) {
        throw ValidationError("partition_check: need 0 < lo < hi and at least two probes");
    }
    PartitionReport rep{0.0, 0, 0};
    const double ratio = omega_hi / omega_lo;
    for (Side side : kBothSides) {
        if (!mu.lambda().interval(side)) continue;
        for (std::size_t i = 0; i < n_probe; ++i) {
            const double q = omega_lo * std::pow(ratio, static_cast<double>(i) / static_cast<double>(n_probe - 1));
            const double omega = sign_of(side) * q;
            Complex sum{};
            const auto js = mu.contributing_j(omega);
            for (int j : js) {
                const double w = mu.power(j) * omega;
                sum += eval_spectrum(psi, w) * mu.spectrum(w);
            }
            rep.max_deviation = std::max(rep.max_deviation, std::abs(sum - 1.0));
            rep.max_terms = std::max(rep.max_terms, js.size());
            ++rep.probes;
        }
    }
    return rep;
}

// ---------------------------------------------------------------- reconstruction

JRange required_j_range(const SampledSignal& g, const DualWavelet& mu) {
    const auto sig = significant_bins(g);
    JRange range{0, -1};
    bool first = true;
    std::vector<double> uncovered;
    for (std::size_t i : sig.bins) {
        const double omega = sig.spectrum.omega(i);
        if (omega == 0.0) {
            throw BandCoverage("signal has spectral content at frequency 0, which cannot be reproduced");
        }
        const auto js = mu.contributing_j(omega);
        if (js.empty()) {
            uncovered.push_back(omega);
            continue;
        }
        range.min = first ? js.front() : std::min(range.min, js.front());
        range.max = first ? js.back() : std::max(range.max, js.back());
        first = false;
    }
    if (!uncovered.empty()) throw_uncovered(uncovered, "signal band not covered by the dual wavelet");
    return range;
}

SampledSignal dual_filter(const SampledSignal& g, const DualWavelet& mu, int j) {
    const SpectralSignal ghat = forward_ft(g);
    const double bj = mu.power(j);
    std::vector<Complex> spec(ghat.size());
    for (std::size_t i = 0; i < ghat.size(); ++i) spec[i] = mu.spectrum(bj * ghat.omega(i)) * ghat[i];
    return inverse_ft(SpectralSignal(ghat.grid(), std::move(spec)), g.grid());
}

SampledSignal reconstruct(const SampledSignal& g, const WaveletSpec& psi, const DualWavelet& mu,
                          std::optional<JRange> j_range, ReconstructMode mode) {
    const JRange needed = required_j_range(g, mu);
    JRange range = j_range.value_or(needed);
    if (j_range && needed.min <= needed.max && (needed.min < range.min || needed.max > range.max)) {
        const auto sig = significant_bins(g);
        std::vector<double> uncovered;
        for (std::size_t i : sig.bins) {
            for (int j : mu.contributing_j(sig.spectrum.omega(i))) {
                if (j < range.min || j > range.max) {
                    uncovered.push_back(sig.spectrum.omega(i));
                    break;
                }
            }
        }
        throw_uncovered(uncovered, "j-range [" + std::to_string(range.min) + ", " +
                                       std::to_string(range.max) + "] does not cover the signal band");
    }

    const UniformGrid& grid = g.grid();
    if (mode == ReconstructMode::spectral) {
        const SpectralSignal ghat = forward_ft(g);
        std::vector<Complex> spec(ghat.size());
        for (std::size_t i = 0; i < ghat.size(); ++i) {
            const double omega = ghat.omega(i);
            Complex m{};
            for (int j : mu.contributing_j(omega)) {
                if (j < range.min || j > range.max) continue;
                const double w = mu.power(j) * omega;
                m += eval_spectrum(psi, w) * mu.spectrum(w);
            }
            spec[i] = m * ghat[i];
        }
        return inverse_ft(SpectralSignal(ghat.grid(), std::move(spec), g.is_real()), grid);
    }

    // Temporal: explicit circular convolutions with sampled, truncated kernels.
    const std::size_t n = grid.n;
    const double dx = grid.dx;
    const double mu_radius = dual_time_radius(mu);

    // Trapezoid nodes over each bump interval; the node spacing keeps the
    // periodic images of μ at least 2.5 radii apart.
    struct Nodes {
        std::vector<double> nu;
        std::vector<Complex> weight;  // μ̂(ν) h
    };
    std::vector<Nodes> nodes;
    for (Side side : kBothSides) {
        const auto& iv = mu.lambda().interval(side);
        if (!iv) continue;
        const double width = iv->c - iv->a;
        const auto count = static_cast<std::size_t>(std::ceil(2.5 * width * mu_radius)) + 16;
        const double h = width / static_cast<double>(count);
        Nodes nd;
        for (std::size_t k = 1; k < count; ++k) {
            const double nu = sign_of(side) * (iv->a + static_cast<double>(k) * h);
            nd.nu.push_back(nu);
            nd.weight.push_back(mu.spectrum(nu) * h);
        }
        nodes.push_back(std::move(nd));
    }
    auto mu_at = [&](double y) {
        // μ(y) = ∫ μ̂(ν) e^{2πiνy} dν by the trapezoid rule.
        Complex sum{};
        for (const auto& nd : nodes) {
            if (nd.nu.empty()) continue;
            const double h = nd.nu.size() > 1 ? nd.nu[1] - nd.nu[0] : 0.0;
            Complex phase = std::polar(1.0, kTwoPi * nd.nu.front() * y);
            const Complex step = std::polar(1.0, kTwoPi * h * y);
            for (std::size_t k = 0; k < nd.nu.size(); ++k) {
                if (k % 64 == 0) phase = std::polar(1.0, kTwoPi * nd.nu[k] * y);
                sum += nd.weight[k] * phase;
                phase *= step;
            }
        }
        return sum;
    };

    double psi_lo;
    double psi_hi;
    if (psi.support()) {
        psi_lo = psi.support()->first;
        psi_hi = psi.support()->second;
    } else {
        psi_hi = psi.tail_radius(kKernelTail);
        psi_lo = -psi_hi;
    }

    std::vector<Complex> total(n);
    for (int j = range.min; j <= range.max; ++j) {
        const double bj = mu.power(j);
        std::vector<Complex> mu_kernel(n);
        const auto m_mu = static_cast<long long>(std::floor(bj * mu_radius / dx));
        fold_kernel(mu_kernel, -m_mu, m_mu, dx, [&](double x) { return mu_at(x / bj) / bj; });

        std::vector<Complex> psi_kernel(n);
        fold_kernel(psi_kernel, static_cast<long long>(std::ceil(bj * psi_lo / dx)),
                    static_cast<long long>(std::floor(bj * psi_hi / dx)), dx,
                    [&](double x) { return psi(x / bj) / bj; });

        const auto stage = circular_convolve(mu_kernel, g.values(), dx);
        const auto term = circular_convolve(psi_kernel, stage, dx);
        for (std::size_t m = 0; m < n; ++m) total[m] += term[m];
    }
    return SampledSignal(grid, std::move(total), g.is_real());
}

double pairing_bound(const SampledSignal& g, const DualWavelet& mu, JRange j_range, double tolerance) {
    double sum = 0.0;
    for (int j = j_range.min; j <= j_range.max; ++j) {
        const SampledSignal h = dual_filter(g, mu, j);
        double l1 = 0.0;
        for (const auto& v : h.values()) l1 += std::abs(v);
        sum += l1 * g.grid().dx / std::sqrt(mu.power(j));
    }
    return tolerance * sum;
}

Complex reproduced_pairing(const SampledSignal& f, const SampledSignal& g, const WaveletSpec& analysing,
                           const DualWavelet& mu, JRange j_range) {
    if (!(f.grid() == g.grid())) throw ValidationError("reproduced_pairing: grid mismatch");
    if (j_range.min > j_range.max) return {};
    const Scalogram w = cwt(f, analysing, ScaleGrid::geometric(mu.base(), j_range.min, j_range.max));
    Complex total{};
    for (int j = j_range.min; j <= j_range.max; ++j) {
        const auto row = static_cast<std::size_t>(j - j_range.min);
        const SampledSignal h = dual_filter(g, mu, j);
        Complex acc{};
        for (std::size_t k = 0; k < h.size(); ++k) acc += w.at(row, k) * h[k];
        total += acc * g.grid().dx / std::sqrt(mu.power(j));
    }
    return total;
}

}  // namespace wavuniq
