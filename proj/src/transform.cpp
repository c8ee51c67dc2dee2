#include "wavuniq/transform.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "wavuniq/error.hpp"

namespace wavuniq {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

struct PanelEstimate {
    Complex value;
    double error;
    double l1;  // ∫|g|, guards the tolerance against cancellation
};

// One complex-valued Gauss-Kronrod (15, 31) pass over [a, b].
PanelEstimate kronrod_panel(const std::function<Complex(double)>& g, double a, double b) {
    const auto& nodes = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = boost::math::quadrature::gauss<double, 15>::weights();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Complex kron{};
    Complex gauss{};
    double l1 = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] == 0.0) {
            const Complex v = g(mid);
            kron += wk[i] * v;
            l1 += wk[i] * std::abs(v);
            if (i % 2 == 0) gauss += wg[i / 2] * v;
            continue;
        }
        const Complex lo = g(mid - half * nodes[i]);
        const Complex hi = g(mid + half * nodes[i]);
        kron += wk[i] * (lo + hi);
        l1 += wk[i] * (std::abs(lo) + std::abs(hi));
        if (i % 2 == 0) gauss += wg[i / 2] * (lo + hi);
    }
    return {kron * half, std::abs(kron - gauss) * half, l1 * half};
}

Complex refine(const std::function<Complex(double)>& g, double a, double b, const PanelEstimate& est,
               double abs_tol, unsigned depth) {
    if (est.error <= abs_tol || depth == 0) return est.value;
    const double m = 0.5 * (a + b);
    const auto left = kronrod_panel(g, a, m);
    const auto right = kronrod_panel(g, m, b);
    return refine(g, a, m, left, 0.5 * abs_tol, depth - 1) + refine(g, m, b, right, 0.5 * abs_tol, depth - 1);
}

// Splits [a, b] at the given cut points and into panels no wider than
// max_panel, then refines each panel by bisection until its share of
// rel_tol * ∫|g| is met.
Complex integrate_panels(const std::function<Complex(double)>& g, double a, double b,
                         std::vector<double> cuts, double max_panel, double rel_tol) {
    if (!(b > a)) return {};
    cuts.push_back(a);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    struct Panel {
        double a;
        double b;
        PanelEstimate est;
    };
    std::vector<Panel> panels;
    double l1 = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = std::max(cuts[i], a);
        const double hi = std::min(cuts[i + 1], b);
        if (!(hi > lo)) continue;
        const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / max_panel)));
        const double h = (hi - lo) / static_cast<double>(count);
        for (std::size_t p = 0; p < count; ++p) {
            const double pa = lo + static_cast<double>(p) * h;
            const double pb = (p + 1 == count) ? hi : pa + h;
            panels.push_back({pa, pb, kronrod_panel(g, pa, pb)});
            l1 += panels.back().est.l1;
        }
    }
    constexpr unsigned kDepth = 18;
    const double tol = rel_tol * l1;
    Complex total{};
    for (const auto& p : panels) total += refine(g, p.a, p.b, p.est, tol * (p.b - p.a) / (b - a), kDepth);
    return total;
}

Complex integrate_tail(const std::function<Complex(double)>& g, double from, int direction,
                       double rel_tol) {
    boost::math::quadrature::exp_sinh<double> rule;
    const double inf = std::numeric_limits<double>::infinity();
    auto part = [&](auto&& component) {
        // Map onto [0, inf) so the rule sees a decaying integrand.
        return rule.integrate(
            [&](double u) { return component(g(from + direction * u)); }, 0.0, inf, rel_tol);
    };
    const double re = part([](Complex c) { return c.real(); });
    const double im = part([](Complex c) { return c.imag(); });
    return {re, im};
}

Complex pairing(const std::function<Complex(double)>& f, std::optional<std::pair<double, double>> window,
                const WaveletSpec& psi, double s, double t, const QuadratureOptions& options) {
    const DilatedWavelet dilated(psi, s, t);
    auto integrand = [&](double x) { return f(x) * std::conj(dilated(x)); };
    std::vector<double> cuts;
    for (double b : psi.breakpoints()) cuts.push_back(t + s * b);
    const double panel = std::min(options.max_panel, 0.5 * s);

    // Effective support of ψ_{s,t}; unbounded for slowly decaying wavelets.
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    if (psi.support()) {
        lo = t + s * psi.support()->first;
        hi = t + s * psi.support()->second;
    } else if (const double radius = psi.tail_radius(options.tail_rel); radius <= options.core_radius) {
        lo = t - s * radius;
        hi = t + s * radius;
    }

    if (window) {
        lo = std::max(lo, window->first);
        hi = std::min(hi, window->second);
        return integrate_panels(integrand, lo, hi, cuts, panel, options.rel_tol);
    }
    if (std::isfinite(lo) && std::isfinite(hi)) {
        return integrate_panels(integrand, lo, hi, cuts, panel, options.rel_tol);
    }
    const double core_lo = t - s * options.core_radius;
    const double core_hi = t + s * options.core_radius;
    return integrate_panels(integrand, core_lo, core_hi, cuts, panel, options.rel_tol) +
           integrate_tail(integrand, core_hi, +1, options.rel_tol) +
           integrate_tail(integrand, core_lo, -1, options.rel_tol);
}

}  // namespace

// ---------------------------------------------------------------- ScaleGrid

ScaleGrid ScaleGrid::geometric(double base, int j_min, int j_max) {
    if (!(base > 1.0) || !std::isfinite(base)) throw ValidationError("ScaleGrid: base must exceed 1");
    if (j_min > j_max) throw ValidationError("ScaleGrid: j_min > j_max");
    ScaleGrid g;
    g.geometric_ = true;
    g.base_ = base;
    g.j_min_ = j_min;
    g.j_max_ = j_max;
    return g;
}

ScaleGrid ScaleGrid::geometric(Exponent base, int j_min, int j_max) {
    if (!(base.radix > 0.0) || base.den <= 0) throw ValidationError("ScaleGrid: invalid exponent form");
    ScaleGrid g = geometric(std::pow(base.radix, static_cast<double>(base.num) / static_cast<double>(base.den)),
                            j_min, j_max);
    g.exponent_ = base;
    return g;
}

ScaleGrid ScaleGrid::explicit_scales(std::vector<double> scales, double recorded_base) {
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0) || !std::isfinite(scales[i])) {
            throw ValidationError("ScaleGrid: scales must be positive");
        }
        if (i > 0 && !(scales[i] > scales[i - 1])) {
            throw ValidationError("ScaleGrid: scales must be strictly increasing");
        }
    }
    ScaleGrid g;
    g.explicit_ = std::move(scales);
    g.base_ = recorded_base;
    return g;
}

std::size_t ScaleGrid::size() const {
    if (geometric_) return static_cast<std::size_t>(j_max_ - j_min_ + 1);
    return explicit_.size();
}

double ScaleGrid::power(int j) const {
    if (exponent_) {
        const long long e = static_cast<long long>(j) * exponent_->num;
        if (e % exponent_->den == 0) {
            return std::pow(exponent_->radix, static_cast<double>(e / exponent_->den));
        }
        return std::pow(exponent_->radix, static_cast<double>(e) / static_cast<double>(exponent_->den));
    }
    return std::pow(base_, j);
}

double ScaleGrid::scale(std::size_t i) const {
    if (geometric_) return power(j_min_ + static_cast<int>(i));
    return explicit_.at(i);
}

std::vector<double> ScaleGrid::scales() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale(i);
    return out;
}

// ---------------------------------------------------------------- cwt

double Scalogram::max_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs) m = std::max(m, std::abs(c));
    return m;
}

Scalogram cwt(const SampledSignal& f, const WaveletSpec& psi, const ScaleGrid& scales,
              const CwtOptions& options) {
    if (!psi.has_spectrum()) throw ValidationError("cwt: wavelet has no evaluable spectrum");
    const SpectralSignal fhat = forward_ft(f);
    const std::size_t rows = scales.size();
    const std::size_t n = f.grid().n;

    Scalogram out{scales, f.grid(), std::vector<Complex>(rows * n), std::vector<bool>(rows, false)};
    std::vector<char> underflow(rows, 0);

    auto compute_row = [&](std::size_t i) {
        const double s = scales.scale(i);
        const double amp = std::sqrt(s);
        std::vector<Complex> spec(n);
        bool any = false;
        for (std::size_t m = 0; m < n; ++m) {
            const Complex w = std::conj(eval_spectrum(psi, s * fhat.omega(m)));
            any = any || w != Complex{};
            spec[m] = fhat[m] * w * amp;
        }
        if (!any) {
            underflow[i] = 1;
            return;  // row stays exactly zero
        }
        const SampledSignal row = inverse_ft(SpectralSignal(fhat.grid(), std::move(spec)), f.grid());
        std::copy(row.values().begin(), row.values().end(), out.coeffs.begin() + static_cast<long>(i * n));
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, rows));
    if (threads <= 1) {
        for (std::size_t i = 0; i < rows; ++i) compute_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < rows; i = next++) compute_row(i);
            });
        }
    }
    for (std::size_t i = 0; i < rows; ++i) out.underflow_rows[i] = underflow[i] != 0;
    return out;
}

// ---------------------------------------------------------------- cwt_single

BandlimitedInterpolant::BandlimitedInterpolant(const SampledSignal& f)
    : grid_(f.grid()), spectral_(SpectralGrid::dual_of(f.grid())) {
    const SpectralSignal F = forward_ft(f);
    spectrum_.assign(F.values().begin(), F.values().end());
}

Complex BandlimitedInterpolant::operator()(double x) const {
    // Rotating phasor, re-seeded every block to bound accumulated rounding.
    constexpr std::size_t kBlock = 64;
    const double dw = spectral_.domega;
    const Complex step = std::polar(1.0, kTwoPi * dw * x);
    Complex sum{};
    Complex phase;
    for (std::size_t i = 0; i < spectrum_.size(); ++i) {
        if (i % kBlock == 0) phase = std::polar(1.0, kTwoPi * spectral_.omega(i) * x);
        sum += spectrum_[i] * phase;
        phase *= step;
    }
    return sum * dw;
}

Complex cwt_single(const SignalFunction& f, int growth_order, const WaveletSpec& psi, double s,
                   double t, const QuadratureOptions& options) {
    if (!(s > 0.0)) throw ValidationError("cwt_single: scale must be positive");
    if (growth_order < 0) throw ValidationError("cwt_single: growth order must be >= 0");
    if (growth_order > psi.decay_order()) {
        throw ValidationError("cwt_single: signal grows faster than the wavelet decays");
    }
    return pairing(f, std::nullopt, psi, s, t, options);
}

Complex cwt_single(const SampledSignal& f, const WaveletSpec& psi, double s, double t,
                   const QuadratureOptions& options) {
    if (!(s > 0.0)) throw ValidationError("cwt_single: scale must be positive");
    const BandlimitedInterpolant interp(f);
    const UniformGrid& g = f.grid();
    return pairing([&](double x) { return interp(x); }, std::pair{g.x0, g.x0 + g.length()}, psi, s, t,
                   options);
}

// ---------------------------------------------------------------- energies

double plancherel_energy(const Scalogram& w) {
    if (!w.scales.is_geometric()) {
        throw ValidationError("plancherel_energy: requires a geometric scale grid");
    }
    const double log_b = std::log(w.scales.base());
    const std::size_t rows = w.rows();
    double total = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        double row = 0.0;
        for (std::size_t k = 0; k < w.cols(); ++k) row += std::norm(w.at(i, k));
        double weight = log_b / w.scales.scale(i);
        if (rows > 1 && (i == 0 || i + 1 == rows)) weight *= 0.5;
        total += row * weight;
    }
    return total * w.translations.dx;
}

double signal_energy(const SampledSignal& f) {
    double sum = 0.0;
    for (const auto& v : f.values()) sum += std::norm(v);
    return sum * f.grid().dx;
}

}  // namespace wavuniq
