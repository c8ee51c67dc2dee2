#include "wavuniq/moments.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "wavuniq/error.hpp"

namespace wavuniq {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

double ipow(double x, int l) {
    double out = 1.0;
    for (int i = 0; i < l; ++i) out *= x;
    return out;
}

struct Accumulator {
    Complex value{};
    double error = 0.0;
};

// Adaptive Gauss-Kronrod on [a, b] split into panels of width <= 0.25.
void integrate_finite(const WaveletSpec& psi, int l, double a, double b, Accumulator& acc) {
    if (!(b > a)) return;
    constexpr double kPanel = 0.25;
    const auto panels = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / kPanel)));
    const double h = (b - a) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + static_cast<double>(p) * h;
        const double hi = p + 1 == panels ? b : lo + h;
        double err_re = 0.0;
        double err_im = 0.0;
        const double re = Kronrod::integrate([&](double x) { return ipow(x, l) * psi(x).real(); }, lo, hi,
                                             15, 1e-14, &err_re);
        const double im = Kronrod::integrate([&](double x) { return ipow(x, l) * psi(x).imag(); }, lo, hi,
                                             15, 1e-14, &err_im);
        acc.value += Complex(re, im);
        acc.error += err_re + err_im;
    }
}

}  // namespace

PolynomialSignal::PolynomialSignal(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    for (double c : coeffs_) {
        if (!std::isfinite(c)) throw ValidationError("PolynomialSignal: non-finite coefficient");
    }
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double PolynomialSignal::operator()(double x) const {
    double out = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) out = out * x + *it;
    return out;
}

MomentValue moment(const WaveletSpec& psi, int l) {
    if (l < 0) throw ValidationError("moment: order must be >= 0");
    if (l > psi.decay_order()) {
        throw ValidationError("moment: " + psi.name() + " decays too slowly for order " + std::to_string(l));
    }
    Accumulator acc;
    if (psi.support()) {
        std::vector<double> cuts = psi.breakpoints();
        cuts.push_back(psi.support()->first);
        cuts.push_back(psi.support()->second);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double lo = std::max(cuts[i], psi.support()->first);
            const double hi = std::min(cuts[i + 1], psi.support()->second);
            integrate_finite(psi, l, lo, hi, acc);
        }
        return {acc.value, acc.error};
    }

    if (psi.decay_order() == kRapidDecay) {
        // Widen the window until x^ℓ ψ(x) is negligible at both ends.
        double radius = psi.tail_radius(1e-18);
        auto edge = [&](double r) {
            return std::max(std::abs(ipow(r, l) * psi(r)), std::abs(ipow(-r, l) * psi(-r)));
        };
        while (edge(radius) > 1e-22 && radius < 1e3) radius += 1.0;
        integrate_finite(psi, l, -radius, radius, acc);
        acc.error += 2.0 * edge(radius) * radius;
        return {acc.value, acc.error};
    }

    // Power-law tails: core panels plus exp-sinh on both half-lines.
    constexpr double kCore = 8.0;
    integrate_finite(psi, l, -kCore, kCore, acc);
    boost::math::quadrature::exp_sinh<double> rule;
    const double inf = std::numeric_limits<double>::infinity();
    for (double dir : {1.0, -1.0}) {
        for (int part = 0; part < 2; ++part) {
            double err = 0.0;
            const double v = rule.integrate(
                [&](double u) {
                    const double x = dir * (kCore + u);
                    const Complex y = ipow(x, l) * psi(x);
                    return part == 0 ? y.real() : y.imag();
                },
                0.0, inf, 1e-14, &err);
            acc.value += part == 0 ? Complex(v, 0.0) : Complex(0.0, v);
            acc.error += err;
        }
    }
    return {acc.value, acc.error};
}

MomentVector moments(const WaveletSpec& psi, int max_order) {
    if (max_order < 0) throw ValidationError("moments: max order must be >= 0");
    MomentVector out;
    for (int l = 0; l <= max_order; ++l) {
        const MomentValue m = moment(psi, l);
        out.values.push_back(m.value);
        out.error_bounds.push_back(m.error_bound);
    }
    return out;
}

int vanishing_moment_order(const WaveletSpec& psi, double tol, int max_order) {
    for (int l = 0; l <= max_order; ++l) {
        if (std::abs(moment(psi, l).value) > tol) return l;
    }
    return max_order + 1;
}

Complex polynomial_pairing(const PolynomialSignal& f, const MomentVector& m, double s, double t) {
    if (!(s > 0.0)) throw ValidationError("polynomial_pairing: scale must be positive");
    if (f.is_zero()) return {};
    if (m.order() < f.degree()) throw ValidationError("polynomial_pairing: not enough moments");
    Complex sum{};
    for (int l = 0; l <= f.degree(); ++l) {
        Complex inner{};
        for (int i = 0; i <= l; ++i) {
            inner += binomial(l, i) * ipow(t, l - i) * ipow(s, i) * std::conj(m[static_cast<std::size_t>(i)]);
        }
        sum += f.coeff(l) * inner;
    }
    return std::sqrt(s) * sum;
}

Complex polynomial_pairing(const PolynomialSignal& f, const WaveletSpec& psi, double s, double t) {
    if (f.degree() > psi.decay_order()) {
        throw ValidationError("polynomial_pairing: wavelet decay does not cover degree " +
                              std::to_string(f.degree()));
    }
    return polynomial_pairing(f, moments(psi, f.degree()), s, t);
}

RecoveryResult moment_recovery(std::span<const PairingSample> samples, const PolynomialSignal& f, double s,
                               std::optional<int> degree) {
    if (degree && *degree < 0) throw ValidationError("moment_recovery: degree must be >= 0");
    const int m = degree.value_or(f.degree());
    if (f.is_zero() || f.coeff(m) == 0.0) {
        throw DegenerateLeadingCoefficient("moment_recovery: leading coefficient c_m is zero");
    }
    if (m < f.degree()) throw ValidationError("moment_recovery: degree below that of f");
    if (!(s > 0.0)) throw ValidationError("moment_recovery: scale must be positive");
    const auto cols = static_cast<Eigen::Index>(m + 1);
    const auto rows = static_cast<Eigen::Index>(samples.size());
    if (rows < cols) throw ValidationError("moment_recovery: need at least m + 1 samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t k = i + 1; k < samples.size(); ++k) {
            if (samples[i].t == samples[k].t) throw ValidationError("moment_recovery: sample points must be distinct");
        }
    }

    // Fit in u = (t - centre)/spread to keep the Vandermonde matrix tame.
    double centre = 0.0;
    for (const auto& p : samples) centre += p.t;
    centre /= static_cast<double>(samples.size());
    double spread = 0.0;
    for (const auto& p : samples) spread = std::max(spread, std::abs(p.t - centre));
    if (spread == 0.0) spread = 1.0;

    Eigen::MatrixXcd vander(rows, cols);
    Eigen::VectorXcd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double u = (samples[static_cast<std::size_t>(i)].t - centre) / spread;
        for (Eigen::Index p = 0; p < cols; ++p) vander(i, p) = ipow(u, static_cast<int>(p));
        rhs(i) = samples[static_cast<std::size_t>(i)].value;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vander, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXcd beta = svd.solve(rhs);
    const auto& sv = svd.singularValues();
    const double condition = sv(0) / sv(sv.size() - 1);

    double residual = 0.0;
    const Eigen::VectorXcd fitted = vander * beta;
    for (Eigen::Index i = 0; i < rows; ++i) residual = std::max(residual, std::abs(fitted(i) - rhs(i)));

    // Coefficients of t^q: expand β_p ((t - centre)/spread)^p.
    std::vector<Complex> alpha(static_cast<std::size_t>(m + 1));
    for (int p = 0; p <= m; ++p) {
        const Complex scaled = beta(p) / ipow(spread, p);
        for (int q = 0; q <= p; ++q) {
            alpha[static_cast<std::size_t>(q)] += scaled * binomial(p, q) * ipow(-centre, p - q);
        }
    }

    // a_{m-r} = √s Σ_{q<=r} c_{m-r+q} C(m-r+q, q) s^q conj(M_q): solve for M_r in turn.
    const double root = std::sqrt(s);
    std::vector<Complex> conj_m(static_cast<std::size_t>(m + 1));
    RecoveryResult out;
    for (int r = 0; r <= m; ++r) {
        const int p = m - r;
        Complex acc = alpha[static_cast<std::size_t>(p)] / root;
        for (int q = 0; q < r; ++q) {
            acc -= f.coeff(p + q) * binomial(p + q, q) * ipow(s, q) * conj_m[static_cast<std::size_t>(q)];
        }
        const double pivot = f.coeff(m) * binomial(m, r) * ipow(s, r);
        conj_m[static_cast<std::size_t>(r)] = acc / pivot;
        out.moments.values.push_back(std::conj(conj_m[static_cast<std::size_t>(r)]));
        out.moments.error_bounds.push_back(residual * condition / (std::abs(pivot) * root));
    }
    out.residual = residual;
    out.condition = condition;
    out.ill_conditioned = condition > 1e10;
    return out;
}

}  // namespace wavuniq
