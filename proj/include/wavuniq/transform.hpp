#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "wavuniq/spectral.hpp"
#include "wavuniq/wavelets.hpp"

namespace wavuniq {

/// Scales s_j = b^j for j in [j_min, j_max], or an explicit sorted list.
///
/// A geometric grid keeps b and the j-range rather than expanded floats. When
/// b was given as radix^(p/q) the exponent is kept too, so that
/// b^j = radix^(j p / q) is exact whenever j p / q is an integer.
class ScaleGrid {
public:
    struct Exponent {
        double radix;
        long long num;
        long long den;
    };

    static ScaleGrid geometric(double base, int j_min, int j_max);
    static ScaleGrid geometric(Exponent base, int j_min, int j_max);
    static ScaleGrid explicit_scales(std::vector<double> scales, double recorded_base = 0.0);

    bool is_geometric() const { return geometric_; }
    /// b for geometric grids; the recorded base (0 by default) otherwise.
    double base() const { return base_; }
    const std::optional<Exponent>& exponent() const { return exponent_; }
    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }

    std::size_t size() const;
    double scale(std::size_t i) const;
    /// b^j for any integer j, using the exact exponent form when present.
    double power(int j) const;
    std::vector<double> scales() const;

private:
    ScaleGrid() = default;

    bool geometric_ = false;
    double base_ = 0.0;
    std::optional<Exponent> exponent_;
    int j_min_ = 0;
    int j_max_ = -1;
    std::vector<double> explicit_;
};

/// CWT coefficients: row i is scale s_i, column k is translation t_k.
struct Scalogram {
    ScaleGrid scales;
    UniformGrid translations;
    std::vector<Complex> coeffs;          // row-major, scales.size() x translations.n
    std::vector<bool> underflow_rows;     // true where conj(ψ̂(s·)) vanished on the whole grid

    Complex& at(std::size_t i, std::size_t k) { return coeffs[i * translations.n + k]; }
    const Complex& at(std::size_t i, std::size_t k) const { return coeffs[i * translations.n + k]; }
    std::size_t rows() const { return scales.size(); }
    std::size_t cols() const { return translations.n; }
    double max_abs() const;
};

struct CwtOptions {
    unsigned threads = 0;  // 0: hardware concurrency
};

/// W(s_i, t_k) = <f, ψ_{s_i, t_k}> with t_k on f's grid, computed per scale as
/// the inverse FT of f̂(ω) conj(ψ̂(s ω)) s^{1/2}.
Scalogram cwt(const SampledSignal& f, const WaveletSpec& psi, const ScaleGrid& scales,
              const CwtOptions& options = {});

using SignalFunction = std::function<Complex(double)>;

struct QuadratureOptions {
    double rel_tol = 1e-13;
    double tail_rel = 1e-17;     // truncate ψ where |ψ| drops below tail_rel * sup|ψ|
    double max_panel = 0.25;     // widest initial panel, in x units
    double core_radius = 256.0;  // beyond this (in units of s) slowly decaying wavelets use
                                 // an exp-sinh tail rule
};

/// Direct quadrature of ∫ f(x) conj(ψ_{s,t}(x)) dx. `growth_order` k declares
/// |f(x)| <= C (1+|x|)^k; ψ must satisfy ψ(x)(1+|x|)^k ∈ L^1.
Complex cwt_single(const SignalFunction& f, int growth_order, const WaveletSpec& psi, double s,
                   double t, const QuadratureOptions& options = {});

/// Same pairing for a sampled signal, using its band-limited interpolant
/// restricted to the sampling window.
Complex cwt_single(const SampledSignal& f, const WaveletSpec& psi, double s, double t,
                   const QuadratureOptions& options = {});

/// Trigonometric interpolant dω Σ F_k exp(2πi ω_k x) through the samples.
class BandlimitedInterpolant {
public:
    explicit BandlimitedInterpolant(const SampledSignal& f);
    Complex operator()(double x) const;
    const UniformGrid& grid() const { return grid_; }

private:
    UniformGrid grid_;
    SpectralGrid spectral_;
    std::vector<Complex> spectrum_;
};

/// ∫∫ |W|^2 dt ds/s^2 on a geometric scale grid with log-uniform weights
/// ln(b)/s_i (halved at both ends).
double plancherel_energy(const Scalogram& w);

/// Σ |f|^2 dx.
double signal_energy(const SampledSignal& f);

}  // namespace wavuniq
