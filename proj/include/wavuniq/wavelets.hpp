#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wavuniq/spectral.hpp"

namespace wavuniq {

enum class WaveletKind {
    gaussian,             // exp(-pi x^2)
    gaussian_derivative,  // d^m/dx^m exp(-x^2/2)
    mexican_hat,          // (1 - x^2) exp(-x^2/2)
    poisson,              // 1 / (pi (1 + x^2))
    poisson_derivative,   // -2x / (pi (1 + x^2)^2)
    haar,
    sampled,
    custom,
};

std::string_view to_string(WaveletKind kind);
/// Accepts the canonical names plus "mexican" and dashed spellings.
std::optional<WaveletKind> parse_wavelet_kind(std::string_view name);

/// ψ(x)(1+|x|)^k is integrable for every k (Schwartz or compact support).
inline constexpr int kRapidDecay = std::numeric_limits<int>::max();

struct WaveletParams {
    int order = 1;                         // gaussian_derivative only
    std::optional<SampledSignal> samples;  // sampled only
    std::size_t spectrum_padding = 4;      // sampled: zero-padding factor for the cached spectrum
};

/// Immutable description of an analysing wavelet ψ. Copies share the cached
/// spectrum of sampled wavelets.
class WaveletSpec {
public:
    using Function = std::function<Complex(double)>;

    struct Traits {
        int decay_order = kRapidDecay;
        std::optional<std::pair<double, double>> support;
        std::vector<double> breakpoints;  // jump locations for piecewise kinds
        bool real = true;
        bool closed_form_spectrum = false;
        /// Radius R with |ψ(x)| <= rel * sup|ψ| for |x| >= R. Defaults to a
        /// numerical scan when empty.
        std::function<double(double)> tail_radius;
    };

    WaveletSpec(WaveletKind kind, int order, Function time, std::optional<Function> spectrum,
                Traits traits);

    WaveletKind kind() const { return kind_; }
    int order() const { return order_; }
    std::string name() const;

    Complex operator()(double x) const { return time_(x); }
    bool has_spectrum() const { return spectrum_.has_value(); }
    const std::optional<Function>& spectrum() const { return spectrum_; }

    int decay_order() const { return traits_.decay_order; }
    const std::optional<std::pair<double, double>>& support() const { return traits_.support; }
    const std::vector<double>& breakpoints() const { return traits_.breakpoints; }
    bool is_real() const { return traits_.real; }
    bool closed_form_spectrum() const { return traits_.closed_form_spectrum; }
    const Traits& traits() const { return traits_; }

    double tail_radius(double rel) const;

private:
    WaveletKind kind_;
    int order_;
    Function time_;
    std::optional<Function> spectrum_;
    Traits traits_;
};

WaveletSpec make_wavelet(WaveletKind kind, const WaveletParams& params = {});

/// Wavelet from arbitrary evaluators. Without a spectrum, eval_spectrum throws.
WaveletSpec make_custom_wavelet(WaveletSpec::Function time,
                                std::optional<WaveletSpec::Function> spectrum,
                                WaveletSpec::Traits traits);

/// ψ̂(ω): closed form where known, cubic interpolation of the cached spectrum
/// for sampled wavelets.
Complex eval_spectrum(const WaveletSpec& psi, double omega);

/// ψ_{s,t}(x) = s^{-1/2} ψ((x - t)/s).
class DilatedWavelet {
public:
    DilatedWavelet(WaveletSpec base, double scale, double shift);

    const WaveletSpec& base() const { return base_; }
    double scale() const { return scale_; }
    double shift() const { return shift_; }

    Complex operator()(double x) const;
    /// ψ̂(sω) e^{-2πiωt} s^{1/2}
    Complex spectrum(double omega) const;

private:
    WaveletSpec base_;
    double scale_;
    double shift_;
    double amplitude_;
};

DilatedWavelet dilate_translate(const WaveletSpec& psi, double s, double t);

/// The dilated wavelet times `factor`, as a wavelet in its own right.
WaveletSpec as_wavelet(const DilatedWavelet& dilated, double factor = 1.0);

/// φ = conj(ψ); φ̂(ω) = conj(ψ̂(-ω)).
WaveletSpec conjugate(const WaveletSpec& psi);

}  // namespace wavuniq
