#include "wavuniq/wavelets.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "wavuniq/error.hpp"

namespace wavuniq {

namespace {

const double kSqrtTwoPi = std::sqrt(kTwoPi);

// Probabilists' Hermite polynomial He_m(x).
double hermite(int m, double x) {
    double prev = 1.0;
    if (m == 0) return prev;
    double cur = x;
    for (int k = 1; k < m; ++k) {
        const double next = x * cur - k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double scan_tail_radius(const WaveletSpec::Function& f, double rel) {
    constexpr double kStep = 1.0 / 64.0;
    constexpr double kReach = 64.0;
    double peak = 0.0;
    for (double x = -kReach; x <= kReach; x += kStep) peak = std::max(peak, std::abs(f(x)));
    if (peak == 0.0) return 0.0;
    double last = 0.0;
    for (double x = -kReach; x <= kReach; x += kStep) {
        if (std::abs(f(x)) > rel * peak) last = std::max(last, std::abs(x));
    }
    return last + kStep;
}

// Four-point Lagrange interpolation of uniformly spaced samples at fractional
// index p; zero when the stencil leaves the table.
Complex cubic_at(std::span<const Complex> v, double p) {
    const double fl = std::floor(p);
    if (fl < 1.0 || fl + 2.0 > static_cast<double>(v.size()) - 1.0) {
        if (p >= 0.0 && p <= static_cast<double>(v.size()) - 1.0) {
            const auto i = static_cast<std::size_t>(fl);
            const double u = p - fl;
            const Complex hi = i + 1 < v.size() ? v[i + 1] : Complex{};
            return (1.0 - u) * v[i] + u * hi;
        }
        return {};
    }
    const auto i = static_cast<std::size_t>(fl);
    const double u = p - fl;
    const double wm = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double w0 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double w1 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double w2 = (u + 1.0) * u * (u - 1.0) / 6.0;
    return wm * v[i - 1] + w0 * v[i] + w1 * v[i + 1] + w2 * v[i + 2];
}

WaveletSpec make_sampled(const WaveletParams& params) {
    if (!params.samples) throw ValidationError("sampled wavelet requires samples");
    if (params.spectrum_padding < 1) throw ValidationError("spectrum padding must be >= 1");
    const SampledSignal& s = *params.samples;
    const UniformGrid g = s.grid();

    const std::size_t m = g.n * params.spectrum_padding;
    const std::size_t lead = (m - g.n) / 2;
    std::vector<Complex> padded(m);
    std::copy(s.values().begin(), s.values().end(), padded.begin() + static_cast<long>(lead));
    const UniformGrid pg =
        UniformGrid::make(g.x0 - static_cast<double>(lead) * g.dx, g.dx, m);
    auto cached = std::make_shared<const SpectralSignal>(
        forward_ft(SampledSignal(pg, std::move(padded), s.is_real())));
    auto samples = std::make_shared<const SampledSignal>(s);

    auto time = [samples](double x) {
        const UniformGrid& gr = samples->grid();
        return cubic_at(samples->values(), (x - gr.x0) / gr.dx);
    };
    auto spectrum = [cached](double w) {
        const SpectralGrid& sg = cached->grid();
        return cubic_at(cached->values(), w / sg.domega + static_cast<double>(sg.n / 2));
    };

    WaveletSpec::Traits traits;
    traits.support = std::pair{g.x0, g.x(g.n - 1)};
    traits.real = s.is_real();
    return WaveletSpec(WaveletKind::sampled, 0, time, spectrum, std::move(traits));
}

}  // namespace

std::string_view to_string(WaveletKind kind) {
    switch (kind) {
        case WaveletKind::gaussian: return "gaussian";
        case WaveletKind::gaussian_derivative: return "gaussian_derivative";
        case WaveletKind::mexican_hat: return "mexican_hat";
        case WaveletKind::poisson: return "poisson";
        case WaveletKind::poisson_derivative: return "poisson_derivative";
        case WaveletKind::haar: return "haar";
        case WaveletKind::sampled: return "sampled";
        case WaveletKind::custom: return "custom";
    }
    return "unknown";
}

std::optional<WaveletKind> parse_wavelet_kind(std::string_view name) {
    std::string key(name);
    for (auto& c : key) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (c == '-') c = '_';
    }
    if (key == "mexican") return WaveletKind::mexican_hat;
    for (auto kind : {WaveletKind::gaussian, WaveletKind::gaussian_derivative,
                      WaveletKind::mexican_hat, WaveletKind::poisson,
                      WaveletKind::poisson_derivative, WaveletKind::haar, WaveletKind::sampled}) {
        if (key == to_string(kind)) return kind;
    }
    return std::nullopt;
}

WaveletSpec::WaveletSpec(WaveletKind kind, int order, Function time,
                         std::optional<Function> spectrum, Traits traits)
    : kind_(kind),
      order_(order),
      time_(std::move(time)),
      spectrum_(std::move(spectrum)),
      traits_(std::move(traits)) {
    if (!time_) throw ValidationError("wavelet needs a time-domain evaluator");
}

std::string WaveletSpec::name() const {
    std::string n(to_string(kind_));
    if (kind_ == WaveletKind::gaussian_derivative) n += "(" + std::to_string(order_) + ")";
    return n;
}

double WaveletSpec::tail_radius(double rel) const {
    if (traits_.support) {
        return std::max(std::abs(traits_.support->first), std::abs(traits_.support->second));
    }
    if (traits_.tail_radius) return traits_.tail_radius(rel);
    return scan_tail_radius(time_, rel);
}

WaveletSpec make_wavelet(WaveletKind kind, const WaveletParams& params) {
    WaveletSpec::Traits traits;
    switch (kind) {
        case WaveletKind::gaussian: {
            traits.closed_form_spectrum = true;
            traits.tail_radius = [](double rel) { return std::sqrt(-std::log(rel) / kPi); };
            return WaveletSpec(
                kind, 0, [](double x) { return Complex(std::exp(-kPi * x * x)); },
                [](double w) { return Complex(std::exp(-kPi * w * w)); }, std::move(traits));
        }
        case WaveletKind::gaussian_derivative: {
            const int m = params.order;
            if (m < 1) throw ValidationError("gaussian_derivative order must be >= 1");
            traits.closed_form_spectrum = true;
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            const Complex im_pow = std::pow(Complex(0.0, 1.0), m);
            return WaveletSpec(
                kind, m,
                [m, sign](double x) { return Complex(sign * hermite(m, x) * std::exp(-0.5 * x * x)); },
                [m, im_pow](double w) {
                    return im_pow * std::pow(kTwoPi * w, m) * kSqrtTwoPi *
                           std::exp(-2.0 * kPi * kPi * w * w);
                },
                std::move(traits));
        }
        case WaveletKind::mexican_hat: {
            traits.closed_form_spectrum = true;
            return WaveletSpec(
                kind, 2, [](double x) { return Complex((1.0 - x * x) * std::exp(-0.5 * x * x)); },
                [](double w) {
                    const double a = kTwoPi * w;
                    return Complex(a * a * kSqrtTwoPi * std::exp(-2.0 * kPi * kPi * w * w));
                },
                std::move(traits));
        }
        case WaveletKind::poisson: {
            traits.closed_form_spectrum = true;
            traits.decay_order = 0;
            // 1/(pi(1+x^2)) <= rel/pi beyond sqrt(1/rel - 1).
            traits.tail_radius = [](double rel) { return std::sqrt(std::max(1.0 / rel - 1.0, 0.0)); };
            return WaveletSpec(
                kind, 0, [](double x) { return Complex(1.0 / (kPi * (1.0 + x * x))); },
                [](double w) { return Complex(std::exp(-kTwoPi * std::abs(w))); },
                std::move(traits));
        }
        case WaveletKind::poisson_derivative: {
            traits.closed_form_spectrum = true;
            traits.decay_order = 1;
            traits.tail_radius = [](double rel) {
                // |ψ| <= 2/(pi |x|^3); peak 9 sqrt(3) / (8 pi) at x = 1/sqrt(3).
                const double peak = 9.0 * std::sqrt(3.0) / (8.0 * kPi);
                return std::cbrt(2.0 / (kPi * rel * peak));
            };
            return WaveletSpec(
                kind, 1,
                [](double x) {
                    const double d = 1.0 + x * x;
                    return Complex(-2.0 * x / (kPi * d * d));
                },
                [](double w) {
                    return Complex(0.0, kTwoPi * w * std::exp(-kTwoPi * std::abs(w)));
                },
                std::move(traits));
        }
        case WaveletKind::haar: {
            traits.support = std::pair{0.0, 1.0};
            traits.breakpoints = {0.0, 0.5, 1.0};
            traits.closed_form_spectrum = true;
            return WaveletSpec(
                kind, 0,
                [](double x) {
                    if (x >= 0.0 && x < 0.5) return Complex(1.0);
                    if (x >= 0.5 && x < 1.0) return Complex(-1.0);
                    return Complex(0.0);
                },
                // (1 - e^{-iπω})^2 / (2πiω) = 2i sin^2(πω/2) e^{-iπω} / (πω)
                [](double w) {
                    if (w == 0.0) return Complex(0.0);
                    const double s = std::sin(0.5 * kPi * w);
                    return Complex(0.0, 2.0 * s * s / (kPi * w)) * std::polar(1.0, -kPi * w);
                },
                std::move(traits));
        }
        case WaveletKind::sampled:
            return make_sampled(params);
        case WaveletKind::custom:
            break;
    }
    throw ValidationError("make_wavelet: unknown or non-constructible kind");
}

WaveletSpec make_custom_wavelet(WaveletSpec::Function time,
                                std::optional<WaveletSpec::Function> spectrum,
                                WaveletSpec::Traits traits) {
    return WaveletSpec(WaveletKind::custom, 0, std::move(time), std::move(spectrum),
                       std::move(traits));
}

Complex eval_spectrum(const WaveletSpec& psi, double omega) {
    if (!psi.has_spectrum()) {
        throw ValidationError("eval_spectrum: wavelet '" + psi.name() + "' has no spectrum");
    }
    return (*psi.spectrum())(omega);
}

DilatedWavelet::DilatedWavelet(WaveletSpec base, double scale, double shift)
    : base_(std::move(base)), scale_(scale), shift_(shift) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw ValidationError("dilate_translate: scale must be positive");
    }
    if (!std::isfinite(shift)) throw ValidationError("dilate_translate: non-finite shift");
    amplitude_ = 1.0 / std::sqrt(scale_);
}

Complex DilatedWavelet::operator()(double x) const {
    return amplitude_ * base_((x - shift_) / scale_);
}

Complex DilatedWavelet::spectrum(double omega) const {
    return eval_spectrum(base_, scale_ * omega) * std::polar(1.0, -kTwoPi * omega * shift_) *
           std::sqrt(scale_);
}

DilatedWavelet dilate_translate(const WaveletSpec& psi, double s, double t) {
    return DilatedWavelet(psi, s, t);
}

WaveletSpec as_wavelet(const DilatedWavelet& dilated, double factor) {
    const double s = dilated.scale();
    const double t = dilated.shift();
    WaveletSpec::Traits traits = dilated.base().traits();
    traits.closed_form_spectrum = dilated.base().closed_form_spectrum();
    if (traits.support) {
        traits.support = std::pair{t + s * traits.support->first, t + s * traits.support->second};
    }
    for (auto& b : traits.breakpoints) b = t + s * b;
    const WaveletSpec base = dilated.base();
    traits.tail_radius = [base, s, t](double rel) { return std::abs(t) + s * base.tail_radius(rel); };

    std::optional<WaveletSpec::Function> spectrum;
    if (base.has_spectrum()) {
        spectrum = [dilated, factor](double w) { return factor * dilated.spectrum(w); };
    }
    return make_custom_wavelet([dilated, factor](double x) { return factor * dilated(x); },
                               std::move(spectrum), std::move(traits));
}

WaveletSpec conjugate(const WaveletSpec& psi) {
    if (psi.is_real()) return psi;
    std::optional<WaveletSpec::Function> spectrum;
    if (psi.has_spectrum()) {
        spectrum = [psi](double w) { return std::conj(eval_spectrum(psi, -w)); };
    }
    WaveletSpec::Traits traits = psi.traits();
    traits.tail_radius = [psi](double rel) { return psi.tail_radius(rel); };
    return make_custom_wavelet([psi](double x) { return std::conj(psi(x)); }, std::move(spectrum),
                               std::move(traits));
}

}  // namespace wavuniq
