#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace wavuniq {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Sample points x_k = x0 + k dx, k = 0..n-1.
struct UniformGrid {
    double x0 = 0.0;
    double dx = 1.0;
    std::size_t n = 2;

    /// Validating constructor (dx > 0, n >= 2, finite endpoints).
    static UniformGrid make(double x0, double dx, std::size_t n);
    /// n points covering [lo, hi) with the right endpoint excluded.
    static UniformGrid covering(double lo, double hi, std::size_t n);

    double x(std::size_t k) const { return x0 + static_cast<double>(k) * dx; }
    double length() const { return static_cast<double>(n) * dx; }
    bool operator==(const UniformGrid&) const = default;
};

/// Centred frequency grid: index i holds omega = (i - n/2) * domega.
struct SpectralGrid {
    double domega = 1.0;
    std::size_t n = 2;

    static SpectralGrid dual_of(const UniformGrid& grid);

    long long offset(std::size_t i) const {
        return static_cast<long long>(i) - static_cast<long long>(n / 2);
    }
    double omega(std::size_t i) const { return static_cast<double>(offset(i)) * domega; }
    std::size_t zero_index() const { return n / 2; }
    bool operator==(const SpectralGrid&) const = default;
};

/// Uniformly sampled function on the real line. Values are stored as complex;
/// is_real() records that the signal was declared real-valued.
class SampledSignal {
public:
    SampledSignal(UniformGrid grid, std::vector<Complex> values, bool real = false);
    static SampledSignal from_real(UniformGrid grid, std::span<const double> values);
    template <typename F>
    static SampledSignal sample(const UniformGrid& grid, F&& f, bool real = false) {
        std::vector<Complex> v(grid.n);
        for (std::size_t k = 0; k < grid.n; ++k) v[k] = Complex(f(grid.x(k)));
        return SampledSignal(grid, std::move(v), real);
    }

    const UniformGrid& grid() const { return grid_; }
    std::span<const Complex> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const Complex& operator[](std::size_t k) const { return values_[k]; }
    bool is_real() const { return real_; }
    std::vector<double> real_part() const;

private:
    UniformGrid grid_;
    std::vector<Complex> values_;
    bool real_;
};

SampledSignal operator+(const SampledSignal& a, const SampledSignal& b);
SampledSignal operator-(const SampledSignal& a, const SampledSignal& b);
SampledSignal operator*(Complex alpha, const SampledSignal& a);
SampledSignal conj(const SampledSignal& a);

/// Samples of a continuous Fourier transform on a centred frequency grid.
class SpectralSignal {
public:
    SpectralSignal(SpectralGrid grid, std::vector<Complex> values, bool hermitian = false);

    const SpectralGrid& grid() const { return grid_; }
    std::span<const Complex> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const Complex& operator[](std::size_t i) const { return values_[i]; }
    double omega(std::size_t i) const { return grid_.omega(i); }
    bool is_hermitian() const { return hermitian_; }

    /// Max |F(-w) - conj F(w)| over paired bins, relative to max |F|.
    double hermitian_defect() const;

private:
    SpectralGrid grid_;
    std::vector<Complex> values_;
    bool hermitian_;
};

/// Continuous FT with convention F(w) = integral f(x) exp(-2 pi i w x) dx,
/// approximated by dx * exp(-2 pi i w x0) * DFT.
SpectralSignal forward_ft(const SampledSignal& f);

/// Exact left inverse of forward_ft on `target`.
SampledSignal inverse_ft(const SpectralSignal& spectrum, const UniformGrid& target);

/// Sum |F|^2 domega.
double spectral_energy(const SpectralSignal& spectrum);

/// exp(-1/((q-a)(c-q))) on (a, c), zero elsewhere. Not normalized.
double bump_profile(double q, double a, double c);

/// bump_profile scaled to peak 1 (the peak sits at the midpoint).
double normalized_bump(double q, double a, double c);

/// Band-limited test signal whose spectrum is normalized_bump on [lo, hi]
/// (mirrored to [-hi, -lo] when symmetric, which makes the signal real).
SampledSignal make_test_function(double lo, double hi, bool symmetric, const UniformGrid& grid);

namespace detail {
/// Unnormalized in-place DFT: sign -1 forward, +1 backward.
void dft(std::vector<Complex>& data, int sign);
}  // namespace detail

}  // namespace wavuniq
