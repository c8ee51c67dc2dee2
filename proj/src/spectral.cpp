#include "wavuniq/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "wavuniq/error.hpp"

namespace wavuniq {

namespace {

// FFTW's planner is not re-entrant; execution with new arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void require_finite(std::span<const Complex> values, const char* what) {
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ValidationError(std::string(what) + ": non-finite value");
        }
    }
}

// exp(-2 pi i k x0 / (n dx)) with the integer part of k x0/dx removed first.
Complex grid_phase(long long k, const UniformGrid& grid, int sign) {
    const double n = static_cast<double>(grid.n);
    const double shift = grid.x0 / grid.dx;
    const double whole = std::round(shift);
    const double frac = shift - whole;
    // k * whole is an exact integer for any realistic grid.
    const double cycles =
        std::fmod(static_cast<double>(k) * whole, n) / n + static_cast<double>(k) * frac / n;
    return std::polar(1.0, sign * kTwoPi * (cycles - std::floor(cycles)));
}

}  // namespace

namespace detail {

void dft(std::vector<Complex>& data, int sign) {
    if (data.empty()) return;
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    const int n = static_cast<int>(data.size());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(n, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    fftw_execute_dft(plan, buf, buf);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

}  // namespace detail

UniformGrid UniformGrid::make(double x0, double dx, std::size_t n) {
    if (!std::isfinite(x0) || !std::isfinite(dx) || !(dx > 0.0)) {
        throw ValidationError("UniformGrid: dx must be finite and positive");
    }
    if (n < 2) throw ValidationError("UniformGrid: need at least two samples");
    return UniformGrid{x0, dx, n};
}

UniformGrid UniformGrid::covering(double lo, double hi, std::size_t n) {
    if (!(hi > lo)) throw ValidationError("UniformGrid: empty interval");
    return make(lo, (hi - lo) / static_cast<double>(n), n);
}

SpectralGrid SpectralGrid::dual_of(const UniformGrid& grid) {
    return SpectralGrid{1.0 / (static_cast<double>(grid.n) * grid.dx), grid.n};
}

SampledSignal::SampledSignal(UniformGrid grid, std::vector<Complex> values, bool real)
    : grid_(grid), values_(std::move(values)), real_(real) {
    if (values_.size() != grid_.n) {
        throw ValidationError("SampledSignal: value count does not match grid");
    }
    require_finite(values_, "SampledSignal");
}

SampledSignal SampledSignal::from_real(UniformGrid grid, std::span<const double> values) {
    return SampledSignal(grid, std::vector<Complex>(values.begin(), values.end()), true);
}

std::vector<double> SampledSignal::real_part() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(),
                   [](const Complex& c) { return c.real(); });
    return out;
}

SampledSignal operator+(const SampledSignal& a, const SampledSignal& b) {
    if (!(a.grid() == b.grid())) throw ValidationError("signal sum: grid mismatch");
    std::vector<Complex> v(a.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] + b[k];
    return SampledSignal(a.grid(), std::move(v), a.is_real() && b.is_real());
}

SampledSignal operator-(const SampledSignal& a, const SampledSignal& b) {
    return a + Complex(-1.0) * b;
}

SampledSignal operator*(Complex alpha, const SampledSignal& a) {
    std::vector<Complex> v(a.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = alpha * a[k];
    return SampledSignal(a.grid(), std::move(v), a.is_real() && alpha.imag() == 0.0);
}

SampledSignal conj(const SampledSignal& a) {
    std::vector<Complex> v(a.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::conj(a[k]);
    return SampledSignal(a.grid(), std::move(v), a.is_real());
}

SpectralSignal::SpectralSignal(SpectralGrid grid, std::vector<Complex> values, bool hermitian)
    : grid_(grid), values_(std::move(values)), hermitian_(hermitian) {
    if (values_.size() != grid_.n) {
        throw ValidationError("SpectralSignal: value count does not match grid");
    }
    require_finite(values_, "SpectralSignal");
}

double SpectralSignal::hermitian_defect() const {
    double peak = 0.0;
    for (const auto& v : values_) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    const std::size_t z = grid_.zero_index();
    double worst = 0.0;
    for (std::size_t d = 0; d < grid_.n / 2 && z + d < grid_.n; ++d) {
        worst = std::max(worst, std::abs(values_[z - d] - std::conj(values_[z + d])));
    }
    return worst / peak;
}

SpectralSignal forward_ft(const SampledSignal& f) {
    const auto& grid = f.grid();
    const std::size_t n = grid.n;
    std::vector<Complex> work(f.values().begin(), f.values().end());
    detail::dft(work, -1);

    const SpectralGrid sg = SpectralGrid::dual_of(grid);
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long long k = sg.offset(i);
        const std::size_t src = static_cast<std::size_t>((k + static_cast<long long>(n)) %
                                                         static_cast<long long>(n));
        out[i] = grid.dx * grid_phase(k, grid, -1) * work[src];
    }
    return SpectralSignal(sg, std::move(out), f.is_real());
}

SampledSignal inverse_ft(const SpectralSignal& spectrum, const UniformGrid& target) {
    const SpectralGrid& sg = spectrum.grid();
    if (sg.n != target.n) throw ValidationError("inverse_ft: sample count mismatch");
    const double product = sg.domega * static_cast<double>(target.n) * target.dx;
    if (std::abs(product - 1.0) > 1e-12) {
        throw ValidationError("inverse_ft: spectral grid is not dual to target grid");
    }
    const std::size_t n = target.n;
    std::vector<Complex> work(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long long k = sg.offset(i);
        const std::size_t dst = static_cast<std::size_t>((k + static_cast<long long>(n)) %
                                                         static_cast<long long>(n));
        work[dst] = spectrum[i] * grid_phase(k, target, +1);
    }
    detail::dft(work, +1);
    for (auto& v : work) v *= sg.domega;
    return SampledSignal(target, std::move(work), spectrum.is_hermitian());
}

double spectral_energy(const SpectralSignal& spectrum) {
    double sum = 0.0;
    for (const auto& v : spectrum.values()) sum += std::norm(v);
    return sum * spectrum.grid().domega;
}

double bump_profile(double q, double a, double c) {
    if (!(q > a && q < c)) return 0.0;
    return std::exp(-1.0 / ((q - a) * (c - q)));
}

double normalized_bump(double q, double a, double c) {
    if (!(q > a && q < c)) return 0.0;
    const double w = c - a;
    return std::exp(4.0 / (w * w) - 1.0 / ((q - a) * (c - q)));
}

SampledSignal make_test_function(double lo, double hi, bool symmetric, const UniformGrid& grid) {
    if (!(lo > 0.0) || !(hi > lo)) {
        throw ValidationError("make_test_function: band must satisfy 0 < lo < hi");
    }
    if (!(hi < 0.5 / grid.dx)) {
        throw ValidationError("make_test_function: band exceeds the Nyquist frequency");
    }
    const SpectralGrid sg = SpectralGrid::dual_of(grid);
    std::vector<Complex> spec(sg.n);
    for (std::size_t i = 0; i < sg.n; ++i) {
        const double w = sg.omega(i);
        if (w > 0.0) {
            spec[i] = normalized_bump(w, lo, hi);
        } else if (symmetric && w < 0.0) {
            spec[i] = normalized_bump(-w, lo, hi);
        }
    }
    return inverse_ft(SpectralSignal(sg, std::move(spec), symmetric), grid);
}

}  // namespace wavuniq
