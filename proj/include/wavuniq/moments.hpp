#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wavuniq/spectral.hpp"
#include "wavuniq/wavelets.hpp"

namespace wavuniq {

/// f(x) = Σ c_ℓ x^ℓ with trailing zero coefficients trimmed.
class PolynomialSignal {
public:
    explicit PolynomialSignal(std::vector<double> coeffs);

    /// Degree; 0 for the zero polynomial.
    int degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    std::span<const double> coeffs() const { return coeffs_; }
    double coeff(int l) const {
        return l >= 0 && static_cast<std::size_t>(l) < coeffs_.size() ? coeffs_[static_cast<std::size_t>(l)] : 0.0;
    }
    double operator()(double x) const;

private:
    std::vector<double> coeffs_;
};

/// M_0..M_L with a per-entry error bound.
struct MomentVector {
    std::vector<Complex> values;
    std::vector<double> error_bounds;

    int order() const { return static_cast<int>(values.size()) - 1; }
    const Complex& operator[](std::size_t l) const { return values[l]; }
};

/// Error bound reported alongside a moment.
struct MomentValue {
    Complex value;
    double error_bound;
};

/// ∫ x^ℓ ψ(x) dx. Requires ψ(x)(1+|x|)^ℓ integrable (ℓ <= decay_order).
MomentValue moment(const WaveletSpec& psi, int l);

MomentVector moments(const WaveletSpec& psi, int max_order);

/// Smallest ℓ <= max_order with |M_ℓ| > tol, or max_order + 1.
int vanishing_moment_order(const WaveletSpec& psi, double tol, int max_order);

/// <f, ψ_{s,t}> = s^{1/2} Σ_ℓ c_ℓ Σ_i C(ℓ,i) t^{ℓ-i} s^i conj(M_i).
Complex polynomial_pairing(const PolynomialSignal& f, const MomentVector& m, double s, double t);
Complex polynomial_pairing(const PolynomialSignal& f, const WaveletSpec& psi, double s, double t);

struct PairingSample {
    double t;
    Complex value;
};

struct RecoveryResult {
    MomentVector moments;
    double residual;        // max |fit(t_i) - value_i|
    double condition;       // 2-norm condition number of the scaled Vandermonde system
    bool ill_conditioned;   // condition above 1e10
};

/// Recovers M_0..M_m from samples of t ↦ <f, ψ_{s,t}> for a polynomial f of
/// degree m: fits a degree-m polynomial in t and solves the triangular system
/// linking its coefficients to the moments, top coefficient first. `degree`
/// declares m explicitly; c_m = 0 then throws DegenerateLeadingCoefficient.
RecoveryResult moment_recovery(std::span<const PairingSample> samples, const PolynomialSignal& f, double s,
                               std::optional<int> degree = std::nullopt);

}  // namespace wavuniq
