#pragma once

#include "nlsb/polynomial.hpp"

#include <complex>
#include <vector>

namespace nlsb {

// Truncated state: complex amplitudes xi_j for |j| <= N at time t.  The
// conjugate variables eta_j = conj(xi_j) are implicit and never stored.
struct GalerkinState {
    double t = 0.0;
    int N = 0;
    std::vector<std::complex<double>> amp;  // index j + N

    GalerkinState() = default;
    explicit GalerkinState(int n, double time = 0.0)
        : t(time), N(n), amp(2 * static_cast<std::size_t>(n) + 1) {}

    bool in_range(ModeIndex j) const { return j >= -N && j <= N; }
    std::complex<double> get(ModeIndex j) const { return amp[static_cast<std::size_t>(j + N)]; }
    std::complex<double>& at(ModeIndex j) { return amp[static_cast<std::size_t>(j + N)]; }
};

double state_mass(const GalerkinState& s);

// sum_j e^{rho |j|} (|xi_j| + |eta_j|) on the truncated state
double weighted_norm(const GalerkinState& s, double rho);

// sum over terms of coeff * prod xi * prod conj(xi); throws std::out_of_range
// naming the offending monomial if an index exceeds the truncation
std::complex<double> evaluate(const HamPolynomial& f, const GalerkinState& s);

// (-i dF/deta_j)_j with eta = conj(xi); length 2N+1, index j+N
std::vector<std::complex<double>> vector_field(const HamPolynomial& f, const GalerkinState& s);

// Flattened double-precision form of -i dF/deta for repeated evaluation
// inside integrators.
class CompiledVectorField {
  public:
    CompiledVectorField() = default;
    CompiledVectorField(const HamPolynomial& f, int bound_N);

    int bound() const { return N_; }

    // adds the field of f at state u (length 2N+1) into dudt
    void accumulate(const std::vector<std::complex<double>>& u,
                    std::vector<std::complex<double>>& dudt) const;

  private:
    struct Term {
        int target;                    // mode receiving the contribution, offset applied
        std::complex<double> coeff;    // -i * derivative coefficient
        std::vector<int> xi_factors;   // offsets of plain factors
        std::vector<int> eta_factors;  // offsets of conjugated factors
    };
    int N_ = 0;
    std::vector<Term> terms_;
};

}  // namespace nlsb
