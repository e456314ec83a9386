#pragma once

#include "nlsb/polynomial.hpp"

#include <vector>

namespace nlsb {

// Integer quadruple (j1,j2 | l1,l2) with j1<=j2, l1<=l2, momentum +-2p and
// vanishing divisor.
struct ResonantQuadruple {
    ModeIndex j1, j2, l1, l2;
    long momentum;

    friend bool operator==(const ResonantQuadruple&, const ResonantQuadruple&) = default;
    friend auto operator<=>(const ResonantQuadruple&, const ResonantQuadruple&) = default;
};

long momentum(const std::vector<ModeIndex>& xi, const std::vector<ModeIndex>& eta);
long divisor(const std::vector<ModeIndex>& xi, const std::vector<ModeIndex>& eta);

// All quadruples with |indices| <= bound_N, momentum in {+2p,-2p} and zero
// divisor, canonical form, deterministic lexicographic order.
std::vector<ResonantQuadruple> enumerate_resonant(int offset_p, int bound_N);

// H0 = sum_{|j|<=N} j^2 xi_j eta_j
HamPolynomial h0_polynomial(int bound_N);

// J = sum_{|j|<=N} xi_j eta_j (total mass as a polynomial)
HamPolynomial j_total(int bound_N);

// Degree-4 generator of the nonlinear part of
//   i psi_t = -psi_xx + sign (a cos 2px + b sin 2px) |psi|^2 psi
// truncated to |j| <= bound_N.  Equals sign/2 * integral of the modulated
// |psi|^4, i.e. one half of the sum displayed with weight 2cos2x; the halving
// makes this the exact Hamiltonian of the stated PDE under the bracket used
// here, which pins the beating frequency to 2 J(0).
HamPolynomial build_perturbation(int offset_p, int sign, const Rational& cos_weight,
                                 const Rational& sin_weight, int bound_N);

struct NormalFormResult {
    HamPolynomial chi;  // generator of the near-identity transform
    HamPolynomial z4;   // resonant normal form at order 4
};

// Solve {chi,H0} + Z4 = P exactly.  Z4 is the divisor-zero part of P; each
// nonresonant coefficient c maps to the chi coefficient i c / Omega, so the
// residual vanishes term by term under {H0, m} = i Omega(m) m.
NormalFormResult solve_homological(const HamPolynomial& perturbation);

struct Z4Split {
    HamPolynomial z41;  // effective beating Hamiltonian (>=2 indices in {+-1})
    HamPolynomial z42;  // the (+-2,-+1,-+2,+-1) pair coupling
    HamPolynomial z43;  // at most one index in {+-1}
};

// Partition of Z4 for p = 1 by the count of slots with index in {1,-1}.
// Verifies Z41 against its closed form
//   (xi_1 eta_-1 + xi_-1 eta_1)(2 sum_{p != +-1} xi_p eta_p + xi_1 eta_1 + xi_-1 eta_-1)
// truncated to bound_N; throws if a term with >=2 such indices matches
// neither that form nor the Z42 family.
Z4Split classify_z4(const HamPolynomial& z4, int bound_N);

// Closed form of Z41 at the module normalization (half of the display with
// leading factor 2).
HamPolynomial z41_closed_form(int bound_N);

enum class ObservableKind { M, J, L, K };

// M_p = xi_p eta_p - xi_-p eta_-p, J_p = xi_p eta_p + xi_-p eta_-p,
// L_p = i(xi_p eta_-p - xi_-p eta_p), K_p = xi_p eta_-p + xi_-p eta_p;
// J_0 = I_0 (single term), M_0 = L_0 = 0.
HamPolynomial quadratic_observable(ObservableKind kind, int p);

}  // namespace nlsb
