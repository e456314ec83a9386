#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlsb/normal_form.hpp"

using namespace nlsb;

namespace {

HamPolynomial mode_action(ModeIndex j) {
    return HamPolynomial::monomial(Monomial({j}, {j}), Rational(1));
}

}  // namespace

TEST_CASE("quadratic generators") {
    int N = 5;
    HamPolynomial h0 = h0_polynomial(N);
    CHECK(h0.size() == 2 * N);  // j = 0 carries weight 0
    CHECK(j_total(N).size() == 2 * N + 1);
    CHECK(poisson_bracket(h0, j_total(N)).is_zero());
}

TEST_CASE("perturbation structure") {
    int N = 6;
    HamPolynomial p = build_perturbation(1, +1, Rational(2), Rational(0), N);
    for (const auto& [m, c] : p.terms()) {
        CHECK(m.degree() == 4);
        CHECK(m.xi.size() == 2);
        CHECK(std::abs(m.momentum()) == 2);
        CHECK(m.max_abs_index() <= N);
    }
    // reality: swapping xi <-> eta conjugates the coefficient
    for (const auto& [m, c] : p.terms()) {
        Monomial swapped(m.eta, m.xi);
        CHECK(p.coefficient(swapped) == c.conj());
    }
    // beating driver xi_1 xi_1 eta_-1 eta_1 carries coefficient 1 at a=2
    CHECK(p.coefficient(Monomial({1, 1}, {-1, 1})) == RationalComplex(Rational(1)));
    CHECK_THROWS_AS(build_perturbation(7, +1, Rational(2), Rational(0), N),
                    std::invalid_argument);
}

TEST_CASE("sin weight enters through the imaginary part") {
    int N = 4;
    HamPolynomial p = build_perturbation(1, +1, Rational(0), Rational(2), N);
    // momentum +2 terms carry weight sign (a + i b)/4 per ordered tuple
    RationalComplex c = p.coefficient(Monomial({1, 1}, {-1, 1}));
    CHECK(c == RationalComplex(Rational(0), Rational(1)));
}

TEST_CASE("homological equation solved exactly") {
    int N = 8;
    HamPolynomial p = build_perturbation(1, +1, Rational(2), Rational(0), N);
    NormalFormResult nf = solve_homological(p);
    HamPolynomial h0 = h0_polynomial(N);
    CHECK((poisson_bracket(nf.chi, h0) + nf.z4 - p).is_zero());
    CHECK(poisson_bracket(h0, nf.z4).is_zero());
    for (const auto& [m, c] : nf.z4.terms()) CHECK(m.divisor() == 0);
    for (const auto& [m, c] : nf.chi.terms()) CHECK(m.divisor() != 0);
}

TEST_CASE("Z4 classification against the closed forms") {
    int N = 8;
    NormalFormResult nf =
        solve_homological(build_perturbation(1, +1, Rational(2), Rational(0), N));
    Z4Split split = classify_z4(nf.z4, N);
    CHECK(split.z41 == z41_closed_form(N));
    CHECK(split.z42.size() == 2);
    CHECK(split.z42.coefficient(Monomial({-1, 2}, {-2, 1})) == RationalComplex(Rational(2)));
    CHECK(split.z42.coefficient(Monomial({-2, 1}, {-1, 2})) == RationalComplex(Rational(2)));
    CHECK(split.z41 + split.z42 + split.z43 == nf.z4);
    for (int pp = 0; pp <= N; ++pp) {
        HamPolynomial jp = quadratic_observable(ObservableKind::J, pp);
        CHECK(poisson_bracket(jp, split.z41).is_zero());
        CHECK(poisson_bracket(jp, split.z42).is_zero());
    }
}

TEST_CASE("pair observable algebra") {
    HamPolynomial m1 = quadratic_observable(ObservableKind::M, 1);
    HamPolynomial k1 = quadratic_observable(ObservableKind::K, 1);
    HamPolynomial l1 = quadratic_observable(ObservableKind::L, 1);
    HamPolynomial j1 = quadratic_observable(ObservableKind::J, 1);
    CHECK(poisson_bracket(m1, k1) == l1.scaled(Rational(2)));
    CHECK(poisson_bracket(m1, l1) == k1.scaled(Rational(-2)));
    CHECK(poisson_bracket(k1, l1) == m1.scaled(Rational(2)));
    CHECK(poisson_bracket(j1, m1).is_zero());
    CHECK(poisson_bracket(j1, k1).is_zero());
    // M^2 + K^2 + L^2 = J^2 as polynomials
    CHECK(m1 * m1 + k1 * k1 + l1 * l1 == j1 * j1);
}

TEST_CASE("exact pair-dynamics identity") {
    // {M1, Z41 + Z42} = 2 J L1 + 2 S L1 + 2 (L1 K2 - K1 L2), S = sum_{p != +-1} I_p.
    // The leading 2 J L1 piece drives the beating; the rest vanishes on the
    // concentrated datum.
    int N = 8;
    NormalFormResult nf =
        solve_homological(build_perturbation(1, +1, Rational(2), Rational(0), N));
    Z4Split split = classify_z4(nf.z4, N);
    HamPolynomial lhs = poisson_bracket(quadratic_observable(ObservableKind::M, 1),
                                        split.z41 + split.z42);
    HamPolynomial s_poly;
    for (int p = -N; p <= N; ++p)
        if (p != 1 && p != -1) s_poly += mode_action(p);
    HamPolynomial l1 = quadratic_observable(ObservableKind::L, 1);
    HamPolynomial k1 = quadratic_observable(ObservableKind::K, 1);
    HamPolynomial l2 = quadratic_observable(ObservableKind::L, 2);
    HamPolynomial k2 = quadratic_observable(ObservableKind::K, 2);
    HamPolynomial rhs = (j_total(N) * l1).scaled(Rational(2)) +
                        (s_poly * l1).scaled(Rational(2)) +
                        (l1 * k2 - k1 * l2).scaled(Rational(2));
    CHECK(lhs == rhs);
}

TEST_CASE("resonant enumeration feeds the normal form") {
    int N = 8;
    NormalFormResult nf =
        solve_homological(build_perturbation(1, +1, Rational(2), Rational(0), N));
    std::set<Monomial> from_z4;
    for (const auto& [m, c] : nf.z4.terms())
        from_z4.insert(m);
    std::set<Monomial> from_enum;
    for (const ResonantQuadruple& q : enumerate_resonant(1, N))
        from_enum.insert(Monomial({q.j1, q.j2}, {q.l1, q.l2}));
    CHECK(from_z4 == from_enum);
}
