#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlsb/polynomial.hpp"

using namespace nlsb;

namespace {

HamPolynomial xi(ModeIndex j) { return HamPolynomial::monomial(Monomial({j}, {}), Rational(1)); }
HamPolynomial eta(ModeIndex j) { return HamPolynomial::monomial(Monomial({}, {j}), Rational(1)); }

}  // namespace

TEST_CASE("rational complex arithmetic") {
    RationalComplex a(Rational(1), Rational(2));
    RationalComplex b(Rational(3), Rational(-1));
    CHECK(a * b == RationalComplex(Rational(5), Rational(5)));
    CHECK(a.times_i() == RationalComplex(Rational(-2), Rational(1)));
    CHECK(a.times_minus_i() == -(a.times_i()));
    CHECK(a.conj() == RationalComplex(Rational(1), Rational(-2)));
    CHECK(a.divided_by(Rational(2)) == RationalComplex(Rational(1, 2), Rational(1)));
    CHECK_THROWS_AS(a.divided_by(Rational(0)), std::domain_error);
    CHECK(a.modulus_squared_double() == doctest::Approx(5.0));
    CHECK(rational_from_string("2/3") == Rational(2, 3));
    CHECK(rational_to_string(Rational(-4, 6)) == "-2/3");
}

TEST_CASE("monomial canonical form and gradings") {
    Monomial m({3, -1}, {2, 0});
    CHECK(m.xi == std::vector<ModeIndex>{-1, 3});
    CHECK(m.eta == std::vector<ModeIndex>{0, 2});
    CHECK(m.degree() == 4);
    CHECK(m.momentum() == 0);
    CHECK(m.divisor() == 1 + 9 - 4 - 0);
    CHECK(m == Monomial({-1, 3}, {0, 2}));
    CHECK(m.count_indices_in({-1, 1}) == 1);
    CHECK(m.max_abs_index() == 3);
}

TEST_CASE("term folding and canonical zero") {
    HamPolynomial p;
    p.add_term(Monomial({1}, {1}), RationalComplex(Rational(1, 2)));
    p.add_term(Monomial({1}, {1}), RationalComplex(Rational(1, 2)));
    CHECK(p.size() == 1);
    CHECK(p.coefficient(Monomial({1}, {1})) == RationalComplex(Rational(1)));
    p.add_term(Monomial({1}, {1}), RationalComplex(Rational(-1)));
    CHECK(p.is_zero());
}

TEST_CASE("product and derivatives") {
    HamPolynomial f = xi(1) * xi(1) * eta(2);
    CHECK(f.size() == 1);
    CHECK(f.derivative_xi(1) == xi(1).scaled(Rational(2)) * eta(2));
    CHECK(f.derivative_eta(2) == xi(1) * xi(1));
    CHECK(f.derivative_xi(5).is_zero());
}

TEST_CASE("poisson bracket basics") {
    // {xi_1 eta_1, xi_1} = -i (0 - xi_1) = i xi_1
    HamPolynomial f = xi(1) * eta(1);
    CHECK(poisson_bracket(f, xi(1)) == xi(1).scaled(RationalComplex::unit_i()));
    CHECK(poisson_bracket(f, f).is_zero());

    // antisymmetry and bilinearity on a mixed pair
    HamPolynomial g = xi(2) * eta(1) * eta(1);
    CHECK(poisson_bracket(f, g) == (HamPolynomial{} - poisson_bracket(g, f)));

    // Leibniz: {f, g h} = {f,g} h + g {f,h}
    HamPolynomial h = xi(0) * eta(2);
    CHECK(poisson_bracket(f, g * h) == poisson_bracket(f, g) * h + g * poisson_bracket(f, h));

    // Jacobi identity
    HamPolynomial jac = poisson_bracket(f, poisson_bracket(g, h)) +
                        poisson_bracket(g, poisson_bracket(h, f)) +
                        poisson_bracket(h, poisson_bracket(f, g));
    CHECK(jac.is_zero());
}

TEST_CASE("bracket with H0 multiplies by i times the divisor") {
    HamPolynomial h0;
    for (int j = -4; j <= 4; ++j)
        h0.add_term(Monomial({j}, {j}), RationalComplex(Rational(static_cast<long>(j) * j)));
    Monomial m({2, 3}, {1, 0});
    HamPolynomial pm = HamPolynomial::monomial(m, Rational(1));
    long omega = m.divisor();
    CHECK(omega == 12);
    CHECK(poisson_bracket(h0, pm) ==
          pm.scaled(RationalComplex::unit_i() * RationalComplex(Rational(omega))));
}

TEST_CASE("serialization round trip") {
    HamPolynomial f;
    f.add_term(Monomial({1, -3}, {0, 2}), RationalComplex(Rational(2, 3), Rational(-1, 7)));
    f.add_term(Monomial({0}, {0}), RationalComplex(Rational(5)));
    std::string text = f.serialize();
    CHECK(HamPolynomial::deserialize(text) == f);
    CHECK_THROWS_WITH_AS(HamPolynomial::deserialize("garbage line\n"),
                         doctest::Contains("line 1"), std::invalid_argument);
}

TEST_CASE("homogeneous momentum detection") {
    HamPolynomial f = xi(3) * eta(1);  // momentum 2
    f.add_term(Monomial({2, 1}, {1, 0}), RationalComplex(Rational(1)));
    CHECK(f.homogeneous_momentum() == 2);
    f.add_term(Monomial({0}, {0}), RationalComplex(Rational(1)));
    CHECK(!f.homogeneous_momentum().has_value());
}
