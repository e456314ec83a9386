#include "nlsb/normal_form.hpp"

#include <cstdlib>
#include <set>
#include <stdexcept>

namespace nlsb {

long momentum(const std::vector<ModeIndex>& xi, const std::vector<ModeIndex>& eta) {
    return Monomial(xi, eta).momentum();
}

long divisor(const std::vector<ModeIndex>& xi, const std::vector<ModeIndex>& eta) {
    return Monomial(xi, eta).divisor();
}

std::vector<ResonantQuadruple> enumerate_resonant(int offset_p, int bound_N) {
    if (offset_p < 1 || bound_N < 1)
        throw std::invalid_argument("enumerate_resonant: offset_p and bound_N must be >= 1");
    std::set<ResonantQuadruple> out;
    const long targets[2] = {2L * offset_p, -2L * offset_p};
    for (int j1 = -bound_N; j1 <= bound_N; ++j1)
        for (int j2 = j1; j2 <= bound_N; ++j2)
            for (int l1 = -bound_N; l1 <= bound_N; ++l1)
                for (long m : targets) {
                    long l2 = j1 + j2 - l1 - m;
                    if (l2 < l1 || l2 > bound_N) continue;
                    long w = (long)j1 * j1 + (long)j2 * j2 - (long)l1 * l1 - l2 * l2;
                    if (w != 0) continue;
                    out.insert({j1, j2, l1, static_cast<ModeIndex>(l2), m});
                }
    return {out.begin(), out.end()};
}

HamPolynomial h0_polynomial(int bound_N) {
    HamPolynomial h;
    for (int j = -bound_N; j <= bound_N; ++j) {
        if (j == 0) continue;
        h.add_term(Monomial({j}, {j}), RationalComplex(Rational((long)j * j), Rational(0)));
    }
    return h;
}

HamPolynomial j_total(int bound_N) {
    HamPolynomial p;
    for (int j = -bound_N; j <= bound_N; ++j)
        p.add_term(Monomial({j}, {j}), RationalComplex(Rational(1), Rational(0)));
    return p;
}

HamPolynomial build_perturbation(int offset_p, int sign, const Rational& cos_weight,
                                 const Rational& sin_weight, int bound_N) {
    if (offset_p < 1) throw std::invalid_argument("build_perturbation: offset_p must be >= 1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("build_perturbation: sign must be +-1");
    if (bound_N < offset_p)
        throw std::invalid_argument(
            "build_perturbation: bound_N < offset_p leaves the coupling with empty support");

    // Per ordered tuple with momentum +2p the Fourier weight of
    // a cos 2px + b sin 2px is (a + i b)/2, conjugate for -2p; the generator
    // carries the extra factor sign/2.
    const RationalComplex w_plus(Rational(sign) * cos_weight / 4, Rational(sign) * sin_weight / 4);
    const RationalComplex w_minus = w_plus.conj();

    HamPolynomial p;
    const long targets[2] = {2L * offset_p, -2L * offset_p};
    for (int j1 = -bound_N; j1 <= bound_N; ++j1)
        for (int j2 = j1; j2 <= bound_N; ++j2)
            for (int l1 = -bound_N; l1 <= bound_N; ++l1)
                for (long m : targets) {
                    long l2 = j1 + j2 - l1 - m;
                    if (l2 < l1 || l2 > bound_N) continue;
                    long mult = (j1 != j2 ? 2 : 1) * (l1 != l2 ? 2 : 1);
                    const RationalComplex& w = (m > 0) ? w_plus : w_minus;
                    p.add_term(Monomial({j1, j2}, {l1, static_cast<ModeIndex>(l2)}),
                               w * Rational(mult));
                }
    return p;
}

NormalFormResult solve_homological(const HamPolynomial& perturbation) {
    NormalFormResult r;
    for (const auto& [m, c] : perturbation.terms()) {
        long omega = m.divisor();
        if (omega == 0) {
            r.z4.add_term(m, c);
        } else {
            if (std::labs(omega) < 1)
                throw std::logic_error("solve_homological: nonresonant divisor below 1");
            // c -> i c / Omega, so that {chi,H0} = -i Omega chi reproduces
            // the nonresonant part of P exactly
            r.chi.add_term(m, c.times_i().divided_by(Rational(omega)));
        }
    }
    return r;
}

HamPolynomial z41_closed_form(int bound_N) {
    HamPolynomial k1 = quadratic_observable(ObservableKind::K, 1);
    HamPolynomial inner;
    for (int q = -bound_N; q <= bound_N; ++q) {
        Rational c = (q == 1 || q == -1) ? Rational(1) : Rational(2);
        inner.add_term(Monomial({q}, {q}), RationalComplex(c, Rational(0)));
    }
    return k1 * inner;
}

Z4Split classify_z4(const HamPolynomial& z4, int bound_N) {
    const HamPolynomial z41_expected = z41_closed_form(bound_N);
    const Monomial z42_a({-1, 2}, {-2, 1});
    const Monomial z42_b({-2, 1}, {-1, 2});

    Z4Split s;
    for (const auto& [m, c] : z4.terms()) {
        int ones = m.count_indices_in({1, -1});
        if (ones <= 1) {
            s.z43.add_term(m, c);
        } else if (m == z42_a || m == z42_b) {
            s.z42.add_term(m, c);
        } else if (!z41_expected.coefficient(m).is_zero()) {
            s.z41.add_term(m, c);
        } else {
            throw std::logic_error("classify_z4: unclassifiable resonant term " + m.str());
        }
    }
    return s;
}

HamPolynomial quadratic_observable(ObservableKind kind, int p) {
    HamPolynomial r;
    const RationalComplex one(Rational(1), Rational(0));
    const RationalComplex i = RationalComplex::unit_i();
    switch (kind) {
        case ObservableKind::M:
            r.add_term(Monomial({p}, {p}), one);
            r.add_term(Monomial({-p}, {-p}), -one);
            break;
        case ObservableKind::J:
            r.add_term(Monomial({p}, {p}), one);
            if (p != 0) r.add_term(Monomial({-p}, {-p}), one);
            break;
        case ObservableKind::L:
            r.add_term(Monomial({p}, {-p}), i);
            r.add_term(Monomial({-p}, {p}), -i);
            break;
        case ObservableKind::K:
            r.add_term(Monomial({p}, {-p}), one);
            r.add_term(Monomial({-p}, {p}), one);
            break;
    }
    return r;
}

}  // namespace nlsb
