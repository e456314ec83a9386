#include "nlsb/polynomial.hpp"

#include <cmath>
#include <sstream>

namespace nlsb {

std::string Monomial::str() const {
    std::ostringstream os;
    os << "xi{";
    for (std::size_t i = 0; i < xi.size(); ++i) os << (i ? "," : "") << xi[i];
    os << "} eta{";
    for (std::size_t i = 0; i < eta.size(); ++i) os << (i ? "," : "") << eta[i];
    os << "}";
    return os.str();
}

HamPolynomial HamPolynomial::derivative(ModeIndex j, bool wrt_xi) const {
    HamPolynomial r;
    for (const auto& [m, c] : terms_) {
        const std::vector<ModeIndex>& slots = wrt_xi ? m.xi : m.eta;
        auto lo = std::lower_bound(slots.begin(), slots.end(), j);
        if (lo == slots.end() || *lo != j) continue;
        auto hi = std::upper_bound(lo, slots.end(), j);
        long mult = hi - lo;
        std::vector<ModeIndex> reduced(slots.begin(), lo);  // drop one copy of j
        reduced.insert(reduced.end(), lo + 1, slots.end());
        Monomial d = wrt_xi ? Monomial(std::move(reduced), m.eta)
                            : Monomial(m.xi, std::move(reduced));
        r.add_term(std::move(d), c * Rational(mult));
    }
    return r;
}

HamPolynomial poisson_bracket(const HamPolynomial& f, const HamPolynomial& g) {
    std::set<ModeIndex> vars = f.variable_indices();
    const std::set<ModeIndex> gv = g.variable_indices();
    std::set<ModeIndex> common;
    std::set_intersection(vars.begin(), vars.end(), gv.begin(), gv.end(),
                          std::inserter(common, common.begin()));
    HamPolynomial acc;
    for (ModeIndex j : common) {
        acc += f.derivative_xi(j) * g.derivative_eta(j);
        acc -= f.derivative_eta(j) * g.derivative_xi(j);
    }
    return acc.scaled(RationalComplex(Rational(0), Rational(-1)));
}

double HamPolynomial::max_coefficient_modulus() const {
    double m = 0.0;
    for (const auto& [mon, c] : terms_)
        m = std::max(m, std::sqrt(c.modulus_squared_double()));
    return m;
}

std::string HamPolynomial::serialize() const {
    std::ostringstream os;
    for (const auto& [m, c] : terms_) {
        os << rational_to_string(c.re) << ' ' << rational_to_string(c.im) << " | xi:";
        for (ModeIndex j : m.xi) os << ' ' << j;
        os << " | eta:";
        for (ModeIndex l : m.eta) os << ' ' << l;
        os << '\n';
    }
    return os.str();
}

HamPolynomial HamPolynomial::deserialize(const std::string& text) {
    HamPolynomial p;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string re_s, im_s, tok;
        if (!(ls >> re_s >> im_s >> tok) || tok != "|")
            throw std::invalid_argument("polynomial line " + std::to_string(lineno) +
                                        ": expected 'coeff_re coeff_im |'");
        if (!(ls >> tok) || tok != "xi:")
            throw std::invalid_argument("polynomial line " + std::to_string(lineno) +
                                        ": expected 'xi:'");
        std::vector<ModeIndex> xi, eta;
        bool in_eta = false;
        while (ls >> tok) {
            if (tok == "|") continue;
            if (tok == "eta:") {
                in_eta = true;
                continue;
            }
            (in_eta ? eta : xi).push_back(std::stoi(tok));
        }
        p.add_term(Monomial(std::move(xi), std::move(eta)),
                   RationalComplex(rational_from_string(re_s), rational_from_string(im_s)));
    }
    return p;
}

}  // namespace nlsb
