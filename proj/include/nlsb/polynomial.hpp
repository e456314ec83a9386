#pragma once

#include "nlsb/rational.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nlsb {

using ModeIndex = int;

// Product of mode variables xi_{j} and eta_{l}.  The index lists are kept
// sorted; together they form the canonical key of the monomial.  Ordered-tuple
// multiplicities from sums over multi-indices are folded into the coefficient
// by the owning polynomial.
struct Monomial {
    std::vector<ModeIndex> xi;
    std::vector<ModeIndex> eta;

    Monomial() = default;
    Monomial(std::vector<ModeIndex> x, std::vector<ModeIndex> e)
        : xi(std::move(x)), eta(std::move(e)) {
        std::sort(xi.begin(), xi.end());
        std::sort(eta.begin(), eta.end());
    }

    int degree() const { return static_cast<int>(xi.size() + eta.size()); }

    // sum of xi indices minus sum of eta indices
    long momentum() const {
        long m = 0;
        for (ModeIndex j : xi) m += j;
        for (ModeIndex l : eta) m -= l;
        return m;
    }

    // sum of squared xi indices minus sum of squared eta indices
    long divisor() const {
        long w = 0;
        for (ModeIndex j : xi) w += static_cast<long>(j) * j;
        for (ModeIndex l : eta) w -= static_cast<long>(l) * l;
        return w;
    }

    int count_indices_in(std::initializer_list<ModeIndex> which) const {
        int n = 0;
        for (ModeIndex j : xi)
            for (ModeIndex w : which)
                if (j == w) ++n;
        for (ModeIndex l : eta)
            for (ModeIndex w : which)
                if (l == w) ++n;
        return n;
    }

    ModeIndex max_abs_index() const {
        ModeIndex m = 0;
        for (ModeIndex j : xi) m = std::max(m, std::abs(j));
        for (ModeIndex l : eta) m = std::max(m, std::abs(l));
        return m;
    }

    std::string str() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

// Polynomial in the mode variables with exact complex-rational coefficients.
// Stored zero coefficients are never kept; every operation returns canonical
// form.  Values are immutable in spirit: all mutators are private to the
// construction helpers, the public surface is value-semantic.
class HamPolynomial {
  public:
    using TermMap = std::map<Monomial, RationalComplex>;

    HamPolynomial() = default;

    static HamPolynomial monomial(Monomial m, RationalComplex c) {
        HamPolynomial p;
        p.add_term(std::move(m), std::move(c));
        return p;
    }

    void add_term(Monomial m, RationalComplex c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(std::move(m), std::move(c));
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    RationalComplex coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? RationalComplex{} : it->second;
    }

    HamPolynomial& operator+=(const HamPolynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    HamPolynomial& operator-=(const HamPolynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend HamPolynomial operator+(HamPolynomial a, const HamPolynomial& b) { return a += b; }
    friend HamPolynomial operator-(HamPolynomial a, const HamPolynomial& b) { return a -= b; }

    HamPolynomial scaled(const RationalComplex& s) const {
        HamPolynomial r;
        if (s.is_zero()) return r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
        return r;
    }

    friend HamPolynomial operator*(const HamPolynomial& a, const HamPolynomial& b) {
        HamPolynomial r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                std::vector<ModeIndex> xi = ma.xi;
                xi.insert(xi.end(), mb.xi.begin(), mb.xi.end());
                std::vector<ModeIndex> eta = ma.eta;
                eta.insert(eta.end(), mb.eta.begin(), mb.eta.end());
                r.add_term(Monomial(std::move(xi), std::move(eta)), ca * cb);
            }
        return r;
    }

    friend bool operator==(const HamPolynomial& a, const HamPolynomial& b) {
        return a.terms_ == b.terms_;
    }

    HamPolynomial derivative_xi(ModeIndex j) const { return derivative(j, /*wrt_xi=*/true); }
    HamPolynomial derivative_eta(ModeIndex j) const { return derivative(j, /*wrt_xi=*/false); }

    // all mode indices appearing in any slot
    std::set<ModeIndex> variable_indices() const {
        std::set<ModeIndex> s;
        for (const auto& [m, c] : terms_) {
            s.insert(m.xi.begin(), m.xi.end());
            s.insert(m.eta.begin(), m.eta.end());
        }
        return s;
    }

    // momentum shared by every term, if the polynomial is momentum-homogeneous
    std::optional<long> homogeneous_momentum() const {
        std::optional<long> m;
        for (const auto& [mon, c] : terms_) {
            long mm = mon.momentum();
            if (!m)
                m = mm;
            else if (*m != mm)
                return std::nullopt;
        }
        return m;
    }

    double max_coefficient_modulus() const;

    // Line-oriented text format, one term per line, lines in canonical order:
    //   coeff_re coeff_im | xi: j1 j2 ... | eta: l1 l2 ...
    // with rationals printed as num/den.
    std::string serialize() const;
    static HamPolynomial deserialize(const std::string& text);

  private:
    HamPolynomial derivative(ModeIndex j, bool wrt_xi) const;

    TermMap terms_;
};

// {f,g} = -i sum_j (df/dxi_j dg/deta_j - df/deta_j dg/dxi_j)
HamPolynomial poisson_bracket(const HamPolynomial& f, const HamPolynomial& g);

}  // namespace nlsb
