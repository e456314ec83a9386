#include "nlsb/state.hpp"

#include <cmath>
#include <stdexcept>

namespace nlsb {

double state_mass(const GalerkinState& s) {
    double m = 0.0;
    for (const auto& a : s.amp) m += std::norm(a);
    return m;
}

double weighted_norm(const GalerkinState& s, double rho) {
    double n = 0.0;
    for (int j = -s.N; j <= s.N; ++j) n += std::exp(rho * std::abs(j)) * 2.0 * std::abs(s.get(j));
    return n;
}

namespace {
void check_range(const Monomial& m, const GalerkinState& s) {
    for (ModeIndex j : m.xi)
        if (!s.in_range(j)) throw std::out_of_range("index outside truncation in " + m.str());
    for (ModeIndex l : m.eta)
        if (!s.in_range(l)) throw std::out_of_range("index outside truncation in " + m.str());
}
}  // namespace

std::complex<double> evaluate(const HamPolynomial& f, const GalerkinState& s) {
    std::complex<double> acc = 0.0;
    for (const auto& [m, c] : f.terms()) {
        check_range(m, s);
        std::complex<double> v = c.to_complex();
        for (ModeIndex j : m.xi) v *= s.get(j);
        for (ModeIndex l : m.eta) v *= std::conj(s.get(l));
        acc += v;
    }
    return acc;
}

std::vector<std::complex<double>> vector_field(const HamPolynomial& f, const GalerkinState& s) {
    std::vector<std::complex<double>> out(s.amp.size());
    const std::complex<double> minus_i(0.0, -1.0);
    for (const auto& [m, c] : f.terms()) {
        check_range(m, s);
        // derivative with respect to each distinct eta index
        for (std::size_t k = 0; k < m.eta.size(); ++k) {
            if (k > 0 && m.eta[k] == m.eta[k - 1]) continue;  // distinct values only
            ModeIndex l = m.eta[k];
            long mult = std::count(m.eta.begin(), m.eta.end(), l);
            std::complex<double> v = c.to_complex() * static_cast<double>(mult);
            for (ModeIndex j : m.xi) v *= s.get(j);
            bool dropped = false;
            for (ModeIndex l2 : m.eta) {
                if (l2 == l && !dropped) {
                    dropped = true;  // drop one factor of eta_l
                    continue;
                }
                v *= std::conj(s.get(l2));
            }
            out[static_cast<std::size_t>(l + s.N)] += minus_i * v;
        }
    }
    return out;
}

CompiledVectorField::CompiledVectorField(const HamPolynomial& f, int bound_N) : N_(bound_N) {
    const std::complex<double> minus_i(0.0, -1.0);
    for (const auto& [m, c] : f.terms()) {
        if (m.max_abs_index() > bound_N)
            throw std::out_of_range("compiled field: index outside truncation in " + m.str());
        for (std::size_t k = 0; k < m.eta.size(); ++k) {
            if (k > 0 && m.eta[k] == m.eta[k - 1]) continue;
            ModeIndex l = m.eta[k];
            long mult = std::count(m.eta.begin(), m.eta.end(), l);
            Term t;
            t.target = l + bound_N;
            t.coeff = minus_i * c.to_complex() * static_cast<double>(mult);
            for (ModeIndex j : m.xi) t.xi_factors.push_back(j + bound_N);
            bool dropped = false;
            for (ModeIndex l2 : m.eta) {
                if (l2 == l && !dropped) {
                    dropped = true;
                    continue;
                }
                t.eta_factors.push_back(l2 + bound_N);
            }
            terms_.push_back(std::move(t));
        }
    }
}

void CompiledVectorField::accumulate(const std::vector<std::complex<double>>& u,
                                     std::vector<std::complex<double>>& dudt) const {
    for (const Term& t : terms_) {
        std::complex<double> v = t.coeff;
        for (int idx : t.xi_factors) v *= u[static_cast<std::size_t>(idx)];
        for (int idx : t.eta_factors) v *= std::conj(u[static_cast<std::size_t>(idx)]);
        dudt[static_cast<std::size_t>(t.target)] += v;
    }
}

}  // namespace nlsb
