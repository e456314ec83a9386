#include "nlsb/simulator.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlsb {

namespace {

constexpr double kPi = std::numbers::pi;

// smallest 5-smooth size >= n, keeps FFTW on its fast paths
int next_fast_size(int n) {
    for (int s = n;; ++s) {
        int r = s;
        for (int f : {2, 3, 5})
            while (r % f == 0) r /= f;
        if (r == 1) return s;
    }
}

}  // namespace

Recipe recipe_from_string(const std::string& s) {
    if (s == "cos_plus_sin") return Recipe::CosPlusSin;
    if (s == "cos_only") return Recipe::CosOnly;
    if (s == "sin_only") return Recipe::SinOnly;
    if (s == "cos_plus_sin_perturbed") return Recipe::CosPlusSinPerturbed;
    throw std::invalid_argument("unknown recipe '" + s + "'");
}

std::string recipe_to_string(Recipe r) {
    switch (r) {
        case Recipe::CosPlusSin: return "cos_plus_sin";
        case Recipe::CosOnly: return "cos_only";
        case Recipe::SinOnly: return "sin_only";
        case Recipe::CosPlusSinPerturbed: return "cos_plus_sin_perturbed";
    }
    return "?";
}

void SimConfig::validate() const {
    if (dt <= 0) throw std::invalid_argument("dt must be positive");
    if (T < 0) throw std::invalid_argument("T must be nonnegative");
    if (p < 1) throw std::invalid_argument("p must be >= 1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    if (sample_stride < 1) throw std::invalid_argument("sample_stride must be >= 1");
    if (N < std::max({2 * p, q, 2}) + 1)
        throw std::invalid_argument("N must be >= max(2p, q, 2) + 1");
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    if (T > 0 && sample_stride * dt > T)
        throw std::invalid_argument("sample_stride*dt must not exceed T");
}

GalerkinState initial_state(Recipe recipe, double epsilon, int q, int N, int focus_p) {
    if (epsilon <= 0) throw std::invalid_argument("initial_state: epsilon must be positive");
    if (focus_p < 1 || focus_p > N) throw std::invalid_argument("initial_state: focus mode out of range");
    GalerkinState s(N);
    const std::complex<double> i(0.0, 1.0);
    switch (recipe) {
        case Recipe::CosPlusSin:
            s.at(focus_p) = (1.0 - i) * (epsilon / 2.0);
            s.at(-focus_p) = (1.0 + i) * (epsilon / 2.0);
            break;
        case Recipe::CosOnly:
            s.at(focus_p) = epsilon / 2.0;
            s.at(-focus_p) = epsilon / 2.0;
            break;
        case Recipe::SinOnly:
            s.at(focus_p) = epsilon / (2.0 * i);
            s.at(-focus_p) = -epsilon / (2.0 * i);
            break;
        case Recipe::CosPlusSinPerturbed:
            if (q > N) throw std::invalid_argument("initial_state: q exceeds truncation N");
            if (std::abs(q) == focus_p)
                throw std::invalid_argument("initial_state: q must differ from the focus mode");
            s.at(focus_p) = (1.0 - i) * (epsilon / 2.0);
            s.at(-focus_p) = (1.0 + i) * (epsilon / 2.0);
            s.at(q) += epsilon * epsilon / 2.0;
            s.at(-q) += epsilon * epsilon / 2.0;
            break;
    }
    return s;
}

struct SpectralEngine::Impl {
    int N;
    int G;
    int sign;
    int p;
    double a, b;
    bool x_independent;
    std::vector<double> modulation;  // f(x_g)
    mutable std::vector<std::complex<double>> mode_buf;  // length G
    mutable std::vector<std::complex<double>> grid_buf;  // length G
    fftw_plan synth = nullptr;    // modes -> grid (backward, e^{+ijx})
    fftw_plan analyze = nullptr;  // grid -> modes (forward), divide by G

    explicit Impl(const SimConfig& cfg)
        : N(cfg.N), sign(cfg.sign), p(cfg.p), a(cfg.a), b(cfg.b),
          x_independent(cfg.x_independent) {
        G = next_fast_size(4 * N + 4 * p + 1);
        if (G < 4 * N + 4 * p + 1)
            throw std::invalid_argument("collocation grid too small for exact dealiasing");
        modulation.resize(G);
        for (int g = 0; g < G; ++g) {
            double x = 2.0 * kPi * g / G;
            modulation[g] = x_independent ? 1.0 : a * std::cos(2.0 * p * x) + b * std::sin(2.0 * p * x);
        }
        mode_buf.resize(G);
        grid_buf.resize(G);
        synth = fftw_plan_dft_1d(G, reinterpret_cast<fftw_complex*>(mode_buf.data()),
                                 reinterpret_cast<fftw_complex*>(grid_buf.data()),
                                 FFTW_BACKWARD, FFTW_ESTIMATE);
        analyze = fftw_plan_dft_1d(G, reinterpret_cast<fftw_complex*>(grid_buf.data()),
                                   reinterpret_cast<fftw_complex*>(mode_buf.data()),
                                   FFTW_FORWARD, FFTW_ESTIMATE);
    }

    ~Impl() {
        fftw_destroy_plan(synth);
        fftw_destroy_plan(analyze);
    }

    void to_grid(const std::vector<std::complex<double>>& amp) const {
        std::fill(mode_buf.begin(), mode_buf.end(), std::complex<double>(0.0));
        for (int j = -N; j <= N; ++j) mode_buf[static_cast<std::size_t>((j + G) % G)] = amp[static_cast<std::size_t>(j + N)];
        fftw_execute(synth);
    }

    std::vector<std::complex<double>> from_grid() const {
        fftw_execute(analyze);
        std::vector<std::complex<double>> amp(2 * static_cast<std::size_t>(N) + 1);
        for (int j = -N; j <= N; ++j)
            amp[static_cast<std::size_t>(j + N)] = mode_buf[static_cast<std::size_t>((j + G) % G)] / static_cast<double>(G);
        return amp;
    }
};

SpectralEngine::SpectralEngine(const SimConfig& cfg) : impl_(std::make_unique<Impl>(cfg)) {}
SpectralEngine::~SpectralEngine() = default;

int SpectralEngine::grid_size() const { return impl_->G; }

std::vector<std::complex<double>> SpectralEngine::nonlinear_coefficients(
    const std::vector<std::complex<double>>& amp) const {
    impl_->to_grid(amp);
    const double s = impl_->sign;
    for (int g = 0; g < impl_->G; ++g) {
        std::complex<double>& v = impl_->grid_buf[static_cast<std::size_t>(g)];
        v = s * impl_->modulation[static_cast<std::size_t>(g)] * std::norm(v) * v;
    }
    return impl_->from_grid();
}

std::vector<std::complex<double>> SpectralEngine::nonlinear_coefficients_direct(
    const std::vector<std::complex<double>>& amp) const {
    const int N = impl_->N;
    std::vector<std::complex<double>> out(2 * static_cast<std::size_t>(N) + 1);
    // Fourier weights of the modulation
    std::vector<std::pair<int, std::complex<double>>> fhat;
    if (impl_->x_independent) {
        fhat.emplace_back(0, 1.0);
    } else {
        const std::complex<double> i(0.0, 1.0);
        fhat.emplace_back(2 * impl_->p, (impl_->a - i * impl_->b) / 2.0);
        fhat.emplace_back(-2 * impl_->p, (impl_->a + i * impl_->b) / 2.0);
    }
    const double s = impl_->sign;
    for (int j1 = -N; j1 <= N; ++j1)
        for (int j2 = -N; j2 <= N; ++j2)
            for (int l1 = -N; l1 <= N; ++l1) {
                std::complex<double> base = amp[static_cast<std::size_t>(j1 + N)] *
                                            amp[static_cast<std::size_t>(j2 + N)] *
                                            std::conj(amp[static_cast<std::size_t>(l1 + N)]);
                if (base == 0.0) continue;
                for (const auto& [k, w] : fhat) {
                    int j = j1 + j2 - l1 + k;
                    if (j < -N || j > N) continue;
                    out[static_cast<std::size_t>(j + N)] += s * w * base;
                }
            }
    return out;
}

double SpectralEngine::energy(const GalerkinState& st) const {
    double h0 = 0.0;
    for (int j = -st.N; j <= st.N; ++j) h0 += static_cast<double>(j) * j * std::norm(st.get(j));
    impl_->to_grid(st.amp);
    double quart = 0.0;
    for (int g = 0; g < impl_->G; ++g) {
        double m2 = std::norm(impl_->grid_buf[static_cast<std::size_t>(g)]);
        quart += impl_->modulation[static_cast<std::size_t>(g)] * m2 * m2;
    }
    quart /= impl_->G;  // normalized Lebesgue measure
    return h0 + 0.5 * impl_->sign * quart;
}

void SpectralEngine::step_splitstep(GalerkinState& s, double dt) const {
    const int N = impl_->N;
    // half-step linear phase
    for (int j = -N; j <= N; ++j)
        s.at(j) *= std::polar(1.0, -static_cast<double>(j) * j * dt / 2.0);
    // exact pointwise flow of the nonlinear part, then re-projection
    impl_->to_grid(s.amp);
    const double sg = impl_->sign;
    for (int g = 0; g < impl_->G; ++g) {
        std::complex<double>& v = impl_->grid_buf[static_cast<std::size_t>(g)];
        v *= std::polar(1.0, -sg * impl_->modulation[static_cast<std::size_t>(g)] * std::norm(v) * dt);
    }
    s.amp = impl_->from_grid();
    for (int j = -N; j <= N; ++j)
        s.at(j) *= std::polar(1.0, -static_cast<double>(j) * j * dt / 2.0);
    s.t += dt;
}

void SpectralEngine::step_rk4_rotating(GalerkinState& s, double dt) const {
    // integrate u_j(s) = e^{i j^2 s} xi_j(t+s) over one step in the local
    // rotating frame; u' = -i e^{i j^2 s} NL(e^{-i j^2 s} u)
    const int N = impl_->N;
    const std::size_t n = s.amp.size();
    const std::complex<double> mi(0.0, -1.0);

    std::vector<std::complex<double>> phase_half(n), phase_full(n);
    for (int j = -N; j <= N; ++j) {
        double w = static_cast<double>(j) * j;
        phase_half[static_cast<std::size_t>(j + N)] = std::polar(1.0, w * dt / 2.0);
        phase_full[static_cast<std::size_t>(j + N)] = std::polar(1.0, w * dt);
    }

    auto deriv = [&](const std::vector<std::complex<double>>& u,
                     const std::vector<std::complex<double>>* phase) {
        std::vector<std::complex<double>> xi(n);
        for (std::size_t k = 0; k < n; ++k) xi[k] = phase ? u[k] * std::conj((*phase)[k]) : u[k];
        std::vector<std::complex<double>> nl = nonlinear_coefficients(xi);
        for (std::size_t k = 0; k < n; ++k) nl[k] *= mi * (phase ? (*phase)[k] : 1.0);
        return nl;
    };

    const std::vector<std::complex<double>>& u0 = s.amp;
    std::vector<std::complex<double>> k1 = deriv(u0, nullptr);
    std::vector<std::complex<double>> tmp(n);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = u0[k] + 0.5 * dt * k1[k];
    std::vector<std::complex<double>> k2 = deriv(tmp, &phase_half);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = u0[k] + 0.5 * dt * k2[k];
    std::vector<std::complex<double>> k3 = deriv(tmp, &phase_half);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = u0[k] + dt * k3[k];
    std::vector<std::complex<double>> k4 = deriv(tmp, &phase_full);

    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> u = u0[k] + (dt / 6.0) * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        s.amp[k] = u * std::conj(phase_full[k]);  // back to xi at t+dt
    }
    s.t += dt;
}

Trajectory run(const SimConfig& cfg) {
    cfg.validate();
    SpectralEngine engine(cfg);
    GalerkinState s = initial_state(cfg.recipe, cfg.epsilon, cfg.q, cfg.N, cfg.p);

    Trajectory traj;
    traj.config = cfg;
    const double mass0 = state_mass(s);
    auto emit = [&](const GalerkinState& st) {
        traj.samples.push_back({st, state_mass(st), engine.energy(st)});
    };
    emit(s);
    if (cfg.T <= 0.0) return traj;

    long nsteps = static_cast<long>(std::ceil(cfg.T / cfg.dt - 1e-12));
    const double dt = cfg.T / static_cast<double>(nsteps);
    for (long step = 1; step <= nsteps; ++step) {
        if (cfg.integrator == Integrator::SplitStep)
            engine.step_splitstep(s, dt);
        else
            engine.step_rk4_rotating(s, dt);
        if (step % cfg.sample_stride == 0 || step == nsteps) {
            double m = state_mass(s);
            if (mass0 > 0.0 && std::abs(m - mass0) / mass0 > 1e-6)
                throw std::runtime_error("integrator failure: relative mass drift exceeds 1e-6");
            emit(s);
        }
    }
    return traj;
}

}  // namespace nlsb
