#pragma once

#include "nlsb/state.hpp"

#include <memory>
#include <string>
#include <vector>

namespace nlsb {

enum class Integrator { SplitStep, Rk4Rotating };

enum class Recipe { CosPlusSin, CosOnly, SinOnly, CosPlusSinPerturbed };

Recipe recipe_from_string(const std::string& s);
std::string recipe_to_string(Recipe r);

struct SimConfig {
    int N = 32;
    double dt = 2.0 * 3.14159265358979323846 * 1e-3;
    double T = 1.0;
    Integrator integrator = Integrator::SplitStep;
    int sample_stride = 1;
    int sign = +1;
    int p = 1;  // modulation half-frequency and datum focus pair
    double a = 2.0;
    double b = 0.0;
    bool x_independent = false;  // plain |psi|^2 psi (momentum offset 0)
    Recipe recipe = Recipe::CosPlusSin;
    double epsilon = 0.1;
    int q = 0;  // extra mode of the perturbed datum

    void validate() const;  // throws std::invalid_argument naming the field
};

// All amplitudes zero except the datum modes; the focus pair is +-p.
GalerkinState initial_state(Recipe recipe, double epsilon, int q, int N, int focus_p = 1);

// Collocation engine on a grid of >= 4N+4p+1 points (exact dealiasing of the
// modulated quartic product).  Owns the FFTW plans; one engine per config.
class SpectralEngine {
  public:
    explicit SpectralEngine(const SimConfig& cfg);
    ~SpectralEngine();
    SpectralEngine(const SpectralEngine&) = delete;
    SpectralEngine& operator=(const SpectralEngine&) = delete;

    int grid_size() const;

    // Fourier coefficients of sign * f(x) |psi|^2 psi for |j| <= N,
    // computed by collocation.
    std::vector<std::complex<double>> nonlinear_coefficients(
        const std::vector<std::complex<double>>& amp) const;

    // Independent direct triple summation over (j1, j2, l1); O(N^3) oracle
    // used to cross-check the collocation path.
    std::vector<std::complex<double>> nonlinear_coefficients_direct(
        const std::vector<std::complex<double>>& amp) const;

    double energy(const GalerkinState& s) const;  // H0 + (sign/2) \int f |psi|^4

    void step_splitstep(GalerkinState& s, double dt) const;
    void step_rk4_rotating(GalerkinState& s, double dt) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct TrajectorySample {
    GalerkinState state;
    double mass = 0.0;
    double energy = 0.0;
};

struct Trajectory {
    SimConfig config;
    std::vector<TrajectorySample> samples;
};

// Deterministic time stepping; emits the initial state and then every
// sample_stride-th state.  Aborts (std::runtime_error) if relative mass drift
// exceeds 1e-6.
Trajectory run(const SimConfig& cfg);

}  // namespace nlsb
