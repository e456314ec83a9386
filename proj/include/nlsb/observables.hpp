#pragma once

#include "nlsb/polynomial.hpp"
#include "nlsb/simulator.hpp"
#include "nlsb/state.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace nlsb {

// Per-sample quadratic observables of the focus pair (+-p); `d` is the
// beating signal I_p - I_{-p} and `s` the pair mass I_p + I_{-p}.
struct ObservableRecord {
    double t = 0.0;
    std::vector<double> I;    // actions |xi_j|^2, index j + N
    std::vector<double> Jp;   // generalized actions, index p = 0..N
    double J = 0.0;           // total mass
    double M1 = 0.0, L1 = 0.0, K1 = 0.0;  // focus pair
    double K2 = 0.0, L2 = 0.0;            // pair at twice the focus index
    double mass = 0.0, energy = 0.0;
    double d = 0.0, s = 0.0;

    int N() const { return (static_cast<int>(I.size()) - 1) / 2; }
};

ObservableRecord observables(const GalerkinState& state, int focus_p = 1);

std::vector<ObservableRecord> observables_series(const Trajectory& traj);

// Theorem prediction sign * eps^2 sin(2 eps^2 t) for d(t).
double beating_prediction(double t, double epsilon, int sign);

// Rotation of (M1, L1) at angular rate 2 J0; plus sign: M1' = +2 J0 L1.
std::pair<double, double> general_prediction(double t, double m1_0, double l1_0, double j0,
                                             int sign);

// max |value - predictor(t)| over samples with t in [window.first, window.second]
double sup_error(const std::vector<std::pair<double, double>>& series,
                 const std::function<double(double)>& predictor,
                 std::pair<double, double> window);

struct FitResult {
    double frequency = 0.0;  // radians per time unit, >= 0
    double amplitude = 0.0;
    double phase = 0.0;
    double residual_rms = 0.0;
    bool degenerate = false;  // non-oscillatory input
};

// Least-squares fit of A sin(w t + phi) + c.  The frequency is refined by
// golden-section search in [0.5, 1.5] x (zero-crossing estimate); fully
// deterministic.
FitResult fit_frequency(const std::vector<std::pair<double, double>>& series);

// least-squares slope of log(error) against log(epsilon)
double scaling_exponent(const std::vector<std::pair<double, double>>& eps_error_pairs);

// RK4 on the rotating-frame vector field of H0 + Z4 (H0 drops out because Z4
// is resonant); pair observables are frame-invariant so records are reported
// directly from the rotating amplitudes.
std::vector<ObservableRecord> integrate_reduced(const HamPolynomial& z4,
                                                const GalerkinState& initial, double T, double dt,
                                                int focus_p = 1, int sample_stride = 1);

// Time-one Hamiltonian flow of chi (RK4, 100 substeps); direction +1 realizes
// tau, -1 its inverse.
GalerkinState chi_flow(const GalerkinState& state, const HamPolynomial& chi, int direction);

}  // namespace nlsb
