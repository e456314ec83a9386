#include "nlsb/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace nlsb {

ObservableRecord observables(const GalerkinState& state, int focus_p) {
    const int N = state.N;
    if (N < 2) throw std::invalid_argument("observables: truncation must be >= 2");
    if (focus_p < 1 || focus_p > N)
        throw std::invalid_argument("observables: focus mode out of range");

    ObservableRecord r;
    r.t = state.t;
    r.I.resize(state.amp.size());
    r.Jp.resize(static_cast<std::size_t>(N) + 1);
    for (int j = -N; j <= N; ++j) {
        double a = std::norm(state.get(j));
        r.I[static_cast<std::size_t>(j + N)] = a;
        r.J += a;
        r.Jp[static_cast<std::size_t>(std::abs(j))] += a;
    }
    r.mass = r.J;

    auto pair_obs = [&](int p, double& m, double& l, double& k) {
        std::complex<double> xp = state.get(p), xm = state.get(-p);
        m = std::norm(xp) - std::norm(xm);
        std::complex<double> cross = xp * std::conj(xm);  // xi_p eta_{-p} with eta = conj xi
        // K_p = 2 Re(cross), L_p = i(cross - conj(cross)) = -2 Im(cross)
        k = 2.0 * cross.real();
        l = -2.0 * cross.imag();
    };
    pair_obs(focus_p, r.M1, r.L1, r.K1);
    double m2;
    if (2 * focus_p <= N) pair_obs(2 * focus_p, m2, r.L2, r.K2);

    r.d = r.I[static_cast<std::size_t>(focus_p + N)] - r.I[static_cast<std::size_t>(-focus_p + N)];
    r.s = r.I[static_cast<std::size_t>(focus_p + N)] + r.I[static_cast<std::size_t>(-focus_p + N)];
    return r;
}

std::vector<ObservableRecord> observables_series(const Trajectory& traj) {
    std::vector<ObservableRecord> out;
    out.reserve(traj.samples.size());
    for (const TrajectorySample& s : traj.samples) {
        ObservableRecord r = observables(s.state, traj.config.p);
        r.mass = s.mass;
        r.energy = s.energy;
        out.push_back(std::move(r));
    }
    return out;
}

double beating_prediction(double t, double epsilon, int sign) {
    return sign * epsilon * epsilon * std::sin(2.0 * epsilon * epsilon * t);
}

std::pair<double, double> general_prediction(double t, double m1_0, double l1_0, double j0,
                                             int sign) {
    if (j0 <= 0) throw std::invalid_argument("general_prediction: J0 must be positive");
    double w = 2.0 * j0 * t;
    double c = std::cos(w), s = std::sin(w);
    if (sign > 0)  // M1' = +2 J0 L1, L1' = -2 J0 M1
        return {m1_0 * c + l1_0 * s, l1_0 * c - m1_0 * s};
    return {m1_0 * c - l1_0 * s, l1_0 * c + m1_0 * s};
}

double sup_error(const std::vector<std::pair<double, double>>& series,
                 const std::function<double(double)>& predictor,
                 std::pair<double, double> window) {
    double sup = 0.0;
    bool any = false;
    for (const auto& [t, v] : series) {
        if (t < window.first || t > window.second) continue;
        any = true;
        sup = std::max(sup, std::abs(v - predictor(t)));
    }
    if (!any) throw std::invalid_argument("sup_error: window contains no samples");
    return sup;
}

namespace {

// residual sum of squares of the best A sin(wt) + B cos(wt) + c fit at fixed w
double sine_rss(const std::vector<std::pair<double, double>>& pts, double w,
                std::array<double, 3>* coeffs = nullptr) {
    // normal equations for the 3-parameter linear model
    double s[3][3] = {};
    double rhs[3] = {};
    for (const auto& [t, y] : pts) {
        double b0 = std::sin(w * t), b1 = std::cos(w * t), b2 = 1.0;
        double b[3] = {b0, b1, b2};
        for (int r = 0; r < 3; ++r) {
            rhs[r] += b[r] * y;
            for (int c = 0; c < 3; ++c) s[r][c] += b[r] * b[c];
        }
    }
    // Gaussian elimination, 3x3
    double m[3][4];
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) m[r][c] = s[r][c];
        m[r][3] = rhs[r];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        std::swap(m[col], m[piv]);
        if (std::abs(m[col][col]) < 1e-300) return 1e300;
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    double x[3];
    for (int r = 0; r < 3; ++r) x[r] = m[r][3] / m[r][r];
    if (coeffs) *coeffs = {x[0], x[1], x[2]};
    double rss = 0.0;
    for (const auto& [t, y] : pts) {
        double e = y - (x[0] * std::sin(w * t) + x[1] * std::cos(w * t) + x[2]);
        rss += e * e;
    }
    return rss;
}

}  // namespace

FitResult fit_frequency(const std::vector<std::pair<double, double>>& series) {
    FitResult out;
    if (series.size() < 100)
        throw std::invalid_argument("fit_frequency: need at least 100 samples");

    double mean = 0.0;
    for (const auto& [t, y] : series) mean += y;
    mean /= static_cast<double>(series.size());
    double amp = 0.0;
    for (const auto& [t, y] : series) amp = std::max(amp, std::abs(y - mean));
    if (amp < 1e-14) {
        out.degenerate = true;
        return out;
    }

    // zero-crossing estimate of the half period
    double first = 0.0, last = 0.0;
    int crossings = 0;
    double prev_t = series.front().first, prev_v = series.front().second - mean;
    for (std::size_t k = 1; k < series.size(); ++k) {
        double t = series[k].first, v = series[k].second - mean;
        if ((prev_v < 0.0 && v >= 0.0) || (prev_v > 0.0 && v <= 0.0)) {
            double tc = prev_t + (t - prev_t) * (-prev_v) / (v - prev_v);
            if (crossings == 0) first = tc;
            last = tc;
            ++crossings;
        }
        prev_t = t;
        prev_v = v;
    }
    double span = series.back().first - series.front().first;
    double w0;
    if (crossings >= 2) {
        w0 = std::numbers::pi / ((last - first) / (crossings - 1));
    } else {
        // under half a period visible: fall back to the span-based floor
        w0 = std::numbers::pi / span;
    }

    // golden-section refinement of the frequency
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.5 * w0, hi = 1.5 * w0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = sine_rss(series, x1), f2 = sine_rss(series, x2);
    while (hi - lo > 1e-12 * w0) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = sine_rss(series, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = sine_rss(series, x2);
        }
    }
    double w = 0.5 * (lo + hi);
    std::array<double, 3> c;
    double rss = sine_rss(series, w, &c);
    out.frequency = w;
    out.amplitude = std::hypot(c[0], c[1]);
    out.phase = std::atan2(c[1], c[0]);
    out.residual_rms = std::sqrt(rss / static_cast<double>(series.size()));
    return out;
}

double scaling_exponent(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 2)
        throw std::invalid_argument("scaling_exponent: need at least 2 (epsilon, error) pairs");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [eps, err] : pairs) {
        if (eps <= 0 || err <= 0)
            throw std::invalid_argument("scaling_exponent: epsilons and errors must be positive");
        double x = std::log(eps), y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(pairs.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

void rk4_step(const CompiledVectorField& field, std::vector<std::complex<double>>& u, double dt) {
    const std::size_t n = u.size();
    std::vector<std::complex<double>> k1(n), k2(n), k3(n), k4(n), tmp(n);
    field.accumulate(u, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
    field.accumulate(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
    field.accumulate(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + dt * k3[i];
    field.accumulate(tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
        u[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

std::vector<ObservableRecord> integrate_reduced(const HamPolynomial& z4,
                                                const GalerkinState& initial, double T, double dt,
                                                int focus_p, int sample_stride) {
    if (dt <= 0 || T < 0) throw std::invalid_argument("integrate_reduced: bad time parameters");
    CompiledVectorField field(z4, initial.N);
    GalerkinState s = initial;

    std::vector<ObservableRecord> out;
    out.push_back(observables(s, focus_p));
    if (T == 0.0) return out;

    long nsteps = static_cast<long>(std::ceil(T / dt - 1e-12));
    const double h = T / static_cast<double>(nsteps);
    for (long k = 1; k <= nsteps; ++k) {
        rk4_step(field, s.amp, h);
        s.t += h;
        if (k % sample_stride == 0 || k == nsteps) out.push_back(observables(s, focus_p));
    }
    return out;
}

GalerkinState chi_flow(const GalerkinState& state, const HamPolynomial& chi, int direction) {
    if (direction != 1 && direction != -1)
        throw std::invalid_argument("chi_flow: direction must be +-1");
    CompiledVectorField field(chi, state.N);
    GalerkinState s = state;
    const int substeps = 100;
    const double h = static_cast<double>(direction) / substeps;
    for (int k = 0; k < substeps; ++k) rk4_step(field, s.amp, h);
    return s;
}

}  // namespace nlsb
