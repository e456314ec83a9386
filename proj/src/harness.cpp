#include "nlsb/harness.hpp"

#include "nlsb/normal_form.hpp"
#include "nlsb/thresholds.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nlsb {

namespace th = thresholds;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void config_error(int line, const std::string& key, const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(line) + ", key '" + key +
                                "': " + what);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (scenario.empty()) throw std::invalid_argument("config: scenario is required");
    if (!scenario_known(scenario))
        throw std::invalid_argument("config: unknown scenario '" + scenario + "'");
    if (epsilon <= 0) throw std::invalid_argument("config: epsilon must be positive");
    if (sign != 1 && sign != -1) throw std::invalid_argument("config: sign must be +1 or -1");
    if (p < 1) throw std::invalid_argument("config: p must be >= 1");
    if (dt <= 0) throw std::invalid_argument("config: dt must be positive");
    if (N < 3) throw std::invalid_argument("config: N must be >= 3");
    if (integrator != "splitstep" && integrator != "rk4")
        throw std::invalid_argument("config: integrator must be 'splitstep' or 'rk4'");
    if (window != "theorem") {
        if (window.rfind("periods:", 0) != 0)
            throw std::invalid_argument("config: window must be 'theorem' or 'periods:K'");
        int k = std::stoi(window.substr(8));
        if (k < 1) throw std::invalid_argument("config: window period count must be >= 1");
    }
    if ((recipe == "cos_plus_sin_perturbed" || scenario == "freq-shift") && q == 1)
        throw std::invalid_argument("config: q must differ from 1 for the perturbed datum");
    if (!recipe.empty()) recipe_from_string(recipe);  // throws on unknown
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "scenario") cfg.scenario = val;
            else if (key == "epsilon") { cfg.epsilon = std::stod(val); cfg.epsilon_overridden = true; }
            else if (key == "sign") cfg.sign = std::stoi(val);
            else if (key == "p") cfg.p = std::stoi(val);
            else if (key == "a") cfg.a = std::stod(val);
            else if (key == "b") cfg.b = std::stod(val);
            else if (key == "recipe") cfg.recipe = val;
            else if (key == "q") cfg.q = std::stoi(val);
            else if (key == "N") cfg.N = std::stoi(val);
            else if (key == "dt") cfg.dt = std::stod(val);
            else if (key == "window") cfg.window = val;
            else if (key == "integrator") cfg.integrator = val;
            else if (key == "output_dir") cfg.output_dir = val;
            else if (key == "rng_seed") cfg.rng_seed = std::stol(val);
            else config_error(lineno, key, "unknown key");
        } catch (const std::invalid_argument& e) {
            if (std::string(e.what()).rfind("config", 0) == 0) throw;
            config_error(lineno, key, "unparsable value '" + val + "'");
        }
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string(e.what()) + " (from config text)");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not found: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string write_config_text(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "scenario = " << cfg.scenario << '\n'
       << "epsilon = " << fmt(cfg.epsilon) << '\n'
       << "sign = " << cfg.sign << '\n'
       << "p = " << cfg.p << '\n'
       << "a = " << fmt(cfg.a) << '\n'
       << "b = " << fmt(cfg.b) << '\n';
    if (!cfg.recipe.empty()) os << "recipe = " << cfg.recipe << '\n';
    os << "q = " << cfg.q << '\n'
       << "N = " << cfg.N << '\n'
       << "dt = " << fmt(cfg.dt) << '\n'
       << "window = " << cfg.window << '\n'
       << "integrator = " << cfg.integrator << '\n'
       << "output_dir = " << cfg.output_dir << '\n'
       << "rng_seed = " << cfg.rng_seed << '\n';
    return os.str();
}

const std::vector<ScenarioDescriptor>& scenario_catalog() {
    static const std::vector<ScenarioDescriptor> cat = {
        {"theorem-plus", "beating law with the + nonlinearity and cos+sin datum"},
        {"theorem-minus", "sign flip: beating signal negated"},
        {"control-constant", "x-independent cubic: no beating"},
        {"control-cos-datum", "cos-only datum: no beating at order 4"},
        {"freq-shift", "datum + eps^2 cos qx shifts the beating frequency by eps^4"},
        {"general-p", "a cos 2px + b sin 2px with the datum on modes +-p"},
        {"cos4x-null", "p=2 modulation with +-1 datum: no order-4 pair-action coupling"},
    };
    return cat;
}

bool scenario_known(const std::string& name) {
    for (const auto& s : scenario_catalog())
        if (s.name == name) return true;
    return false;
}

bool VerificationReport::overall_pass() const {
    for (const Check& c : checks)
        if (!c.exploratory && !c.pass) return false;
    return true;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j;
    j["scenario"] = scenario;
    j["inputs"] = inputs;
    j["metrics"] = metrics;
    j["checks"] = nlohmann::json::array();
    for (const Check& c : checks)
        j["checks"].push_back({{"name", c.name},
                               {"threshold", c.threshold},
                               {"observed", c.observed},
                               {"pass", c.pass},
                               {"exploratory", c.exploratory},
                               {"note", c.note}});
    j["exploratory_flags"] = exploratory_flags;
    j["overall_pass"] = overall_pass();
    return j;
}

double window_T(const ExperimentConfig& cfg) {
    if (cfg.window == "theorem") return std::pow(cfg.epsilon, -9.0 / 4.0);
    int k = std::stoi(cfg.window.substr(8));
    return k * kPi / (cfg.epsilon * cfg.epsilon);  // k beating periods at 2 J(0) ~ 2 eps^2
}

SimConfig simulation_config(const ExperimentConfig& cfg) {
    SimConfig sc;
    sc.N = cfg.N;
    sc.dt = cfg.dt;
    sc.sign = cfg.sign;
    sc.p = cfg.p;
    sc.a = cfg.a;
    sc.b = cfg.b;
    sc.epsilon = cfg.epsilon;
    sc.q = cfg.q;
    sc.integrator = (cfg.integrator == "rk4") ? Integrator::Rk4Rotating : Integrator::SplitStep;
    sc.recipe = Recipe::CosPlusSin;

    if (cfg.scenario == "theorem-plus") sc.sign = +1;
    else if (cfg.scenario == "theorem-minus") sc.sign = -1;
    else if (cfg.scenario == "control-constant") sc.x_independent = true;
    else if (cfg.scenario == "control-cos-datum") sc.recipe = Recipe::CosOnly;
    else if (cfg.scenario == "freq-shift") sc.recipe = Recipe::CosPlusSinPerturbed;
    else if (cfg.scenario == "general-p" && cfg.p == 1) sc.p = 2;  // scenario default focus

    if (!cfg.recipe.empty()) sc.recipe = recipe_from_string(cfg.recipe);
    sc.T = window_T(cfg);
    long nsteps = std::max(1L, static_cast<long>(std::ceil(sc.T / sc.dt)));
    sc.sample_stride = std::max(1L, nsteps / 2000);
    return sc;
}

std::string trajectory_csv(const Trajectory& traj) {
    const int N = traj.config.N;
    std::ostringstream os;
    os << "t";
    for (int j = -N; j <= N; ++j) os << ",re_xi_" << j;
    for (int j = -N; j <= N; ++j) os << ",im_xi_" << j;
    os << ",mass,energy\n";
    for (const TrajectorySample& s : traj.samples) {
        os << fmt(s.state.t);
        for (int j = -N; j <= N; ++j) os << ',' << fmt(s.state.get(j).real());
        for (int j = -N; j <= N; ++j) os << ',' << fmt(s.state.get(j).imag());
        os << ',' << fmt(s.mass) << ',' << fmt(s.energy) << '\n';
    }
    return os.str();
}

std::string observables_csv(const std::vector<ObservableRecord>& records, double epsilon,
                            int sign) {
    std::ostringstream os;
    os << "t,I_1,I_-1,d,s,M1,L1,K1,K2,L2,J,mass,energy,prediction,error\n";
    for (const ObservableRecord& r : records) {
        const int N = r.N();
        double i1 = r.I[static_cast<std::size_t>(1 + N)];
        double im1 = r.I[static_cast<std::size_t>(-1 + N)];
        double pred = beating_prediction(r.t, epsilon, sign);
        os << fmt(r.t) << ',' << fmt(i1) << ',' << fmt(im1) << ',' << fmt(r.d) << ',' << fmt(r.s)
           << ',' << fmt(r.M1) << ',' << fmt(r.L1) << ',' << fmt(r.K1) << ',' << fmt(r.K2) << ','
           << fmt(r.L2) << ',' << fmt(r.J) << ',' << fmt(r.mass) << ',' << fmt(r.energy) << ','
           << fmt(pred) << ',' << fmt(r.d - pred) << '\n';
    }
    return os.str();
}

namespace {

struct RunResult {
    Trajectory traj;
    std::vector<ObservableRecord> obs;
    double mass_drift = 0.0;
    double energy_drift = 0.0;
    double even_mode_rel = 0.0;  // sup even-mode amplitude / epsilon
};

RunResult execute_run(const SimConfig& sc) {
    RunResult r;
    r.traj = run(sc);
    r.obs = observables_series(r.traj);
    const double m0 = r.traj.samples.front().mass;
    const double e0 = r.traj.samples.front().energy;
    const double escale = std::max(std::abs(e0), sc.epsilon * sc.epsilon);
    for (const TrajectorySample& s : r.traj.samples) {
        r.mass_drift = std::max(r.mass_drift, std::abs(s.mass - m0) / m0);
        r.energy_drift = std::max(r.energy_drift, std::abs(s.energy - e0) / escale);
        for (int j = -sc.N; j <= sc.N; ++j)
            if (((j % 2) + 2) % 2 == 0)
                r.even_mode_rel =
                    std::max(r.even_mode_rel, std::abs(s.state.get(j)) / sc.epsilon);
    }
    return r;
}

std::vector<std::pair<double, double>> series_of(const std::vector<ObservableRecord>& obs,
                                                 double ObservableRecord::* field,
                                                 double tmax = 1e300) {
    std::vector<std::pair<double, double>> out;
    for (const ObservableRecord& r : obs)
        if (r.t <= tmax) out.emplace_back(r.t, r.*field);
    return out;
}

void add_check(VerificationReport& rep, const std::string& name, double observed,
               double threshold, bool pass, bool exploratory = false,
               const std::string& note = "") {
    rep.checks.push_back({name, threshold, observed, pass, exploratory, note});
    rep.metrics[name] = observed;
}

// M1 of the reduced normal-form model sampled at the given times
std::vector<double> reduced_m1_at_times(const HamPolynomial& z4, const GalerkinState& datum,
                                        const std::vector<double>& times, double dt_target,
                                        int focus) {
    CompiledVectorField field(z4, datum.N);
    GalerkinState s = datum;
    std::vector<double> out;
    out.reserve(times.size());
    double t = times.front();
    out.push_back(observables(s, focus).M1);
    auto rk4 = [&](double h) {
        const std::size_t n = s.amp.size();
        std::vector<std::complex<double>> k1(n), k2(n), k3(n), k4(n), tmp(n);
        field.accumulate(s.amp, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = s.amp[i] + 0.5 * h * k1[i];
        field.accumulate(tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = s.amp[i] + 0.5 * h * k2[i];
        field.accumulate(tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = s.amp[i] + h * k3[i];
        field.accumulate(tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            s.amp[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    };
    for (std::size_t k = 1; k < times.size(); ++k) {
        double span = times[k] - t;
        long sub = std::max(1L, static_cast<long>(std::ceil(span / dt_target)));
        double h = span / static_cast<double>(sub);
        for (long i = 0; i < sub; ++i) rk4(h);
        t = times[k];
        out.push_back(observables(s, focus).M1);
    }
    return out;
}

// ---- hosted algebra checks (normal form, resonances, classification, bound) ----

void algebra_checks(VerificationReport& rep, long rng_seed) {
    using Clock = std::chrono::steady_clock;
    auto seconds_since = [](Clock::time_point t0) {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    };

    // exact normal form at p = 1, N = 20
    auto t0 = Clock::now();
    const int N = 20;
    HamPolynomial pert = build_perturbation(1, +1, Rational(2), Rational(0), N);
    NormalFormResult nf = solve_homological(pert);
    HamPolynomial h0 = h0_polynomial(N);
    HamPolynomial residual = poisson_bracket(nf.chi, h0) + nf.z4 - pert;
    add_check(rep, "normal-form-residual", static_cast<double>(residual.size()), 0.0,
              residual.is_zero(), false, "residual term count, exact arithmetic");
    HamPolynomial commute = poisson_bracket(h0, nf.z4);
    add_check(rep, "z4-h0-commute", static_cast<double>(commute.size()), 0.0, commute.is_zero(),
              false, "term count of {H0, Z4}");
    rep.metrics["normal-form-seconds"] = seconds_since(t0);
    t0 = Clock::now();

    // resonance families containing +-1, N = 100, against an independent
    // enumeration over (j1, l1, l2)
    {
        const int nb = 100;
        std::set<std::array<int, 5>> families;
        auto canon = [](int j1, int j2, int l1, int l2, long m) {
            if (j1 > j2) std::swap(j1, j2);
            if (l1 > l2) std::swap(l1, l2);
            return std::array<int, 5>{j1, j2, l1, l2, static_cast<int>(m)};
        };
        // Explicit solutions with a +-1 in a xi slot and momentum +2:
        //   j1 = +1: (l1+1)(l2+1) = 0, the (1,q,-1,q) family;
        //   j1 = -1: (l1+3)(l2+3) = 4, four isolated quadruples.
        // Every solution touching +-1 reduces to these under index negation
        // (momentum flips) and the xi<->eta swap (momentum flips), so the
        // expected set is their closure under that 4-element group.
        std::vector<std::array<int, 5>> base;
        for (int q = -nb; q <= nb; ++q) base.push_back({1, q, -1, q, 2});
        base.push_back({-1, 1, -1, -1, 2});
        base.push_back({-1, 2, -2, 1, 2});
        base.push_back({-1, -8, -4, -7, 2});
        base.push_back({-1, -7, -5, -5, 2});
        for (const auto& f : base)
            for (bool neg : {false, true})
                for (bool swap_sides : {false, true}) {
                    int s = neg ? -1 : 1;
                    int v[4] = {s * f[0], s * f[1], s * f[2], s * f[3]};
                    int m = s * f[4];
                    if (swap_sides) {
                        std::swap(v[0], v[2]);
                        std::swap(v[1], v[3]);
                        m = -m;
                    }
                    families.insert(canon(v[0], v[1], v[2], v[3], m));
                }
        std::set<std::array<int, 5>> found;
        for (int j1 = -nb; j1 <= nb; ++j1)
            for (int l1 = -nb; l1 <= nb; ++l1)
                for (int l2 = l1; l2 <= nb; ++l2)
                    for (int m : {+2, -2}) {
                        long j2 = l1 + l2 - j1 + m;
                        if (j2 < -nb || j2 > nb) continue;
                        if ((long)j1 * j1 + j2 * j2 - (long)l1 * l1 - (long)l2 * l2 != 0) continue;
                        int arr[4] = {j1, static_cast<int>(j2), l1, l2};
                        bool touches = false;
                        for (int v : arr) touches |= (v == 1 || v == -1);
                        if (touches) found.insert(canon(arr[0], arr[1], arr[2], arr[3], m));
                    }
        // cross-check against the production enumerator
        std::set<std::array<int, 5>> prod;
        for (const ResonantQuadruple& rq : enumerate_resonant(1, nb)) {
            int arr[4] = {rq.j1, rq.j2, rq.l1, rq.l2};
            bool touches = false;
            for (int v : arr) touches |= (v == 1 || v == -1);
            if (touches) prod.insert(canon(rq.j1, rq.j2, rq.l1, rq.l2, rq.momentum));
        }
        std::size_t mismatch = 0;
        for (const auto& f : families) mismatch += !found.count(f) + !prod.count(f);
        for (const auto& f : found) mismatch += !families.count(f);
        for (const auto& f : prod) mismatch += !families.count(f);
        add_check(rep, "resonance-families", static_cast<double>(mismatch), 0.0, mismatch == 0,
                  false, "symmetric difference with the explicit family list, N=100");
        rep.metrics["resonance-seconds"] = seconds_since(t0);
    }

    // Z4 classification and gauge invariance
    {
        Z4Split split = classify_z4(nf.z4, N);
        bool z41_ok = split.z41 == z41_closed_form(N);
        add_check(rep, "z4-classification", z41_ok && split.z42.size() == 2 ? 0.0 : 1.0, 0.0,
                  z41_ok && split.z42.size() == 2, false,
                  "Z41 closed form and Z42 = 2 canonical monomials");
        std::size_t bad = 0;
        for (int pp = 0; pp <= N; ++pp) {
            HamPolynomial jp = quadratic_observable(ObservableKind::J, pp);
            if (!poisson_bracket(jp, split.z41).is_zero()) ++bad;
            if (!poisson_bracket(jp, split.z42).is_zero()) ++bad;
        }
        add_check(rep, "gauge-invariance", static_cast<double>(bad), 0.0, bad == 0, false,
                  "{J_p, Z41} = {J_p, Z42} = 0 exactly for p <= N");
    }

    // vector-field bound on random truncated states
    {
        const int nb = 16;
        HamPolynomial pert16 = build_perturbation(1, +1, Rational(2), Rational(0), nb);
        double M = pert16.max_coefficient_modulus();
        std::mt19937_64 rng(static_cast<std::uint64_t>(rng_seed));
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        double worst_ratio = 0.0;
        for (int trial = 0; trial < th::vector_field_bound_samples; ++trial) {
            GalerkinState s(nb);
            for (int j = -nb; j <= nb; ++j)
                s.at(j) = std::complex<double>(unif(rng), unif(rng)) *
                          std::exp(-0.4 * std::abs(j));
            for (double rho : {0.0, 0.5}) {
                // normalize to ||z||_rho <= 1
                double n = weighted_norm(s, rho);
                GalerkinState z = s;
                for (auto& a : z.amp) a /= n;
                std::vector<std::complex<double>> field = vector_field(pert16, z);
                // ||X||_rho counts both the xi and eta components; by the
                // reality symmetry they have equal weighted sums
                double fn = 0.0;
                for (int j = -nb; j <= nb; ++j)
                    fn += std::exp(rho * std::abs(j)) * 2.0 *
                          std::abs(field[static_cast<std::size_t>(j + nb)]);
                double zn = weighted_norm(z, rho);
                double bound = 4.0 * M * std::exp(2.0 * rho) * zn * zn * zn;
                worst_ratio = std::max(worst_ratio, fn / bound);
            }
        }
        add_check(rep, "vector-field-bound", worst_ratio, 1.0, worst_ratio <= 1.0, false,
                  "max ||X_P||_rho / (4 M e^{2 rho} ||z||^3), 100 random states");
    }
}

void drift_checks(VerificationReport& rep, const RunResult& r, const std::string& suffix) {
    add_check(rep, "mass-drift" + suffix, r.mass_drift, th::mass_drift_rel,
              r.mass_drift <= th::mass_drift_rel);
    add_check(rep, "energy-drift" + suffix, r.energy_drift, th::energy_drift_rel,
              r.energy_drift <= th::energy_drift_rel);
}

std::string eps_suffix(double eps) {
    std::ostringstream os;
    os << "-eps" << eps;
    return os.str();
}

void theorem_window_checks(VerificationReport& rep, const RunResult& r, double eps,
                           const std::string& suffix) {
    const double e2 = eps * eps;
    const double T_thm = std::pow(eps, -9.0 / 4.0);
    auto d_series = series_of(r.obs, &ObservableRecord::d, T_thm);
    double sup = sup_error(
        d_series, [&](double t) { return beating_prediction(t, eps, r.traj.config.sign); },
        {0.0, T_thm});
    add_check(rep, "beating-sup-error" + suffix, sup, th::beating_sup_error_factor * e2,
              sup <= th::beating_sup_error_factor * e2);

    double jp_max = 0.0, i1_max = 0.0;
    const int focus = r.traj.config.p;
    for (const ObservableRecord& o : r.obs) {
        if (o.t > T_thm) break;
        for (int pp = 0; pp < static_cast<int>(o.Jp.size()); ++pp)
            if (pp != focus) jp_max = std::max(jp_max, o.Jp[static_cast<std::size_t>(pp)]);
        i1_max = std::max({i1_max, o.I[static_cast<std::size_t>(focus + o.N())],
                           o.I[static_cast<std::size_t>(-focus + o.N())]});
    }
    add_check(rep, "concentration-jp" + suffix, jp_max,
              th::concentration_jp_factor * e2 * eps,
              jp_max <= th::concentration_jp_factor * e2 * eps);
    add_check(rep, "concentration-i1" + suffix, i1_max, th::concentration_i1_factor * e2,
              i1_max <= th::concentration_i1_factor * e2);

    drift_checks(rep, r, suffix);
    add_check(rep, "even-mode-support" + suffix, r.even_mode_rel, th::even_mode_support_factor,
              r.even_mode_rel <= th::even_mode_support_factor);
}

void theorem_plus_full(VerificationReport& rep, const ExperimentConfig& base) {
    algebra_checks(rep, base.rng_seed);

    // The cos+sin datum populates only modes +-1, and every resonant monomial
    // coupling the pair to another mode carries a factor that vanishes on
    // that support, so the reduced flow is exact already at a small bound.
    const int reduced_N = 6;
    const HamPolynomial z4_sim = [&] {
        HamPolynomial pert = build_perturbation(1, +1, Rational(2), Rational(0), reduced_N);
        return solve_homological(pert).z4;
    }();

    const std::vector<double> epsilons = {0.2, 0.1, 0.05};
    std::vector<std::pair<double, double>> beat_errs, s_errs, reduced_errs;
    double quad_worst = 0.0;
    FitResult fit005;

    for (double eps : epsilons) {
        ExperimentConfig cfg = base;
        cfg.epsilon = eps;
        cfg.window = (eps == 0.05) ? "periods:2" : "theorem";  // extended run reused by the fit
        SimConfig sc = simulation_config(cfg);
        RunResult r = execute_run(sc);
        const std::string suffix = eps_suffix(eps);
        const double T_thm = std::pow(eps, -9.0 / 4.0);

        theorem_window_checks(rep, r, eps, suffix);

        auto d_series = series_of(r.obs, &ObservableRecord::d, T_thm);
        beat_errs.emplace_back(
            eps, sup_error(d_series,
                           [&](double t) { return beating_prediction(t, eps, sc.sign); },
                           {0.0, T_thm}));
        auto s_series = series_of(r.obs, &ObservableRecord::s, T_thm);
        s_errs.emplace_back(eps, sup_error(s_series, [&](double) { return eps * eps; },
                                           {0.0, T_thm}));

        // reduced normal-form model at the same sample times
        std::vector<double> times;
        std::vector<double> m1_full;
        for (const ObservableRecord& o : r.obs) {
            if (o.t > T_thm) break;
            times.push_back(o.t);
            m1_full.push_back(o.M1);
        }
        GalerkinState datum = initial_state(sc.recipe, eps, sc.q, reduced_N, sc.p);
        std::vector<double> m1_red =
            reduced_m1_at_times(z4_sim, datum, times, 0.0125 / (eps * eps), sc.p);
        double red_sup = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k)
            red_sup = std::max(red_sup, std::abs(m1_full[k] - m1_red[k]));
        reduced_errs.emplace_back(eps, red_sup);

        for (const ObservableRecord& o : r.obs) {
            double j1 = o.Jp[1];
            if (j1 <= 0) continue;
            double res = std::abs(o.M1 * o.M1 + o.K1 * o.K1 + o.L1 * o.L1 - j1 * j1) / (j1 * j1);
            quad_worst = std::max(quad_worst, res);
        }

        if (eps == 0.05) fit005 = fit_frequency(series_of(r.obs, &ObservableRecord::d));
    }

    double beat_slope = scaling_exponent(beat_errs);
    add_check(rep, "beating-error-slope", beat_slope, th::beating_error_slope_min,
              beat_slope >= th::beating_error_slope_min, false, "log-log slope vs epsilon");
    double s_slope = scaling_exponent(s_errs);
    add_check(rep, "s-error-slope", s_slope, th::pair_mass_slope_min,
              s_slope >= th::pair_mass_slope_min);
    double red_slope = scaling_exponent(reduced_errs);
    add_check(rep, "reduced-model-slope", red_slope, th::reduced_model_slope_min,
              red_slope >= th::reduced_model_slope_min);
    add_check(rep, "quadratic-identity", quad_worst, th::quadratic_identity_rel,
              quad_worst <= th::quadratic_identity_rel, false,
              "max relative |M1^2+K1^2+L1^2-J1^2|");

    {
        const double eps = 0.05;
        double w_pred = 2.0 * eps * eps;
        double rel = std::abs(fit005.frequency - w_pred) / w_pred;
        add_check(rep, "frequency-fit", rel, th::frequency_rel_tol, rel <= th::frequency_rel_tol,
                  false, "two-period window (exploratory horizon), eps = 0.05");
        rep.exploratory_flags.push_back("frequency-fit uses a window beyond the theorem horizon");
        rep.metrics["fitted-frequency"] = fit005.frequency;
    }

    // split-step vs RK4-rotating probe
    {
        ExperimentConfig cfg = base;
        cfg.epsilon = th::probe_epsilon;
        SimConfig sc = simulation_config(cfg);
        sc.T = th::probe_T;
        sc.dt = th::probe_dt;
        long nsteps = static_cast<long>(std::ceil(sc.T / sc.dt));
        sc.sample_stride = std::max(1L, nsteps / 500);
        sc.integrator = Integrator::SplitStep;
        Trajectory a = run(sc);
        sc.integrator = Integrator::Rk4Rotating;
        Trajectory b = run(sc);
        double sup = 0.0;
        for (std::size_t k = 0; k < a.samples.size(); ++k)
            for (std::size_t m = 0; m < a.samples[k].state.amp.size(); ++m)
                sup = std::max(sup,
                               std::abs(a.samples[k].state.amp[m] - b.samples[k].state.amp[m]));
        add_check(rep, "integrator-cross-check", sup, th::integrator_agreement,
                  sup <= th::integrator_agreement, false, "mode-wise sup over the T=100 probe");
    }
}

void theorem_quick(VerificationReport& rep, const ExperimentConfig& cfg) {
    SimConfig sc = simulation_config(cfg);
    RunResult r = execute_run(sc);
    theorem_window_checks(rep, r, cfg.epsilon, "");
}

void sign_symmetry_check(VerificationReport& rep, const ExperimentConfig& base) {
    ExperimentConfig plus = base;
    plus.scenario = "theorem-plus";
    ExperimentConfig minus = base;
    minus.scenario = "theorem-minus";
    SimConfig scp = simulation_config(plus);
    SimConfig scm = simulation_config(minus);
    RunResult rp = execute_run(scp);
    RunResult rm = execute_run(scm);
    double sup = 0.0;
    for (std::size_t k = 0; k < rp.obs.size(); ++k)
        sup = std::max(sup, std::abs(rm.obs[k].d + rp.obs[k].d));
    add_check(rep, "sign-symmetry", sup, th::sign_symmetry_tol, sup <= th::sign_symmetry_tol,
              false, "sup |d_minus(t) + d_plus(t)| over the theorem window");
    drift_checks(rep, rm, "");
}

void control_checks(VerificationReport& rep, const ExperimentConfig& cfg) {
    SimConfig sc = simulation_config(cfg);
    RunResult r = execute_run(sc);
    double sup = 0.0;
    for (const ObservableRecord& o : r.obs) sup = std::max(sup, std::abs(o.d));
    double thr = th::control_flatness_factor * cfg.epsilon * cfg.epsilon;
    add_check(rep, "control-flatness", sup, thr, sup <= thr, false,
              "sup |d(t)| over the theorem window");
    drift_checks(rep, r, "");
}

void freq_shift_checks(VerificationReport& rep, const ExperimentConfig& base) {
    ExperimentConfig pert = base;
    pert.window = "periods:2";
    ExperimentConfig plain = pert;
    plain.scenario = "theorem-plus";
    SimConfig scp = simulation_config(pert);
    SimConfig scb = simulation_config(plain);
    RunResult rp = execute_run(scp);
    RunResult rb = execute_run(scb);
    FitResult fp = fit_frequency(series_of(rp.obs, &ObservableRecord::d));
    FitResult fb = fit_frequency(series_of(rb.obs, &ObservableRecord::d));
    double diff = fp.frequency - fb.frequency;
    double e4 = std::pow(base.epsilon, 4);
    bool pass = diff > 0 && diff >= th::freq_shift_bracket_lo * e4 &&
                diff <= th::freq_shift_bracket_hi * e4;
    add_check(rep, "frequency-shift", diff / e4, th::freq_shift_bracket_hi, pass, false,
              "fitted frequency difference / eps^4, exact order-4 rate gives 2");
    rep.metrics["frequency-perturbed"] = fp.frequency;
    rep.metrics["frequency-baseline"] = fb.frequency;
    rep.exploratory_flags.push_back("frequency fits use a two-period window beyond the theorem horizon");
    drift_checks(rep, rp, "");
}

void general_p_checks(VerificationReport& rep, const ExperimentConfig& base) {
    ExperimentConfig cfg = base;
    cfg.window = "periods:2";
    SimConfig sc = simulation_config(cfg);
    RunResult r = execute_run(sc);
    FitResult fit = fit_frequency(series_of(r.obs, &ObservableRecord::d));
    double w_pred = 2.0 * cfg.epsilon * cfg.epsilon;
    double rel = std::abs(fit.frequency - w_pred) / w_pred;
    add_check(rep, "general-p-frequency", rel, th::frequency_rel_tol,
              rel <= th::frequency_rel_tol, false,
              "beating frequency of the +-p pair vs 2 eps^2");
    rep.metrics["fitted-frequency"] = fit.frequency;
    rep.exploratory_flags.push_back("frequency fit uses a two-period window beyond the theorem horizon");
    drift_checks(rep, r, "");
}

void cos4x_checks(VerificationReport& rep, const ExperimentConfig& base) {
    const int N = 20;
    HamPolynomial pert = build_perturbation(2, +1, Rational(1), Rational(0), N);
    NormalFormResult nf = solve_homological(pert);
    HamPolynomial residual = poisson_bracket(nf.chi, h0_polynomial(N)) + nf.z4 - pert;
    add_check(rep, "p2-residual", static_cast<double>(residual.size()), 0.0, residual.is_zero(),
              false, "homological residual term count at p = 2, exact arithmetic");

    // the beating driver of the p = 1 case is the (+-1, q, -+1, q) family;
    // its momentum is +-2, so cos 4x cannot produce it
    std::size_t coupling = 0;
    for (const auto& [m, c] : nf.z4.terms()) {
        if (m.xi.size() != 2 || m.eta.size() != 2) continue;
        for (int s : {+1, -1})
            if (((m.xi[0] == s && m.eta[0] == -s && m.xi[1] == m.eta[1]) ||
                 (m.xi[0] == s && m.eta[1] == -s && m.xi[1] == m.eta[0]) ||
                 (m.xi[1] == s && m.eta[0] == -s && m.xi[0] == m.eta[1]) ||
                 (m.xi[1] == s && m.eta[1] == -s && m.xi[0] == m.eta[0])))
                ++coupling;
    }
    add_check(rep, "no-pair-action-coupling", static_cast<double>(coupling), 0.0, coupling == 0,
              false, "no (+-1,q,-+1,q) monomial in Z4 at p = 2");

    // the cos+sin datum is an equilibrium of the remaining order-4 pair terms
    const double eps = base.epsilon;
    GalerkinState datum = initial_state(Recipe::CosPlusSin, eps, 0, N, 1);
    HamPolynomial m1 = quadratic_observable(ObservableKind::M, 1);
    double m1dot = std::abs(evaluate(poisson_bracket(m1, nf.z4), datum));
    add_check(rep, "datum-equilibrium", m1dot, 1e-18, m1dot <= 1e-18, false,
              "|{M1, Z4}| at the cos+sin datum");

    auto red = integrate_reduced(nf.z4, datum, std::pow(eps, -9.0 / 4.0), 0.1, 1, 10);
    double sup = 0.0;
    for (const ObservableRecord& o : red) sup = std::max(sup, std::abs(o.d));
    double thr = th::cos4x_flatness_factor * eps * eps;
    add_check(rep, "reduced-flatness", sup, thr, sup <= thr, false,
              "sup |d(t)| of the order-4 reduced model over the theorem window");
}

}  // namespace

VerificationReport verify_scenario(const ExperimentConfig& cfg) {
    cfg.validate();
    VerificationReport rep;
    rep.scenario = cfg.scenario;
    rep.inputs = {{"scenario", cfg.scenario}, {"epsilon", cfg.epsilon}, {"sign", cfg.sign},
                  {"p", cfg.p},              {"a", cfg.a},             {"b", cfg.b},
                  {"recipe", cfg.recipe},    {"q", cfg.q},             {"N", cfg.N},
                  {"dt", cfg.dt},            {"window", cfg.window},
                  {"integrator", cfg.integrator}, {"rng_seed", cfg.rng_seed}};

    if (cfg.scenario == "theorem-plus") {
        if (cfg.epsilon_overridden)
            theorem_quick(rep, cfg);
        else
            theorem_plus_full(rep, cfg);
    } else if (cfg.scenario == "theorem-minus") {
        sign_symmetry_check(rep, cfg);
    } else if (cfg.scenario == "control-constant" || cfg.scenario == "control-cos-datum") {
        control_checks(rep, cfg);
    } else if (cfg.scenario == "freq-shift") {
        freq_shift_checks(rep, cfg);
    } else if (cfg.scenario == "general-p") {
        general_p_checks(rep, cfg);
    } else if (cfg.scenario == "cos4x-null") {
        cos4x_checks(rep, cfg);
    }
    return rep;
}

VerificationReport sweep_scenario(const ExperimentConfig& base,
                                  const std::vector<double>& epsilons) {
    VerificationReport rep;
    rep.scenario = base.scenario + "-sweep";
    rep.inputs = {{"scenario", base.scenario}, {"epsilons", epsilons}};
    std::vector<std::pair<double, double>> beat_errs, s_errs;
    for (double eps : epsilons) {
        ExperimentConfig cfg = base;
        cfg.epsilon = eps;
        cfg.epsilon_overridden = true;
        cfg.window = "theorem";
        SimConfig sc = simulation_config(cfg);
        RunResult r = execute_run(sc);
        auto d_series = series_of(r.obs, &ObservableRecord::d);
        beat_errs.emplace_back(
            eps, sup_error(d_series,
                           [&](double t) { return beating_prediction(t, eps, sc.sign); },
                           {0.0, sc.T}));
        auto s_series = series_of(r.obs, &ObservableRecord::s);
        s_errs.emplace_back(
            eps, sup_error(s_series, [&](double) { return eps * eps; }, {0.0, sc.T}));
        rep.metrics["beating-sup-error" + eps_suffix(eps)] = beat_errs.back().second;
        rep.metrics["s-sup-error" + eps_suffix(eps)] = s_errs.back().second;
    }
    double beat_slope = scaling_exponent(beat_errs);
    add_check(rep, "beating-error-slope", beat_slope, th::beating_error_slope_min,
              beat_slope >= th::beating_error_slope_min);
    double s_slope = scaling_exponent(s_errs);
    add_check(rep, "s-error-slope", s_slope, th::pair_mass_slope_min,
              s_slope >= th::pair_mass_slope_min);
    return rep;
}

nlohmann::json merge_reports(const std::vector<nlohmann::json>& reports) {
    std::vector<nlohmann::json> sorted = reports;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return a.value("scenario", "") < b.value("scenario", "");
    });
    bool all = true;
    nlohmann::json out;
    out["reports"] = nlohmann::json::array();
    for (const auto& r : sorted) {
        all = all && r.value("overall_pass", false);
        out["reports"].push_back(r);
    }
    out["overall_pass"] = all;
    return out;
}

}  // namespace nlsb
