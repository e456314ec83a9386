// beatlab: numerical laboratory for the mode +-p beating effect of the
// modulated cubic Schrodinger equation on the torus.
#include "nlsb/harness.hpp"
#include "nlsb/normal_form.hpp"
#include "nlsb/observables.hpp"
#include "nlsb/simulator.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace nlsb;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string scenario;
    double epsilon = -1.0;
    int sign = 0;
    int p = -1;
    double a = 1e300, b = 1e300;
    std::string recipe;
    int q = -1;
    int N = -1;
    double dt = -1.0;
    std::string window;
    std::string integrator;
    std::string out = ".";
    long seed = -1;
    bool calibrate = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool scenario_positional) {
    if (scenario_positional) cmd->add_option("scenario", o.scenario, "scenario name");
    cmd->add_option("--config", o.config_path, "key = value config file");
    cmd->add_option("--epsilon", o.epsilon, "datum amplitude");
    cmd->add_option("--sign", o.sign, "nonlinearity sign, +1 or -1");
    cmd->add_option("--p", o.p, "modulation half-frequency / focus pair");
    cmd->add_option("--a", o.a, "cos 2px weight");
    cmd->add_option("--b", o.b, "sin 2px weight");
    cmd->add_option("--recipe", o.recipe,
                    "datum: cos_plus_sin, cos_only, sin_only, cos_plus_sin_perturbed");
    cmd->add_option("--q", o.q, "perturbation mode of the perturbed datum");
    cmd->add_option("--N", o.N, "Galerkin truncation bound");
    cmd->add_option("--dt", o.dt, "time step");
    cmd->add_option("--window", o.window, "time window: theorem or periods:K");
    cmd->add_option("--integrator", o.integrator, "splitstep or rk4");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--seed", o.seed, "seed for randomized property checks");
    cmd->add_flag("--calibrate", o.calibrate,
                  "print observed values next to the calibrated thresholds");
}

ExperimentConfig resolve(const CommonOpts& o) {
    ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = load_config(o.config_path);
    if (!o.scenario.empty()) cfg.scenario = o.scenario;
    if (o.epsilon > 0) {
        cfg.epsilon = o.epsilon;
        cfg.epsilon_overridden = true;
    }
    if (o.sign != 0) cfg.sign = o.sign;
    if (o.p > 0) cfg.p = o.p;
    if (o.a != 1e300) cfg.a = o.a;
    if (o.b != 1e300) cfg.b = o.b;
    if (!o.recipe.empty()) cfg.recipe = o.recipe;
    if (o.q > 0) cfg.q = o.q;
    if (o.N > 0) cfg.N = o.N;
    if (o.dt > 0) cfg.dt = o.dt;
    if (!o.window.empty()) cfg.window = o.window;
    if (!o.integrator.empty()) cfg.integrator = o.integrator;
    cfg.output_dir = o.out;
    if (o.seed >= 0) cfg.rng_seed = o.seed;
    cfg.validate();
    return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void print_report(const VerificationReport& rep, bool calibrate) {
    for (const Check& c : rep.checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << rep.scenario << '/' << c.name
                  << " observed=" << c.observed << " threshold=" << c.threshold
                  << (c.exploratory ? " (exploratory)" : "") << '\n';
        if (calibrate)
            std::cout << "CALIBRATE " << c.name << " observed=" << c.observed
                      << " threshold=" << c.threshold << '\n';
    }
    std::cout << (rep.overall_pass() ? "OVERALL PASS" : "OVERALL FAIL") << '\n';
}

int cmd_simulate(const CommonOpts& o) {
    ExperimentConfig cfg = resolve(o);
    SimConfig sc = simulation_config(cfg);
    Trajectory traj = run(sc);
    std::vector<ObservableRecord> obs = observables_series(traj);
    fs::path dir(cfg.output_dir);
    write_file(dir / "trajectory.csv", trajectory_csv(traj));
    write_file(dir / "observables.csv", observables_csv(obs, cfg.epsilon, sc.sign));
    write_file(dir / "config.txt", write_config_text(cfg));
    std::cout << "wrote " << (dir / "trajectory.csv").string() << " and "
              << (dir / "observables.csv").string() << " (" << traj.samples.size()
              << " samples)\n";
    return 0;
}

int cmd_normal_form(const CommonOpts& o, int bound) {
    int p = o.p > 0 ? o.p : 1;
    int sign = o.sign != 0 ? o.sign : +1;
    Rational a = o.a != 1e300 ? Rational(o.a) : Rational(2);
    Rational b = o.b != 1e300 ? Rational(o.b) : Rational(0);
    HamPolynomial pert = build_perturbation(p, sign, a, b, bound);
    NormalFormResult nf = solve_homological(pert);
    HamPolynomial residual = poisson_bracket(nf.chi, h0_polynomial(bound)) + nf.z4 - pert;

    fs::path dir(o.out);
    write_file(dir / "chi.txt", nf.chi.serialize());
    write_file(dir / "z4.txt", nf.z4.serialize());
    if (p == 1) {
        Z4Split split = classify_z4(nf.z4, bound);
        write_file(dir / "z41.txt", split.z41.serialize());
        write_file(dir / "z42.txt", split.z42.serialize());
        write_file(dir / "z43.txt", split.z43.serialize());
    }
    if (residual.is_zero()) {
        std::cout << "residual = 0/1\n";
        return 0;
    }
    std::cout << "residual = nonzero (" << residual.size() << " terms)\n";
    return 1;
}

int cmd_verify(const CommonOpts& o) {
    ExperimentConfig cfg = resolve(o);
    VerificationReport rep = verify_scenario(cfg);
    fs::path dir(cfg.output_dir);
    write_file(dir / (cfg.scenario + "-report.json"), rep.to_json().dump(2) + "\n");
    print_report(rep, o.calibrate);
    return rep.overall_pass() ? 0 : 1;
}

int cmd_sweep(const CommonOpts& o, const std::vector<double>& epsilons) {
    ExperimentConfig cfg = resolve(o);
    VerificationReport rep = sweep_scenario(cfg, epsilons);
    fs::path dir(cfg.output_dir);
    write_file(dir / (rep.scenario + "-report.json"), rep.to_json().dump(2) + "\n");
    print_report(rep, o.calibrate);
    return rep.overall_pass() ? 0 : 1;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& out) {
    std::vector<nlohmann::json> reports;
    for (const std::string& path : inputs) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot read report " + path);
        reports.push_back(nlohmann::json::parse(in));
    }
    nlohmann::json merged = merge_reports(reports);
    write_file(fs::path(out) / "summary.json", merged.dump(2) + "\n");
    std::cout << merged.dump(2) << '\n';
    return merged["overall_pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"beating-effect laboratory for the modulated cubic NLS on the torus"};
    app.require_subcommand(1);

    CommonOpts sim_o, nf_o, ver_o, swp_o;
    int nf_bound = 20;
    std::vector<double> sweep_eps = {0.2, 0.1, 0.05};
    std::vector<std::string> report_inputs;
    std::string report_out = ".";

    CLI::App* sim = app.add_subcommand("simulate", "run one config, write trajectory CSVs");
    add_common(sim, sim_o, true);

    CLI::App* nf = app.add_subcommand("normal-form",
                                      "compute chi and Z4 exactly, write serializations");
    add_common(nf, nf_o, false);
    nf->add_option("--bound", nf_bound, "truncation bound for the exact computation");

    CLI::App* ver = app.add_subcommand("verify", "run a scenario's acceptance checks");
    add_common(ver, ver_o, true);

    CLI::App* swp = app.add_subcommand("sweep", "epsilon sweep with scaling-exponent fits");
    add_common(swp, swp_o, true);
    swp->add_option("--epsilons", sweep_eps, "epsilon list for the sweep");

    CLI::App* rpt = app.add_subcommand("report", "merge verification reports");
    rpt->add_option("reports", report_inputs, "report JSON files")->required();
    rpt->add_option("--out", report_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_o);
        if (nf->parsed()) return cmd_normal_form(nf_o, nf_bound);
        if (ver->parsed()) return cmd_verify(ver_o);
        if (swp->parsed()) return cmd_sweep(swp_o, sweep_eps);
        if (rpt->parsed()) return cmd_report(report_inputs, report_out);
    } catch (const std::exception& e) {
        std::cerr << "ERROR: " << e.what() << '\n';
        return 2;
    }
    std::cerr << "ERROR: no subcommand\n";
    return 2;
}
