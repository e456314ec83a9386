#pragma once

#include "nlsb/observables.hpp"
#include "nlsb/simulator.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

namespace nlsb {

// Declarative description of one experiment; everything needed to reproduce
// a run byte-for-byte.
struct ExperimentConfig {
    std::string scenario;
    double epsilon = 0.1;
    bool epsilon_overridden = false;  // set when the caller pinned epsilon
    int sign = +1;
    int p = 1;
    double a = 2.0;
    double b = 0.0;
    std::string recipe;  // empty: scenario default
    int q = 3;
    int N = 32;
    double dt = 2.0 * 3.14159265358979323846 * 1e-3;
    std::string window = "theorem";  // "theorem" or "periods:K"
    std::string integrator = "splitstep";
    std::string output_dir = ".";
    long rng_seed = 20260826;  // used only by randomized property checks

    void validate() const;
};

// flat `key = value` text, one pair per line, '#' comments; unknown keys and
// malformed values are rejected with the key name and line number
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string write_config_text(const ExperimentConfig& cfg);

struct ScenarioDescriptor {
    std::string name;
    std::string summary;
};

// the seven supported scenarios, fixed order
const std::vector<ScenarioDescriptor>& scenario_catalog();
bool scenario_known(const std::string& name);

struct Check {
    std::string name;
    double threshold = 0.0;
    double observed = 0.0;
    bool pass = false;
    bool exploratory = false;
    std::string note;  // comparator or context, free-form
};

struct VerificationReport {
    std::string scenario;
    nlohmann::json inputs;
    std::map<std::string, double> metrics;
    std::vector<Check> checks;
    std::vector<std::string> exploratory_flags;

    bool overall_pass() const;
    nlohmann::json to_json() const;
};

// Resolve the scenario's simulation parameters (datum, sign, modulation) on
// top of a base config.
SimConfig simulation_config(const ExperimentConfig& cfg);

double window_T(const ExperimentConfig& cfg);

// Run the scenario's verification checks.  With epsilon_overridden the
// theorem scenarios run the quick single-epsilon check set; otherwise the
// full hosted set (sweeps, slopes, algebra criteria) is produced.
VerificationReport verify_scenario(const ExperimentConfig& cfg);

// Sweep a list of epsilons over the theorem window and report the sup-error
// scaling fits.
VerificationReport sweep_scenario(const ExperimentConfig& cfg, const std::vector<double>& epsilons);

// CSV writers (17 significant digits, scientific notation, header row)
std::string trajectory_csv(const Trajectory& traj);
std::string observables_csv(const std::vector<ObservableRecord>& records, double epsilon,
                            int sign);

// merge JSON reports (deterministic by scenario name); overall pass iff all
// non-exploratory checks pass
nlohmann::json merge_reports(const std::vector<nlohmann::json>& reports);

}  // namespace nlsb
