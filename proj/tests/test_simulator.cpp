#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlsb/simulator.hpp"
#include "nlsb/thresholds.hpp"

#include <random>

using namespace nlsb;

TEST_CASE("initial data recipes") {
    double eps = 0.1;
    GalerkinState s = initial_state(Recipe::CosPlusSin, eps, 0, 8);
    CHECK(state_mass(s) == doctest::Approx(eps * eps));
    CHECK(s.get(1) == std::complex<double>(eps / 2, -eps / 2));
    CHECK(s.get(-1) == std::complex<double>(eps / 2, eps / 2));
    for (int j = -8; j <= 8; ++j)
        if (j != 1 && j != -1) CHECK(s.get(j) == std::complex<double>(0.0));

    GalerkinState c = initial_state(Recipe::CosOnly, eps, 0, 8);
    CHECK(c.get(1) == std::complex<double>(eps / 2, 0.0));
    CHECK(c.get(-1) == c.get(1));

    GalerkinState p = initial_state(Recipe::CosPlusSinPerturbed, eps, 3, 8);
    CHECK(p.get(3) == std::complex<double>(eps * eps / 2, 0.0));
    CHECK(p.get(-3) == p.get(3));
    CHECK(state_mass(p) == doctest::Approx(eps * eps + std::pow(eps, 4) / 2));
    CHECK_THROWS_AS(initial_state(Recipe::CosPlusSinPerturbed, eps, 1, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(initial_state(Recipe::CosPlusSinPerturbed, eps, 9, 8),
                    std::invalid_argument);
}

TEST_CASE("config validation names the field") {
    SimConfig cfg;
    cfg.N = 2;  // needs N >= max(2p, q, 2) + 1 = 3
    cfg.T = 1.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("N"), std::invalid_argument);
    cfg.N = 8;
    cfg.dt = -1.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("dt"), std::invalid_argument);
}

TEST_CASE("nonlinear coefficients: hand cases and path agreement") {
    SimConfig cfg;
    cfg.N = 8;
    cfg.T = 1.0;
    SpectralEngine engine(cfg);
    CHECK(engine.grid_size() >= 4 * cfg.N + 4 * cfg.p + 1);

    std::vector<std::complex<double>> amp(2 * static_cast<std::size_t>(cfg.N) + 1);
    SUBCASE("zero state maps to zero") {
        auto out = engine.nonlinear_coefficients(amp);
        for (const auto& v : out) CHECK(std::abs(v) == 0.0);
    }
    SUBCASE("single zero mode against 2 cos 2x") {
        amp[static_cast<std::size_t>(cfg.N)] = 1.0;  // xi_0 = 1
        auto out = engine.nonlinear_coefficients(amp);
        for (int j = -cfg.N; j <= cfg.N; ++j) {
            std::complex<double> v = out[static_cast<std::size_t>(j + cfg.N)];
            if (j == 2 || j == -2)
                CHECK(std::abs(v - 1.0) < 1e-14);
            else
                CHECK(std::abs(v) < 1e-14);
        }
    }
    SUBCASE("cos+sin datum produces only odd modes") {
        GalerkinState s = initial_state(Recipe::CosPlusSin, 0.3, 0, cfg.N);
        auto out = engine.nonlinear_coefficients(s.amp);
        for (int j = -cfg.N; j <= cfg.N; ++j)
            if (j % 2 == 0) CHECK(std::abs(out[static_cast<std::size_t>(j + cfg.N)]) < 1e-16);
    }
    SUBCASE("collocation agrees with direct triple summation") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        for (auto& v : amp) v = {unif(rng), unif(rng)};
        auto a = engine.nonlinear_coefficients(amp);
        auto b = engine.nonlinear_coefficients_direct(amp);
        double scale = 0.0;
        for (const auto& v : b) scale = std::max(scale, std::abs(v));
        for (std::size_t k = 0; k < a.size(); ++k)
            CHECK(std::abs(a[k] - b[k]) <= thresholds::nonlinear_paths_rel * scale);
    }
}

TEST_CASE("split step is time reversible") {
    // wide truncation so the per-step projection loss sits below roundoff
    SimConfig cfg;
    cfg.N = 16;
    cfg.T = 1.0;
    cfg.epsilon = 0.3;
    SpectralEngine engine(cfg);
    GalerkinState s = initial_state(Recipe::CosPlusSin, cfg.epsilon, 0, cfg.N);
    GalerkinState orig = s;
    engine.step_splitstep(s, 0.01);
    engine.step_splitstep(s, -0.01);
    for (int j = -cfg.N; j <= cfg.N; ++j)
        CHECK(std::abs(s.get(j) - orig.get(j)) < 1e-12 * cfg.epsilon);
}

TEST_CASE("linear-only single mode is invariant") {
    SimConfig cfg;
    cfg.N = 4;
    cfg.T = 1.0;
    cfg.a = 0.0;
    cfg.b = 0.0;
    SpectralEngine engine(cfg);
    GalerkinState s(cfg.N);
    s.at(0) = 1.0;
    engine.step_splitstep(s, 0.37);
    CHECK(std::abs(s.get(0) - 1.0) < 1e-15);
    for (int j = -cfg.N; j <= cfg.N; ++j)
        if (j != 0) CHECK(std::abs(s.get(j)) < 1e-15);
}

TEST_CASE("short run: sampling, conservation, integrator agreement") {
    // dt small enough that RK4 resolves the fastest rotating phase e^{i N^2 t}
    SimConfig cfg;
    cfg.N = 16;
    cfg.T = 2.0;
    cfg.dt = 2.5e-4;
    cfg.epsilon = 0.1;
    cfg.sample_stride = 400;
    Trajectory a = run(cfg);
    CHECK(a.samples.size() == 21);  // initial sample plus 8000/400
    CHECK(a.samples.front().state.t == 0.0);
    double m0 = a.samples.front().mass;
    double e0 = a.samples.front().energy;
    for (const TrajectorySample& smp : a.samples) {
        CHECK(std::abs(smp.mass - m0) < 1e-12 * m0);
        CHECK(std::abs(smp.energy - e0) < 1e-9 * std::abs(e0));
    }

    cfg.integrator = Integrator::Rk4Rotating;
    Trajectory b = run(cfg);
    REQUIRE(b.samples.size() == a.samples.size());
    for (std::size_t k = 0; k < a.samples.size(); ++k) {
        CHECK(a.samples[k].state.t == doctest::Approx(b.samples[k].state.t));
        for (int j = -cfg.N; j <= cfg.N; ++j)
            CHECK(std::abs(a.samples[k].state.get(j) - b.samples[k].state.get(j)) < 1e-10);
    }
}

TEST_CASE("x-independent nonlinearity keeps the pair balanced") {
    // x -> pi/2 - x maps the cos+sin datum to itself and swaps the +-1
    // actions, so I_1(t) = I_{-1}(t) along the exact flow
    SimConfig cfg;
    cfg.N = 8;
    cfg.T = 5.0;
    cfg.dt = 1e-3;
    cfg.epsilon = 0.2;
    cfg.x_independent = true;
    cfg.sample_stride = 1000;
    Trajectory traj = run(cfg);
    for (const TrajectorySample& smp : traj.samples) {
        double d = std::norm(smp.state.get(1)) - std::norm(smp.state.get(-1));
        CHECK(std::abs(d) < 1e-13);
    }
}
