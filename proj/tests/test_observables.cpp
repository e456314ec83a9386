#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlsb/normal_form.hpp"
#include "nlsb/observables.hpp"

#include <cmath>

using namespace nlsb;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("observables of the cos+sin datum") {
    double eps = 0.1;
    GalerkinState s = initial_state(Recipe::CosPlusSin, eps, 0, 8);
    ObservableRecord r = observables(s, 1);
    CHECK(r.d == doctest::Approx(0.0));
    CHECK(r.s == doctest::Approx(eps * eps));
    CHECK(r.M1 == doctest::Approx(0.0));
    CHECK(r.K1 == doctest::Approx(0.0));
    CHECK(r.L1 == doctest::Approx(eps * eps));
    CHECK(r.J == doctest::Approx(eps * eps));
    CHECK(r.Jp[1] == doctest::Approx(eps * eps));
    CHECK(r.M1 * r.M1 + r.K1 * r.K1 + r.L1 * r.L1 ==
          doctest::Approx(r.Jp[1] * r.Jp[1]));
}

TEST_CASE("observables match the polynomial definitions") {
    GalerkinState s(4);
    s.at(1) = {0.3, -0.2};
    s.at(-1) = {-0.1, 0.4};
    s.at(2) = {0.05, 0.02};
    s.at(-2) = {0.01, -0.07};
    ObservableRecord r = observables(s, 1);
    auto val = [&](ObservableKind k, int p) {
        return evaluate(quadratic_observable(k, p), s).real();
    };
    CHECK(r.M1 == doctest::Approx(val(ObservableKind::M, 1)));
    CHECK(r.K1 == doctest::Approx(val(ObservableKind::K, 1)));
    CHECK(r.L1 == doctest::Approx(val(ObservableKind::L, 1)));
    CHECK(r.K2 == doctest::Approx(val(ObservableKind::K, 2)));
    CHECK(r.L2 == doctest::Approx(val(ObservableKind::L, 2)));
    CHECK(r.Jp[2] == doctest::Approx(val(ObservableKind::J, 2)));
}

TEST_CASE("beating prediction quarter period") {
    double eps = 0.1;
    double t = kPi / (4 * eps * eps);
    CHECK(beating_prediction(t, eps, +1) == doctest::Approx(eps * eps));
    CHECK(beating_prediction(t, eps, -1) == doctest::Approx(-eps * eps));
}

TEST_CASE("sup error over a window") {
    std::vector<std::pair<double, double>> series = {{0, 1}, {1, 2}, {2, 10}};
    double e = sup_error(series, [](double) { return 0.0; }, {0.0, 1.5});
    CHECK(e == doctest::Approx(2.0));
}

TEST_CASE("frequency fit recovers a synthetic sinusoid") {
    double w = 0.0213, amp = 3e-3, phase = 0.4, offset = 1e-4;
    std::vector<std::pair<double, double>> series;
    for (int k = 0; k <= 4000; ++k) {
        double t = k * 0.2;
        series.emplace_back(t, amp * std::sin(w * t + phase) + offset);
    }
    FitResult fit = fit_frequency(series);
    CHECK(!fit.degenerate);
    CHECK(fit.frequency == doctest::Approx(w).epsilon(1e-6));
    CHECK(fit.amplitude == doctest::Approx(amp).epsilon(1e-6));
    CHECK(fit.residual_rms < 1e-12);

    std::vector<std::pair<double, double>> flat(200, {0.0, 5.0});
    for (int k = 0; k < 200; ++k) flat[static_cast<std::size_t>(k)].first = k * 0.1;
    CHECK(fit_frequency(flat).degenerate);
}

TEST_CASE("scaling exponent of an exact power law") {
    std::vector<std::pair<double, double>> pts;
    for (double eps : {0.2, 0.1, 0.05}) pts.emplace_back(eps, 7.0 * std::pow(eps, 3));
    CHECK(scaling_exponent(pts) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("reduced model beats sinusoidally at 2 eps^2") {
    int N = 6;
    double eps = 0.1;
    NormalFormResult nf =
        solve_homological(build_perturbation(1, +1, Rational(2), Rational(0), N));
    GalerkinState datum = initial_state(Recipe::CosPlusSin, eps, 0, N);
    double T = kPi / (eps * eps);  // one beating period
    auto records = integrate_reduced(nf.z4, datum, T, 0.25, 1, 4);
    REQUIRE(records.size() > 100);
    double sup = 0.0;
    for (const ObservableRecord& r : records)
        sup = std::max(sup, std::abs(r.d - beating_prediction(r.t, eps, +1)));
    CHECK(sup < 1e-4 * eps * eps);
    std::vector<std::pair<double, double>> series;
    for (const ObservableRecord& r : records) series.emplace_back(r.t, r.d);
    FitResult fit = fit_frequency(series);
    CHECK(fit.frequency == doctest::Approx(2 * eps * eps).epsilon(1e-3));
}

TEST_CASE("chi flow is a near-identity deformation of cubic size") {
    int N = 6;
    NormalFormResult nf =
        solve_homological(build_perturbation(1, +1, Rational(2), Rational(0), N));
    auto deviation = [&](double eps) {
        GalerkinState z = initial_state(Recipe::CosPlusSin, eps, 0, N);
        GalerkinState w = chi_flow(z, nf.chi, +1);
        double d = 0.0;
        for (int j = -N; j <= N; ++j) d += std::abs(w.get(j) - z.get(j));
        return d;
    };
    double d1 = deviation(0.1), d2 = deviation(0.05);
    CHECK(d1 > 0.0);
    double slope = std::log(d1 / d2) / std::log(2.0);
    CHECK(slope > 2.5);  // cubic leading order
    // round trip
    GalerkinState z = initial_state(Recipe::CosPlusSin, 0.1, 0, N);
    GalerkinState back = chi_flow(chi_flow(z, nf.chi, +1), nf.chi, -1);
    for (int j = -N; j <= N; ++j) CHECK(std::abs(back.get(j) - z.get(j)) < 1e-12);
}
