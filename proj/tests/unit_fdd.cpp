#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fdd_core.hpp"
#include "vpa.hpp"

using namespace fdd;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("frequency response matches the modulus/phase formulas") {
    // omega = 0 is exactly 1
    CHECK(frequency_response(FddParams(1.0, 0.3), 0.0) == Complex(1.0, 0.0));
    CHECK(frequency_response(FddParams(7.0, 0.9), 0.0) == Complex(1.0, 0.0));

    // L=1, alpha=0.5, w=1: M = exp(-cos(pi/4)), phi = -sin(pi/4)
    const Complex v = frequency_response(FddParams(1.0, 0.5), 1.0);
    CHECK(std::abs(v) == doctest::Approx(0.49306869139523979).epsilon(1e-12));
    CHECK(std::arg(v) == doctest::Approx(-0.70710678118654752).epsilon(1e-12));

    // alpha -> 1: modulus -> 1, phase -> -L*omega (paper's integer-delay limit)
    const Complex w = frequency_response(FddParams(2.0, 1.0 - 1e-12), 3.0);
    CHECK(std::abs(w) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::arg(w) + 2.0 * kPi == doctest::Approx(2.0 * kPi - 6.0).epsilon(1e-6));
}

TEST_CASE("parameter validation enforces the existence range") {
    CHECK_THROWS_AS(FddParams(0.0, 0.5), Error);
    CHECK_THROWS_AS(FddParams(-1.0, 0.5), Error);
    CHECK_THROWS_AS(FddParams(1.0, 0.0), Error);
    CHECK_THROWS_AS(FddParams(1.0, 1.0), Error);
    CHECK_THROWS_AS(FddParams(1.0, 1.2), Error);
    CHECK_NOTHROW(FddParams(1e-3, 0.999));
}

TEST_CASE("impulse response agrees with the alpha=1/2 closed form") {
    // f(1) = 1/(2 sqrt(pi)) * exp(-1/4)
    CHECK(impulse_closed_form_half_at(1.0, 1.0) ==
          doctest::Approx(0.21969564473386120).epsilon(1e-12));

    for (double L : {0.5, 1.0, 2.0}) {
        const TimeGrid grid(0.05, 20.0);
        const SampledSignal series = impulse_response(FddParams(L, 0.5), grid);
        const SampledSignal exact = impulse_closed_form_half(L, grid);
        double worst = 0.0;
        for (std::size_t k = 0; k < series.values.size(); ++k) {
            if (grid.time(k) < 0.1) continue;
            worst = std::max(worst,
                             std::abs(series.values[k] - exact.values[k]) / exact.values[k]);
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("closed form peaks at t = L/6 and obeys the time-scaling identity") {
    // argmax of g: d/dt log g = -3/(2t) + L/(4 t^2) = 0  =>  t = L/6
    const double L = 1.0;
    const double t_star = L / 6.0;
    const double g_star = impulse_closed_form_half_at(L, t_star);
    CHECK(impulse_closed_form_half_at(L, t_star * 0.98) < g_star);
    CHECK(impulse_closed_form_half_at(L, t_star * 1.02) < g_star);

    // g_L(t) = g_1(t/4)/4 for L = 4
    for (double t : {0.3, 1.0, 3.0, 10.0})
        CHECK(impulse_closed_form_half_at(4.0, t) ==
              doctest::Approx(impulse_closed_form_half_at(1.0, t / 4.0) / 4.0).epsilon(1e-13));
}

TEST_CASE("time scaling holds for the series itself") {
    const SeriesConfig config;
    for (double L : {2.0, 5.0}) {
        const SeriesTable scaled(FddParams(L, 0.7), config);
        const SeriesTable unit(FddParams(1.0, 0.7), config);
        for (double t : {0.5 * L, L, 3.0 * L, 10.0 * L}) {
            const double a = scaled.evaluate(t);
            const double b = unit.evaluate(t / L) / L;
            CHECK(a == doctest::Approx(b).epsilon(1e-6));
        }
    }
}

TEST_CASE("post filters zero the prefix exactly as specified") {
    std::vector<double> v{0.5, 12.0, 0.3, -0.2, 0.4, 0.6};
    apply_peak_filters(v, 10.0);
    // |12| > 10 at index 1 zeroes 0..1; negative at index 3 zeroes 0..3
    CHECK(v == std::vector<double>{0.0, 0.0, 0.0, 0.0, 0.4, 0.6});

    std::vector<double> w{1.0, 2.0, 3.0};
    apply_peak_filters(w, 10.0);
    CHECK(w == std::vector<double>{1.0, 2.0, 3.0});

    std::vector<double> all_bad{-1.0, 20.0, -0.5};
    apply_peak_filters(all_bad, 10.0);
    CHECK(all_bad == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("filtered impulse responses are nonnegative") {
    for (double alpha : {0.2, 0.5, 0.8, 0.95}) {
        const SampledSignal s =
            impulse_response_unchecked(FddParams(1.0, alpha), TimeGrid(0.01, 30.0));
        for (double v : s.values) CHECK(v >= 0.0);
    }
}

TEST_CASE("grid area matches the captured closed-form mass") {
    // integral of the alpha=1/2 closed form over (0, T] is erfc(sqrt(L/(4T)));
    // the t^{-3/2} tail means a finite grid never reaches 1 exactly
    const double captured = std::erfc(std::sqrt(1.0 / (4.0 * 200.0)));
    const SampledSignal s = impulse_response(FddParams(1.0, 0.5), TimeGrid(0.02, 200.0));
    CHECK(area(s) == doctest::Approx(captured).epsilon(2e-4));

    const SampledSignal exact = impulse_closed_form_half(1.0, TimeGrid(0.02, 200.0));
    CHECK(area(exact) == doctest::Approx(area(s)).epsilon(1e-6));

    CHECK(area(SampledSignal(TimeGrid(0.1, 5.0), std::vector<double>(50, 0.0))) == 0.0);
}

TEST_CASE("adaptive area certificate reaches 1 across the alpha/L grid") {
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double L : {0.5, 1.0, 2.0}) {
            const QuadratureCertificate cert = area_certificate(FddParams(L, alpha));
            INFO("alpha=", alpha, " L=", L, " area=", cert.value);
            CHECK(std::abs(cert.value - 1.0) < 1e-3);
        }
    }
}

TEST_CASE("energy certificate matches the spectral closed form") {
    // alpha = 1/2, L = 1: E = 1/pi (substitution u = 1/t against the closed form)
    CHECK(energy_spectral(FddParams(1.0, 0.5)) ==
          doctest::Approx(0.31830988618379067).epsilon(1e-12));

    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double L : {0.5, 1.0, 2.0}) {
            const double numeric = energy_certificate(FddParams(L, alpha)).value;
            const double spectral = energy_spectral(FddParams(L, alpha));
            INFO("alpha=", alpha, " L=", L);
            CHECK(std::abs(numeric - spectral) / spectral < 0.01);
        }
    }

    // scaling: E(L) = E(1)/L
    CHECK(energy_spectral(FddParams(4.0, 0.35)) ==
          doctest::Approx(energy_spectral(FddParams(1.0, 0.35)) / 4.0).epsilon(1e-12));

    // Lemma 3: different alpha, different energy
    CHECK(energy_spectral(FddParams(1.0, 0.7)) != energy_spectral(FddParams(1.0, 0.5)));

    CHECK(energy_numeric(SampledSignal(TimeGrid(0.1, 5.0), std::vector<double>(50, 0.0))) == 0.0);
}

TEST_CASE("impulse_response reports grid/window mismatches") {
    // far-right grid where the truncated series has essentially no support
    CHECK_THROWS_AS(impulse_response(FddParams(1.0, 0.5), TimeGrid(1e5, 4e5)), Error);

    // too few terms to track the series on a long grid
    SeriesConfig starved;
    starved.n_terms = 2;
    try {
        impulse_response(FddParams(1.0, 0.6), TimeGrid(0.01, 40.0), starved);
        FAIL("expected a config error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::config);
    }
}

TEST_CASE("near-integer i*alpha terms are dropped, not exploded") {
    // alpha = 0.999...: i*alpha brushes integers; the tolerance keeps terms finite
    SeriesConfig config;
    const SeriesTable table(FddParams(1.0, 0.5 + 1e-12), config);
    for (const SeriesTerm& term : table.terms()) CHECK(std::isfinite(term.log_coef));
    const SampledSignal s =
        impulse_response_unchecked(FddParams(1.0, 0.5 + 1e-12), TimeGrid(0.05, 20.0));
    for (double v : s.values) CHECK(std::isfinite(v));
}

TEST_CASE("variable-precision path agrees with the log-domain path") {
    SeriesConfig config;
    config.precision_digits = 60;
    const FddParams params(1.3, 0.62);
    const TimeGrid grid(0.25, 12.0);
    const SampledSignal fast = impulse_response_unchecked(params, grid, config);
    const SampledSignal slow = impulse_response_vpa(params, grid, config);
    for (std::size_t k = 0; k < fast.values.size(); ++k) {
        if (fast.values[k] == 0.0) {
            CHECK(slow.values[k] == 0.0);
        } else {
            CHECK(slow.values[k] == doctest::Approx(fast.values[k]).epsilon(1e-11));
        }
    }
}

TEST_CASE("peak bound dominates the sampled response") {
    for (double alpha : {0.3, 0.5, 0.8}) {
        const FddParams params(1.0, alpha);
        const double bound = impulse_peak_bound(params);
        const SampledSignal s = impulse_response_unchecked(params, TimeGrid(0.005, 10.0));
        for (double v : s.values) CHECK(v <= bound * (1.0 + 1e-9));
    }
}
