#include "analysis.hpp"

#include <algorithm>
#include <cmath>

namespace fdd {

double reach_time(const SampledSignal& y, double eta) {
    require(eta > 0.0 && eta < 1.0, Errc::invalid_argument, "reach_time: eta must lie in (0,1)");
    const std::size_t count = y.values.size();
    require(count >= 4, Errc::invalid_argument, "reach_time: signal too short");
    const std::size_t tail_start = count - std::max<std::size_t>(1, count / 100);
    double final_value = 0.0;
    for (std::size_t k = tail_start; k < count; ++k) final_value += y.values[k];
    final_value /= static_cast<double>(count - tail_start);
    require(final_value > 0.0, Errc::not_reached, "reach_time: final value is not positive");

    const double level = eta * final_value;
    for (std::size_t k = 0; k < count; ++k) {
        if (y.values[k] >= level) {
            if (k == 0) return y.grid.time(0);
            const double t0 = y.grid.time(k - 1), t1 = y.grid.time(k);
            const double v0 = y.values[k - 1], v1 = y.values[k];
            return t0 + (level - v0) * (t1 - t0) / (v1 - v0);
        }
    }
    fail(Errc::not_reached, "reach_time: level " + std::to_string(level) + " never reached");
}

double step_error(const SampledSignal& y_true, const SampledSignal& y_model, double eta) {
    require(y_true.grid.t_s == y_model.grid.t_s && y_true.values.size() == y_model.values.size(),
            Errc::grid_mismatch, "step_error: signals must share the grid");
    const double t_eta = reach_time(y_true, eta);
    double acc = 0.0;
    std::size_t kept = 0;
    for (std::size_t k = 0; k < y_true.values.size(); ++k) {
        if (y_true.grid.time(k) > t_eta) break;
        const double d = y_true.values[k] - y_model.values[k];
        acc += d * d;
        ++kept;
    }
    require(kept > 0, Errc::not_reached, "step_error: empty window");
    return acc / static_cast<double>(kept);
}

namespace {

struct LadderTarget {
    LadderStateSpace ss;
    double omega_b = 0.0;
    FrequencyResponseSamples response;
};

LadderTarget make_target(int n, std::size_t freq_points) {
    LadderTarget target;
    target.ss = build_ladder(LadderSpec::uniform(n));
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    const std::vector<double> scan = log_spaced(1e-3 / n2, 1e3, 3000);
    target.omega_b = break_frequency(ladder_freq_response(target.ss, scan));
    const std::vector<double> grid =
        log_spaced(target.omega_b / 10.0, target.omega_b * 10.0, freq_points);
    target.response = ladder_freq_response(target.ss, grid);
    return target;
}

} // namespace

std::vector<StepErrorRow> reproduce_tables(std::span<const int> ns,
                                           std::span<const Family> families,
                                           const TablesConfig& config) {
    require(!ns.empty(), Errc::invalid_argument, "reproduce_tables: empty n list");
    require(!families.empty(), Errc::invalid_argument, "reproduce_tables: empty family list");
    std::vector<StepErrorRow> rows;
    for (int n : ns) {
        LadderTarget target;
        std::string target_error;
        try {
            require(n >= 1 && n <= 64, Errc::invalid_argument,
                    "reproduce_tables: n must lie in [1, 64]");
            target = make_target(n, config.freq_points);
        } catch (const std::exception& e) {
            target_error = e.what();
        }

        // shared true-system step grid: t_s = t90/2000, t_max = 3 t90
        double t90_true = 0.0;
        SampledSignal y_true(TimeGrid(1.0, 2.0), std::vector<double>(2, 0.0));
        if (target_error.empty()) {
            try {
                const auto ps = poles(target.ss);
                double slowest = std::numeric_limits<double>::infinity();
                for (const Complex& p : ps) slowest = std::min(slowest, std::abs(p.real()));
                const double tau_slow = 1.0 / slowest;
                const TimeGrid probe(tau_slow / 500.0, 15.0 * tau_slow);
                t90_true = reach_time(ladder_step_response(target.ss, probe), 0.90);
                const TimeGrid grid(t90_true / static_cast<double>(config.step_points),
                                    config.horizon_factor * t90_true);
                y_true = ladder_step_response(target.ss, grid);
            } catch (const std::exception& e) {
                target_error = e.what();
            }
        }

        for (Family family : families) {
            StepErrorRow row;
            row.n = n;
            row.family = family;
            if (!target_error.empty()) {
                row.error = target_error;
                rows.push_back(row);
                continue;
            }
            try {
                FitProblem problem = FitProblem::standard(target.response, family, target.omega_b,
                                                          config.seed);
                const std::vector<ParetoPoint> front = pareto_sweep(problem);
                const ParetoPoint chosen = select_optimal(front);
                row.params = chosen.params;
                row.q1 = chosen.q1;
                row.e_mag = chosen.e_mag;
                row.e_phase = chosen.e_phase;

                const SampledSignal y_model = model_step_response(chosen.params, y_true.grid);
                row.t30 = reach_time(y_true, 0.30);
                row.t63 = reach_time(y_true, 0.63);
                row.t90 = reach_time(y_true, 0.90);
                row.j30 = step_error(y_true, y_model, 0.30);
                row.j63 = step_error(y_true, y_model, 0.63);
                row.j90 = step_error(y_true, y_model, 0.90);
                row.ok = true;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace fdd
