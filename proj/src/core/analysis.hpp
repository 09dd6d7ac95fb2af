#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fitting.hpp"
#include "ladder.hpp"
#include "types.hpp"

namespace fdd {

/// First time the signal reaches eta times its final value (mean of the last
/// 1% of samples), linearly interpolated between samples.
double reach_time(const SampledSignal& y, double eta);

/// Mean squared difference over t in [0, t_eta], t_eta taken from y_true.
double step_error(const SampledSignal& y_true, const SampledSignal& y_model, double eta);

struct StepErrorRow {
    int n = 0;
    Family family = Family::fopdt;
    bool ok = false;
    std::string error;

    ModelParams params = Fopdt{1.0, 1.0, 0.0};
    double q1 = 0.0;
    double e_mag = 0.0;
    double e_phase = 0.0;

    double t30 = 0.0, t63 = 0.0, t90 = 0.0;
    double j30 = 0.0, j63 = 0.0, j90 = 0.0;
};

struct TablesConfig {
    std::uint64_t seed = 0;
    std::size_t freq_points = 200;    // log-spaced over [omega_b/10, 10 omega_b]
    std::size_t step_points = 2000;   // t_s = t90 / step_points
    double horizon_factor = 3.0;      // t_max = factor * t90
};

/// Full Table 1/2 pipeline for uniform unit ladders: build ladder, locate the
/// break frequency, trace the Pareto front per family, select the optimum,
/// simulate the step responses and score J_eta for eta in {0.30, 0.63, 0.90}.
/// A failed (n, family) pair is reported in its row, never aborts the rest.
std::vector<StepErrorRow> reproduce_tables(std::span<const int> ns,
                                           std::span<const Family> families,
                                           const TablesConfig& config = {});

} // namespace fdd
