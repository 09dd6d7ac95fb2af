#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "models.hpp"
#include "types.hpp"

namespace fdd {

enum class Family { fopdt, fo2pdt, fopfdd };

const char* to_string(Family f);
std::optional<Family> family_from_string(std::string_view name);

/// Closed search interval for one parameter; log_scale searches the exponent.
struct ParamBounds {
    double lo, hi;
    bool log_scale = false;
};

struct OptimizerConfig {
    int restarts = 8;
    int max_iterations = 2000;
    double tolerance = 1e-10; // convergence tolerance on the scalarized objective
    std::uint64_t seed = 0;
};

/// Two-objective frequency-domain fit specification.
struct FitProblem {
    FrequencyResponseSamples target;
    Family family = Family::fopfdd;
    std::vector<ParamBounds> bounds; // K, tau, L [, alpha]
    std::vector<double> weight_grid; // q1 values
    OptimizerConfig optimizer;
    double omega_break = 0.0; // used by the initial-guess heuristics

    /// Spec defaults: K in [0.99, 1.01] for H1/H2 and [0.5, 1.5] for H3,
    /// tau in [1e-3, 1e3]/omega_b, L in [1e-4, 1e2]/omega_b, alpha per family,
    /// 21 uniform weights.
    static FitProblem standard(FrequencyResponseSamples target, Family family, double omega_b,
                               std::uint64_t seed = 0);
};

struct ParetoPoint {
    double q1;
    double e_mag;   // dB^2
    double e_phase; // rad^2
    ModelParams params;
};

struct ScalarizedFit {
    ParetoPoint point;
    bool stalled = false;   // no restart improved on the heuristic initial guess
    int evaluations = 0;
};

/// In-place 2*pi unwrap so adjacent samples differ by less than pi.
void unwrap_phase(std::vector<double>& phase);

/// Mean squared magnitude error in dB and mean squared unwrapped phase error
/// in rad^2 between a model and the target, on the target grid.
std::pair<double, double> objective_errors(const ModelParams& m,
                                           const FrequencyResponseSamples& target);

/// Sample-vs-sample variant; throws Errc::grid_mismatch when the omega grids differ.
std::pair<double, double> objective_errors(const FrequencyResponseSamples& model,
                                           const FrequencyResponseSamples& target);

/// Minimizes q1*e_mag + (1-q1)*e_phase by multi-start Nelder-Mead inside the
/// bounds (logistic transform of unconstrained search variables).
ScalarizedFit fit_scalarized(const FitProblem& problem, double q1,
                             const ModelParams* warm_start = nullptr);

/// fit_scalarized over the weight grid with warm starting, dominated points
/// removed, sorted by q1.
std::vector<ParetoPoint> pareto_sweep(const FitProblem& problem);

/// Normalizes each objective by its smallest positive value across the front
/// and returns the point minimizing the normalized sum; ties go to the q1
/// nearest 0.5.
ParetoPoint select_optimal(const std::vector<ParetoPoint>& front);

/// Downhill-simplex minimizer (deterministic).
std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(std::span<const double>)>& fn, std::span<const double> x0,
    int max_iterations, double tolerance);

} // namespace fdd
