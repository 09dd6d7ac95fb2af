#pragma once

#include <functional>

#include "types.hpp"

namespace fdd {

/// Laplace-domain function contract: analytic to the right of the abscissa of
/// convergence, principal branch for fractional powers (cut along the
/// negative real axis), F(conj(s)) = conj(F(s)) for real time functions.
struct LaplaceFunction {
    std::function<Complex(Complex)> eval;
    double abscissa = 0.0;
};

struct TalbotConfig {
    int nodes = 32;         // contour quadrature nodes M
    double scale = 2.0;     // r = scale * M / (5 t)
    double accuracy_target = 1e-5;
    bool node_doubling_check = true;
};

/// Fixed-Talbot deformed-contour quadrature at a single time point.
double talbot_point(const LaplaceFunction& F, double t, int nodes, double scale = 2.0);

/// Inverse transform on the grid.  With node_doubling_check set, every point
/// is evaluated at M and 2M nodes; a disagreement beyond 10x the accuracy
/// target throws Errc::contour_failure (the usual cause is a branch cut
/// crossing the contour).
SampledSignal ilt_evaluate(const LaplaceFunction& F, const TimeGrid& grid,
                           const TalbotConfig& config = {});

/// Convenience wrapper for a single time.
double ilt_point(const LaplaceFunction& F, double t, const TalbotConfig& config = {});

} // namespace fdd
