#include "ilt.hpp"

#include <cmath>

#include "parallel.hpp"

namespace fdd {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double talbot_point(const LaplaceFunction& F, double t, int nodes, double scale) {
    require(t > 0.0, Errc::invalid_argument, "talbot_point: t must be > 0");
    require(nodes >= 4, Errc::invalid_argument, "talbot_point: need at least 4 nodes");
    const int M = nodes;
    const double r = scale * static_cast<double>(M) / (5.0 * t);
    // theta = 0 node: s = r on the real axis
    double acc = 0.5 * (F.eval(Complex(r, 0.0)) * std::exp(r * t)).real();
    for (int k = 1; k < M; ++k) {
        const double theta = static_cast<double>(k) * kPi / static_cast<double>(M);
        const double cot = std::cos(theta) / std::sin(theta);
        const Complex s(r * theta * cot, r * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        acc += (std::exp(s * t) * F.eval(s) * Complex(1.0, sigma)).real();
    }
    return acc * r / static_cast<double>(M);
}

double ilt_point(const LaplaceFunction& F, double t, const TalbotConfig& config) {
    const double coarse = talbot_point(F, t, config.nodes, config.scale);
    if (!config.node_doubling_check) return coarse;
    const double fine = talbot_point(F, t, 2 * config.nodes, config.scale);
    const double tol = 10.0 * config.accuracy_target * std::max(1.0, std::abs(fine));
    if (!(std::abs(fine - coarse) <= tol))
        fail(Errc::contour_failure,
             "ilt_evaluate: node doubling changed the result at t = " + std::to_string(t) +
                 " by " + std::to_string(std::abs(fine - coarse)) +
                 "; the transform likely violates the contour assumptions");
    return fine;
}

SampledSignal ilt_evaluate(const LaplaceFunction& F, const TimeGrid& grid,
                           const TalbotConfig& config) {
    require(F.abscissa <= 0.0, Errc::invalid_argument,
            "ilt_evaluate: fixed-Talbot requires singularities in the closed left half-plane");
    std::vector<double> values(grid.size());
    std::exception_ptr error;
    parallel_for(0, values.size(), [&](std::size_t k) {
        try {
            values[k] = ilt_point(F, grid.time(k), config);
        } catch (...) {
            if (!error) error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);
    return SampledSignal(grid, std::move(values));
}

} // namespace fdd
