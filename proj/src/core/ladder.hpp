#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "types.hpp"

namespace fdd {

/// An n-stage series RC network: per-stage series resistance R_p followed by
/// a shunt capacitance C_p, input voltage at stage 1, output across C_n.
struct LadderSpec {
    std::vector<double> resistances;
    std::vector<double> capacitances;

    LadderSpec(std::vector<double> r, std::vector<double> c)
        : resistances(std::move(r)), capacitances(std::move(c)) {
        require(!resistances.empty() && resistances.size() == capacitances.size(),
                Errc::invalid_argument, "LadderSpec: need matching nonempty R and C arrays");
        for (double v : resistances)
            require(v > 0.0, Errc::invalid_argument, "LadderSpec: resistances must be > 0");
        for (double v : capacitances)
            require(v > 0.0, Errc::invalid_argument, "LadderSpec: capacitances must be > 0");
    }

    static LadderSpec uniform(int n, double r = 1.0, double c = 1.0) {
        require(n >= 1, Errc::invalid_argument, "LadderSpec: n must be >= 1");
        return LadderSpec(std::vector<double>(static_cast<std::size_t>(n), r),
                          std::vector<double>(static_cast<std::size_t>(n), c));
    }

    int n() const { return static_cast<int>(resistances.size()); }
};

/// Implicit form E x' = A x + B u, y = C x, plus the explicit A_hat = E^{-1} A
/// and B_hat = E^{-1} B obtained by back-substitution against the upper
/// triangular E (E is never inverted explicitly).
struct LadderStateSpace {
    Eigen::MatrixXd E;
    Eigen::MatrixXd A;
    Eigen::VectorXd B;
    Eigen::RowVectorXd C;
    Eigen::MatrixXd A_hat;
    Eigen::VectorXd B_hat;

    int n() const { return static_cast<int>(E.rows()); }
};

LadderStateSpace build_ladder(const LadderSpec& spec);

/// G(j w) = C (j w I - A_hat)^{-1} B_hat by a linear solve per frequency.
FrequencyResponseSamples ladder_freq_response(const LadderStateSpace& ss,
                                              std::span<const double> omegas);

/// Exact zero-order-hold unit-step response: Phi = exp(A_hat t_s),
/// Gamma = A_hat^{-1}(Phi - I) B_hat, x_0 = 0.
SampledSignal ladder_step_response(const LadderStateSpace& ss, const TimeGrid& grid);

/// Frequency where |G| first crosses 2^{-1/2} from above, located by
/// log-log interpolation between the bracketing samples.
double break_frequency(const FrequencyResponseSamples& fr);

/// -C A_hat^{-1} B_hat (equals 1 for every valid ladder).
double dc_gain(const LadderStateSpace& ss);

/// Eigenvalues of A_hat.
std::vector<Complex> poles(const LadderStateSpace& ss);

} // namespace fdd
