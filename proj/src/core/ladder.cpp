#include "ladder.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "parallel.hpp"

namespace fdd {

LadderStateSpace build_ladder(const LadderSpec& spec) {
    const int n = spec.n();
    LadderStateSpace ss;
    ss.E = Eigen::MatrixXd::Zero(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = p; q < n; ++q)
            ss.E(p, q) = spec.resistances[static_cast<std::size_t>(p)] *
                         spec.capacitances[static_cast<std::size_t>(q)];
    ss.A = Eigen::MatrixXd::Zero(n, n);
    for (int p = 0; p < n; ++p) {
        ss.A(p, p) = -1.0;
        if (p > 0) ss.A(p, p - 1) = 1.0;
    }
    ss.B = Eigen::VectorXd::Zero(n);
    ss.B(0) = 1.0;
    ss.C = Eigen::RowVectorXd::Zero(n);
    ss.C(n - 1) = 1.0;
    auto solver = ss.E.triangularView<Eigen::Upper>();
    ss.A_hat = solver.solve(ss.A);
    ss.B_hat = solver.solve(ss.B);
    return ss;
}

FrequencyResponseSamples ladder_freq_response(const LadderStateSpace& ss,
                                              std::span<const double> omegas) {
    const int n = ss.n();
    std::vector<Complex> values(omegas.size());
    const Eigen::MatrixXcd Ac = ss.A_hat.cast<Complex>();
    const Eigen::VectorXcd Bc = ss.B_hat.cast<Complex>();
    std::exception_ptr error;
    parallel_for(0, omegas.size(), [&](std::size_t i) {
        try {
            require(omegas[i] > 0.0, Errc::invalid_argument,
                    "ladder_freq_response: omegas must be > 0");
            Eigen::MatrixXcd M = Complex(0.0, omegas[i]) * Eigen::MatrixXcd::Identity(n, n) - Ac;
            Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
            if (lu.determinant() == Complex(0.0, 0.0))
                fail(Errc::singular_system, "ladder_freq_response: singular solve");
            Eigen::VectorXcd x = lu.solve(Bc);
            Complex y = 0.0;
            for (int j = 0; j < n; ++j) y += ss.C(j) * x(j);
            values[i] = y;
        } catch (...) {
            if (!error) error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);
    return FrequencyResponseSamples(std::vector<double>(omegas.begin(), omegas.end()),
                                    std::move(values));
}

SampledSignal ladder_step_response(const LadderStateSpace& ss, const TimeGrid& grid) {
    const int n = ss.n();
    const Eigen::MatrixXd Phi = (ss.A_hat * grid.t_s).exp();
    const Eigen::VectorXd rhs = (Phi - Eigen::MatrixXd::Identity(n, n)) * ss.B_hat;
    const Eigen::VectorXd Gamma = ss.A_hat.partialPivLu().solve(rhs);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<double> values(grid.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        x = Phi * x + Gamma;
        values[k] = ss.C * x;
    }
    return SampledSignal(grid, std::move(values));
}

double break_frequency(const FrequencyResponseSamples& fr) {
    constexpr double threshold = 0.70710678118654752440; // 2^{-1/2}, not the rounded 0.7079
    require(fr.size() >= 2, Errc::invalid_argument, "break_frequency: need at least 2 samples");
    for (std::size_t i = 1; i < fr.size(); ++i) {
        const double m0 = std::abs(fr.values[i - 1]);
        const double m1 = std::abs(fr.values[i]);
        if (m0 >= threshold && m1 < threshold) {
            const double x0 = std::log(fr.omegas[i - 1]), x1 = std::log(fr.omegas[i]);
            const double y0 = std::log(m0), y1 = std::log(m1);
            return std::exp(x0 + (std::log(threshold) - y0) * (x1 - x0) / (y1 - y0));
        }
    }
    fail(Errc::no_crossing, "break_frequency: |G| never drops below 2^{-1/2} in range");
}

double dc_gain(const LadderStateSpace& ss) {
    const Eigen::VectorXd x = ss.A_hat.partialPivLu().solve(ss.B_hat);
    return -(ss.C * x)(0);
}

std::vector<Complex> poles(const LadderStateSpace& ss) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(ss.A_hat, false);
    std::vector<Complex> out(static_cast<std::size_t>(ss.n()));
    for (int i = 0; i < ss.n(); ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

} // namespace fdd
