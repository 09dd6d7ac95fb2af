#include "fitting.hpp"

#include <algorithm>
#include <cmath>

namespace fdd {

namespace {
constexpr double kPi = 3.14159265358979323846;

// splitmix64: stable restart-point stream independent of the standard library
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

double box_to_value(const ParamBounds& b, double z) {
    const double s = sigmoid(z);
    if (b.log_scale) return std::exp(std::log(b.lo) + (std::log(b.hi) - std::log(b.lo)) * s);
    return b.lo + (b.hi - b.lo) * s;
}

double box_to_z(const ParamBounds& b, double value) {
    double f = b.log_scale ? (std::log(value) - std::log(b.lo)) / (std::log(b.hi) - std::log(b.lo))
                           : (value - b.lo) / (b.hi - b.lo);
    f = std::clamp(f, 1e-9, 1.0 - 1e-9);
    return logit(f);
}

ModelParams assemble(Family family, std::span<const double> p) {
    switch (family) {
    case Family::fopdt: return Fopdt{p[0], p[1], p[2]};
    case Family::fo2pdt: return Fo2pdt{p[0], p[1], p[2], p[3]};
    case Family::fopfdd: return Fopfdd{p[0], p[1], p[2], p[3]};
    }
    fail(Errc::invalid_argument, "unknown family");
}

std::vector<double> disassemble(const ModelParams& m) {
    struct Visitor {
        std::vector<double> operator()(const Fopdt& p) const { return {p.K, p.tau, p.L}; }
        std::vector<double> operator()(const Fo2pdt& p) const { return {p.K, p.tau, p.L, p.alpha}; }
        std::vector<double> operator()(const Fopfdd& p) const { return {p.K, p.tau, p.L, p.alpha}; }
    };
    return std::visit(Visitor{}, m);
}

struct BodeTarget {
    std::vector<double> omegas;
    std::vector<double> mag_db;
    std::vector<double> phase;

    explicit BodeTarget(const FrequencyResponseSamples& fr) : omegas(fr.omegas) {
        mag_db.resize(fr.size());
        phase.resize(fr.size());
        for (std::size_t i = 0; i < fr.size(); ++i) {
            mag_db[i] = 20.0 * std::log10(std::abs(fr.values[i]));
            phase[i] = std::arg(fr.values[i]);
        }
        unwrap_phase(phase);
    }
};

std::pair<double, double> errors_against(const ModelParams& m, const BodeTarget& target) {
    double e_mag = 0.0, e_phase = 0.0;
    for (std::size_t i = 0; i < target.omegas.size(); ++i) {
        double mag = 0.0, ph = 0.0;
        model_point(m, target.omegas[i], mag, ph);
        const double dm = 20.0 * std::log10(mag) - target.mag_db[i];
        const double dp = ph - target.phase[i];
        e_mag += dm * dm;
        e_phase += dp * dp;
    }
    const double count = static_cast<double>(target.omegas.size());
    return {e_mag / count, e_phase / count};
}

} // namespace

const char* to_string(Family f) {
    switch (f) {
    case Family::fopdt: return "fopdt";
    case Family::fo2pdt: return "fo2pdt";
    case Family::fopfdd: return "fopfdd";
    }
    return "?";
}

std::optional<Family> family_from_string(std::string_view name) {
    if (name == "fopdt" || name == "h1" || name == "H1") return Family::fopdt;
    if (name == "fo2pdt" || name == "h2" || name == "H2") return Family::fo2pdt;
    if (name == "fopfdd" || name == "h3" || name == "H3") return Family::fopfdd;
    return std::nullopt;
}

void unwrap_phase(std::vector<double>& phase) {
    for (std::size_t i = 1; i < phase.size(); ++i) {
        const double d = phase[i] - phase[i - 1];
        phase[i] -= 2.0 * kPi * std::round(d / (2.0 * kPi));
    }
}

FitProblem FitProblem::standard(FrequencyResponseSamples target, Family family, double omega_b,
                                std::uint64_t seed) {
    require(omega_b > 0.0, Errc::invalid_argument, "FitProblem: omega_b must be > 0");
    FitProblem p;
    p.target = std::move(target);
    p.family = family;
    p.omega_break = omega_b;
    const bool narrow_gain = family != Family::fopfdd;
    p.bounds.push_back({narrow_gain ? 0.99 : 0.5, narrow_gain ? 1.01 : 1.5, false});
    p.bounds.push_back({1e-3 / omega_b, 1e3 / omega_b, true});
    p.bounds.push_back({1e-4 / omega_b, 1e2 / omega_b, true});
    if (family == Family::fo2pdt) p.bounds.push_back({0.0, 2.0, false});
    if (family == Family::fopfdd) p.bounds.push_back({0.0, 1.0, false});
    p.weight_grid.resize(21);
    for (std::size_t i = 0; i < p.weight_grid.size(); ++i)
        p.weight_grid[i] = static_cast<double>(i) / 20.0;
    p.optimizer.seed = seed;
    return p;
}

std::pair<double, double> objective_errors(const ModelParams& m,
                                           const FrequencyResponseSamples& target) {
    validate(m);
    return errors_against(m, BodeTarget(target));
}

std::pair<double, double> objective_errors(const FrequencyResponseSamples& model,
                                           const FrequencyResponseSamples& target) {
    require(model.omegas == target.omegas, Errc::grid_mismatch,
            "objective_errors: model and target must share the frequency grid");
    BodeTarget tm(model), tt(target);
    double e_mag = 0.0, e_phase = 0.0;
    for (std::size_t i = 0; i < tm.omegas.size(); ++i) {
        const double dm = tm.mag_db[i] - tt.mag_db[i];
        const double dp = tm.phase[i] - tt.phase[i];
        e_mag += dm * dm;
        e_phase += dp * dp;
    }
    const double count = static_cast<double>(tm.omegas.size());
    return {e_mag / count, e_phase / count};
}

std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(std::span<const double>)>& fn, std::span<const double> x0,
    int max_iterations, double tolerance) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> simplex;
    simplex.emplace_back(x0.begin(), x0.end());
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> v(x0.begin(), x0.end());
        v[i] += 0.25;
        simplex.push_back(std::move(v));
    }
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) values[i] = fn(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    for (int it = 0; it < max_iterations; ++it) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        {
            std::vector<std::vector<double>> sx(n + 1);
            std::vector<double> sv(n + 1);
            for (std::size_t i = 0; i <= n; ++i) {
                sx[i] = std::move(simplex[order[i]]);
                sv[i] = values[order[i]];
            }
            simplex = std::move(sx);
            values = std::move(sv);
        }
        if (std::abs(values[n] - values[0]) <= tolerance * (1.0 + std::abs(values[0]))) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);

        auto blend = [&](double coef) {
            std::vector<double> v(n);
            for (std::size_t j = 0; j < n; ++j)
                v[j] = centroid[j] + coef * (centroid[j] - simplex[n][j]);
            return v;
        };
        std::vector<double> reflected = blend(1.0);
        const double fr = fn(reflected);
        if (fr < values[0]) {
            std::vector<double> expanded = blend(2.0);
            const double fe = fn(expanded);
            if (fe < fr) {
                simplex[n] = std::move(expanded);
                values[n] = fe;
            } else {
                simplex[n] = std::move(reflected);
                values[n] = fr;
            }
        } else if (fr < values[n - 1]) {
            simplex[n] = std::move(reflected);
            values[n] = fr;
        } else {
            std::vector<double> contracted = blend(-0.5);
            const double fc = fn(contracted);
            if (fc < values[n]) {
                simplex[n] = std::move(contracted);
                values[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                    values[i] = fn(simplex[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (values[i] < values[best]) best = i;
    return {simplex[best], values[best]};
}

ScalarizedFit fit_scalarized(const FitProblem& problem, double q1, const ModelParams* warm_start) {
    require(q1 >= 0.0 && q1 <= 1.0, Errc::invalid_argument, "fit_scalarized: q1 must lie in [0,1]");
    require(!problem.bounds.empty(), Errc::invalid_argument, "fit_scalarized: missing bounds");
    const BodeTarget target(problem.target);
    const std::size_t dim = problem.bounds.size();

    int evaluations = 0;
    auto J = [&](std::span<const double> z) {
        std::vector<double> p(dim);
        for (std::size_t i = 0; i < dim; ++i) p[i] = box_to_value(problem.bounds[i], z[i]);
        const auto [em, ep] = errors_against(assemble(problem.family, p), target);
        ++evaluations;
        return q1 * em + (1.0 - q1) * ep;
    };

    // heuristic initial guess: K = 1, tau = 1/omega_b, L = tau/5,
    // alpha = 0.9 (H2) or 0.7 (H3)
    const double wb = problem.omega_break > 0.0 ? problem.omega_break : problem.target.omegas.front();
    std::vector<double> p0{1.0, 1.0 / wb, 1.0 / (5.0 * wb)};
    if (problem.family == Family::fo2pdt) p0.push_back(0.9);
    if (problem.family == Family::fopfdd) p0.push_back(0.7);
    std::vector<std::vector<double>> starts;
    {
        std::vector<double> z(dim);
        for (std::size_t i = 0; i < dim; ++i) z[i] = box_to_z(problem.bounds[i], p0[i]);
        starts.push_back(std::move(z));
    }
    if (warm_start) {
        const std::vector<double> p = disassemble(*warm_start);
        std::vector<double> z(dim);
        for (std::size_t i = 0; i < dim; ++i) z[i] = box_to_z(problem.bounds[i], p[i]);
        starts.push_back(std::move(z));
    }
    SplitMix64 rng{problem.optimizer.seed ^ 0xf0d5f0d5f0d5f0d5ULL ^
                   (static_cast<std::uint64_t>(q1 * 1e6) << 16)};
    for (int r = 0; r < problem.optimizer.restarts; ++r) {
        std::vector<double> z(dim);
        for (std::size_t i = 0; i < dim; ++i)
            z[i] = logit(0.05 + 0.9 * rng.uniform());
        starts.push_back(std::move(z));
    }

    std::vector<double> best_z;
    double best_v = std::numeric_limits<double>::infinity();
    double heuristic_v = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < starts.size(); ++s) {
        auto [z, v] =
            nelder_mead(J, starts[s], problem.optimizer.max_iterations, problem.optimizer.tolerance);
        if (s == 0) heuristic_v = J(starts[s]);
        if (v < best_v) {
            best_v = v;
            best_z = std::move(z);
        }
    }

    std::vector<double> p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = box_to_value(problem.bounds[i], best_z[i]);
    const ModelParams params = assemble(problem.family, p);
    const auto [em, ep] = errors_against(params, target);

    ScalarizedFit out;
    out.point = ParetoPoint{q1, em, ep, params};
    out.stalled = !(best_v < heuristic_v);
    out.evaluations = evaluations;
    return out;
}

std::vector<ParetoPoint> pareto_sweep(const FitProblem& problem) {
    require(!problem.weight_grid.empty(), Errc::invalid_argument,
            "pareto_sweep: empty weight grid");
    std::vector<double> weights = problem.weight_grid;
    std::sort(weights.begin(), weights.end());
    std::vector<ParetoPoint> points;
    const ModelParams* warm = nullptr;
    ModelParams warm_storage = Fopdt{1.0, 1.0, 0.0};
    for (double q1 : weights) {
        ScalarizedFit fit = fit_scalarized(problem, q1, warm);
        warm_storage = fit.point.params;
        warm = &warm_storage;
        points.push_back(fit.point);
    }
    // drop dominated points
    std::vector<ParetoPoint> front;
    for (const ParetoPoint& c : points) {
        const bool dominated = std::any_of(points.begin(), points.end(), [&](const ParetoPoint& o) {
            return (o.e_mag <= c.e_mag && o.e_phase < c.e_phase) ||
                   (o.e_mag < c.e_mag && o.e_phase <= c.e_phase);
        });
        if (!dominated) front.push_back(c);
    }
    std::sort(front.begin(), front.end(),
              [](const ParetoPoint& a, const ParetoPoint& b) { return a.q1 < b.q1; });
    return front;
}

ParetoPoint select_optimal(const std::vector<ParetoPoint>& front) {
    require(!front.empty(), Errc::invalid_argument, "select_optimal: empty front");
    double min_mag = std::numeric_limits<double>::infinity();
    double min_phase = std::numeric_limits<double>::infinity();
    for (const ParetoPoint& p : front) {
        if (p.e_mag > 0.0) min_mag = std::min(min_mag, p.e_mag);
        if (p.e_phase > 0.0) min_phase = std::min(min_phase, p.e_phase);
    }
    if (!std::isfinite(min_mag)) min_mag = 1.0;
    if (!std::isfinite(min_phase)) min_phase = 1.0;
    std::size_t best = 0;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < front.size(); ++i) {
        const double score = front[i].e_mag / min_mag + front[i].e_phase / min_phase;
        const bool better =
            score < best_score - 1e-12 ||
            (std::abs(score - best_score) <= 1e-12 &&
             std::abs(front[i].q1 - 0.5) < std::abs(front[best].q1 - 0.5));
        if (better) {
            best_score = score;
            best = i;
        }
    }
    return front[best];
}

} // namespace fdd
