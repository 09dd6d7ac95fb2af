#include "fopfdd/fopfdd.h"

#include <cstring>
#include <new>
#include <string>

#include "../core/analysis.hpp"
#include "../core/fdd_core.hpp"
#include "../core/fitting.hpp"
#include "../core/ilt.hpp"
#include "../core/ladder.hpp"
#include "../core/models.hpp"
#include "../core/vpa.hpp"

struct fopfdd_signal {
    fdd::SampledSignal value;
};

struct fopfdd_ladder {
    fdd::LadderSpec spec;
    fdd::LadderStateSpace ss;
};

struct fopfdd_fit_result {
    std::vector<fdd::ParetoPoint> front;
    fdd::ParetoPoint selected;
};

struct fopfdd_table_report {
    std::vector<fdd::StepErrorRow> rows;
};

namespace {

thread_local std::string g_last_error;

fopfdd_status to_status(fdd::Errc code) {
    switch (code) {
    case fdd::Errc::invalid_argument: return FOPFDD_ERR_INVALID_ARGUMENT;
    case fdd::Errc::non_convergent: return FOPFDD_ERR_NON_CONVERGENT;
    case fdd::Errc::config: return FOPFDD_ERR_CONFIG;
    case fdd::Errc::singular_system: return FOPFDD_ERR_SINGULAR_SYSTEM;
    case fdd::Errc::no_crossing: return FOPFDD_ERR_NO_CROSSING;
    case fdd::Errc::not_reached: return FOPFDD_ERR_NOT_REACHED;
    case fdd::Errc::contour_failure: return FOPFDD_ERR_CONTOUR_FAILURE;
    case fdd::Errc::optimizer_stall: return FOPFDD_ERR_OPTIMIZER_STALL;
    case fdd::Errc::grid_mismatch: return FOPFDD_ERR_GRID_MISMATCH;
    }
    return FOPFDD_ERR_INTERNAL;
}

template <typename Fn>
fopfdd_status guarded(Fn&& fn) {
    try {
        fn();
        return FOPFDD_OK;
    } catch (const fdd::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return FOPFDD_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FOPFDD_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return FOPFDD_ERR_INTERNAL;
    }
}

fopfdd_status invalid(const char* message) {
    g_last_error = message;
    return FOPFDD_ERR_INVALID_ARGUMENT;
}

fdd::SeriesConfig series_config(const fopfdd_series_options* options) {
    fdd::SeriesConfig config;
    if (options) {
        if (options->n_terms > 0) config.n_terms = options->n_terms;
        if (options->peak_threshold > 0.0) config.peak_threshold = options->peak_threshold;
        if (options->integer_tol > 0.0) config.integer_tol = options->integer_tol;
        if (options->precision_digits > 0) config.precision_digits = options->precision_digits;
    }
    return config;
}

fdd::Family to_family(fopfdd_family family) {
    switch (family) {
    case FOPFDD_FAMILY_FOPDT: return fdd::Family::fopdt;
    case FOPFDD_FAMILY_FO2PDT: return fdd::Family::fo2pdt;
    case FOPFDD_FAMILY_FOPFDD: return fdd::Family::fopfdd;
    }
    fdd::fail(fdd::Errc::invalid_argument, "unknown model family");
}

fopfdd_family from_family(fdd::Family family) {
    switch (family) {
    case fdd::Family::fopdt: return FOPFDD_FAMILY_FOPDT;
    case fdd::Family::fo2pdt: return FOPFDD_FAMILY_FO2PDT;
    case fdd::Family::fopfdd: return FOPFDD_FAMILY_FOPFDD;
    }
    return FOPFDD_FAMILY_FOPDT;
}

fdd::ModelParams to_model(const fopfdd_model& m) {
    switch (m.family) {
    case FOPFDD_FAMILY_FOPDT: return fdd::Fopdt{m.K, m.tau, m.L};
    case FOPFDD_FAMILY_FO2PDT: return fdd::Fo2pdt{m.K, m.tau, m.L, m.alpha};
    case FOPFDD_FAMILY_FOPFDD: return fdd::Fopfdd{m.K, m.tau, m.L, m.alpha};
    }
    fdd::fail(fdd::Errc::invalid_argument, "unknown model family");
}

fopfdd_model from_model(const fdd::ModelParams& params) {
    struct Visitor {
        fopfdd_model operator()(const fdd::Fopdt& p) const {
            return {FOPFDD_FAMILY_FOPDT, p.K, p.tau, p.L, 1.0};
        }
        fopfdd_model operator()(const fdd::Fo2pdt& p) const {
            return {FOPFDD_FAMILY_FO2PDT, p.K, p.tau, p.L, p.alpha};
        }
        fopfdd_model operator()(const fdd::Fopfdd& p) const {
            return {FOPFDD_FAMILY_FOPFDD, p.K, p.tau, p.L, p.alpha};
        }
    };
    return std::visit(Visitor{}, params);
}

fdd::OptimizerConfig optimizer_config(const fopfdd_fit_options* options) {
    fdd::OptimizerConfig config;
    if (options) {
        config.seed = options->seed;
        if (options->restarts > 0) config.restarts = options->restarts;
        if (options->max_iterations > 0) config.max_iterations = options->max_iterations;
        if (options->tolerance > 0.0) config.tolerance = options->tolerance;
    }
    return config;
}

fopfdd_fit_result* run_fit(fdd::FrequencyResponseSamples target, fdd::Family family,
                           double omega_break, const fopfdd_fit_options* options) {
    fdd::FitProblem problem = fdd::FitProblem::standard(std::move(target), family, omega_break);
    problem.optimizer = optimizer_config(options);
    if (options && options->weight_count > 1) {
        problem.weight_grid.resize(static_cast<std::size_t>(options->weight_count));
        for (std::size_t i = 0; i < problem.weight_grid.size(); ++i)
            problem.weight_grid[i] =
                static_cast<double>(i) / static_cast<double>(problem.weight_grid.size() - 1);
    }
    auto* result = new fopfdd_fit_result{};
    result->front = fdd::pareto_sweep(problem);
    result->selected = fdd::select_optimal(result->front);
    return result;
}

} // namespace

extern "C" {

const char* fopfdd_version(void) { return "1.0.0"; }

const char* fopfdd_last_error(void) { return g_last_error.c_str(); }

void fopfdd_signal_free(fopfdd_signal* signal) { delete signal; }

size_t fopfdd_signal_size(const fopfdd_signal* signal) {
    return signal ? signal->value.values.size() : 0;
}

double fopfdd_signal_ts(const fopfdd_signal* signal) {
    return signal ? signal->value.grid.t_s : 0.0;
}

fopfdd_status fopfdd_signal_times(const fopfdd_signal* signal, double* out) {
    if (!signal || !out) return invalid("fopfdd_signal_times: null argument");
    for (std::size_t k = 0; k < signal->value.values.size(); ++k)
        out[k] = signal->value.grid.time(k);
    return FOPFDD_OK;
}

fopfdd_status fopfdd_signal_values(const fopfdd_signal* signal, double* out) {
    if (!signal || !out) return invalid("fopfdd_signal_values: null argument");
    std::memcpy(out, signal->value.values.data(), signal->value.values.size() * sizeof(double));
    return FOPFDD_OK;
}

fopfdd_status fopfdd_signal_area(const fopfdd_signal* signal, double* out) {
    if (!signal || !out) return invalid("fopfdd_signal_area: null argument");
    return guarded([&] { *out = fdd::area(signal->value); });
}

fopfdd_status fopfdd_signal_energy(const fopfdd_signal* signal, double* out) {
    if (!signal || !out) return invalid("fopfdd_signal_energy: null argument");
    return guarded([&] { *out = fdd::energy_numeric(signal->value); });
}

fopfdd_status fopfdd_signal_reach_time(const fopfdd_signal* signal, double eta, double* out) {
    if (!signal || !out) return invalid("fopfdd_signal_reach_time: null argument");
    return guarded([&] { *out = fdd::reach_time(signal->value, eta); });
}

fopfdd_status fopfdd_step_error(const fopfdd_signal* y_true, const fopfdd_signal* y_model,
                                double eta, double* out) {
    if (!y_true || !y_model || !out) return invalid("fopfdd_step_error: null argument");
    return guarded([&] { *out = fdd::step_error(y_true->value, y_model->value, eta); });
}

fopfdd_status fopfdd_fdd_frequency_response(double L, double alpha, const double* omegas,
                                            size_t count, double* out_re, double* out_im) {
    if (!omegas || !out_re || !out_im) return invalid("fopfdd_fdd_frequency_response: null array");
    return guarded([&] {
        const fdd::FddParams params(L, alpha);
        for (size_t i = 0; i < count; ++i) {
            const fdd::Complex v = fdd::frequency_response(params, omegas[i]);
            out_re[i] = v.real();
            out_im[i] = v.imag();
        }
    });
}

fopfdd_status fopfdd_fdd_impulse(double L, double alpha, double t_s, double t_max,
                                 const fopfdd_series_options* options, fopfdd_signal** out) {
    if (!out) return invalid("fopfdd_fdd_impulse: null output");
    return guarded([&] {
        *out = new fopfdd_signal{fdd::impulse_response(fdd::FddParams(L, alpha),
                                                       fdd::TimeGrid(t_s, t_max),
                                                       series_config(options))};
    });
}

fopfdd_status fopfdd_fdd_impulse_vpa(double L, double alpha, double t_s, double t_max,
                                     const fopfdd_series_options* options, fopfdd_signal** out) {
    if (!out) return invalid("fopfdd_fdd_impulse_vpa: null output");
    return guarded([&] {
        *out = new fopfdd_signal{fdd::impulse_response_vpa(fdd::FddParams(L, alpha),
                                                           fdd::TimeGrid(t_s, t_max),
                                                           series_config(options))};
    });
}

fopfdd_status fopfdd_fdd_impulse_exact_half(double L, double t_s, double t_max,
                                            fopfdd_signal** out) {
    if (!out) return invalid("fopfdd_fdd_impulse_exact_half: null output");
    return guarded([&] {
        *out = new fopfdd_signal{fdd::impulse_closed_form_half(L, fdd::TimeGrid(t_s, t_max))};
    });
}

fopfdd_status fopfdd_fdd_area_certificate(double L, double alpha,
                                          const fopfdd_series_options* options, double* out) {
    if (!out) return invalid("fopfdd_fdd_area_certificate: null output");
    return guarded([&] {
        *out = fdd::area_certificate(fdd::FddParams(L, alpha), series_config(options)).value;
    });
}

fopfdd_status fopfdd_fdd_energy_certificate(double L, double alpha,
                                            const fopfdd_series_options* options, double* out) {
    if (!out) return invalid("fopfdd_fdd_energy_certificate: null output");
    return guarded([&] {
        *out = fdd::energy_certificate(fdd::FddParams(L, alpha), series_config(options)).value;
    });
}

fopfdd_status fopfdd_fdd_energy_spectral(double L, double alpha, double* out) {
    if (!out) return invalid("fopfdd_fdd_energy_spectral: null output");
    return guarded([&] { *out = fdd::energy_spectral(fdd::FddParams(L, alpha)); });
}

fopfdd_status fopfdd_fdd_peak_bound(double L, double alpha, double* out) {
    if (!out) return invalid("fopfdd_fdd_peak_bound: null output");
    return guarded([&] { *out = fdd::impulse_peak_bound(fdd::FddParams(L, alpha)); });
}

fopfdd_status fopfdd_model_frequency_response(const fopfdd_model* model, const double* omegas,
                                              size_t count, double* out_re, double* out_im) {
    if (!model || !omegas || !out_re || !out_im)
        return invalid("fopfdd_model_frequency_response: null argument");
    return guarded([&] {
        const fdd::ModelParams params = to_model(*model);
        fdd::validate(params);
        for (size_t i = 0; i < count; ++i) {
            const fdd::Complex v = fdd::model_value(params, omegas[i]);
            out_re[i] = v.real();
            out_im[i] = v.imag();
        }
    });
}

fopfdd_status fopfdd_model_step(const fopfdd_model* model, double t_s, double t_max,
                                fopfdd_signal** out) {
    if (!model || !out) return invalid("fopfdd_model_step: null argument");
    return guarded([&] {
        *out = new fopfdd_signal{
            fdd::model_step_response(to_model(*model), fdd::TimeGrid(t_s, t_max))};
    });
}

fopfdd_status fopfdd_ladder_create(const double* resistances, const double* capacitances,
                                   size_t n, fopfdd_ladder** out) {
    if (!resistances || !capacitances || !out) return invalid("fopfdd_ladder_create: null argument");
    return guarded([&] {
        fdd::LadderSpec spec(std::vector<double>(resistances, resistances + n),
                             std::vector<double>(capacitances, capacitances + n));
        auto ss = fdd::build_ladder(spec);
        *out = new fopfdd_ladder{std::move(spec), std::move(ss)};
    });
}

fopfdd_status fopfdd_ladder_create_uniform(size_t n, fopfdd_ladder** out) {
    if (!out) return invalid("fopfdd_ladder_create_uniform: null output");
    return guarded([&] {
        fdd::LadderSpec spec = fdd::LadderSpec::uniform(static_cast<int>(n));
        auto ss = fdd::build_ladder(spec);
        *out = new fopfdd_ladder{std::move(spec), std::move(ss)};
    });
}

void fopfdd_ladder_free(fopfdd_ladder* ladder) { delete ladder; }

size_t fopfdd_ladder_size(const fopfdd_ladder* ladder) {
    return ladder ? static_cast<size_t>(ladder->ss.n()) : 0;
}

fopfdd_status fopfdd_ladder_frequency_response(const fopfdd_ladder* ladder, const double* omegas,
                                               size_t count, double* out_re, double* out_im) {
    if (!ladder || !omegas || !out_re || !out_im)
        return invalid("fopfdd_ladder_frequency_response: null argument");
    return guarded([&] {
        const auto fr =
            fdd::ladder_freq_response(ladder->ss, std::span<const double>(omegas, count));
        for (size_t i = 0; i < count; ++i) {
            out_re[i] = fr.values[i].real();
            out_im[i] = fr.values[i].imag();
        }
    });
}

fopfdd_status fopfdd_ladder_step(const fopfdd_ladder* ladder, double t_s, double t_max,
                                 fopfdd_signal** out) {
    if (!ladder || !out) return invalid("fopfdd_ladder_step: null argument");
    return guarded([&] {
        *out = new fopfdd_signal{fdd::ladder_step_response(ladder->ss, fdd::TimeGrid(t_s, t_max))};
    });
}

fopfdd_status fopfdd_ladder_break_frequency(const fopfdd_ladder* ladder, double* out) {
    if (!ladder || !out) return invalid("fopfdd_ladder_break_frequency: null argument");
    return guarded([&] {
        const int n = ladder->ss.n();
        const double n2 = static_cast<double>(n) * static_cast<double>(n);
        const auto scan = fdd::log_spaced(1e-3 / n2, 1e3, 3000);
        *out = fdd::break_frequency(fdd::ladder_freq_response(ladder->ss, scan));
    });
}

fopfdd_status fopfdd_ladder_dc_gain(const fopfdd_ladder* ladder, double* out) {
    if (!ladder || !out) return invalid("fopfdd_ladder_dc_gain: null argument");
    return guarded([&] { *out = fdd::dc_gain(ladder->ss); });
}

fopfdd_status fopfdd_ladder_t90(const fopfdd_ladder* ladder, double* out) {
    if (!ladder || !out) return invalid("fopfdd_ladder_t90: null argument");
    return guarded([&] {
        const auto ps = fdd::poles(ladder->ss);
        double slowest = std::numeric_limits<double>::infinity();
        for (const fdd::Complex& p : ps) slowest = std::min(slowest, std::abs(p.real()));
        const double tau_slow = 1.0 / slowest;
        const fdd::TimeGrid probe(tau_slow / 500.0, 15.0 * tau_slow);
        *out = fdd::reach_time(fdd::ladder_step_response(ladder->ss, probe), 0.90);
    });
}

fopfdd_status fopfdd_ladder_poles(const fopfdd_ladder* ladder, double* out_re, double* out_im) {
    if (!ladder || !out_re || !out_im) return invalid("fopfdd_ladder_poles: null argument");
    return guarded([&] {
        const auto ps = fdd::poles(ladder->ss);
        for (std::size_t i = 0; i < ps.size(); ++i) {
            out_re[i] = ps[i].real();
            out_im[i] = ps[i].imag();
        }
    });
}

fopfdd_status fopfdd_ladder_matrices(const fopfdd_ladder* ladder, double* E, double* A, double* B,
                                     double* C, double* A_hat, double* B_hat) {
    if (!ladder) return invalid("fopfdd_ladder_matrices: null ladder");
    const int n = ladder->ss.n();
    auto copy_matrix = [n](const Eigen::MatrixXd& m, double* out) {
        if (!out) return;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) out[r * n + c] = m(r, c);
    };
    copy_matrix(ladder->ss.E, E);
    copy_matrix(ladder->ss.A, A);
    copy_matrix(ladder->ss.A_hat, A_hat);
    for (int i = 0; i < n; ++i) {
        if (B) B[i] = ladder->ss.B(i);
        if (C) C[i] = ladder->ss.C(i);
        if (B_hat) B_hat[i] = ladder->ss.B_hat(i);
    }
    return FOPFDD_OK;
}

fopfdd_status fopfdd_fit_target(const double* omegas, const double* re, const double* im,
                                size_t count, fopfdd_family family, double omega_break,
                                const fopfdd_fit_options* options, fopfdd_fit_result** out) {
    if (!omegas || !re || !im || !out) return invalid("fopfdd_fit_target: null argument");
    return guarded([&] {
        std::vector<fdd::Complex> values(count);
        for (size_t i = 0; i < count; ++i) values[i] = fdd::Complex(re[i], im[i]);
        fdd::FrequencyResponseSamples target(std::vector<double>(omegas, omegas + count),
                                             std::move(values));
        double wb = omega_break;
        if (!(wb > 0.0)) wb = fdd::break_frequency(target);
        *out = run_fit(std::move(target), to_family(family), wb, options);
    });
}

fopfdd_status fopfdd_fit_ladder(const fopfdd_ladder* ladder, fopfdd_family family,
                                const fopfdd_fit_options* options, fopfdd_fit_result** out) {
    if (!ladder || !out) return invalid("fopfdd_fit_ladder: null argument");
    return guarded([&] {
        double wb = 0.0;
        const fopfdd_status status = fopfdd_ladder_break_frequency(ladder, &wb);
        if (status != FOPFDD_OK) throw fdd::Error(fdd::Errc::no_crossing, fopfdd_last_error());
        const auto grid = fdd::log_spaced(wb / 10.0, wb * 10.0, 200);
        *out = run_fit(fdd::ladder_freq_response(ladder->ss, grid), to_family(family), wb, options);
    });
}

void fopfdd_fit_result_free(fopfdd_fit_result* result) { delete result; }

size_t fopfdd_fit_result_front_size(const fopfdd_fit_result* result) {
    return result ? result->front.size() : 0;
}

fopfdd_status fopfdd_fit_result_front_point(const fopfdd_fit_result* result, size_t index,
                                            double* q1, double* e_mag, double* e_phase,
                                            fopfdd_model* params) {
    if (!result) return invalid("fopfdd_fit_result_front_point: null result");
    if (index >= result->front.size()) return invalid("fopfdd_fit_result_front_point: bad index");
    const fdd::ParetoPoint& p = result->front[index];
    if (q1) *q1 = p.q1;
    if (e_mag) *e_mag = p.e_mag;
    if (e_phase) *e_phase = p.e_phase;
    if (params) *params = from_model(p.params);
    return FOPFDD_OK;
}

fopfdd_status fopfdd_fit_result_selected(const fopfdd_fit_result* result, double* q1,
                                         double* e_mag, double* e_phase, fopfdd_model* params) {
    if (!result) return invalid("fopfdd_fit_result_selected: null result");
    if (q1) *q1 = result->selected.q1;
    if (e_mag) *e_mag = result->selected.e_mag;
    if (e_phase) *e_phase = result->selected.e_phase;
    if (params) *params = from_model(result->selected.params);
    return FOPFDD_OK;
}

fopfdd_status fopfdd_tables_run(const int* ns, size_t n_count, const fopfdd_family* families,
                                size_t family_count, uint64_t seed, fopfdd_table_report** out) {
    if (!ns || !families || !out) return invalid("fopfdd_tables_run: null argument");
    return guarded([&] {
        std::vector<fdd::Family> fams(family_count);
        for (size_t i = 0; i < family_count; ++i) fams[i] = to_family(families[i]);
        fdd::TablesConfig config;
        config.seed = seed;
        auto* report = new fopfdd_table_report{};
        report->rows = fdd::reproduce_tables(std::span<const int>(ns, n_count), fams, config);
        *out = report;
    });
}

void fopfdd_table_report_free(fopfdd_table_report* report) { delete report; }

size_t fopfdd_table_report_size(const fopfdd_table_report* report) {
    return report ? report->rows.size() : 0;
}

fopfdd_status fopfdd_table_report_row(const fopfdd_table_report* report, size_t index,
                                      fopfdd_table_row* out) {
    if (!report || !out) return invalid("fopfdd_table_report_row: null argument");
    if (index >= report->rows.size()) return invalid("fopfdd_table_report_row: bad index");
    const fdd::StepErrorRow& row = report->rows[index];
    out->n = row.n;
    out->family = from_family(row.family);
    out->ok = row.ok ? 1 : 0;
    out->params = from_model(row.params);
    out->q1 = row.q1;
    out->e_mag = row.e_mag;
    out->e_phase = row.e_phase;
    out->t30 = row.t30;
    out->t63 = row.t63;
    out->t90 = row.t90;
    out->j30 = row.j30;
    out->j63 = row.j63;
    out->j90 = row.j90;
    std::snprintf(out->error, sizeof(out->error), "%s", row.error.c_str());
    return FOPFDD_OK;
}

fopfdd_status fopfdd_ilt(fopfdd_laplace_fn fn, void* user_data, const double* t, size_t count,
                         int nodes, double* out) {
    if (!fn || !t || !out) return invalid("fopfdd_ilt: null argument");
    return guarded([&] {
        fdd::LaplaceFunction F;
        F.eval = [fn, user_data](fdd::Complex s) {
            double re = 0.0, im = 0.0;
            fn(s.real(), s.imag(), &re, &im, user_data);
            return fdd::Complex(re, im);
        };
        fdd::TalbotConfig config;
        if (nodes > 0) config.nodes = nodes;
        for (size_t i = 0; i < count; ++i) out[i] = fdd::ilt_point(F, t[i], config);
    });
}

} // extern "C"
