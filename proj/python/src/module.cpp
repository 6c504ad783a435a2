// Thin pybind11 layer. Enumerations cross the boundary as their string names.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "rrb/errors.hpp"
#include "rrb/estimators.hpp"
#include "rrb/intervals.hpp"
#include "rrb/model.hpp"
#include "rrb/records.hpp"
#include "rrb/risk.hpp"
#include "rrb/sim.hpp"

namespace py = pybind11;
using namespace rrb;

namespace {

py::dict moments_dict(const Moments& m) {
    py::dict d;
    d["mean"] = m.mean;
    d["variance"] = m.variance;
    d["mse"] = m.mse;
    return d;
}

py::object optional_moments(const std::optional<Moments>& m) {
    return m ? py::object(moments_dict(*m)) : py::object(py::none());
}

py::dict interval_dict(const CredibleInterval& ci) {
    py::dict d;
    d["lower"] = ci.lower;
    d["upper"] = ci.upper;
    d["length"] = ci.length();
    d["level"] = ci.level;
    d["diagnostics"] = ci.diagnostics;
    return d;
}

PosteriorParams posterior(double s, double A) { return PosteriorParams::from_shape_scale(s, A); }

SimConfig make_config(double delta, const std::vector<int>& n, std::int64_t reps,
                      std::uint64_t seed, double a, double b,
                      const std::vector<std::string>& estimators, const std::vector<double>& alpha,
                      const std::vector<std::string>& kinds, int threads) {
    SimConfig c;
    c.delta_true = delta;
    c.n_records = n;
    c.reps = reps;
    c.seed = seed;
    c.prior = {a, b};
    c.estimators.clear();
    for (const auto& e : estimators) c.estimators.push_back(parse_estimator(e));
    c.alpha_list = alpha;
    c.interval_kinds.clear();
    for (const auto& k : kinds) c.interval_kinds.push_back(parse_interval_kind(k));
    c.threads = threads;
    return c;
}

py::dict sim_dict(const SimResult& r) {
    py::list point;
    for (const auto& row : r.point) {
        py::dict d;
        d["estimator"] = std::string(to_string(row.estimator));
        d["n"] = row.n;
        d["reps"] = row.reps;
        d["average"] = row.average;
        d["average_se"] = row.average_se;
        d["empirical_mse"] = row.empirical_mse;
        d["mse_se"] = row.mse_se;
        d["analytic"] = optional_moments(row.analytic);
        point.append(d);
    }
    py::list interval;
    for (const auto& row : r.interval) {
        py::dict d;
        d["kind"] = std::string(to_string(row.kind));
        d["n"] = row.n;
        d["alpha"] = row.alpha;
        d["reps"] = row.reps;
        d["failures"] = row.failures;
        d["empirical_coverage"] = row.empirical_coverage;
        d["coverage_se"] = row.coverage_se;
        d["mean_length"] = row.mean_length;
        interval.append(d);
    }
    py::dict out;
    out["point"] = point;
    out["interval"] = interval;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Record-value estimation of the exponential scale";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());
    py::register_exception<InsufficientRecordsError>(m, "InsufficientRecordsError", error.ptr());
    py::register_exception<BracketError>(m, "BracketError", error.ptr());
    py::register_exception<UnsupportedError>(m, "UnsupportedError", error.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

    m.def("extract_upper_records", [](const std::vector<double>& data) {
        const RecordSummary r = extract_upper_records(data);
        py::dict d;
        d["values"] = r.values;
        d["times"] = r.times;
        d["ranges"] = record_range_sequence(r);
        return d;
    }, py::arg("data"), "Upper records (ties count) with 1-based times and prefix ranges.");

    m.def("posterior_from", [](double a, double b, int n, double range) {
        const PosteriorParams p = posterior_from(PriorParams{a, b}, n, range);
        return py::make_tuple(p.s, p.A);
    }, py::arg("a"), py::arg("b"), py::arg("n"), py::arg("range"),
       "Posterior (s, A) from prior (a, b) and n records with the given range.");

    m.def("posterior_pdf", [](double delta, double s, double A) {
        return posterior_pdf(delta, posterior(s, A));
    }, py::arg("delta"), py::arg("s"), py::arg("A"));
    m.def("posterior_cdf", [](double c, double s, double A) {
        return posterior_cdf(c, posterior(s, A));
    }, py::arg("c"), py::arg("s"), py::arg("A"));
    m.def("posterior_mode", [](double s, double A) { return posterior_mode(posterior(s, A)); },
          py::arg("s"), py::arg("A"));

    m.def("estimate", [](const std::string& name, const std::vector<double>& data, int n, double a,
                         double b, std::optional<double> delta_ref) {
        const RecordSummary r = extract_upper_records(data);
        const EstimateReport rep =
            estimate(parse_estimator(name), r, n, PriorParams{a, b}, data, delta_ref);
        py::dict d;
        d["estimator"] = std::string(to_string(rep.estimator));
        d["n"] = rep.n;
        d["value"] = rep.value;
        d["analytic"] = optional_moments(rep.analytic);
        return d;
    }, py::arg("estimator"), py::arg("data"), py::arg("n"), py::arg("a") = 1.0,
       py::arg("b") = 1.0, py::arg("delta_ref") = py::none());

    m.def("analytic_moments", [](const std::string& name, double delta_ref, int n, double a, double b) {
        return moments_dict(analytic_moments(parse_estimator(name), delta_ref, n, PriorParams{a, b}));
    }, py::arg("estimator"), py::arg("delta_ref"), py::arg("n"), py::arg("a") = 1.0,
       py::arg("b") = 1.0);

    m.def("credible_interval", [](const std::string& kind, double s, double A, double alpha) {
        return interval_dict(credible_interval(parse_interval_kind(kind), posterior(s, A), alpha));
    }, py::arg("kind"), py::arg("s"), py::arg("A"), py::arg("alpha"));

    m.def("length_of_alpha", [](double s, double A, const std::vector<double>& grid, double h) {
        py::list out;
        for (const auto& p : length_of_alpha(posterior(s, A), grid, h)) {
            py::dict d;
            d["alpha"] = p.alpha;
            d["lower"] = p.lower;
            d["upper"] = p.upper;
            d["length"] = p.length;
            d["fd_slope"] = p.fd_slope;
            d["theory_slope"] = p.theory_slope;
            out.append(d);
        }
        return out;
    }, py::arg("s"), py::arg("A"), py::arg("alpha_grid"), py::arg("h") = 1e-3);

    m.def("risk_linear", [](double m_, double d, double delta, int n, const std::string& loss) {
        return risk_linear({m_, d}, delta, n, parse_loss_weight(loss));
    }, py::arg("m"), py::arg("d"), py::arg("delta"), py::arg("n"), py::arg("loss") = "scaled");
    m.def("bayes_risk_linear", [](double m_, double d, int n, double a, double b,
                                  const std::string& loss) {
        return bayes_risk_linear({m_, d}, n, PriorParams{a, b}, parse_loss_weight(loss));
    }, py::arg("m"), py::arg("d"), py::arg("n"), py::arg("a"), py::arg("b"),
       py::arg("loss") = "scaled");
    m.def("r1_r2_gap", &r1_r2_gap, py::arg("k"), py::arg("n") = 4, py::arg("b") = 2.0);
    m.def("classify_admissible", [](double m_, double d, int n) {
        return std::string(to_string(classify_admissible({m_, d}, n)));
    }, py::arg("m"), py::arg("d"), py::arg("n"));

    m.def("run_point_sim", [](double delta, const std::vector<int>& n, std::int64_t reps,
                              std::uint64_t seed, double a, double b,
                              const std::vector<std::string>& estimators, int threads) {
        const SimConfig c = make_config(delta, n, reps, seed, a, b, estimators, {0.10},
                                        {"equal_tails"}, threads);
        SimResult r;
        {
            py::gil_scoped_release release;
            r = run_point_sim(c);
        }
        return sim_dict(r);
    }, py::arg("delta"), py::arg("n"), py::arg("reps"), py::arg("seed"), py::arg("a"), py::arg("b"),
       py::arg("estimators") = std::vector<std::string>{"mle_urr", "bayes_quadratic", "bayes_squared"},
       py::arg("threads") = 1);

    m.def("run_interval_sim", [](const std::vector<int>& n, std::int64_t reps, std::uint64_t seed,
                                 double a, double b, const std::vector<double>& alpha,
                                 const std::vector<std::string>& kinds, int threads) {
        const SimConfig c = make_config(1.0, n, reps, seed, a, b, {"mle_urr"}, alpha, kinds, threads);
        SimResult r;
        {
            py::gil_scoped_release release;
            r = run_interval_sim(c);
        }
        return sim_dict(r);
    }, py::arg("n"), py::arg("reps"), py::arg("seed"), py::arg("a"), py::arg("b"),
       py::arg("alpha") = std::vector<double>{0.10},
       py::arg("kinds") = std::vector<std::string>{"equal_tails", "hpd_exact"},
       py::arg("threads") = 1);

    m.def("reproduce_table1", [](const std::vector<double>& data, double a, double b, int n_max) {
        const Table1 t = reproduce_table1(data, PriorParams{a, b}, n_max);
        py::list rows;
        for (const auto& r : t.rows) {
            py::dict d;
            d["n"] = r.n;
            d["mle_records"] = r.mle_records;
            d["mle_urr"] = r.mle_urr;
            d["bayes_quadratic"] = r.bayes_quadratic;
            d["bayes_squared"] = r.bayes_squared;
            rows.append(d);
        }
        return rows;
    }, py::arg("data"), py::arg("a") = 3.0, py::arg("b") = 5.0, py::arg("n_max") = 6);

    m.def("example1_data", [] {
        const auto s = example1_data();
        return std::vector<double>(s.begin(), s.end());
    });
    m.def("example2_data", [] {
        const auto s = example2_data();
        return std::vector<double>(s.begin(), s.end());
    });
}
