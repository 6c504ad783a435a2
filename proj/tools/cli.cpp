#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>

#include "CLI11.hpp"
#include "io.hpp"
#include "rrb/estimators.hpp"
#include "rrb/intervals.hpp"
#include "rrb/risk.hpp"
#include "rrb/sim.hpp"

namespace rrb::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------- reports

struct Cell {
    std::variant<std::monostate, double, std::int64_t, std::string> v;
    int digits = 0;  // 0: shortest round-trip

    Cell() = default;
    Cell(double x, int d) : v(x), digits(d) {}
    Cell(int x) : v(static_cast<std::int64_t>(x)) {}
    Cell(std::int64_t x) : v(x) {}
    Cell(std::string s) : v(std::move(s)) {}
    Cell(std::string_view s) : v(std::string(s)) {}
    Cell(const char* s) : v(std::string(s)) {}

    std::string text() const {
        if (const auto* d = std::get_if<double>(&v)) {
            return digits > 0 ? format_sig(*d, digits) : format_exact(*d);
        }
        if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
        if (const auto* s = std::get_if<std::string>(&v)) return *s;
        return "";
    }

    json to_json() const {
        if (const auto* d = std::get_if<double>(&v)) {
            return std::isfinite(*d) ? json(*d) : json(nullptr);
        }
        if (const auto* i = std::get_if<std::int64_t>(&v)) return json(*i);
        if (const auto* s = std::get_if<std::string>(&v)) return json(*s);
        return json(nullptr);
    }
};

struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    json extra = json::object();
};

struct OutputOptions {
    std::string format = "table";
    bool format_given = false;
    std::string path;  // empty: stdout
};

std::string render(const Report& report, const RunManifest& manifest, const std::string& format,
                   bool with_manifest) {
    std::ostringstream os;
    if (format == "json") {
        json j;
        j["manifest"] = manifest.to_json();
        j["columns"] = report.columns;
        json rows = json::array();
        for (const auto& r : report.rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < r.size(); ++i) obj[report.columns[i]] = r[i].to_json();
            rows.push_back(obj);
        }
        j["rows"] = rows;
        for (const auto& [k, v] : report.extra.items()) j[k] = v;
        os << j.dump(2) << '\n';
        return os.str();
    }
    Table t;
    t.header = report.columns;
    for (const auto& r : report.rows) {
        std::vector<std::string> cells;
        for (const auto& c : r) cells.push_back(c.text());
        t.rows.push_back(std::move(cells));
    }
    if (with_manifest) os << manifest.csv_comment() << '\n';
    if (format == "csv") {
        t.write_csv(os);
    } else {
        t.write_aligned(os);
    }
    return os.str();
}

std::string infer_format(const OutputOptions& opt) {
    if (opt.format_given || opt.path.empty()) return opt.format;
    return opt.path.ends_with(".json") ? "json" : "csv";
}

void emit(const Report& report, RunManifest manifest, const OutputOptions& opt,
          std::ostream& out) {
    const std::string format = infer_format(opt);
    manifest.parameters["format"] = format;
    const bool with_manifest = format != "table" || !opt.path.empty();
    const std::string text = render(report, manifest, format, with_manifest);
    if (opt.path.empty()) {
        out << text;
    } else {
        write_file(opt.path, text);
    }
}

void write_plot_csv(const std::string& path, const Report& report, const RunManifest& manifest) {
    RunManifest m = manifest;
    m.parameters["format"] = "plot_csv";
    write_file(path, render(report, m, "csv", true));
}

// ---------------------------------------------------------------- inputs

struct Dataset {
    std::vector<double> values;
    std::string digest;
    std::string label;
};

Dataset load_input(const std::string& path) {
    Dataset d;
    const std::string text = read_file(path);
    d.values = parse_values(text);
    d.digest = "sha256:" + sha256_hex(text);
    d.label = path;
    if (d.values.empty()) throw UsageError("'" + path + "' contains no values");
    return d;
}

Dataset builtin_example1() {
    Dataset d;
    const auto v = example1_data();
    d.values.assign(v.begin(), v.end());
    d.digest = "sha256:" + sha256_hex(canonical_text(v));
    d.label = "builtin:example1";
    return d;
}

RunManifest make_manifest(std::string command, const std::string& digest) {
    RunManifest m;
    m.command = std::move(command);
    m.input_digest = digest;
    m.tool_version = tool_version();
    return m;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        out += items[i];
    }
    return out;
}

std::string join_ints(const std::vector<int>& v) {
    std::vector<std::string> s;
    for (int x : v) s.push_back(std::to_string(x));
    return join(s);
}

std::string join_doubles(const std::vector<double>& v) {
    std::vector<std::string> s;
    for (double x : v) s.push_back(format_exact(x));
    return join(s);
}

std::vector<EstimatorId> parse_estimators(const std::string& text) {
    if (text == "all") {
        const auto all = all_estimators();
        return {all.begin(), all.end()};
    }
    std::vector<EstimatorId> out;
    for (const auto& name : split_list(text)) out.push_back(parse_estimator(name));
    return out;
}

std::vector<std::string> estimator_names(const std::vector<EstimatorId>& ids) {
    std::vector<std::string> out;
    for (auto id : ids) out.emplace_back(to_string(id));
    return out;
}

std::vector<IntervalKind> parse_kinds(const std::string& text) {
    if (text == "all") {
        return {IntervalKind::equal_tails, IntervalKind::hpd_exact, IntervalKind::hpd_hpm};
    }
    std::vector<IntervalKind> out;
    for (const auto& name : split_list(text)) out.push_back(parse_interval_kind(name));
    return out;
}

std::vector<std::string> kind_names(const std::vector<IntervalKind>& kinds) {
    std::vector<std::string> out;
    for (auto k : kinds) out.emplace_back(to_string(k));
    return out;
}

bool needs_prior(const std::vector<EstimatorId>& ids) {
    return std::any_of(ids.begin(), ids.end(), [](EstimatorId id) {
        return id == EstimatorId::bayes_quadratic || id == EstimatorId::bayes_squared ||
               id == EstimatorId::bayes_absolute;
    });
}

PriorParams make_prior(std::optional<double> a, std::optional<double> b, bool required) {
    if (!a || !b) {
        if (required) throw UsageError("--a and --b are required");
        return PriorParams{};
    }
    PriorParams p{*a, *b};
    p.validate();
    return p;
}

std::vector<int> record_counts(const std::optional<std::string>& n_text, int available) {
    if (n_text) {
        auto ns = parse_int_range(*n_text, "--n");
        for (int n : ns) {
            if (n < 1) throw UsageError("--n: record counts must be >= 1");
        }
        return ns;
    }
    if (available < 2) {
        throw InsufficientRecordsError("the data yields " + std::to_string(available) +
                                           " upper record(s); at least 2 are needed",
                                       available, 2);
    }
    std::vector<int> ns;
    for (int n = 2; n <= available; ++n) ns.push_back(n);
    return ns;
}

void add_output_options(CLI::App* cmd, OutputOptions& opt, bool allow_path = true) {
    cmd->add_option("--format", opt.format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->each([&opt](const std::string&) { opt.format_given = true; });
    if (allow_path) {
        cmd->add_option("-o,--out", opt.path, "write to a file instead of stdout");
    }
}

// ---------------------------------------------------------------- extract

struct ExtractArgs {
    std::string input;
    int digits = 12;
    OutputOptions out;
};

int cmd_extract(const ExtractArgs& args, std::ostream& out, std::ostream& err) {
    const Dataset data = load_input(args.input);
    const RecordSummary recs = extract_upper_records(data.values);
    Report r;
    r.columns = {"k", "time", "value", "range"};
    std::vector<double> ranges;
    for (int k = 0; k < recs.n(); ++k) {
        const double range = recs.values[k] - recs.values.front();
        if (k > 0) ranges.push_back(range);
        r.rows.push_back({Cell(k + 1), Cell(recs.times[k]), Cell(recs.values[k], args.digits),
                          k > 0 ? Cell(range, args.digits) : Cell()});
    }
    if (recs.n() < 2) {
        err << "warning: only one upper record; the record range is undefined\n";
    }
    r.extra["n"] = recs.n();
    r.extra["observations"] = data.values.size();
    r.extra["records"] = recs.values;
    r.extra["times"] = recs.times;
    r.extra["ranges"] = ranges;
    RunManifest m = make_manifest("extract", data.digest);
    m.parameters["input"] = data.label;
    m.parameters["digits"] = std::to_string(args.digits);
    emit(r, m, args.out, out);
    return kExitOk;
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
    std::string input;
    std::optional<double> a, b, delta_ref;
    std::string estimators = "mle_records,mle_urr,bayes_quadratic,bayes_squared";
    std::optional<std::string> n;
    int digits = 6;
    std::string plot_csv;
    OutputOptions out;
};

int cmd_estimate(const EstimateArgs& args, std::ostream& out, std::ostream&) {
    const Dataset data = load_input(args.input);
    const auto ids = parse_estimators(args.estimators);
    const PriorParams prior = make_prior(args.a, args.b, needs_prior(ids));
    if (args.delta_ref && !(*args.delta_ref > 0.0)) throw UsageError("--delta-ref must be > 0");
    const RecordSummary recs = extract_upper_records(data.values);
    const auto ns = record_counts(args.n, recs.n());

    Report r;
    r.columns = {"n", "estimator", "value", "analytic_mean", "analytic_variance", "analytic_mse"};
    Report plot;
    plot.columns = {"n"};
    for (auto id : ids) {
        plot.columns.emplace_back(to_string(id));
        if (args.delta_ref) plot.columns.push_back(std::string(to_string(id)) + "_mse");
    }
    for (int n : ns) {
        std::vector<Cell> prow{Cell(n)};
        for (auto id : ids) {
            const EstimateReport e = estimate(id, recs, n, prior, data.values, args.delta_ref);
            std::vector<Cell> row{Cell(n), Cell(to_string(id)), Cell(e.value, args.digits)};
            if (e.analytic) {
                row.emplace_back(e.analytic->mean, args.digits);
                row.emplace_back(e.analytic->variance, args.digits);
                row.emplace_back(e.analytic->mse, args.digits);
            } else {
                row.resize(6);
            }
            r.rows.push_back(std::move(row));
            prow.emplace_back(e.value, 0);
            if (args.delta_ref) prow.push_back(e.analytic ? Cell(e.analytic->mse, 0) : Cell());
        }
        plot.rows.push_back(std::move(prow));
    }
    RunManifest m = make_manifest("estimate", data.digest);
    m.parameters["input"] = data.label;
    if (args.a) m.parameters["a"] = format_exact(prior.a);
    if (args.b) m.parameters["b"] = format_exact(prior.b);
    if (args.delta_ref) m.parameters["delta_ref"] = format_exact(*args.delta_ref);
    m.parameters["estimators"] = join(estimator_names(ids));
    m.parameters["n"] = join_ints(ns);
    m.parameters["digits"] = std::to_string(args.digits);
    if (!args.plot_csv.empty()) write_plot_csv(args.plot_csv, plot, m);
    emit(r, m, args.out, out);
    return kExitOk;
}

// ---------------------------------------------------------------- interval

struct IntervalArgs {
    std::string input;
    std::optional<double> a, b;
    std::string alpha = "0.10";
    std::string kind = "all";
    std::optional<std::string> n;
    int digits = 8;
    std::string plot_csv;
    OutputOptions out;
};

int cmd_interval(const IntervalArgs& args, std::ostream& out, std::ostream& err) {
    const Dataset data = load_input(args.input);
    const PriorParams prior = make_prior(args.a, args.b, true);
    const auto alphas = parse_double_list(args.alpha, "--alpha");
    for (double a : alphas) {
        if (!(a > 0.0 && a < 1.0)) throw UsageError("--alpha values must lie in (0, 1)");
    }
    const auto kinds = parse_kinds(args.kind);
    const RecordSummary recs = extract_upper_records(data.values);
    const auto ns = record_counts(args.n, recs.n());

    Report r;
    r.columns = {"n", "kind", "alpha", "lower", "upper", "length", "coverage_check", "status", "note"};
    Report plot;
    plot.columns = {"n"};
    for (auto k : kinds) {
        for (double a : alphas) {
            plot.columns.push_back(std::string(to_string(k)) + "_" + format_exact(1.0 - a));
        }
    }
    bool solver_failed = false;
    for (int n : ns) {
        const PosteriorParams post = posterior_from(prior, recs.prefix(n));
        std::vector<Cell> prow{Cell(n)};
        for (auto kind : kinds) {
            for (double alpha : alphas) {
                std::vector<Cell> row{Cell(n), Cell(to_string(kind)), Cell(alpha, 0)};
                try {
                    const CredibleInterval ci = credible_interval(kind, post, alpha);
                    const double check = posterior_coverage(ci.lower, ci.upper, post);
                    row.emplace_back(ci.lower, args.digits);
                    row.emplace_back(ci.upper, args.digits);
                    row.emplace_back(ci.length(), args.digits);
                    row.emplace_back(check, args.digits);
                    row.emplace_back("ok");
                    if (kind == IntervalKind::hpd_hpm) {
                        row.emplace_back("g=" + format_sig(ci.length(), args.digits) +
                                         " length_ratio_vs_exact=" +
                                         format_sig(ci.diagnostics.at("exact_length_ratio"), 6));
                    } else {
                        row.emplace_back("");
                    }
                    prow.emplace_back(ci.length(), 0);
                } catch (const BracketError& e) {
                    row.resize(7);
                    row.emplace_back("unreachable");
                    row.emplace_back("max coverage " + format_sig(e.best_value(), 6) + " at g=" +
                                     format_sig(e.best_argument(), 6));
                    prow.emplace_back();
                } catch (const ConvergenceError& e) {
                    row.resize(7);
                    row.emplace_back("failed");
                    row.emplace_back(e.what());
                    prow.emplace_back();
                    if (kind != IntervalKind::hpd_hpm) {
                        solver_failed = true;
                        err << "error: n=" << n << " " << to_string(kind) << " alpha=" << alpha
                            << ": " << e.what() << " (iterations " << e.iterations() << ")\n";
                    }
                }
                r.rows.push_back(std::move(row));
            }
        }
        plot.rows.push_back(std::move(prow));
    }
    RunManifest m = make_manifest("interval", data.digest);
    m.parameters["input"] = data.label;
    m.parameters["a"] = format_exact(prior.a);
    m.parameters["b"] = format_exact(prior.b);
    m.parameters["alpha"] = join_doubles(alphas);
    m.parameters["kind"] = join(kind_names(kinds));
    m.parameters["n"] = join_ints(ns);
    m.parameters["digits"] = std::to_string(args.digits);
    if (!args.plot_csv.empty()) write_plot_csv(args.plot_csv, plot, m);
    emit(r, m, args.out, out);
    return solver_failed ? kExitNumeric : kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string config_path;
    std::optional<double> delta, a, b;
    std::optional<std::string> n, estimators, alpha, kinds, mode;
    std::optional<std::int64_t> reps;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::string out_prefix;
    std::string plot_csv;
    std::string format = "csv";
};

template <typename T>
T json_get(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
}

std::string json_list_text(const json& j, const char* key) {
    const json& v = j.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (!v.is_array()) throw UsageError(std::string("config key '") + key + "' must be a list");
    std::vector<std::string> items;
    for (const auto& x : v) {
        if (x.is_string()) {
            items.push_back(x.get<std::string>());
        } else if (x.is_number_integer()) {
            items.push_back(std::to_string(x.get<std::int64_t>()));
        } else if (x.is_number()) {
            items.push_back(format_exact(x.get<double>()));
        } else {
            throw UsageError(std::string("config key '") + key + "' has a non-scalar item");
        }
    }
    return join(items);
}

std::uint64_t parse_seed(const std::string& text, const char* what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw UsageError(std::string(what) + ": cannot parse seed '" + text + "'");
    }
    return v;
}

Report point_report(const SimResult& res) {
    Report r;
    r.columns = {"estimator", "n", "reps", "average", "average_se", "empirical_mse", "mse_se",
                 "analytic_mean", "analytic_mse"};
    for (const auto& p : res.point) {
        std::vector<Cell> row{Cell(to_string(p.estimator)), Cell(p.n), Cell(p.reps),
                              Cell(p.average, 0), Cell(p.average_se, 0),
                              Cell(p.empirical_mse, 0), Cell(p.mse_se, 0)};
        if (p.analytic) {
            row.emplace_back(p.analytic->mean, 0);
            row.emplace_back(p.analytic->mse, 0);
        } else {
            row.resize(9);
        }
        r.rows.push_back(std::move(row));
    }
    return r;
}

Report interval_report(const SimResult& res) {
    Report r;
    r.columns = {"kind", "alpha", "n", "reps", "failures", "coverage", "coverage_se", "mean_length"};
    for (const auto& p : res.interval) {
        r.rows.push_back({Cell(to_string(p.kind)), Cell(p.alpha, 0), Cell(p.n), Cell(p.reps),
                          Cell(p.failures), Cell(p.empirical_coverage, 0), Cell(p.coverage_se, 0),
                          Cell(p.mean_length, 0)});
    }
    return r;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream&) {
    json cfg = json::object();
    std::string digest_source;
    if (!args.config_path.empty()) {
        const std::string text = read_file(args.config_path);
        try {
            cfg = json::parse(text);
        } catch (const json::parse_error& e) {
            throw UsageError("config '" + args.config_path + "': " + e.what());
        }
        if (!cfg.is_object()) throw UsageError("config must be a JSON object");
        static const char* known[] = {"delta", "n", "reps", "seed", "a", "b", "estimators",
                                      "alpha", "kinds", "mode", "threads"};
        for (const auto& [key, value] : cfg.items()) {
            if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
                throw UsageError("config: unknown key '" + key + "'");
            }
        }
    }
    auto pick = [&](const auto& flag, const char* key, auto fallback) {
        using T = decltype(fallback);
        if (flag) return static_cast<T>(*flag);
        if (cfg.contains(key)) return json_get<T>(cfg, key);
        return fallback;
    };
    auto pick_text = [&](const std::optional<std::string>& flag, const char* key,
                         std::string fallback) {
        if (flag) return *flag;
        if (cfg.contains(key)) return json_list_text(cfg, key);
        return fallback;
    };

    SimConfig c;
    c.delta_true = pick(args.delta, "delta", 1.0);
    c.reps = pick(args.reps, "reps", std::int64_t{100});
    c.n_records = parse_int_range(pick_text(args.n, "n", "4"), "--n");
    if (!(args.a || cfg.contains("a")) || !(args.b || cfg.contains("b"))) {
        throw UsageError("--a and --b are required");
    }
    c.prior = {pick(args.a, "a", 1.0), pick(args.b, "b", 1.0)};
    c.estimators = parse_estimators(
        pick_text(args.estimators, "estimators", "mle_urr,bayes_quadratic,bayes_squared"));
    c.alpha_list = parse_double_list(pick_text(args.alpha, "alpha", "0.1"), "--alpha");
    c.interval_kinds = parse_kinds(pick_text(args.kinds, "kinds", "equal_tails,hpd_exact"));
    const std::string mode = pick_text(args.mode, "mode", "point");
    if (mode != "point" && mode != "interval" && mode != "both") {
        throw UsageError("--mode must be point, interval or both");
    }

    std::optional<std::uint64_t> seed = args.seed;
    std::string seed_source = "flag";
    if (!seed && cfg.contains("seed")) {
        seed = json_get<std::uint64_t>(cfg, "seed");
        seed_source = "config";
    }
    if (!seed) {
        if (const char* env = std::getenv("RRB_SEED"); env && *env) {
            seed = parse_seed(env, "RRB_SEED");
            seed_source = "RRB_SEED";
        }
    }
    if (!seed) {
        seed = 1;
        seed_source = "default";
    }
    c.seed = *seed;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    c.threads = pick(args.threads, "threads", static_cast<int>(hw));
    c.validate();

    SimResult res;
    if (mode == "point" || mode == "both") res.point = run_point_sim(c).point;
    if (mode == "interval" || mode == "both") res.interval = run_interval_sim(c).interval;

    // threads and output paths do not affect results and stay out of the manifest
    RunManifest m = make_manifest("simulate", "");
    m.seed = c.seed;
    m.parameters["mode"] = mode;
    m.parameters["delta"] = format_exact(c.delta_true);
    m.parameters["reps"] = std::to_string(c.reps);
    m.parameters["n"] = join_ints(c.n_records);
    m.parameters["a"] = format_exact(c.prior.a);
    m.parameters["b"] = format_exact(c.prior.b);
    m.parameters["seed_source"] = seed_source;
    if (mode != "interval") m.parameters["estimators"] = join(estimator_names(c.estimators));
    if (mode != "point") {
        m.parameters["alpha"] = join_doubles(c.alpha_list);
        m.parameters["kinds"] = join(kind_names(c.interval_kinds));
    }
    m.parameters["sampler"] = "direct";
    {
        json canon = m.parameters;
        canon["seed"] = c.seed;
        m.input_digest = "sha256:" + sha256_hex(canon.dump());
    }

    const Report point = point_report(res);
    const Report interval = interval_report(res);
    json full;
    full["manifest"] = m.to_json();
    auto rows_json = [](const Report& r) {
        json rows = json::array();
        for (const auto& row : r.rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < row.size(); ++i) obj[r.columns[i]] = row[i].to_json();
            rows.push_back(obj);
        }
        return rows;
    };
    if (mode != "interval") full["point"] = rows_json(point);
    if (mode != "point") full["interval"] = rows_json(interval);
    const std::string json_text = full.dump(2) + "\n";
    auto csv_text = [&](const Report& r) {
        RunManifest mm = m;
        mm.parameters["format"] = "csv";
        return render(r, mm, "csv", true);
    };

    if (!args.plot_csv.empty()) {
        // wide form: x = n, one empirical-MSE series per estimator
        Report plot;
        plot.columns = {"n"};
        for (auto id : c.estimators) plot.columns.push_back(std::string(to_string(id)) + "_mse");
        if (mode != "interval") {
            for (std::size_t j = 0; j < c.n_records.size(); ++j) {
                std::vector<Cell> row{Cell(c.n_records[j])};
                for (std::size_t e = 0; e < c.estimators.size(); ++e) {
                    row.emplace_back(res.point[e * c.n_records.size() + j].empirical_mse, 0);
                }
                plot.rows.push_back(std::move(row));
            }
        }
        write_plot_csv(args.plot_csv, plot, m);
    }

    if (!args.out_prefix.empty()) {
        std::string prefix = args.out_prefix;
        if (prefix.ends_with(".csv")) prefix.resize(prefix.size() - 4);
        if (mode != "interval") write_file(prefix + ".csv", csv_text(point));
        if (mode != "point") write_file(prefix + "_intervals.csv", csv_text(interval));
        write_file(prefix + ".json", json_text);
        return kExitOk;
    }
    if (args.format == "json") {
        out << json_text;
    } else {
        if (mode != "interval") out << csv_text(point);
        if (mode == "both") out << '\n';
        if (mode != "point") out << csv_text(interval);
    }
    return kExitOk;
}

// ---------------------------------------------------------------- risk

struct RiskArgs {
    std::optional<double> m, d, delta, a, b;
    int n = 4;
    std::string loss = "scaled";
    std::string k_sweep;
    int per_decade = 1;
    int digits = 10;
    OutputOptions out;
};

int cmd_risk(const RiskArgs& args, std::ostream& out, std::ostream&) {
    if (args.n < 2) throw UsageError("--n must be >= 2");
    RunManifest man = make_manifest("risk", "none");
    man.parameters["n"] = std::to_string(args.n);
    man.parameters["digits"] = std::to_string(args.digits);
    Report r;
    if (!args.k_sweep.empty()) {
        if (args.m || args.d || args.delta || args.a) {
            throw UsageError("--k-sweep takes only --n, --b and --points-per-decade");
        }
        const std::size_t colon = args.k_sweep.find(':');
        if (colon == std::string::npos) throw UsageError("--k-sweep expects LO:HI");
        const double lo = parse_double(std::string_view(args.k_sweep).substr(0, colon), "--k-sweep");
        const double hi = parse_double(std::string_view(args.k_sweep).substr(colon + 1), "--k-sweep");
        if (!(lo > 0.0) || hi < lo) throw UsageError("--k-sweep needs 0 < LO <= HI");
        if (args.per_decade < 1) throw UsageError("--points-per-decade must be >= 1");
        const double b = args.b.value_or(2.0);
        if (!(b > 0.0)) throw UsageError("--b must be > 0");
        const double decades = std::log10(hi / lo);
        const int steps = static_cast<int>(std::ceil(decades * args.per_decade - 1e-9));
        r.columns = {"k", "r1", "r2", "gap", "abs_gap", "k_gap"};
        for (int i = 0; i <= steps; ++i) {
            const double k = i == steps ? hi : lo * std::pow(10.0, static_cast<double>(i) / args.per_decade);
            const double r1 = bayes_risk_r1(k, args.n, b);
            const double r2 = bayes_risk_r2(k, args.n, b);
            const double gap = r1_r2_gap(k, args.n, b);
            r.rows.push_back({Cell(k, args.digits), Cell(r1, args.digits), Cell(r2, args.digits),
                              Cell(gap, args.digits), Cell(std::fabs(gap), args.digits),
                              Cell(k * gap, args.digits)});
        }
        man.parameters["k_sweep"] = args.k_sweep;
        man.parameters["points_per_decade"] = std::to_string(args.per_decade);
        man.parameters["b"] = format_exact(b);
        emit(r, man, args.out, out);
        return kExitOk;
    }

    if (!args.m || !args.d) throw UsageError("--m and --d are required (or use --k-sweep)");
    if (!args.delta && !(args.a && args.b)) {
        throw UsageError("give --delta for the risk or --a and --b for the Bayes risk");
    }
    const LinearEstimator est{*args.m, *args.d};
    const LossWeight weight = parse_loss_weight(args.loss);
    r.columns = {"m", "d", "n", "loss", "delta", "risk", "a", "b", "bayes_risk", "classification"};
    std::vector<Cell> row{Cell(est.m, 0), Cell(est.d, 0), Cell(args.n), Cell(args.loss)};
    if (args.delta) {
        row.emplace_back(*args.delta, 0);
        row.emplace_back(risk_linear(est, *args.delta, args.n, weight), args.digits);
        man.parameters["delta"] = format_exact(*args.delta);
    } else {
        row.resize(6);
    }
    if (args.a && args.b) {
        const PriorParams prior{*args.a, *args.b};
        row.emplace_back(prior.a, 0);
        row.emplace_back(prior.b, 0);
        row.emplace_back(bayes_risk_linear(est, args.n, prior, weight), args.digits);
        man.parameters["a"] = format_exact(prior.a);
        man.parameters["b"] = format_exact(prior.b);
    } else {
        row.resize(9);
    }
    row.emplace_back(to_string(classify_admissible(est, args.n)));
    r.rows.push_back(std::move(row));
    man.parameters["m"] = format_exact(est.m);
    man.parameters["d"] = format_exact(est.d);
    man.parameters["loss"] = args.loss;
    emit(r, man, args.out, out);
    return kExitOk;
}

// ---------------------------------------------------------------- reproduce

struct ReproduceArgs {
    int table = 0;
    std::string input;
    double a = 3.0;
    double b = 5.0;
    int n_max = 6;
    int digits = 6;
    OutputOptions out;
};

int cmd_reproduce(const ReproduceArgs& args, std::ostream& out, std::ostream&) {
    if (args.table != 1) throw UsageError("only --table 1 is reproducible");
    const Dataset data = args.input.empty() ? builtin_example1() : load_input(args.input);
    const PriorParams prior{args.a, args.b};
    prior.validate();
    const Table1 t = reproduce_table1(data.values, prior, args.n_max);
    Report r;
    r.columns = {"n", "mle_records", "mle_urr", "bayes_quadratic", "bayes_squared"};
    for (const auto& row : t.rows) {
        r.rows.push_back({Cell(row.n), Cell(row.mle_records, args.digits),
                          Cell(row.mle_urr, args.digits), Cell(row.bayes_quadratic, args.digits),
                          Cell(row.bayes_squared, args.digits)});
    }
    r.extra["records"] = t.records.values;
    RunManifest m = make_manifest("reproduce", data.digest);
    m.parameters["table"] = "1";
    m.parameters["input"] = data.label;
    m.parameters["a"] = format_exact(prior.a);
    m.parameters["b"] = format_exact(prior.b);
    m.parameters["n_max"] = std::to_string(args.n_max);
    m.parameters["digits"] = std::to_string(args.digits);
    emit(r, m, args.out, out);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bayesian and likelihood inference for the exponential scale from upper record ranges",
                 "rrb"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    ExtractArgs ex;
    auto* c_ex = app.add_subcommand("extract", "upper records, record times and ranges of a data file");
    c_ex->add_option("input", ex.input, "data file ('-' for stdin)")->required();
    c_ex->add_option("--digits", ex.digits, "significant digits")->check(CLI::Range(1, 17));
    add_output_options(c_ex, ex.out);

    EstimateArgs es;
    auto* c_es = app.add_subcommand("estimate", "point estimates from the first n records");
    c_es->add_option("input", es.input, "data file ('-' for stdin)")->required();
    c_es->add_option("--a", es.a, "prior shape");
    c_es->add_option("--b", es.b, "prior scale");
    c_es->add_option("--estimators", es.estimators, "comma list or 'all'");
    c_es->add_option("--n", es.n, "record counts, e.g. 2..6 or 2,4");
    c_es->add_option("--delta-ref", es.delta_ref, "reference scale for analytic moments");
    c_es->add_option("--digits", es.digits, "significant digits")->check(CLI::Range(1, 17));
    c_es->add_option("--plot-csv", es.plot_csv, "also write a wide plot-ready CSV");
    add_output_options(c_es, es.out);

    IntervalArgs in;
    auto* c_in = app.add_subcommand("interval", "credible intervals from the first n records");
    c_in->add_option("input", in.input, "data file ('-' for stdin)")->required();
    c_in->add_option("--a", in.a, "prior shape");
    c_in->add_option("--b", in.b, "prior scale");
    c_in->add_option("--alpha", in.alpha, "comma list of alpha values");
    c_in->add_option("--kind", in.kind, "equal_tails, hpd_exact, hpd_hpm (comma list) or all");
    c_in->add_option("--n", in.n, "record counts, e.g. 2..6");
    c_in->add_option("--digits", in.digits, "significant digits")->check(CLI::Range(1, 17));
    c_in->add_option("--plot-csv", in.plot_csv, "also write a wide plot-ready CSV of lengths");
    add_output_options(c_in, in.out);

    SimulateArgs si;
    auto* c_si = app.add_subcommand("simulate", "seeded Monte Carlo study");
    c_si->add_option("--config", si.config_path, "JSON config; flags override its keys");
    c_si->add_option("--delta", si.delta, "true scale");
    c_si->add_option("--n", si.n, "record counts, e.g. 4..7");
    c_si->add_option("--reps", si.reps, "repetitions");
    c_si->add_option("--a", si.a, "prior shape");
    c_si->add_option("--b", si.b, "prior scale");
    c_si->add_option("--estimators", si.estimators, "comma list or 'all'");
    c_si->add_option("--alpha", si.alpha, "alpha values for interval mode");
    c_si->add_option("--kinds", si.kinds, "interval kinds for interval mode");
    c_si->add_option("--mode", si.mode, "point, interval or both");
    c_si->add_option("--seed", si.seed, "base seed (falls back to RRB_SEED)");
    c_si->add_option("--threads", si.threads, "worker threads (results do not depend on it)");
    c_si->add_option("-o,--out", si.out_prefix, "write PREFIX.csv, PREFIX_intervals.csv, PREFIX.json");
    c_si->add_option("--plot-csv", si.plot_csv, "also write a wide plot-ready CSV of MSEs");
    c_si->add_option("--format", si.format, "stdout format")->check(CLI::IsMember({"csv", "json"}));

    RiskArgs ri;
    auto* c_ri = app.add_subcommand("risk", "risk and Bayes risk of m R + d");
    c_ri->add_option("--m", ri.m, "slope");
    c_ri->add_option("--d", ri.d, "offset");
    c_ri->add_option("--n", ri.n, "number of records");
    c_ri->add_option("--delta", ri.delta, "scale for the frequentist risk");
    c_ri->add_option("--a", ri.a, "prior shape for the Bayes risk");
    c_ri->add_option("--b", ri.b, "prior scale");
    c_ri->add_option("--loss", ri.loss, "scaled or unscaled")
        ->check(CLI::IsMember({"scaled", "unscaled"}));
    c_ri->add_option("--k-sweep", ri.k_sweep, "LO:HI, log-spaced r1/r2 comparison");
    c_ri->add_option("--points-per-decade", ri.per_decade, "grid density for --k-sweep");
    c_ri->add_option("--digits", ri.digits, "significant digits")->check(CLI::Range(1, 17));
    add_output_options(c_ri, ri.out);

    ReproduceArgs re;
    auto* c_re = app.add_subcommand("reproduce", "deterministic table columns");
    c_re->add_option("--table", re.table, "table number")->required();
    c_re->add_option("--input", re.input, "data file (default: built-in 53-value sample)");
    c_re->add_option("--a", re.a, "prior shape");
    c_re->add_option("--b", re.b, "prior scale");
    c_re->add_option("--n-max", re.n_max, "largest record count");
    c_re->add_option("--digits", re.digits, "significant digits")->check(CLI::Range(1, 17));
    add_output_options(c_re, re.out);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c_ex->parsed()) return cmd_extract(ex, out, err);
        if (c_es->parsed()) return cmd_estimate(es, out, err);
        if (c_in->parsed()) return cmd_interval(in, out, err);
        if (c_si->parsed()) return cmd_simulate(si, out, err);
        if (c_ri->parsed()) return cmd_risk(ri, out, err);
        if (c_re->parsed()) return cmd_reproduce(re, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InsufficientRecordsError& e) {
        err << "error: " << e.what() << " (available " << e.available() << ", required "
            << e.required() << ")\n";
        return kExitNumeric;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << " (iterations " << e.iterations() << ")\n";
        return kExitNumeric;
    } catch (const BracketError& e) {
        err << "error: " << e.what() << " (best argument " << format_sig(e.best_argument(), 8)
            << ", best value " << format_sig(e.best_value(), 8) << ")\n";
        return kExitNumeric;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitUsage;
}

}  // namespace rrb::cli
