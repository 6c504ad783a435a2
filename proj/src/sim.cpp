#include "rrb/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "rrb/errors.hpp"
#include "rrb/rng.hpp"

namespace rrb {

namespace {

constexpr std::array kExample1{
    0.06274109, 4.38197283, 5.64659541, 0.08382565, 5.27747401, 2.69666048, 0.98792501,
    2.36520919, 0.04765528, 0.63918881, 0.07107701, 2.19439004, 2.71178500, 1.45946486,
    5.31182137, 0.42911833, 2.74980209, 0.41108542, 2.21423065, 1.31309101, 0.29502675,
    1.50707359, 7.26620864, 2.47032883, 2.79500172, 1.14469466, 3.20462205, 4.10787212,
    2.97814895, 2.42587180, 1.85331396, 0.70619791, 2.60601466, 1.28472926, 0.29126746,
    0.07298126, 0.24644642, 1.90989237, 2.40637729, 2.17449704, 1.02288571, 1.54665282,
    2.95083160, 0.95526777, 0.04135414, 1.01268457, 1.07257669, 0.75808989, 3.33255820,
    0.71060492, 1.18752218, 9.41371352, 9.51953091,
};

constexpr std::array kExample2{
    0.067773, 0.056655, 0.032254, 2.081551,  0.125478, 2.002154, 1.9874521, 1.254875,
    0.236587, 1.876541, 0.231456, 2.274237,  0.336521, 1.985436, 2.001245,  3.373468,
    2.125987, 1.236541, 0.236541, 1.789654,  3.021543, 2.365987, 1.002154,  0.357951,
    2.147963, 3.123623, 2.543659, 1.598723,  0.001357, 1.986124, 1.963254,  3.847746,
    2.356547, 1.235463, 1.4723568, 1.983217, 3.002541, 4.243143,
};

// Runs fn(block) for every block index; blocks are striped over threads and
// each writes only its own output slot.
template <typename Fn>
void for_each_block(std::int64_t blocks, int threads, Fn&& fn) {
    const int workers = static_cast<int>(std::clamp<std::int64_t>(threads, 1, blocks));
    if (workers <= 1) {
        for (std::int64_t b = 0; b < blocks; ++b) fn(b);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::int64_t b = w; b < blocks; b += workers) fn(b);
        });
    }
}

std::int64_t block_count(std::int64_t reps) { return (reps + kSimBlock - 1) / kSimBlock; }

int max_n(const SimConfig& config) {
    return *std::max_element(config.n_records.begin(), config.n_records.end());
}

}  // namespace

void Accumulator::add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
}

void Accumulator::merge(const Accumulator& other) {
    if (other.count == 0) return;
    if (count == 0) {
        *this = other;
        return;
    }
    const double total = static_cast<double>(count + other.count);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(count) *
                         static_cast<double>(other.count) / total;
    count += other.count;
}

double Accumulator::variance() const {
    return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
}

double Accumulator::standard_error() const {
    return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
}

void SimConfig::validate() const {
    if (reps < 1) throw ConfigError("simulation: reps must be >= 1");
    if (n_records.empty()) throw ConfigError("simulation: no record counts given");
    for (int n : n_records) {
        if (n < 2) throw ConfigError("simulation: every record count must be >= 2");
    }
    for (double alpha : alpha_list) {
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw ConfigError("simulation: alpha values must lie in (0, 1)");
        }
    }
    if (!std::isfinite(delta_true) || delta_true <= 0.0) {
        throw ConfigError("simulation: delta must be finite and > 0");
    }
    if (threads < 1) throw ConfigError("simulation: threads must be >= 1");
    try {
        prior.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("simulation: ") + e.what());
    }
}

SimResult run_point_sim(const SimConfig& config) {
    config.validate();
    if (std::find(config.estimators.begin(), config.estimators.end(),
                  EstimatorId::mle_sample) != config.estimators.end()) {
        throw ConfigError("simulation: mle_sample needs the raw sample, which the "
                          "direct record sampler does not produce");
    }
    const std::size_t n_est = config.estimators.size();
    const std::size_t n_ns = config.n_records.size();
    const std::size_t cells = n_est * n_ns;
    const int n_top = max_n(config);
    const std::int64_t blocks = block_count(config.reps);

    // Per block: for every (estimator, n) cell, the estimates and squared errors.
    std::vector<std::vector<Accumulator>> values(blocks, std::vector<Accumulator>(cells));
    std::vector<std::vector<Accumulator>> sq_err(blocks, std::vector<Accumulator>(cells));

    for_each_block(blocks, config.threads, [&](std::int64_t b) {
        const std::int64_t first = b * kSimBlock;
        const std::int64_t last = std::min(config.reps, first + kSimBlock);
        auto& val = values[b];
        auto& err = sq_err[b];
        for (std::int64_t r = first; r < last; ++r) {
            const RecordSummary recs = sample_records_direct(
                config.delta_true, n_top, derive_seed(config.seed, static_cast<std::uint64_t>(r)));
            for (std::size_t j = 0; j < n_ns; ++j) {
                const int n = config.n_records[j];
                for (std::size_t e = 0; e < n_est; ++e) {
                    const double x =
                        estimate(config.estimators[e], recs, n, config.prior).value;
                    const double diff = x - config.delta_true;
                    val[e * n_ns + j].add(x);
                    err[e * n_ns + j].add(diff * diff);
                }
            }
        }
    });

    SimResult result;
    for (std::size_t e = 0; e < n_est; ++e) {
        for (std::size_t j = 0; j < n_ns; ++j) {
            const std::size_t c = e * n_ns + j;
            Accumulator v;
            Accumulator s;
            for (std::int64_t b = 0; b < blocks; ++b) {
                v.merge(values[b][c]);
                s.merge(sq_err[b][c]);
            }
            PointRow row;
            row.estimator = config.estimators[e];
            row.n = config.n_records[j];
            row.reps = v.count;
            row.average = v.mean;
            row.average_se = v.standard_error();
            row.empirical_mse = s.mean;
            row.mse_se = s.standard_error();
            try {
                row.analytic = analytic_moments(row.estimator, config.delta_true, row.n,
                                                config.prior);
            } catch (const Error&) {
                row.analytic.reset();
            }
            result.point.push_back(row);
        }
    }
    return result;
}

SimResult run_interval_sim(const SimConfig& config) {
    config.validate();
    if (!(config.prior.b > 0.0)) {
        throw ConfigError("interval simulation draws delta from the prior and needs b > 0");
    }
    const std::size_t n_kinds = config.interval_kinds.size();
    const std::size_t n_alpha = config.alpha_list.size();
    const std::size_t n_ns = config.n_records.size();
    const std::size_t cells = n_kinds * n_alpha * n_ns;
    const int n_top = max_n(config);
    const std::int64_t blocks = block_count(config.reps);

    struct Cell {
        Accumulator covered;
        Accumulator length;
        std::int64_t failures = 0;
    };
    std::vector<std::vector<Cell>> partial(blocks, std::vector<Cell>(cells));

    for_each_block(blocks, config.threads, [&](std::int64_t b) {
        const std::int64_t first = b * kSimBlock;
        const std::int64_t last = std::min(config.reps, first + kSimBlock);
        auto& out = partial[b];
        for (std::int64_t r = first; r < last; ++r) {
            const std::uint64_t rep_seed = derive_seed(config.seed, static_cast<std::uint64_t>(r));
            Engine eng(derive_seed(rep_seed, 0));
            // Prior precision 1/delta ~ Gamma(shape a, rate b).
            std::gamma_distribution<double> precision(config.prior.a, 1.0 / config.prior.b);
            const double delta = 1.0 / precision(eng);
            const RecordSummary recs = sample_records_direct(delta, n_top, derive_seed(rep_seed, 1));
            for (std::size_t j = 0; j < n_ns; ++j) {
                const PosteriorParams post =
                    posterior_from(config.prior, recs.prefix(config.n_records[j]));
                for (std::size_t k = 0; k < n_kinds; ++k) {
                    for (std::size_t i = 0; i < n_alpha; ++i) {
                        Cell& cell = out[(k * n_alpha + i) * n_ns + j];
                        try {
                            const CredibleInterval ci = credible_interval(
                                config.interval_kinds[k], post, config.alpha_list[i]);
                            cell.covered.add(ci.lower <= delta && delta <= ci.upper ? 1.0 : 0.0);
                            cell.length.add(ci.length());
                        } catch (const BracketError&) {
                            ++cell.failures;
                        } catch (const ConvergenceError&) {
                            ++cell.failures;
                        }
                    }
                }
            }
        }
    });

    SimResult result;
    for (std::size_t k = 0; k < n_kinds; ++k) {
        for (std::size_t i = 0; i < n_alpha; ++i) {
            for (std::size_t j = 0; j < n_ns; ++j) {
                const std::size_t c = (k * n_alpha + i) * n_ns + j;
                Cell total;
                for (std::int64_t b = 0; b < blocks; ++b) {
                    total.covered.merge(partial[b][c].covered);
                    total.length.merge(partial[b][c].length);
                    total.failures += partial[b][c].failures;
                }
                IntervalRow row;
                row.kind = config.interval_kinds[k];
                row.alpha = config.alpha_list[i];
                row.n = config.n_records[j];
                row.reps = config.reps;
                row.failures = total.failures;
                row.empirical_coverage = total.covered.mean;
                row.coverage_se = total.covered.standard_error();
                row.mean_length = total.length.mean;
                result.interval.push_back(row);
            }
        }
    }
    return result;
}

Table1 reproduce_table1(std::span<const double> data, const PriorParams& prior, int n_max) {
    if (n_max < 2) throw DomainError("reproduce_table1: n_max must be >= 2");
    Table1 table;
    table.records = extract_upper_records(data);
    if (table.records.n() < n_max) {
        throw InsufficientRecordsError("reproduce_table1: data yields " +
                                           std::to_string(table.records.n()) +
                                           " upper records, need " + std::to_string(n_max),
                                       table.records.n(), n_max);
    }
    for (int n = 2; n <= n_max; ++n) {
        Table1Row row;
        row.n = n;
        row.mle_records = estimate(EstimatorId::mle_records, table.records, n, prior).value;
        row.mle_urr = estimate(EstimatorId::mle_urr, table.records, n, prior).value;
        row.bayes_quadratic = estimate(EstimatorId::bayes_quadratic, table.records, n, prior).value;
        row.bayes_squared = estimate(EstimatorId::bayes_squared, table.records, n, prior).value;
        table.rows.push_back(row);
    }
    return table;
}

std::span<const double> example1_data() { return kExample1; }
std::span<const double> example2_data() { return kExample2; }

}  // namespace rrb
