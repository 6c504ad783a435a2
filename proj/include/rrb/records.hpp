#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rrb/errors.hpp"

namespace rrb {

/// Upper record values of a sequence together with their record times.
struct RecordSummary {
    std::vector<double> values;        // nondecreasing
    std::vector<std::int64_t> times;   // 1-based, strictly increasing, times[0] == 1
    bool synthetic_times = false;      // true when sampled directly (times are 1..n)

    int n() const noexcept { return static_cast<int>(values.size()); }

    /// Upper record range: last record minus first. Requires n() >= 2.
    double range() const;

    /// The summary restricted to its first `count` records.
    RecordSummary prefix(int count) const;
};

/// Thrown by the stream sampler when `cap` draws did not yield `n` records.
class CapExhaustedError : public Error {
public:
    CapExhaustedError(const std::string& what, RecordSummary partial)
        : Error(what), partial_(std::move(partial)) {}

    const RecordSummary& partial() const noexcept { return partial_; }

private:
    RecordSummary partial_;
};

/// Upper records with tie semantics "X_j >= current record, j > T(k)".
RecordSummary extract_upper_records(std::span<const double> data);

/// values[k] - values[0] for k = 1..n-1.
std::vector<double> record_range_sequence(const RecordSummary& summary);

/// n exponential records built from iid Exp(delta) increments.
RecordSummary sample_records_direct(double delta, int n, std::uint64_t seed);

/// Records extracted from an iid Exp(delta) stream of at most `cap` draws.
RecordSummary sample_records_stream(double delta, int n, std::uint64_t seed,
                                    std::int64_t cap);

}  // namespace rrb
