#include "rrb/records.hpp"

#include <cmath>
#include <string>

#include "rrb/rng.hpp"

namespace rrb {

namespace {

void check_sampler_args(double delta, int n, const char* fn) {
    if (!std::isfinite(delta) || delta <= 0.0) {
        throw DomainError(std::string(fn) + ": delta must be finite and > 0");
    }
    if (n < 2) {
        throw DomainError(std::string(fn) + ": n must be >= 2");
    }
}

}  // namespace

double RecordSummary::range() const {
    if (n() < 2) {
        throw InsufficientRecordsError("record range needs at least 2 records", n(), 2);
    }
    return values.back() - values.front();
}

RecordSummary RecordSummary::prefix(int count) const {
    if (count < 1 || count > n()) {
        throw InsufficientRecordsError("requested " + std::to_string(count) +
                                           " records but only " + std::to_string(n()) +
                                           " are available",
                                       n(), count);
    }
    RecordSummary out;
    out.values.assign(values.begin(), values.begin() + count);
    out.times.assign(times.begin(), times.begin() + count);
    out.synthetic_times = synthetic_times;
    return out;
}

RecordSummary extract_upper_records(std::span<const double> data) {
    if (data.empty()) {
        throw DomainError("extract_upper_records: empty input");
    }
    RecordSummary out;
    for (std::size_t j = 0; j < data.size(); ++j) {
        const double x = data[j];
        if (!std::isfinite(x)) {
            throw DomainError("extract_upper_records: non-finite value at index " +
                              std::to_string(j + 1));
        }
        if (out.values.empty() || x >= out.values.back()) {
            out.values.push_back(x);
            out.times.push_back(static_cast<std::int64_t>(j + 1));
        }
    }
    return out;
}

std::vector<double> record_range_sequence(const RecordSummary& summary) {
    if (summary.n() < 2) {
        throw InsufficientRecordsError("record_range_sequence needs at least 2 records",
                                       summary.n(), 2);
    }
    std::vector<double> out;
    out.reserve(summary.values.size() - 1);
    for (std::size_t k = 1; k < summary.values.size(); ++k) {
        out.push_back(summary.values[k] - summary.values.front());
    }
    return out;
}

RecordSummary sample_records_direct(double delta, int n, std::uint64_t seed) {
    check_sampler_args(delta, n, "sample_records_direct");
    Engine eng(seed);
    RecordSummary out;
    out.synthetic_times = true;
    out.values.reserve(n);
    out.times.reserve(n);
    // Memorylessness: the excess of each record over the previous one is
    // again Exp(delta).
    double x = exponential(eng, delta);
    for (int k = 0; k < n; ++k) {
        if (k > 0) x += exponential(eng, delta);
        out.values.push_back(x);
        out.times.push_back(k + 1);
    }
    return out;
}

RecordSummary sample_records_stream(double delta, int n, std::uint64_t seed,
                                    std::int64_t cap) {
    check_sampler_args(delta, n, "sample_records_stream");
    Engine eng(seed);
    RecordSummary out;
    for (std::int64_t j = 1; j <= cap; ++j) {
        const double x = exponential(eng, delta);
        if (out.values.empty() || x >= out.values.back()) {
            out.values.push_back(x);
            out.times.push_back(j);
            if (out.n() == n) return out;
        }
    }
    throw CapExhaustedError("sample_records_stream: " + std::to_string(cap) +
                                " draws yielded only " + std::to_string(out.n()) + " of " +
                                std::to_string(n) + " records",
                            std::move(out));
}

}  // namespace rrb
