#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace nnlaw {

struct SampleSummary {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(count)
};

SampleSummary summarize(std::span<const double> values);

/// Mann-Kendall monotone trend test with tie correction and the usual
/// continuity-corrected normal approximation.
struct TrendTest {
    long long s = 0;
    double variance = 0.0;
    double z = 0.0;
    double p_value = 1.0;  // two-sided
};

TrendTest mann_kendall(std::span<const double> series);

/// Stream seed for (base seed, n, replication, attempt), via SplitMix64.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t replication, std::uint64_t attempt = 0);

/// Runs body(i) for i in [0, count) on up to hardware_concurrency threads.
/// Exceptions from the first failing index are rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace nnlaw
