#include "nnlaw/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace nnlaw {

SampleSummary summarize(std::span<const double> values) {
    SampleSummary out;
    const std::size_t n = values.size();
    if (n == 0) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(n);
    if (n < 2) return out;
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    return out;
}

TrendTest mann_kendall(std::span<const double> series) {
    TrendTest t;
    const std::size_t n = series.size();
    if (n < 2) return t;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            if (series[k] > series[i]) ++t.s;
            else if (series[k] < series[i]) --t.s;
        }
    }
    std::map<double, long long> ties;
    for (double v : series) ++ties[v];
    const double nn = static_cast<double>(n);
    double var = nn * (nn - 1.0) * (2.0 * nn + 5.0);
    for (const auto& [value, count] : ties) {
        const double c = static_cast<double>(count);
        var -= c * (c - 1.0) * (2.0 * c + 5.0);
    }
    t.variance = var / 18.0;
    if (t.variance <= 0.0) return t;
    const double sd = std::sqrt(t.variance);
    if (t.s > 0) t.z = (static_cast<double>(t.s) - 1.0) / sd;
    else if (t.s < 0) t.z = (static_cast<double>(t.s) + 1.0) / sd;
    t.p_value = std::erfc(std::abs(t.z) / std::sqrt(2.0));
    return t;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t replication, std::uint64_t attempt) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ n);
    h = splitmix64(h ^ replication);
    return splitmix64(h ^ attempt);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const std::size_t workers =
        std::min<std::size_t>(count, std::max<unsigned>(1, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = count;
    std::exception_ptr error;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (i < error_index) {
                            error_index = i;
                            error = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace nnlaw
