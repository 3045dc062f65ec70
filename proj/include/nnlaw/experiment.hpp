#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nnlaw/hypothesis.hpp"
#include "nnlaw/limits.hpp"
#include "nnlaw/point_set.hpp"
#include "nnlaw/stats.hpp"

namespace nnlaw {

/// One experiment configuration. The JSON form is flat: the model keys
/// ("model", "d", "beta" | "r" | "bodies") sit next to the experiment keys
/// ("j", "alpha", "q", "n_grid", "replications", "seed", "k_grid", "rho", "p",
/// "phi", "tolerance", "force").
struct EstimatorConfig {
    nlohmann::json model;
    std::size_t j = 1;
    double alpha = 1.0;
    int q = 1;
    std::vector<std::size_t> n_grid;
    std::size_t replications = 1;
    std::uint64_t seed = 1;
    std::vector<int> k_grid;
    std::optional<double> rho;
    double p = 1.0;
    std::string phi = "power";
    double tolerance = 1e-6;
    bool force = false;

    static EstimatorConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    /// Throws ConfigError: strictly increasing n_grid, R >= 1, q in {1,2}, j >= 1.
    void validate() const;
    int dim() const;
};

/// One row of experiment output.
struct ExperimentRecord {
    std::string experiment;
    std::string model;
    int d = 0;
    std::size_t j = 1;
    double alpha = 0.0;
    int q = 1;
    std::size_t n = 0;
    std::size_t replication = 0;
    double value = 0.0;
    std::optional<double> target;     // nullopt: divergent / not applicable
    std::optional<double> abs_error;
};

/// Aggregate over the replications at one grid point.
struct GridSummary {
    std::size_t n = 0;
    std::optional<int> k;
    double mean = 0.0;
    double std_error = 0.0;
    std::optional<double> lq_error;           // mean of |value - target|^q
    std::optional<double> lower_bound_proxy;  // F(A_k)^{1-alpha/d} 2^{k alpha}
};

struct ExperimentResult {
    std::string experiment;
    std::string model;
    int d = 0;
    std::size_t j = 1;
    double alpha = 0.0;
    int q = 1;
    std::optional<double> target;
    double gamma = 1.0;
    ConditionReport conditions;
    std::vector<ExperimentRecord> records;  // ordered by (grid index, replication)
    std::vector<GridSummary> summaries;
    /// Mann-Kendall on the L^q errors (converge) or on the means (diverge, probe).
    TrendTest trend;
    /// Last over first summary mean (diverge, probe).
    std::optional<double> growth_ratio;
};

/// n(k) = ceil(1 / F(A_k)) for each shell index.
struct DivergenceSchedule {
    std::vector<int> k_grid;
    std::vector<std::size_t> n;
};

DivergenceSchedule divergence_schedule(const DensityModel& model, const std::vector<int>& k_grid);

/// Normalised estimates gamma^{-1} n^{-1} S_{n,alpha} of I_{1-alpha/d} over
/// n_grid x replications. Throws ConditionRefused unless some verdict grants
/// L^q convergence or config.force is set.
ExperimentResult run_convergence(const EstimatorConfig& config);

/// Raw n^{-1} S_{n,alpha} along n = n(k) for the counterexample density.
ExperimentResult run_divergence(const EstimatorConfig& config);

struct EntropyRow {
    std::size_t n = 0;
    SampleSummary i_rho;
    SampleSummary tsallis;
    SampleSummary renyi;
};

struct EntropyReport {
    double rho = 0.0;
    double alpha = 0.0;
    std::optional<EntropyValue> exact;
    std::vector<EntropyRow> rows;
    ExperimentResult estimates;
};

/// Entropy estimates with alpha = d (1 - rho). Throws InvalidRho for rho == 1.
EntropyReport run_entropy(const EstimatorConfig& config, double rho);

/// Empirical E[(n^{1/d} D_j(X_1, X_n))^{alpha p}] across the grid (n_grid, or
/// n(k) over k_grid for the counterexample).
ExperimentResult run_moment_probe(const EstimatorConfig& config, double p);

struct StatisticReport {
    std::size_t n = 0;
    int d = 0;
    std::size_t j = 1;
    double alpha = 0.0;
    double statistic = 0.0;       // S_{n,alpha}
    double per_point = 0.0;       // n^{-1} S
    std::optional<double> i_estimate;  // gamma^{-1} n^{-1} S when defined
    std::optional<EntropyValue> entropy;
};

StatisticReport estimate_statistic(const PointSet& xs, std::size_t j, double alpha);

/// Named test functions: "power" (t^alpha), "one", "linear", "min1" (min(t,1)),
/// "exp" (e^{-t}).
RealFunction named_phi(const std::string& name, double alpha);

/// Normative CSV columns: experiment, model, d, j, alpha, q, n, replication,
/// value, target, abs_error. A divergent target is written as "divergent"
/// with an empty abs_error.
void write_records_csv(std::ostream& out, const ExperimentResult& result);
nlohmann::json to_json(const ExperimentResult& result);
nlohmann::json to_json(const EntropyReport& report);
nlohmann::json to_json(const StatisticReport& report);

}  // namespace nnlaw
