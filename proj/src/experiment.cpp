#include "nnlaw/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "nnlaw/density.hpp"
#include "nnlaw/errors.hpp"
#include "nnlaw/nn_core.hpp"

namespace nnlaw {

namespace {

constexpr int kMaxResamples = 5;

const char* const kModelKeys[] = {"model", "d", "beta", "r", "bodies"};

// Mean over the sample of (n^{1/d} D_j)^power, i.e. n^{-1} S_{n,power}.
// Resamples (with a fresh derived seed) when the statistic degenerates.
double replicate_mean_power(const DensityModel& model, std::size_t n, std::size_t j, double power,
                            std::uint64_t seed, std::size_t replication) {
    for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
        Rng rng(derive_seed(seed, n, replication, static_cast<std::uint64_t>(attempt)));
        const PointSet xs = sample_n(model, n, rng);
        try {
            return power_sum(nn_distances(xs, j), xs.dim(), j, power) / static_cast<double>(n);
        } catch (const DegenerateStatistic&) {
        }
    }
    throw DegenerateStatistic("statistic degenerate after " + std::to_string(kMaxResamples) +
                              " resamples at n=" + std::to_string(n) + "; check the sampler");
}

ExperimentResult make_result(const std::string& experiment, const EstimatorConfig& config, const DensityModel& model) {
    ExperimentResult r;
    r.experiment = experiment;
    r.model = model.name();
    r.d = model.dim();
    r.j = config.j;
    r.alpha = config.alpha;
    r.q = config.q;
    return r;
}

// Fills records[i * R + rep] with values from `value_of(grid index, rep)`.
template <typename F>
void fill_records(ExperimentResult& result, const std::vector<std::size_t>& ns, std::size_t replications, F value_of) {
    result.records.assign(ns.size() * replications, ExperimentRecord{});
    parallel_for(result.records.size(), [&](std::size_t task) {
        const std::size_t gi = task / replications;
        const std::size_t rep = task % replications;
        ExperimentRecord& rec = result.records[task];
        rec.experiment = result.experiment;
        rec.model = result.model;
        rec.d = result.d;
        rec.j = result.j;
        rec.alpha = result.alpha;
        rec.q = result.q;
        rec.n = ns[gi];
        rec.replication = rep;
        rec.value = value_of(gi, rep);
        rec.target = result.target;
        if (result.target) rec.abs_error = std::abs(rec.value - *result.target);
    });
}

void summarize_grid(ExperimentResult& result, const std::vector<std::size_t>& ns, std::size_t replications) {
    result.summaries.clear();
    std::vector<double> values(replications);
    for (std::size_t gi = 0; gi < ns.size(); ++gi) {
        GridSummary s;
        s.n = ns[gi];
        double lq = 0.0;
        for (std::size_t rep = 0; rep < replications; ++rep) {
            const auto& rec = result.records[gi * replications + rep];
            values[rep] = rec.value;
            if (rec.abs_error) lq += std::pow(*rec.abs_error, result.q);
        }
        const SampleSummary sum = summarize(values);
        s.mean = sum.mean;
        s.std_error = sum.std_error;
        if (result.target) s.lq_error = lq / static_cast<double>(replications);
        result.summaries.push_back(s);
    }
}

void write_number(std::ostream& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
}

std::unique_ptr<DensityModel> model_of(const EstimatorConfig& config) {
    config.validate();
    return make_model(config.model);
}

}  // namespace

// ---------------------------------------------------------------------------

EstimatorConfig EstimatorConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    EstimatorConfig c;
    try {
        c.model = nlohmann::json::object();
        for (const char* key : kModelKeys) {
            if (j.contains(key)) c.model[key] = j.at(key);
        }
        if (j.contains("j")) c.j = j.at("j").get<std::size_t>();
        if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
        if (j.contains("q")) c.q = j.at("q").get<int>();
        if (j.contains("n_grid")) c.n_grid = j.at("n_grid").get<std::vector<std::size_t>>();
        if (j.contains("replications")) c.replications = j.at("replications").get<std::size_t>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("k_grid")) c.k_grid = j.at("k_grid").get<std::vector<int>>();
        if (j.contains("rho")) c.rho = j.at("rho").get<double>();
        if (j.contains("p")) c.p = j.at("p").get<double>();
        if (j.contains("phi")) c.phi = j.at("phi").get<std::string>();
        if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
        if (j.contains("force")) c.force = j.at("force").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return c;
}

nlohmann::json EstimatorConfig::to_json() const {
    nlohmann::json j = model;
    j["j"] = this->j;
    j["alpha"] = alpha;
    j["q"] = q;
    j["n_grid"] = n_grid;
    j["replications"] = replications;
    j["seed"] = seed;
    if (!k_grid.empty()) j["k_grid"] = k_grid;
    if (rho) j["rho"] = *rho;
    j["p"] = p;
    j["phi"] = phi;
    j["tolerance"] = tolerance;
    j["force"] = force;
    return j;
}

void EstimatorConfig::validate() const {
    if (!model.contains("model")) throw ConfigError("config needs a 'model' key");
    if (j < 1) throw ConfigError("j must be >= 1");
    if (q != 1 && q != 2) throw ConfigError("q must be 1 or 2");
    if (replications < 1) throw ConfigError("replications must be >= 1");
    if (!std::isfinite(alpha)) throw ConfigError("alpha must be finite");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 1) throw ConfigError("n_grid entries must be >= 1");
        if (i > 0 && n_grid[i] <= n_grid[i - 1]) throw ConfigError("n_grid must be strictly increasing");
    }
    for (std::size_t i = 1; i < k_grid.size(); ++i) {
        if (k_grid[i] <= k_grid[i - 1]) throw ConfigError("k_grid must be strictly increasing");
    }
}

int EstimatorConfig::dim() const {
    if (!model.contains("d")) throw ConfigError("config needs 'd'");
    return model.at("d").get<int>();
}

// ---------------------------------------------------------------------------

DivergenceSchedule divergence_schedule(const DensityModel& model, const std::vector<int>& k_grid) {
    DivergenceSchedule s;
    s.k_grid = k_grid;
    for (int k : k_grid) {
        const double mass = model.annulus_mass(k);
        if (!(mass > 0.0)) throw ConfigError("shell " + std::to_string(k) + " has zero mass");
        s.n.push_back(static_cast<std::size_t>(std::ceil(1.0 / mass)));
    }
    return s;
}

ExperimentResult run_convergence(const EstimatorConfig& config) {
    const auto model = model_of(config);
    if (config.n_grid.empty()) throw ConfigError("converge needs a non-empty n_grid");
    const int d = model->dim();
    const double rho = 1.0 - config.alpha / d;
    if (!(rho > 0.0)) throw ConfigError("alpha must be smaller than d");

    ExperimentResult result = make_result("converge", config, *model);
    result.conditions = consistency_implication(*model, config.alpha, config.q);
    if (!result.conditions.grants_convergence() && !config.force) {
        throw ConditionRefused("no convergence guarantee for L^" + std::to_string(config.q) + " with this model and alpha");
    }
    result.gamma = gamma_constant({d, static_cast<int>(config.j), config.alpha});
    const double target = model->i_rho(rho);
    if (std::isfinite(target)) result.target = target;

    fill_records(result, config.n_grid, config.replications, [&](std::size_t gi, std::size_t rep) {
        return replicate_mean_power(*model, config.n_grid[gi], config.j, config.alpha, config.seed, rep) / result.gamma;
    });
    summarize_grid(result, config.n_grid, config.replications);
    if (result.target) {
        std::vector<double> errors;
        for (const auto& s : result.summaries) errors.push_back(*s.lq_error);
        result.trend = mann_kendall(errors);
    }
    return result;
}

ExperimentResult run_divergence(const EstimatorConfig& config) {
    const auto model = model_of(config);
    if (model->kind() != ModelKind::AnnulusBallCounterexample) {
        throw ConfigError("diverge runs on the counterexample model only");
    }
    if (config.k_grid.empty()) throw ConfigError("diverge needs a non-empty k_grid");
    ExperimentResult result = make_result("diverge", config, *model);
    result.conditions = consistency_implication(*model, config.alpha, config.q);
    if (!result.conditions.thm5_divergence && !config.force) {
        throw ConditionRefused("divergence hypotheses fail: r_c >= alpha d/(d - alpha) or alpha outside (0, d)");
    }
    const DivergenceSchedule schedule = divergence_schedule(*model, config.k_grid);
    fill_records(result, schedule.n, config.replications, [&](std::size_t gi, std::size_t rep) {
        return replicate_mean_power(*model, schedule.n[gi], config.j, config.alpha, config.seed, rep);
    });
    summarize_grid(result, schedule.n, config.replications);
    const double d = model->dim();
    std::vector<double> means;
    for (std::size_t gi = 0; gi < schedule.k_grid.size(); ++gi) {
        const int k = schedule.k_grid[gi];
        auto& s = result.summaries[gi];
        s.k = k;
        s.lower_bound_proxy = std::pow(model->annulus_mass(k), 1.0 - config.alpha / d) * std::exp2(k * config.alpha);
        means.push_back(s.mean);
    }
    if (means.size() >= 2) {
        result.trend = mann_kendall(means);
        result.growth_ratio = means.back() / means.front();
    }
    return result;
}

EntropyReport run_entropy(const EstimatorConfig& config, double rho) {
    if (!(rho > 0.0) || rho == 1.0 || !std::isfinite(rho)) throw InvalidRho("rho must be positive and different from 1");
    EstimatorConfig cfg = config;
    cfg.alpha = cfg.dim() * (1.0 - rho);
    EntropyReport report;
    report.rho = rho;
    report.alpha = cfg.alpha;
    report.estimates = run_convergence(cfg);
    report.estimates.experiment = "entropy";
    for (auto& rec : report.estimates.records) rec.experiment = "entropy";
    if (report.estimates.target) report.exact = entropy_from_integral(rho, *report.estimates.target);

    const std::size_t reps = cfg.replications;
    for (std::size_t gi = 0; gi < cfg.n_grid.size(); ++gi) {
        std::vector<double> is, ts, rs;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            const double v = report.estimates.records[gi * reps + rep].value;
            is.push_back(v);
            if (v > 0.0) {
                const EntropyValue e = entropy_from_integral(rho, v);
                ts.push_back(e.tsallis);
                rs.push_back(e.renyi);
            }
        }
        report.rows.push_back({cfg.n_grid[gi], summarize(is), summarize(ts), summarize(rs)});
    }
    return report;
}

ExperimentResult run_moment_probe(const EstimatorConfig& config, double p) {
    const auto model = model_of(config);
    ExperimentResult result = make_result("probe", config, *model);
    result.conditions = consistency_implication(*model, config.alpha, config.q);
    std::vector<std::size_t> ns = config.n_grid;
    std::vector<int> ks;
    if (ns.empty()) {
        if (config.k_grid.empty()) throw ConfigError("probe needs n_grid or k_grid");
        const DivergenceSchedule schedule = divergence_schedule(*model, config.k_grid);
        ns = schedule.n;
        ks = schedule.k_grid;
        for (std::size_t i = 1; i < ns.size(); ++i) {
            if (ns[i] <= ns[i - 1]) throw ConfigError("n(k) schedule is not strictly increasing");
        }
    }
    const double power = config.alpha * p;
    fill_records(result, ns, config.replications, [&](std::size_t gi, std::size_t rep) {
        return replicate_mean_power(*model, ns[gi], config.j, power, config.seed, rep);
    });
    summarize_grid(result, ns, config.replications);
    std::vector<double> means;
    for (std::size_t gi = 0; gi < ns.size(); ++gi) {
        if (!ks.empty()) result.summaries[gi].k = ks[gi];
        means.push_back(result.summaries[gi].mean);
    }
    if (means.size() >= 2) {
        result.trend = mann_kendall(means);
        result.growth_ratio = means.back() / means.front();
    }
    return result;
}

StatisticReport estimate_statistic(const PointSet& xs, std::size_t j, double alpha) {
    StatisticReport r;
    r.n = xs.size();
    r.d = static_cast<int>(xs.dim());
    r.j = j;
    r.alpha = alpha;
    r.statistic = statistic_power(xs, j, alpha);
    r.per_point = r.n ? r.statistic / static_cast<double>(r.n) : 0.0;
    if (j + alpha / r.d > 0.0) {
        r.i_estimate = r.per_point / gamma_constant({r.d, static_cast<int>(j), alpha});
        const double rho = 1.0 - alpha / r.d;
        if (rho > 0.0 && rho != 1.0 && *r.i_estimate > 0.0) r.entropy = entropy_from_integral(rho, *r.i_estimate);
    }
    return r;
}

RealFunction named_phi(const std::string& name, double alpha) {
    if (name == "power") return [alpha](double t) { return std::pow(t, alpha); };
    if (name == "one") return [](double) { return 1.0; };
    if (name == "linear") return [](double t) { return t; };
    if (name == "min1") return [](double t) { return std::min(t, 1.0); };
    if (name == "exp") return [](double t) { return std::exp(-t); };
    throw ConfigError("unknown phi '" + name + "' (power, one, linear, min1, exp)");
}

// ---------------------------------------------------------------------------

void write_records_csv(std::ostream& out, const ExperimentResult& result) {
    out << "experiment,model,d,j,alpha,q,n,replication,value,target,abs_error\n";
    for (const auto& r : result.records) {
        out << r.experiment << ',' << r.model << ',' << r.d << ',' << r.j << ',';
        write_number(out, r.alpha);
        out << ',' << r.q << ',' << r.n << ',' << r.replication << ',';
        write_number(out, r.value);
        out << ',';
        if (r.target) write_number(out, *r.target);
        else out << "divergent";
        out << ',';
        if (r.abs_error) write_number(out, *r.abs_error);
        out << '\n';
    }
}

nlohmann::json to_json(const ExperimentResult& result) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : result.records) {
        records.push_back({{"experiment", r.experiment},
                           {"model", r.model},
                           {"d", r.d},
                           {"j", r.j},
                           {"alpha", r.alpha},
                           {"q", r.q},
                           {"n", r.n},
                           {"replication", r.replication},
                           {"value", r.value},
                           {"target", r.target ? nlohmann::json(*r.target) : nlohmann::json("divergent")},
                           {"abs_error", r.abs_error ? nlohmann::json(*r.abs_error) : nlohmann::json()}});
    }
    nlohmann::json summaries = nlohmann::json::array();
    for (const auto& s : result.summaries) {
        nlohmann::json js{{"n", s.n}, {"mean", s.mean}, {"std_error", s.std_error}};
        if (s.k) js["k"] = *s.k;
        if (s.lq_error) js["lq_error"] = *s.lq_error;
        if (s.lower_bound_proxy) js["lower_bound_proxy"] = *s.lower_bound_proxy;
        summaries.push_back(js);
    }
    nlohmann::json out{{"experiment", result.experiment},
                       {"model", result.model},
                       {"d", result.d},
                       {"j", result.j},
                       {"alpha", result.alpha},
                       {"q", result.q},
                       {"gamma", result.gamma},
                       {"target", result.target ? nlohmann::json(*result.target) : nlohmann::json("divergent")},
                       {"conditions", result.conditions},
                       {"summaries", summaries},
                       {"trend", {{"s", result.trend.s}, {"z", result.trend.z}, {"p_value", result.trend.p_value}}},
                       {"records", records}};
    if (result.growth_ratio) out["growth_ratio"] = *result.growth_ratio;
    return out;
}

nlohmann::json to_json(const EntropyReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"n", r.n},
                        {"i_rho", {{"mean", r.i_rho.mean}, {"std_error", r.i_rho.std_error}}},
                        {"tsallis", {{"mean", r.tsallis.mean}, {"std_error", r.tsallis.std_error}}},
                        {"renyi", {{"mean", r.renyi.mean}, {"std_error", r.renyi.std_error}}}});
    }
    nlohmann::json out{{"rho", report.rho}, {"alpha", report.alpha}, {"rows", rows}, {"estimates", to_json(report.estimates)}};
    if (report.exact) {
        out["exact"] = {{"i_rho", report.exact->i_rho},
                        {"tsallis", report.exact->tsallis},
                        {"renyi", report.exact->renyi}};
    }
    return out;
}

nlohmann::json to_json(const StatisticReport& r) {
    nlohmann::json out{{"n", r.n}, {"d", r.d}, {"j", r.j}, {"alpha", r.alpha},
                       {"statistic", r.statistic}, {"per_point", r.per_point}};
    if (r.i_estimate) out["i_estimate"] = *r.i_estimate;
    if (r.entropy) out["entropy"] = {{"rho", r.entropy->rho}, {"tsallis", r.entropy->tsallis}, {"renyi", r.entropy->renyi}};
    return out;
}

}  // namespace nnlaw
