// nnlaw: nearest-neighbour power-sum experiments from the command line.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nnlaw/density.hpp"
#include "nnlaw/errors.hpp"
#include "nnlaw/experiment.hpp"
#include "nnlaw/hypothesis.hpp"
#include "nnlaw/limits.hpp"
#include "nnlaw/point_set.hpp"

namespace {

using nlohmann::json;

struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    bool force = false;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config = true) {
    auto* opt = cmd->add_option("--config", c.config_path, "experiment config (JSON)")->check(CLI::ExistingFile);
    if (needs_config) opt->required();
    cmd->add_option("--seed", c.seed, "override the config seed");
    cmd->add_option("--out", c.out, "write records to a .csv or .json file");
    cmd->add_flag("--force", c.force, "run even when no guarantee covers the configuration");
}

nnlaw::EstimatorConfig load_config(const Common& c) {
    std::ifstream in(c.config_path);
    if (!in) throw nnlaw::ConfigError("cannot open " + c.config_path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw nnlaw::ConfigError(std::string("invalid JSON in ") + c.config_path + ": " + e.what());
    }
    auto config = nnlaw::EstimatorConfig::from_json(j);
    if (c.seed) config.seed = *c.seed;
    if (c.force) config.force = true;
    config.validate();
    return config;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw nnlaw::ConfigError("cannot write " + path);
    return out;
}

// Records go to --out (CSV or JSON by extension); the JSON summary goes to stdout.
void emit(const Common& c, const nnlaw::ExperimentResult& result, json summary) {
    if (!c.out.empty()) {
        auto out = open_out(c.out);
        if (ends_with(c.out, ".csv")) {
            nnlaw::write_records_csv(out, result);
        } else if (ends_with(c.out, ".json")) {
            out << summary.dump(2) << '\n';
        } else {
            throw nnlaw::ConfigError("--out must end in .csv or .json");
        }
        summary.erase("records");
        if (summary.contains("estimates")) summary["estimates"].erase("records");
    }
    std::cout << summary.dump(2) << '\n';
}

int run_estimate(const std::string& points, std::size_t j, double alpha, const std::string& out_path) {
    const nnlaw::PointSet xs = nnlaw::read_csv(points);
    const json report = nnlaw::to_json(nnlaw::estimate_statistic(xs, j, alpha));
    if (!out_path.empty()) {
        if (!ends_with(out_path, ".json")) throw nnlaw::ConfigError("estimate writes JSON only");
        open_out(out_path) << report.dump(2) << '\n';
    }
    std::cout << report.dump(2) << '\n';
    return 0;
}

int run_limit(const nnlaw::EstimatorConfig& config, const Common& c) {
    const auto model = nnlaw::make_model(config.model);
    const int d = model->dim();
    const int j = static_cast<int>(config.j);
    const auto phi = nnlaw::named_phi(config.phi, config.alpha);
    const auto q = nnlaw::limit_functional(phi, *model, j, config.tolerance);
    json r = {{"model", model->name()}, {"d", d},         {"j", j},
              {"phi", config.phi},      {"alpha", config.alpha}, {"value", q.value},
              {"error", q.error}};
    if (config.phi == "power" && j + config.alpha / d > 0.0) {
        const double gamma = nnlaw::gamma_constant({d, j, config.alpha});
        const double i = model->i_rho(1.0 - config.alpha / d);
        r["gamma"] = gamma;
        if (std::isfinite(i)) {
            r["closed_form"] = gamma * i;
        } else {
            r["closed_form"] = "divergent";
        }
    }
    if (!c.out.empty()) open_out(c.out) << r.dump(2) << '\n';
    std::cout << r.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nearest-neighbour power sums: statistics, limits and Monte Carlo experiments"};
    app.require_subcommand(1);

    std::string points;
    std::size_t est_j = 1;
    double est_alpha = 1.0;
    std::string est_out;
    auto* estimate = app.add_subcommand("estimate", "S_{n,alpha} and the derived I/entropy estimates for a CSV point set");
    estimate->add_option("--points", points, "CSV file, one point per row")->required()->check(CLI::ExistingFile);
    estimate->add_option("--j", est_j, "neighbour rank")->check(CLI::PositiveNumber);
    estimate->add_option("--alpha", est_alpha, "power");
    estimate->add_option("--out", est_out, "also write the report to a .json file");

    Common conv, div, ent, probe, check, limit;
    auto* converge = app.add_subcommand("converge", "normalised estimates of I_{1-alpha/d} over n_grid");
    add_common(converge, conv);
    auto* diverge = app.add_subcommand("diverge", "n^{-1} S along the shell schedule of the counterexample");
    add_common(diverge, div);
    double rho = 0.5;
    auto* entropy = app.add_subcommand("entropy", "Tsallis and Renyi entropy estimates");
    add_common(entropy, ent);
    entropy->add_option("--rho", rho, "entropy order (positive, not 1)")->required();
    double p = 1.0;
    auto* probe_cmd = app.add_subcommand("probe", "empirical moments of n^{1/d} D_j of order alpha*p");
    add_common(probe_cmd, probe);
    probe_cmd->add_option("--p", p, "moment multiplier")->required();
    auto* check_cmd = app.add_subcommand("check", "print the condition report for the configured model and alpha");
    add_common(check_cmd, check);
    auto* limit_cmd = app.add_subcommand("limit", "evaluate the limit integral for the configured phi");
    add_common(limit_cmd, limit);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*estimate) return run_estimate(points, est_j, est_alpha, est_out);
        if (*converge) {
            const auto r = nnlaw::run_convergence(load_config(conv));
            emit(conv, r, nnlaw::to_json(r));
        } else if (*diverge) {
            const auto r = nnlaw::run_divergence(load_config(div));
            emit(div, r, nnlaw::to_json(r));
        } else if (*entropy) {
            const auto r = nnlaw::run_entropy(load_config(ent), rho);
            emit(ent, r.estimates, nnlaw::to_json(r));
        } else if (*probe_cmd) {
            const auto r = nnlaw::run_moment_probe(load_config(probe), p);
            emit(probe, r, nnlaw::to_json(r));
        } else if (*check_cmd) {
            const auto config = load_config(check);
            const auto model = nnlaw::make_model(config.model);
            const json report = nnlaw::consistency_implication(*model, config.alpha, config.q);
            if (!check.out.empty()) open_out(check.out) << report.dump(2) << '\n';
            std::cout << report.dump(2) << '\n';
        } else if (*limit_cmd) {
            return run_limit(load_config(limit), limit);
        }
    } catch (const nnlaw::ConditionRefused& e) {
        std::cerr << "refused: " << e.what() << " (use --force to run anyway)\n";
        return 3;
    } catch (const nnlaw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const nnlaw::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
