#include <atomic>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "nnlaw/errors.hpp"
#include "nnlaw/experiment.hpp"

using namespace nnlaw;
using nlohmann::json;

namespace {

EstimatorConfig config_of(const std::string& text) { return EstimatorConfig::from_json(json::parse(text)); }

std::string csv_of(const ExperimentResult& r) {
    std::ostringstream out;
    write_records_csv(out, r);
    return out.str();
}

// Mann-Kendall S by direct pair counting.
long long mk_s(const std::vector<double>& x) {
    long long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t k = i + 1; k < x.size(); ++k) s += (x[k] > x[i]) - (x[k] < x[i]);
    return s;
}

}  // namespace

TEST_CASE("Mann-Kendall test") {
    const std::vector<double> up{1, 2, 3, 4, 5, 6};
    const auto t = mann_kendall(up);
    CHECK(t.s == 15);
    CHECK(t.variance == doctest::Approx(6.0 * 5.0 * 17.0 / 18.0));
    CHECK(t.z == doctest::Approx(14.0 / std::sqrt(6.0 * 5.0 * 17.0 / 18.0)));
    CHECK(t.p_value == doctest::Approx(std::erfc(t.z / std::numbers::sqrt2)));
    CHECK(t.p_value < 0.01);

    const std::vector<double> wiggle{1, 3, 2, 4, 6, 5};
    CHECK(mann_kendall(wiggle).s == mk_s(wiggle));
    CHECK(mann_kendall(wiggle).p_value > 0.01);

    // ties reduce the variance: n(n-1)(2n+5)/18 - sum t(t-1)(2t+5)/18
    const std::vector<double> tied{1, 1, 2, 2, 3};
    CHECK(mann_kendall(tied).variance == doctest::Approx((5.0 * 4 * 15 - 2 * (2.0 * 1 * 9)) / 18.0));
    const std::vector<double> flat{2, 2, 2};
    CHECK(mann_kendall(flat).s == 0);
    CHECK(mann_kendall(flat).p_value == 1.0);
    const std::vector<double> down{5, 4, 3, 2, 1};
    CHECK(mann_kendall(down).z < 0.0);
}

TEST_CASE("summaries") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const auto s = summarize(v);
    CHECK(s.mean == 2.5);
    CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    const std::vector<double> one{7.0};
    CHECK(summarize(one).std_error == 0.0);
}

TEST_CASE("derived seeds are distinct and reproducible") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t n : {100u, 200u})
        for (std::uint64_t rep = 0; rep < 50; ++rep)
            for (std::uint64_t a = 0; a < 3; ++a) seen.insert(derive_seed(42, n, rep, a));
    CHECK(seen.size() == 300);
    CHECK(derive_seed(42, 100, 3) == derive_seed(42, 100, 3, 0));
    CHECK(derive_seed(42, 100, 3) != derive_seed(43, 100, 3));
}

TEST_CASE("parallel_for visits every index and propagates exceptions") {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                        if (i == 7) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
}

TEST_CASE("config parsing and validation") {
    const auto c = config_of(R"({"model":"power_law","d":2,"beta":6,"j":2,"alpha":1,"q":1,
        "n_grid":[100,200],"replications":3,"seed":9})");
    CHECK(c.model.at("beta") == 6);
    CHECK(c.j == 2);
    CHECK(c.dim() == 2);
    CHECK(c.n_grid == std::vector<std::size_t>{100, 200});
    CHECK(EstimatorConfig::from_json(c.to_json()).to_json() == c.to_json());

    CHECK_THROWS_AS(config_of(R"({"model":"gaussian","d":2,"n_grid":[200,100]})").validate(), ConfigError);
    CHECK_THROWS_AS(config_of(R"({"model":"gaussian","d":2,"n_grid":[100],"replications":0})").validate(), ConfigError);
    CHECK_THROWS_AS(config_of(R"({"model":"gaussian","d":2,"n_grid":[100],"q":3})").validate(), ConfigError);
    CHECK_THROWS_AS(config_of(R"({"d":2,"n_grid":[100]})").validate(), ConfigError);
    CHECK_THROWS_AS(config_of(R"({"model":"gaussian","d":2,"n_grid":"many"})"), ConfigError);
    CHECK_THROWS_AS(config_of(R"([1,2])"), ConfigError);
}

TEST_CASE("convergence run on the unit square") {
    const auto c = config_of(R"({"model":"uniform_union","d":2,"alpha":1,"q":2,"n_grid":[500,4000],"replications":6,"seed":3})");
    const auto r = run_convergence(c);
    CHECK(r.records.size() == 12);
    CHECK(r.summaries.size() == 2);
    REQUIRE(r.target.has_value());
    CHECK(*r.target == doctest::Approx(1.0));
    CHECK(r.gamma == doctest::Approx(0.5));
    CHECK(std::abs(r.summaries[1].mean - 1.0) < 0.05);
    for (const auto& rec : r.records) {
        REQUIRE(rec.abs_error.has_value());
        CHECK(*rec.abs_error >= 0.0);
    }
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        CHECK(r.records[i].n == c.n_grid[i / 6]);
        CHECK(r.records[i].replication == i % 6);
    }
}

TEST_CASE("identical config and seed give bitwise identical CSV") {
    const auto c = config_of(R"({"model":"gaussian","d":2,"alpha":-0.5,"q":2,"n_grid":[300,600],"replications":4,"seed":77})");
    const std::string a = csv_of(run_convergence(c));
    const std::string b = csv_of(run_convergence(c));
    CHECK(a == b);
    auto other = c;
    other.seed = 78;
    CHECK(csv_of(run_convergence(other)) != a);
    CHECK(a.rfind("experiment,model,d,j,alpha,q,n,replication,value,target,abs_error\n", 0) == 0);
}

TEST_CASE("refusals") {
    // counterexample with alpha = 1.5 has no convergence guarantee
    const auto c = config_of(R"({"model":"counterexample","d":2,"r":1,"alpha":1.5,"n_grid":[100],"replications":1})");
    CHECK_THROWS_AS(run_convergence(c), ConditionRefused);
    auto forced = c;
    forced.force = true;
    CHECK_NOTHROW(run_convergence(forced));

    const auto low = config_of(R"({"model":"counterexample","d":2,"r":1,"alpha":0.2,"k_grid":[2,3],"replications":1})");
    CHECK_THROWS_AS(run_divergence(low), ConditionRefused);
    const auto wrong = config_of(R"({"model":"gaussian","d":2,"alpha":1.5,"k_grid":[2,3],"replications":1})");
    CHECK_THROWS_AS(run_divergence(wrong), ConfigError);
}

TEST_CASE("divergence schedule and single-shell run") {
    const AnnulusBallCounterexample m(2, 1.0);
    const auto s = divergence_schedule(m, {2, 3, 4, 5, 6, 7});
    CHECK(s.n == std::vector<std::size_t>{2, 4, 8, 16, 32, 64});

    const auto c = config_of(R"({"model":"counterexample","d":2,"r":1,"alpha":1.5,"k_grid":[2],"replications":5,"seed":1})");
    const auto r = run_divergence(c);
    CHECK(r.summaries.size() == 1);
    CHECK(r.records.size() == 5);
    CHECK(r.trend.s == 0);
    CHECK_FALSE(r.growth_ratio.has_value());
    CHECK_FALSE(r.target.has_value());
    CHECK(r.summaries[0].k == 2);
    REQUIRE(r.summaries[0].lower_bound_proxy.has_value());
    CHECK(*r.summaries[0].lower_bound_proxy == doctest::Approx(std::pow(0.5, 0.25) * 8.0));
    const std::string csv = csv_of(r);
    CHECK(csv.find(",divergent,\n") != std::string::npos);
}

TEST_CASE("entropy runs") {
    const auto c = config_of(R"({"model":"uniform_union","d":2,"n_grid":[2000],"replications":8,"seed":5})");
    CHECK_THROWS_AS(run_entropy(c, 1.0), InvalidRho);
    CHECK_THROWS_AS(run_entropy(c, -0.5), InvalidRho);
    const auto e = run_entropy(c, 0.5);
    CHECK(e.alpha == 1.0);
    REQUIRE(e.exact.has_value());
    CHECK(e.exact->tsallis == doctest::Approx(0.0));
    REQUIRE(e.rows.size() == 1);
    CHECK(std::abs(e.rows[0].tsallis.mean) < 3.0 * e.rows[0].tsallis.std_error + 0.01);
    CHECK(std::abs(e.rows[0].renyi.mean) < 3.0 * e.rows[0].renyi.std_error + 0.01);
}

TEST_CASE("moment probe") {
    const auto zero = config_of(R"({"model":"gaussian","d":2,"alpha":0,"n_grid":[50,100],"replications":3})");
    const auto z = run_moment_probe(zero, 3.0);
    for (const auto& rec : z.records) CHECK(rec.value == 1.0);

    const auto cube = config_of(R"({"model":"uniform_union","d":2,"alpha":1,"n_grid":[250,1000,4000],"replications":4,"seed":2})");
    const auto b = run_moment_probe(cube, 3.0);
    REQUIRE(b.growth_ratio.has_value());
    CHECK(*b.growth_ratio < 1.5);
    CHECK(*b.growth_ratio > 0.67);

    const auto div = config_of(R"({"model":"counterexample","d":2,"r":1,"alpha":1.5,"k_grid":[2,3,4],"replications":2})");
    const auto dv = run_moment_probe(div, 1.0);
    CHECK(dv.summaries.size() == 3);
    CHECK(dv.summaries[2].k == 4);
}

TEST_CASE("statistic on a given point set") {
    const PointSet xs = PointSet::from_rows({{0.0}, {1.0}, {3.0}});
    const auto r = estimate_statistic(xs, 1, 1.0);
    CHECK(r.statistic == doctest::Approx(12.0));
    CHECK(r.per_point == doctest::Approx(4.0));
    REQUIRE(r.i_estimate.has_value());
    // gamma(1,1,1) = 2^{-1} Gamma(2) = 1/2
    CHECK(*r.i_estimate == doctest::Approx(8.0));
    const json j = to_json(r);
    CHECK(j.at("statistic") == doctest::Approx(12.0));
}

TEST_CASE("named test functions") {
    CHECK(named_phi("power", 2.0)(3.0) == 9.0);
    CHECK(named_phi("one", 2.0)(3.0) == 1.0);
    CHECK(named_phi("min1", 2.0)(3.0) == 1.0);
    CHECK(named_phi("linear", 2.0)(3.0) == 3.0);
    CHECK(named_phi("exp", 0.0)(0.0) == 1.0);
    CHECK_THROWS_AS(named_phi("sin", 1.0), ConfigError);
}

TEST_CASE("result JSON mirrors the CSV fields") {
    const auto c = config_of(R"({"model":"uniform_union","d":2,"alpha":1,"n_grid":[100],"replications":2})");
    const json j = to_json(run_convergence(c));
    REQUIRE(j.at("records").size() == 2);
    for (const char* key : {"experiment", "model", "d", "j", "alpha", "q", "n", "replication", "value", "target", "abs_error"})
        CHECK(j.at("records")[0].contains(key));
    CHECK(j.contains("conditions"));
    CHECK(j.contains("summaries"));
}
