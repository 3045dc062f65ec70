#include <algorithm>
#include <memory>
#include <random>

#include "doctest.h"
#include "nnlaw/hypothesis.hpp"

using namespace nnlaw;

namespace {

std::vector<std::unique_ptr<DensityModel>> catalog() {
    std::vector<std::unique_ptr<DensityModel>> out;
    for (int d : {1, 2, 3}) {
        out.push_back(std::make_unique<UniformConvexUnion>(UniformConvexUnion::unit_cube(d)));
        out.push_back(std::make_unique<GaussianStandard>(d));
        for (double extra : {0.5, 1.0, 2.0, 4.0}) out.push_back(std::make_unique<PowerLawTail>(d, d + extra));
        for (double r : {0.25, 1.0, 3.0}) out.push_back(std::make_unique<AnnulusBallCounterexample>(d, r));
    }
    out.push_back(std::make_unique<UniformConvexUnion>(std::vector<Body>{Box{{0.0, 0.0}, {1.0, 1.0}}, Ball{{3.0, 3.0}, 1.0}}));
    return out;
}

bool has_note_containing(const ConditionReport& r, const std::string& needle) {
    return std::any_of(r.notes.begin(), r.notes.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("bounded convex support conditions") {
    const auto square = UniformConvexUnion::unit_cube(2);
    CHECK(check_theorem1(square, 1.0));
    CHECK_FALSE(check_theorem1(GaussianStandard(2), 1.0));
    CHECK_FALSE(check_theorem1(square, -0.5));
}

TEST_CASE("bounded density, negative alpha") {
    const GaussianStandard g(2);
    CHECK(check_thm3(g, -0.5, 2));
    CHECK(check_thm3(g, -1.5, 1));
    CHECK_FALSE(check_thm3(g, -1.5, 2));
    CHECK_FALSE(check_thm3(g, -1.0, 2));
    CHECK_FALSE(check_thm3(g, 0.5, 1));
}

TEST_CASE("moment condition") {
    CHECK(check_thm2(PowerLawTail(2, 6.0), 1.0, 1));
    CHECK_FALSE(check_thm2(AnnulusBallCounterexample(2, 1.0), 1.0, 1));
    for (int q : {1, 2}) {
        CHECK_FALSE(check_thm2(GaussianStandard(2), 2.0 / q, q));
        CHECK_FALSE(check_thm2(PowerLawTail(3, 9.0), 3.0 / q, q));
    }
    CHECK(check_thm2(GaussianStandard(2), 0.9, 2));
}

TEST_CASE("power-law tail conditions") {
    CHECK(check_corollary(PowerLawTail(2, 5.0), 1.0));
    CHECK_FALSE(check_corollary(PowerLawTail(2, 3.0), 1.0));
    CHECK_FALSE(check_corollary(GaussianStandard(2), 1.0));
    CHECK_FALSE(check_corollary(PowerLawTail(2, 5.0), 2.0));
}

TEST_CASE("divergence conditions") {
    CHECK(check_thm5_divergence(AnnulusBallCounterexample(2, 1.0), 1.5));
    CHECK_FALSE(check_thm5_divergence(PowerLawTail(2, 6.0), 1.0));
    CHECK_FALSE(check_thm5_divergence(AnnulusBallCounterexample(2, 1.0), 0.4));
    CHECK_FALSE(check_thm5_divergence(AnnulusBallCounterexample(2, 1.0), 0.2));
    CHECK_FALSE(check_thm5_divergence(GaussianStandard(2), 1.5));
    CHECK(check_regularity(AnnulusBallCounterexample(2, 1.0)));
    CHECK(check_regularity(PowerLawTail(2, 3.0)));
    CHECK(check_regularity(GaussianStandard(2)) == false);
}

TEST_CASE("boundary r_c is reported as a note, not a verdict") {
    // threshold 2 alpha / (2 - alpha) = 1 at alpha = 2/3
    const AnnulusBallCounterexample m(2, 1.0);
    const auto report = consistency_implication(m, 2.0 / 3.0, 1);
    CHECK_FALSE(report.thm2_applies);
    CHECK_FALSE(report.thm5_divergence);
    CHECK_FALSE(report.grants_convergence());
    CHECK(has_note_containing(report, "r_c = alpha d/(d - alpha)"));
}

TEST_CASE("aggregated report and its JSON form") {
    const auto square = UniformConvexUnion::unit_cube(2);
    const auto r = consistency_implication(square, 1.0, 2);
    CHECK(r.theorem1_applies);
    CHECK(r.grants_convergence());
    const nlohmann::json j = r;
    std::vector<std::string> keys;
    for (const auto& item : j.items()) keys.push_back(item.key());
    std::sort(keys.begin(), keys.end());
    CHECK(keys == std::vector<std::string>{"alpha", "corollary_applies", "notes", "q", "theorem1_applies", "thm2_applies", "thm3_applies",
                                           "thm5_divergence"});

    const auto div = consistency_implication(AnnulusBallCounterexample(2, 1.0), 1.5, 1);
    CHECK(div.thm5_divergence);
    CHECK_FALSE(div.grants_convergence());

    const auto pl = consistency_implication(PowerLawTail(2, 6.0), 1.0, 1);
    CHECK(pl.corollary_applies);
    CHECK(pl.thm2_applies);
    // alpha = d/q is outside the open interval
    const auto pl2 = consistency_implication(PowerLawTail(2, 6.0), 1.0, 2);
    CHECK(pl2.corollary_applies);
    CHECK_FALSE(pl2.thm2_applies);
    CHECK(has_note_containing(pl2, "L^1 only"));
}

TEST_CASE("exclusivity and the power-law implication over the catalog") {
    const auto models = catalog();
    int combos = 0;
    for (const auto& m : models) {
        const int d = m->dim();
        for (int a = -8; a <= 16; ++a) {
            const double alpha = a * d / 8.0;
            for (int q : {1, 2}) {
                const bool thm2 = check_thm2(*m, alpha, 1);
                const bool thm5 = check_thm5_divergence(*m, alpha);
                INFO(m->name(), " d=", d, " alpha=", alpha);
                CHECK_FALSE((thm2 && thm5));
                if (check_corollary(*m, alpha)) CHECK(thm2);
                const auto report = consistency_implication(*m, alpha, q);
                CHECK_FALSE((report.thm5_divergence && report.grants_convergence()));
                ++combos;
            }
        }
    }
    CHECK(combos >= 200);
}

TEST_CASE("moment threshold is increasing in alpha") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 5);
        const int q = 1 + static_cast<int>(rng() % 2);
        std::uniform_real_distribution<double> unif(0.0, static_cast<double>(d) / q);
        double a = unif(rng), b = unif(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        CHECK(moment_threshold(a, q, d) < moment_threshold(b, q, d));
    }
    CHECK(moment_threshold(1.0, 1, 2) == 2.0);
    CHECK(moment_threshold(1.5, 1, 2) == 6.0);
}
