#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nnlaw/density.hpp"

namespace nnlaw {

/// Which convergence guarantees cover a (model, alpha, q) combination.
struct ConditionReport {
    double alpha = 0.0;
    int q = 1;
    bool theorem1_applies = false;
    bool thm3_applies = false;
    bool thm2_applies = false;
    bool corollary_applies = false;
    bool thm5_divergence = false;
    std::vector<std::string> notes;

    /// True when some verdict grants L^q convergence of n^{-1} S_{n,alpha}.
    bool grants_convergence() const;
};

void to_json(nlohmann::json& j, const ConditionReport& report);

/// Moment threshold q*alpha*d / (d - q*alpha) for alpha in (0, d/q).
double moment_threshold(double alpha, int q, int d);

/// Bounded convex support, density bounded above and away from zero, alpha > 0.
bool check_theorem1(const DensityModel& model, double alpha);

/// -d/q < alpha < 0 and f bounded.
bool check_thm3(const DensityModel& model, double alpha, int q);

/// 0 < alpha < d/q, I_{1-alpha/d}(f) finite and r_c(f) > q alpha d / (d - q alpha).
bool check_thm2(const DensityModel& model, double alpha, int q);

/// Power-law tails |x|^{-beta} with beta > d, 0 < alpha < d and I_{1-alpha/d}(f) finite.
bool check_corollary(const DensityModel& model, double alpha);

/// Shell-mass ratio bounds F(A_k)/F(A_{k-1}); analytic when the model
/// provides them, otherwise a window of 21 shells starting at k0 = 1 with
/// ratios required to lie in [1e-6, 1e6].
bool check_regularity(const DensityModel& model);

/// 0 < alpha < d, r_c(f) < alpha d / (d - alpha), and shell regularity.
bool check_thm5_divergence(const DensityModel& model, double alpha);

ConditionReport consistency_implication(const DensityModel& model, double alpha, int q);

}  // namespace nnlaw
