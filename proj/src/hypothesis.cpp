#include "nnlaw/hypothesis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nnlaw {

namespace {

constexpr int kRegularityWindow = 21;
constexpr double kRegularityLower = 1e-6;
constexpr double kRegularityUpper = 1e6;

void check_q(int q) {
    if (q != 1 && q != 2) throw std::invalid_argument("q must be 1 or 2");
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

bool ConditionReport::grants_convergence() const {
    return theorem1_applies || thm3_applies || thm2_applies || (corollary_applies && q == 1);
}

void to_json(nlohmann::json& j, const ConditionReport& r) {
    j = nlohmann::json{{"alpha", r.alpha},
                       {"q", r.q},
                       {"theorem1_applies", r.theorem1_applies},
                       {"thm3_applies", r.thm3_applies},
                       {"thm2_applies", r.thm2_applies},
                       {"corollary_applies", r.corollary_applies},
                       {"thm5_divergence", r.thm5_divergence},
                       {"notes", r.notes}};
}

double moment_threshold(double alpha, int q, int d) { return q * alpha * d / (d - q * alpha); }

namespace {

// r_c within rounding of the threshold counts as the boundary case.
bool on_boundary(double rc, double threshold) {
    return std::isfinite(rc) && std::abs(rc - threshold) <= 1e-12 * std::max(1.0, std::abs(threshold));
}

}  // namespace

bool check_theorem1(const DensityModel& model, double alpha) {
    if (!(alpha > 0.0)) return false;
    if (model.kind() != ModelKind::UniformConvexUnion || !model.bounded_support()) return false;
    return model.pdf_inf_on_support() > 0.0 && std::isfinite(model.pdf_sup());
}

bool check_thm3(const DensityModel& model, double alpha, int q) {
    check_q(q);
    const double d = model.dim();
    return alpha > -d / q && alpha < 0.0 && std::isfinite(model.pdf_sup());
}

bool check_thm2(const DensityModel& model, double alpha, int q) {
    check_q(q);
    const int d = model.dim();
    if (!(alpha > 0.0 && alpha < static_cast<double>(d) / q)) return false;
    if (!std::isfinite(model.i_rho(1.0 - alpha / d))) return false;
    const double t = moment_threshold(alpha, q, d);
    return model.critical_moment() > t && !on_boundary(model.critical_moment(), t);
}

bool check_corollary(const DensityModel& model, double alpha) {
    const auto* tail = dynamic_cast<const PowerLawTail*>(&model);
    if (tail == nullptr) return false;
    const int d = model.dim();
    if (!(tail->beta() > d) || !(alpha > 0.0 && alpha < d)) return false;
    return std::isfinite(model.i_rho(1.0 - alpha / d));
}

bool check_regularity(const DensityModel& model) {
    if (const auto cert = model.analytic_regularity()) {
        return cert->inf_ratio > 0.0 && std::isfinite(cert->sup_ratio);
    }
    double prev = model.annulus_mass(0);
    for (int k = 1; k <= kRegularityWindow; ++k) {
        const double cur = model.annulus_mass(k);
        if (!(prev > 0.0)) return false;
        const double ratio = cur / prev;
        if (!(ratio >= kRegularityLower && ratio <= kRegularityUpper)) return false;
        prev = cur;
    }
    return true;
}

bool check_thm5_divergence(const DensityModel& model, double alpha) {
    const int d = model.dim();
    if (!(alpha > 0.0 && alpha < d)) return false;
    const double t = moment_threshold(alpha, 1, d);
    if (!(model.critical_moment() < t) || on_boundary(model.critical_moment(), t)) return false;
    return check_regularity(model);
}

ConditionReport consistency_implication(const DensityModel& model, double alpha, int q) {
    check_q(q);
    ConditionReport r;
    r.alpha = alpha;
    r.q = q;
    r.theorem1_applies = check_theorem1(model, alpha);
    r.thm3_applies = check_thm3(model, alpha, q);
    r.thm2_applies = check_thm2(model, alpha, q);
    r.corollary_applies = check_corollary(model, alpha);
    r.thm5_divergence = check_thm5_divergence(model, alpha);

    const int d = model.dim();
    const double rc = model.critical_moment();
    if (alpha > 0.0 && alpha < d) {
        const double t1 = moment_threshold(alpha, 1, d);
        if (on_boundary(rc, t1)) {
            r.notes.push_back("r_c = alpha d/(d - alpha) = " + fmt(t1) +
                              ": boundary case, no guarantee either way");
        }
        if (!std::isfinite(model.i_rho(1.0 - alpha / d))) {
            r.notes.push_back("I_{1-alpha/d} is infinite");
        }
        if (q == 2 && alpha < d / 2.0 && on_boundary(rc, moment_threshold(alpha, 2, d))) {
            r.notes.push_back("r_c equals the q = 2 moment threshold " + fmt(rc) + ": L^2 not guaranteed");
        }
    }
    if (r.corollary_applies && q == 2 && !r.thm2_applies) {
        r.notes.push_back("power-law tail guarantees L^1 only");
    }
    if (alpha == 0.0) r.notes.push_back("alpha = 0: the statistic is identically n");
    if (alpha < 0.0 && !(alpha > -static_cast<double>(d) / q)) {
        r.notes.push_back("alpha <= -d/q: outside the bounded-density range");
    }
    if (alpha > 0.0 && !r.grants_convergence() && !r.thm5_divergence) {
        r.notes.push_back("no convergence or divergence guarantee");
    }
    return r;
}

}  // namespace nnlaw
