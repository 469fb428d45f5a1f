#include "ghcwave/weak_checker.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "ghcwave/errors.hpp"
#include "ghcwave/numerics.hpp"
#include "ghcwave/rng.hpp"

namespace ghcwave {

double TestFunction::operator()(double z) const {
    double s = (z - center) / width;
    if (family == Family::gaussian) return std::exp(-s * s);
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

double TestFunction::second_derivative(double z) const {
    double s = (z - center) / width;
    if (family == Family::gaussian) {
        return (4.0 * s * s - 2.0) * std::exp(-s * s) / (width * width);
    }
    if (std::abs(s) >= 1.0) return 0.0;
    double q = 1.0 - s * s;
    double f = std::exp(-1.0 / q);
    double d1 = -2.0 * s / (q * q);             // d/ds of -1/q
    double d2 = -2.0 * (1.0 + 3.0 * s * s) / (q * q * q);
    return f * (d1 * d1 + d2) / (width * width);
}

double TestFunction::support_radius() const {
    return (family == Family::gaussian) ? 9.0 * width : width;
}

namespace {

// integration window: test-function support clipped against profile decay
std::pair<double, double> window(const Profile& prof, const TestFunction& psi) {
    double lo = psi.center - psi.support_radius();
    double hi = psi.center + psi.support_radius();
    if (prof.meta.kind == Kind::peakon_decay ||
        prof.meta.kind == Kind::cuspon_decay ||
        prof.meta.kind == Kind::smooth_asymptotic) {
        // decaying tails die out; 60 units covers e^{-60/eps} for eps >= 1/2
        lo = std::max(lo, -120.0);
        hi = std::min(hi, 120.0);
    }
    return {lo, hi};
}

double phi_at(const Profile& prof, double z) {
    if (prof.eval) return prof.eval(z);
    throw ValidationError("weak check needs a profile evaluator");
}

}  // namespace

std::vector<double> weak_residual(const Profile& prof, const EquationParams& p,
                                  double c,
                                  const std::vector<TestFunction>& tests) {
    p.validate();
    const double e2 = p.epsilon * p.epsilon;
    std::vector<double> out;
    out.reserve(tests.size());
    for (const auto& psi : tests) {
        auto [lo, hi] = window(prof, psi);
        if (!(lo < hi)) {
            out.push_back(0.0);
            continue;
        }
        std::vector<double> kinks = prof.kinks;
        kinks.push_back(psi.center);
        auto f0 = [&](double z) {
            double u = phi_at(prof, z);
            return ((p.alpha + c) * u - 2.0 * u * u +
                    (p.beta / 3.0) * u * u * u +
                    (p.gamma / 4.0) * u * u * u * u) *
                   psi(z);
        };
        auto f2a = [&](double z) {
            double u = phi_at(prof, z);
            return u * u * psi.second_derivative(z);
        };
        auto f2b = [&](double z) {
            return phi_at(prof, z) * psi.second_derivative(z);
        };
        double r = num::integrate_piecewise(f0, lo, hi, kinks, 1e-12) +
                   0.5 * e2 * num::integrate_piecewise(f2a, lo, hi, kinks, 1e-12) +
                   (p.big_gamma - c * e2) *
                       num::integrate_piecewise(f2b, lo, hi, kinks, 1e-12);
        out.push_back(r);
    }
    return out;
}

std::pair<double, double> lemma62_identity(double A, double eps, int n,
                                           const TestFunction& psi) {
    if (eps == 0.0) throw ValidationError("identity needs eps != 0");
    if (A == 0.0) return {0.0, 0.0};
    auto phi_n = [&](double z) {
        return std::pow(A, n) * std::exp(-n * std::abs(z) / eps);
    };
    double lo = std::min(psi.center - psi.support_radius(), -60.0 * eps / n);
    double hi = std::max(psi.center + psi.support_radius(), 60.0 * eps / n);
    std::vector<double> kinks{0.0, psi.center};
    double lhs = num::integrate_piecewise(
        [&](double z) { return phi_n(z) * psi.second_derivative(z); }, lo, hi,
        kinks, 1e-13);
    double Jn = num::integrate_piecewise(
        [&](double z) { return phi_n(z) * psi(z); }, lo, hi, kinks, 1e-13);
    double rhs = -2.0 * (n / eps) * std::pow(A, n) * psi(0.0) +
                 (n / eps) * (n / eps) * Jn;
    return {lhs, rhs};
}

PeakonVerdict peakon_iff_test(const EquationParams& p, double c) {
    p.validate();
    if (p.epsilon == 0.0)
        throw ValidationError("peakon test needs eps != 0");
    PeakonVerdict v;
    double e2 = p.epsilon * p.epsilon;
    auto rel = [](double x, double ref) {
        return std::abs(x) <= 1e-14 * (1.0 + std::abs(ref));
    };
    if (!rel(p.beta, 0.0)) {
        v.reason = "beta != 0";
        return v;
    }
    if (!rel(p.gamma, 0.0)) {
        v.reason = "gamma != 0";
        return v;
    }
    if (!rel(p.big_gamma + p.alpha * e2, p.big_gamma)) {
        v.reason = "Gamma != -alpha eps^2";
        return v;
    }
    if (p.alpha + c == 0.0) {
        v.reason = "alpha + c = 0 (trivial profile)";
        return v;
    }
    Profile pk = peakon(p, c);
    auto residuals = weak_residual(pk, p, c, default_test_family());
    double worst = 0.0;
    for (double r : residuals) worst = std::max(worst, std::abs(r));
    v.admits = true;
    v.amplitude = p.alpha + c;
    v.max_residual = worst;
    return v;
}

double violation_lower_bound(const EquationParams& p, double c,
                             const TestFunction& psi) {
    const double eps = p.epsilon;
    const double e2 = eps * eps;
    const double A = p.alpha + c;
    auto phi = [&](double z) { return A * std::exp(-std::abs(z) / eps); };
    std::vector<double> kinks{0.0, psi.center};
    double lo = std::min(psi.center - psi.support_radius(), -60.0 * eps);
    double hi = std::max(psi.center + psi.support_radius(), 60.0 * eps);
    auto Jn = [&](int n) {
        return num::integrate_piecewise(
            [&](double z) { return std::pow(phi(z), n) * psi(z); }, lo, hi,
            kinks, 1e-13);
    };
    double dG = p.big_gamma + p.alpha * e2;  // leftover Gamma defect
    double I1 = -2.0 * (A / eps) * psi(0.0) + Jn(1) / e2;
    return std::abs(dG * I1 + (p.beta / 3.0) * Jn(3) + (p.gamma / 4.0) * Jn(4));
}

std::string weak_report_json(const Profile& prof, const EquationParams& p,
                             double c, const std::vector<TestFunction>& tests) {
    auto res = weak_residual(prof, p, c, tests);
    double worst = 0.0;
    for (double r : res) worst = std::max(worst, std::abs(r));
    nlohmann::json j;
    j["residuals"] = res;
    j["max_residual"] = worst;
    j["params"] = {{"alpha", p.alpha},     {"beta", p.beta},
                   {"gamma", p.gamma},     {"Gamma", p.big_gamma},
                   {"epsilon", p.epsilon}, {"c", c}};
    return j.dump(2);
}

std::vector<TestFunction> default_test_family(unsigned seed) {
    Rng rng(0x57ea1755ULL ^ seed);
    std::vector<TestFunction> fam;
    for (int i = 0; i < 10; ++i)
        fam.push_back({TestFunction::Family::gaussian,
                       rng.uniform(-3.0, 3.0), rng.uniform(0.5, 2.0)});
    for (int i = 0; i < 10; ++i)
        fam.push_back({TestFunction::Family::bump, rng.uniform(-3.0, 3.0),
                       rng.uniform(1.0, 4.0)});
    return fam;
}

}  // namespace ghcwave
