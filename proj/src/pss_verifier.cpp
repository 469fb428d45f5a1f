#include "ghcwave/pss_verifier.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "ghcwave/errors.hpp"

namespace ghcwave {

namespace {

const JetExpr Z0 = JetExpr::label(Jet::u);
const JetExpr Z1 = JetExpr::label(Jet::ux);
const JetExpr Z2 = JetExpr::label(Jet::uxx);
const JetExpr Z3 = JetExpr::label(Jet::uxxx);

// right side of the normalized equation solved for (u_t - u_txx)
double rhs0(const NormalizedParams& np, double z0, double z1, double z2,
            double z3) {
    return z0 * z3 + 2.0 * z1 * z2 +
           (np.alpha_n - 3.0 * z0 + np.beta_n * z0 * z0 +
            np.gamma_n * z0 * z0 * z0) *
               z1;
}

}  // namespace

NormalizedParams normalize_for_pss(const EquationParams& p) {
    p.validate();
    if (p.epsilon == 0.0)
        throw ValidationError("normalization needs eps != 0");
    if (p.beta != 0.0 || p.gamma != 0.0)
        throw ValidationError(
            "normalization of beta, gamma != 0 is not closed-form; "
            "supply (7.2.1)-style coefficients directly");
    double e2 = p.epsilon * p.epsilon;
    return {p.alpha + 3.0 * p.big_gamma / e2, 0.0, 0.0};
}

FormSet chpss_forms(double alpha_n, double eta, int sign) {
    if (sign != 1 && sign != -1)
        throw ValidationError("sign choice must be +1 or -1");
    const double b = -1.0 + (eta * eta - alpha_n) / 2.0;
    const double s = sign;
    FormSet fs;
    fs.eta = eta;
    fs.sign = sign;
    fs.b = b;
    JetExpr f11 = Z0 - Z2 + JetExpr(b);
    fs.f11 = f11;
    fs.f12 = -(Z0 * (f11 + JetExpr(1.0)) + JetExpr(b) - JetExpr(s * eta) * Z1);
    fs.f21 = JetExpr(eta);
    fs.f22 = -(JetExpr(eta) * (JetExpr(1.0) + Z0) - JetExpr(s) * Z1);
    fs.f31 = JetExpr(s) * (f11 + JetExpr(1.0));
    fs.f32 = JetExpr(eta) * Z1 + JetExpr(s) * Z0 * Z2 -
             JetExpr(s) * (Z0 + JetExpr(1.0)) * (Z0 + JetExpr(b + 1.0));
    return fs;
}

double lemma73_b(double a, double mu, double eta, double theta, double m2) {
    if (theta == 0.0 || a == 0.0)
        throw ValidationError("lemma73 needs a != 0 and theta != 0");
    double num = (mu * theta - a * eta);
    return a / (2.0 * theta) *
           (num * num / (a * a * (1.0 + mu * mu)) - a / theta + m2 * theta -
            1.0);
}

FormSet lemma73_forms(double a, double b, double mu, double eta, double theta,
                      double m1, double m2, double lambda, int sign) {
    if (theta == 0.0 || a == 0.0)
        throw ValidationError("lemma73 needs a != 0 and theta != 0");
    double b_req = lemma73_b(a, mu, eta, theta, m2);
    if (std::abs(b - b_req) > 1e-12 * (1.0 + std::abs(b_req)))
        throw ValidationError("b violates the coefficient constraint");
    const double s = sign;
    const double sq = std::sqrt(1.0 + mu * mu);

    // exponential factor m1 theta e^{theta z0}: expressed through exp via
    // sqrt closure is unavailable, so restrict to m1 = 0 (all consumers);
    // the exponential terms vanish there.
    if (m1 != 0.0)
        throw ValidationError(
            "m1 != 0 exponential coefficients are outside the expression "
            "closure; the verified slice has m1 = 0");

    FormSet fs;
    fs.eta = eta;
    fs.sign = sign;
    fs.b = b;
    JetExpr f11 = JetExpr(a) * (Z0 - Z2) + JetExpr(b);
    fs.f11 = f11;
    fs.f21 = JetExpr(mu) * f11 + JetExpr(eta);
    fs.f31 = JetExpr(s * sq) * f11 +
             JetExpr(s * (theta + s * a * eta * mu) / (1.0 + mu * mu));
    // with m1 = 0 the factor (m1 theta e^{theta z0} - lambda) is -lambda
    fs.f12 = -JetExpr(lambda) * Z0 * f11 +
             JetExpr(-lambda) * ((JetExpr(a) * Z0 + JetExpr(b)) * JetExpr(1.0 / theta) +
                                 JetExpr(s * (mu - a * eta / theta) / sq) * Z1);
    fs.f22 = -JetExpr(lambda) * Z0 * fs.f21 +
             JetExpr(-lambda / theta) *
                 (JetExpr(mu) * (JetExpr(a) * Z0 + JetExpr(b)) + JetExpr(eta) -
                  JetExpr(s * (theta - mu * a * eta) / sq) * Z1);
    fs.f32 = -JetExpr(lambda) * Z0 * fs.f31 -
             JetExpr(-lambda / theta) *
                 (JetExpr(a * eta) * Z1 -
                  JetExpr(s / sq) *
                      (JetExpr(1.0 + mu * mu) * (JetExpr(a) * Z0 + JetExpr(b)) +
                       JetExpr(mu * eta + theta / a)));
    return fs;
}

JetPoint on_equation_jet(const NormalizedParams& np,
                         const std::array<double, 6>& xjet) {
    // xjet = (u, u_x, u_xx, u_xxx, u_xxxx, u_xxxxx); solve the equation and
    // its first two x-derivatives for (u_t, u_tx, u_txx), dropping the
    // u_txxx/u_txxxx couplings (the residuals depend on t-labels only through
    // u_t - u_txx, which the assignment satisfies exactly).
    const double z0 = xjet[0], z1 = xjet[1], z2 = xjet[2], z3 = xjet[3],
                 z4 = xjet[4], z5 = xjet[5];
    auto g = [&](double u) {
        return np.alpha_n - 3.0 * u + np.beta_n * u * u +
               np.gamma_n * u * u * u;
    };
    auto gp = [&](double u) {
        return -3.0 + 2.0 * np.beta_n * u + 3.0 * np.gamma_n * u * u;
    };
    auto gpp = [&](double u) { return 2.0 * np.beta_n + 6.0 * np.gamma_n * u; };

    double r0 = z0 * z3 + 2.0 * z1 * z2 + g(z0) * z1;
    double r1 = z1 * z3 + z0 * z4 + 2.0 * (z2 * z2 + z1 * z3) + g(z0) * z2 +
                gp(z0) * z1 * z1;
    double r2 = z2 * z3 + z1 * z4 + z1 * z4 + z0 * z5 +
                2.0 * (2.0 * z2 * z3 + z2 * z3 + z1 * z4) + g(z0) * z3 +
                gp(z0) * z1 * z2 + gp(z0) * 2.0 * z1 * z2 +
                gpp(z0) * z1 * z1 * z1;

    JetPoint j;
    j.set(Jet::u, z0);
    j.set(Jet::ux, z1);
    j.set(Jet::uxx, z2);
    j.set(Jet::uxxx, z3);
    j.set(Jet::uxxxx, z4);
    j.set(Jet::uxxxxx, z5);
    double utxx = r2;
    j.set(Jet::utxx, utxx);
    j.set(Jet::utx, r1);
    j.set(Jet::ut, r0 + utxx);
    return j;
}

JetPoint random_on_equation_jet(const NormalizedParams& np, Rng& rng,
                                double lo, double hi) {
    std::array<double, 6> x{};
    for (auto& v : x) v = rng.uniform(lo, hi);
    return on_equation_jet(np, x);
}

std::vector<std::array<double, 3>> structure_residuals(
    const FormSet& fs, const NormalizedParams& np,
    const std::vector<JetPoint>& jets) {
    // precompute the residual expressions once
    JetExpr R1 = fs.f12.total_dx() - fs.f11.total_dt() -
                 (fs.f31 * fs.f22 - fs.f32 * fs.f21);
    JetExpr R2 = fs.f22.total_dx() - fs.f21.total_dt() -
                 (fs.f11 * fs.f32 - fs.f12 * fs.f31);
    JetExpr R3 = fs.f32.total_dx() - fs.f31.total_dt() -
                 (fs.f11 * fs.f22 - fs.f12 * fs.f21);

    std::vector<std::array<double, 3>> out;
    out.reserve(jets.size());
    for (const auto& j : jets) {
        double onshell = j.get(Jet::ut) - j.get(Jet::utxx) -
                         rhs0(np, j.get(Jet::u), j.get(Jet::ux),
                              j.get(Jet::uxx), j.get(Jet::uxxx));
        double mag = 1.0 + std::abs(j.get(Jet::ut)) + std::abs(j.get(Jet::utxx));
        if (std::abs(onshell) > 1e-9 * mag)
            throw ValidationError("jet is off the equation manifold");
        out.push_back({R1.eval(j), R2.eval(j), R3.eval(j)});
    }
    return out;
}

std::optional<Condition5Match> condition5_match(double beta_n, double gamma_n,
                                                double alpha_n,
                                                std::string* violated) {
    // G - lambda(2 z1 z2 - 3 z0 z1 - m2 z1) must equal
    // m1 theta e^{theta z0} (theta z1^3 + z1 z2 + 2 z0 z1 + m2 z1).
    // The z1^3 coefficient of the right side is m1 theta^2 e^{theta z0};
    // G has no z1^3 term, so m1 = 0 and the leftover
    // (alpha_n + m2) z1 + beta_n z0^2 z1 + gamma_n z0^3 z1 must vanish.
    if (beta_n != 0.0) {
        if (violated)
            *violated = "z0^2 z1 coefficient (beta_n) forces m1 theta != 0";
        return std::nullopt;
    }
    if (gamma_n != 0.0) {
        if (violated)
            *violated = "z0^3 z1 coefficient (gamma_n) forces m1 theta != 0";
        return std::nullopt;
    }
    return Condition5Match{0.0, -alpha_n, true};
}

std::string pss_report_json(const NormalizedParams& np,
                            const std::vector<double>& etas, int jets_per_eta,
                            Rng& rng) {
    nlohmann::json j;
    j["alpha_n"] = np.alpha_n;
    j["eta_grid"] = etas;
    nlohmann::json rows = nlohmann::json::array();
    double overall = 0.0;
    for (double eta : etas) {
        for (int sign : {+1, -1}) {
            FormSet fs = chpss_forms(np.alpha_n, eta, sign);
            std::vector<JetPoint> jets;
            for (int k = 0; k < jets_per_eta; ++k)
                jets.push_back(random_on_equation_jet(np, rng));
            double worst = 0.0;
            for (auto& r : structure_residuals(fs, np, jets))
                for (double v : r) worst = std::max(worst, std::abs(v));
            rows.push_back({{"eta", eta}, {"sign", sign}, {"max_residual", worst}});
            overall = std::max(overall, worst);
        }
    }
    j["rows"] = rows;
    j["max_residual"] = overall;
    std::string violated;
    auto m = condition5_match(np.beta_n, np.gamma_n, np.alpha_n, &violated);
    if (m)
        j["condition5"] = {{"match", true}, {"m1", m->m1}, {"m2", m->m2},
                           {"theta_free", m->theta_free}};
    else
        j["condition5"] = {{"match", false}, {"violated", violated}};
    return j.dump(2);
}

}  // namespace ghcwave
