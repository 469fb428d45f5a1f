#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ghcwave/core_model.hpp"
#include "ghcwave/jet_calculus.hpp"

namespace ghcwave {

// Coefficients of the normalized equation
//   u_t - u_txx = u u_xxx + 2 u_x u_xx + (alpha_n - 3u + beta_n u^2
//                 + gamma_n u^3) u_x
// obtained from the eps != 0 equation by x -> x/eps, t -> t/eps and the shift
// that removes the u_xxx constant.
struct NormalizedParams {
    double alpha_n = 0.0;
    double beta_n = 0.0;
    double gamma_n = 0.0;
};

// Coefficient table of the one-forms w_i = f_i1 dx + f_i2 dt.
struct FormSet {
    JetExpr f11, f12, f21, f22, f31, f32;
    double eta = 0.0;
    int sign = +1;
    double b = 0.0;
};

// For beta = gamma = 0: alpha_n = alpha + 3 Gamma / eps^2 (the shift
// s = -Gamma/eps^2 cancels Gamma u_xxx and moves 3s into the u_x coefficient).
// Refuses beta or gamma != 0: the constant-renaming there is under-specified.
NormalizedParams normalize_for_pss(const EquationParams& p);

// One-forms of the integrable beta = gamma = 0 member, spectral parameter eta,
// overall sign choice +-1, with b = -1 + (eta^2 - alpha_n)/2.
FormSet chpss_forms(double alpha_n, double eta, int sign);

// General coefficient table with parameters (a, b, mu, eta, theta, m1, m2)
// and lambda; the b-constraint
//   b = a/(2 theta) [ (mu theta - a eta)^2 / (a^2 (1+mu^2)) - a/theta
//                     + m2 theta - 1 ]
// is enforced to 1e-12 (else rejected).  The a=1, theta=1, mu=0, m1=0,
// m2=-alpha_n slice reproduces chpss_forms coefficient-by-coefficient.
FormSet lemma73_forms(double a, double b, double mu, double eta, double theta,
                      double m1, double m2, double lambda, int sign = +1);

// Constraint value the table requires of b.
double lemma73_b(double a, double mu, double eta, double theta, double m2);

// A jet on the equation manifold: x-labels sampled freely, t-labels solved
// from the normalized equation and its first two x-derivatives.
JetPoint on_equation_jet(const NormalizedParams& np,
                         const std::array<double, 6>& xjet);
JetPoint random_on_equation_jet(const NormalizedParams& np, Rng& rng,
                                double lo = -1.0, double hi = 1.0);

// Structure-equation residuals
//   R1 = D_x f12 - D_t f11 - (f31 f22 - f32 f21)
//   R2 = D_x f22 - D_t f21 - (f11 f32 - f12 f31)
//   R3 = D_x f32 - D_t f31 - (f11 f22 - f12 f21)
// at each jet; off-equation jets are rejected.
std::vector<std::array<double, 3>> structure_residuals(
    const FormSet& fs, const NormalizedParams& np,
    const std::vector<JetPoint>& jets);

struct Condition5Match {
    double m1 = 0.0;
    double m2 = 0.0;
    bool theta_free = true;
};

// Coefficient comparison of G = 2 z1 z2 + (alpha_n - 3 z0 + beta_n z0^2
// + gamma_n z0^3) z1 against the exponential normal form; a match exists iff
// beta_n = gamma_n = 0, giving m1 = 0 and m2 = -alpha_n with theta free.
// On failure `violated` names the offending coefficient.
std::optional<Condition5Match> condition5_match(double beta_n, double gamma_n,
                                                double alpha_n,
                                                std::string* violated = nullptr);

// JSON report over an eta grid: max residuals per (alpha_n, eta, sign).
std::string pss_report_json(const NormalizedParams& np,
                            const std::vector<double>& etas, int jets_per_eta,
                            Rng& rng);

}  // namespace ghcwave
