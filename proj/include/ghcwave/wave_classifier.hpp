#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ghcwave/core_model.hpp"

namespace ghcwave {

// Real roots with multiplicities plus the count of residual complex pairs.
struct RootSet {
    struct Root {
        double value;
        int multiplicity;
    };
    std::vector<Root> roots;  // sorted ascending, values pairwise distinct
    int complex_pairs = 0;
    int degree = 0;
};

enum class Role {
    min_attained,
    inf_asymptotic,
    max_attained,
    sup_asymptotic,
    cusp_extremum,
    peak_extremum,
};

enum class Kind {
    smooth_periodic,
    smooth_asymptotic,
    peakon_periodic,
    peakon_decay,
    cuspon_periodic,
    cuspon_decay,
    unbounded,
    none,
};

const char* role_name(Role r);
const char* kind_name(Kind k);

struct WaveVerdict {
    Kind kind = Kind::none;
    double lo = 0.0, hi = 0.0;  // +-infinity for unbounded sides
    Role lo_role = Role::min_attained;
    Role hi_role = Role::max_attained;
    std::string theorem_tag;
};

// Prescribed factorization of the quadrature polynomial: real roots with
// multiplicities and monic quadratic factors phi^2 + p phi + q with no real
// zeros.  Total degree must be 4 (gamma = 0) or 5.
struct RootSpec {
    std::vector<std::pair<double, int>> roots;
    std::vector<std::pair<double, double>> pairs;  // (p, q)
    int degree() const;
};

struct VietaResult {
    EquationParams params;  // alpha/beta/gamma completed; eps, Gamma from partial
    WaveParams wave;        // c as given; A, B solved
    double beta_scaled = 0.0;
    double gamma_scaled = 0.0;
};

// All real roots of the quadrature polynomial.  Companion-matrix eigenvalues
// with Newton polish; multiplicity by clustering.  `tol` is the user floor of
// the clustering radius; the effective radius also respects the fixed-precision
// limit for multiple roots (about sqrt of machine epsilon).
RootSet real_roots(const QuinticPoly& poly, double tol = 1e-9);

// Full bounded-travelling-wave classification for (p, w): one verdict per
// maximal interval between distinguished points (roots, pole) on which
// F = P / (eps^2 (c - phi) - Gamma) is positive.
std::vector<WaveVerdict> classify(const EquationParams& p, const WaveParams& w,
                                  double tol = 1e-9);

// Solve the compatibility conditions for the parameters that realize the
// prescribed roots: the scaled leading coefficient is pinned by the monic
// phi^3 coefficient, then beta, alpha, A, B follow.  Throws ValidationError
// when the -1 normalization cannot be met.
VietaResult coefficients_from_roots(const RootSpec& spec,
                                    const EquationParams& partial, double c);

// The unique quadrature constant A compatible with plateau-bearing weak
// waves (Lebesgue-positive contact set at the pole level).
double stumpon_A(const EquationParams& p, double c);

// JSON lines per the verdict schema (kind, interval, roles, roots, pole, tag).
std::string verdicts_to_json(const std::vector<WaveVerdict>& verdicts,
                             const EquationParams& p, const WaveParams& w,
                             double tol = 1e-9);

}  // namespace ghcwave
