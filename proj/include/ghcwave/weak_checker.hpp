#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ghcwave/core_model.hpp"
#include "ghcwave/profile_builder.hpp"

namespace ghcwave {

// Schwartz-class test function: a Gaussian or a C-infinity compactly
// supported bump exp(-1/(1-s^2)), s = (z - center)/width.
struct TestFunction {
    enum class Family { gaussian, bump };
    Family family = Family::gaussian;
    double center = 0.0;
    double width = 1.0;

    double operator()(double z) const;
    double second_derivative(double z) const;
    // |z - center| beyond this radius the function is (numerically) zero
    double support_radius() const;
};

// Distributional residual of the travelling-wave relation against each test
// function:
//   int ((alpha+c) phi - 2 phi^2 + (beta/3) phi^3 + (gamma/4) phi^4) psi dz
//   + (eps^2/2) int phi^2 psi'' dz + (Gamma - c eps^2) int phi psi'' dz.
std::vector<double> weak_residual(const Profile& prof, const EquationParams& p,
                                  double c,
                                  const std::vector<TestFunction>& tests);

// Both sides of the exponential-moment identity for phi = A e^{-|z|/eps}:
//   I_n(psi) = -2 (n/eps) A^n psi(0) + (n/eps)^2 J_n(psi),
// lhs by direct quadrature of phi^n psi'', rhs from the closed form with J_n
// by quadrature.
std::pair<double, double> lemma62_identity(double A, double eps, int n,
                                           const TestFunction& psi);

struct PeakonVerdict {
    bool admits = false;
    std::string reason;      // violated constraint when rejected
    double amplitude = 0.0;  // alpha + c when admitted
    double max_residual = 0.0;
};

// Exact test of the exponential-peakon constraints (beta = gamma = 0 and
// Gamma = -alpha eps^2, to 1e-14 relative), confirmed numerically through
// weak_residual on the constructed peakon.
PeakonVerdict peakon_iff_test(const EquationParams& p, double c);

// Analytic residual lower bound when the constraints are violated: the
// leftover terms delta_Gamma I_1 + (beta/3) J_3 + (gamma/4) J_4 evaluated for
// the exponential profile of amplitude alpha + c.
double violation_lower_bound(const EquationParams& p, double c,
                             const TestFunction& psi);

// JSON report: per-psi residuals, max residual, verdict.
std::string weak_report_json(const Profile& prof, const EquationParams& p,
                             double c, const std::vector<TestFunction>& tests);

// Default 20-member family mixing Gaussians and bumps around the crest.
std::vector<TestFunction> default_test_family(unsigned seed = 0);

}  // namespace ghcwave
