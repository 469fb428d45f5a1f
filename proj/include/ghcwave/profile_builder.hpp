#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ghcwave/core_model.hpp"
#include "ghcwave/wave_classifier.hpp"

namespace ghcwave {

// Sampled travelling-wave profile phi(z).  `eval` is always usable and is
// exact for closed-form families; `kinks` lists z where phi' jumps or blows
// up (peak and cusp crests and their periodic copies).
struct Profile {
    std::vector<double> z;
    std::vector<double> phi;
    struct Meta {
        double c = 0.0;
        Kind kind = Kind::none;
        std::optional<double> period;
        std::vector<double> crests;
        std::optional<double> surface_d;  // explicit-family paraboloid value
    } meta;
    std::function<double(double)> eval;
    std::vector<double> kinks;
};

// z-span of the quadrature between lo and hi: integral of 1/sqrt(F) with
// inverse-square-root endpoint singularities absorbed by phi = r +- s^2.
// Returns +infinity when an endpoint zero has order >= 2 (asymptotic
// approach).  Throws DomainError if F <= 0 strictly inside.
double half_period(const std::function<double(double)>& F, double lo,
                   double hi);

// Numerical profile for a classified verdict, sampled on zgrid and centered
// at a crest (the pole endpoint when present, else the attained extremum).
Profile integrate_profile(const WaveVerdict& v, const EquationParams& p,
                          const WaveParams& w, const std::vector<double>& zgrid);

// Max deviation of the once-integrated travelling-wave relation over interior
// smooth samples, finite differences for phi' and phi''; neighborhoods within
// three grid cells of a kink are excluded.
double quadrature_residual(const Profile& prof, const EquationParams& p,
                           const WaveParams& w);

// Exponentially peaked wave (alpha+c) e^{-|z|/eps}; exists exactly when
// beta = gamma = 0 and Gamma = -alpha eps^2.  Rejection names the violated
// constraint.
Profile peakon(const EquationParams& p, double c);

enum class FamilyBranch { cosh_even, sinh_plus, sinh_minus };

// Closed-form hyperbolic families on the paraboloid parameter surfaces;
// unbounded, used for residual testing.
Profile explicit_family(const EquationParams& p, double lambda,
                        FamilyBranch branch, double c);

// Quadrature constants (A, B) under which the explicit family satisfies the
// once- and twice-integrated relations for wave speed c.
WaveParams explicit_family_wave(const EquationParams& p, double lambda,
                                FamilyBranch branch, double c);

// Travelling waves of the sqrt-m conservation law: w = 1/(phi - alpha - c),
// z(w) from the quadrature integral; phi(z) = alpha + c + 1/w(z).
// k1 = 0 with weak=true delegates to the peakon.
Profile sqrt_m_quadrature(const EquationParams& p, double c, double k1,
                          double k2, const std::vector<double>& wgrid,
                          bool weak = false);

// CSV (z,phi) plus JSON meta block.
std::string profile_to_csv(const Profile& prof);
std::string profile_meta_json(const Profile& prof);

// Resample a profile onto a periodic grid as solver initial data.
Field profile_to_field(const Profile& prof, const Grid& g, double center);

}  // namespace ghcwave
