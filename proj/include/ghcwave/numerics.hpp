#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "ghcwave/errors.hpp"

namespace ghcwave::num {

// Adaptive Gauss-Kronrod integral of a smooth integrand.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, int max_depth = 15);

// Integral split at interior kink locations (integrand only piecewise smooth).
double integrate_piecewise(const std::function<double(double)>& f, double a,
                           double b, const std::vector<double>& kinks,
                           double tol = 1e-12);

// Monotone cubic (Fritsch-Carlson) interpolant through strictly monotone xs.
class MonotoneCubic {
   public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> xs, std::vector<double> ys);
    double operator()(double x) const;
    double x_front() const { return xs_.front(); }
    double x_back() const { return xs_.back(); }

   private:
    std::vector<double> xs_, ys_, ms_;  // ms_: endpoint slopes per node
};

inline bool finite(double x) { return std::isfinite(x); }

}  // namespace ghcwave::num
