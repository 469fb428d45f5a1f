#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "ghcwave/errors.hpp"

namespace ghcwave {

// The five real parameters of m_t + u m_x + 2 u_x m = alpha u_x + beta u^2 u_x
// + gamma u^3 u_x + Gamma u_xxx, m = u - eps^2 u_xx.  beta and gamma are stored
// in the physical convention of the evolution equation; the /6 and /10
// rescaling used by the travelling-wave quadrature happens in
// poly_from_params and nowhere else.
struct EquationParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double big_gamma = 0.0;  // coefficient of u_xxx
    double epsilon = 1.0;    // Helmholtz length scale, >= 0

    EquationParams() = default;
    EquationParams(double a, double b, double g, double G, double e)
        : alpha(a), beta(b), gamma(g), big_gamma(G), epsilon(e) {
        validate();
    }
    void validate() const {
        if (epsilon < 0.0)
            throw ValidationError("epsilon must be nonnegative");
        if (epsilon == 0.0 && big_gamma == 0.0)
            throw ValidationError("(epsilon, Gamma) = (0, 0) is excluded");
    }
};

// Wave speed and the two constants of integration of the quadrature.
struct WaveParams {
    double c = 1.0;
    double A = 0.0;
    double B = 0.0;

    WaveParams() = default;
    WaveParams(double c_, double A_, double B_) : c(c_), A(A_), B(B_) {
        validate();
    }
    void validate() const {
        if (c == 0.0) throw ValidationError("wave speed c must be nonzero");
    }
};

// c5 phi^5 + c4 phi^4 + c3 phi^3 + c2 phi^2 + c1 phi + c0.
struct QuinticPoly {
    std::array<double, 6> c{};  // c[k] multiplies phi^k

    double eval(double phi) const {
        double r = 0.0;
        for (int k = 5; k >= 0; --k) r = r * phi + c[static_cast<size_t>(k)];
        return r;
    }
    QuinticPoly derivative() const {
        QuinticPoly d;
        for (int k = 1; k <= 5; ++k)
            d.c[static_cast<size_t>(k - 1)] = k * c[static_cast<size_t>(k)];
        d.c[5] = 0.0;
        return d;
    }
};

// Uniform periodic grid: x_j = j * spacing, j = 0..n-1, spacing = length/n.
struct Grid {
    double length = 40.0;
    int n = 512;

    Grid() = default;
    Grid(double L, int n_) : length(L), n(n_) { validate(); }
    void validate() const {
        if (length <= 0.0) throw ValidationError("grid length must be positive");
        if (n < 8) throw ValidationError("grid must have at least 8 samples");
        if ((n & (n - 1)) != 0)
            throw ValidationError("grid sample count must be a power of two");
    }
    double spacing() const { return length / n; }
    double x(int j) const { return j * spacing(); }
};

using Field = std::vector<double>;

// Quadrature polynomial of the travelling-wave reduction:
// P(phi) = B + 2A phi + (c+alpha) phi^2 - phi^3 + (beta/6) phi^4 + (gamma/10) phi^5.
QuinticPoly poly_from_params(const EquationParams& p, const WaveParams& w);

// Pole of the quadrature denominator eps^2 (c - phi) - Gamma.  For eps != 0
// this is c~ = c - Gamma/eps^2; for eps = 0 the denominator is the constant
// -Gamma and there is no pole.
std::optional<double> pole_location(const EquationParams& p, const WaveParams& w);

}  // namespace ghcwave
