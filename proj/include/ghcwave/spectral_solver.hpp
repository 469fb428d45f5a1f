#pragma once

#include <map>
#include <string>
#include <vector>

#include "ghcwave/core_model.hpp"

namespace ghcwave {

enum class Dealias { two_thirds, zero_pad_2x };

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    Dealias dealias = Dealias::zero_pad_2x;
    int monitor_every = 10;

    void validate() const {
        if (dt <= 0.0) throw ValidationError("dt must be positive");
        if (t_end <= 0.0) throw ValidationError("t_end must be positive");
        if (monitor_every < 1)
            throw ValidationError("monitor_every must be >= 1");
    }
};

struct Trajectory {
    std::vector<double> times;                 // snapshot times
    std::vector<Field> states;                 // aligned with times
    std::map<std::string, std::vector<double>> monitors;  // per snapshot
};

// Spectral derivative of given order (odd-order Nyquist set to zero).
Field spectral_derivative(const Field& f, int order, const Grid& g);

// Inverse of 1 - eps^2 d_xx: Fourier symbol 1/(1 + eps^2 k^2); identity for
// eps = 0.
Field helmholtz_inverse(const Field& f, double epsilon, const Grid& g);

// u_t as the Helmholtz-inverted flux derivative
//   u_t = (1 - eps^2 d_xx)^{-1} d_x [ eps^2 (u u_xx + u_x^2 / 2)
//                                     + Gamma u_xx - h(u) ],
//   h(u) = -alpha u + (3/2) u^2 - (beta/3) u^3 - (gamma/4) u^4.
Field rhs(const Field& u, const EquationParams& p, const Grid& g,
          Dealias dealias = Dealias::zero_pad_2x);

// One integrating-factor RK4 step on the linear symbol
// L(k) = i k (alpha - Gamma k^2) / (1 + eps^2 k^2).
Field step(const Field& u, double dt, const EquationParams& p, const Grid& g,
           const SolverConfig& cfg);

// March to t_end recording monitors every cfg.monitor_every steps.  Throws
// BlowUpError (with the last valid time) on non-finite values or |u| > 1e8.
Trajectory simulate(const Field& u0, const EquationParams& p, const Grid& g,
                    const SolverConfig& cfg);

// {mass, energy, m_mass, m_min, slope_bound[, sqrt_m_mass]}.
std::map<std::string, double> monitors(const Field& u, const EquationParams& p,
                                       const Grid& g);

// long-format CSV with header t,x,u
std::string trajectory_to_csv(const Trajectory& tr, const Grid& g);
// CSV with header t,name,value
std::string monitors_to_csv(const Trajectory& tr);
// JSON summary: params, grid, monitor time series
std::string trajectory_summary_json(const Trajectory& tr,
                                    const EquationParams& p, const Grid& g);
// raw little-endian float64 dump plus JSON sidecar {n, L, t}
void write_raw_field(const Field& u, const Grid& g, double t,
                     const std::string& path_base);
Field read_raw_field(const std::string& path_base, Grid* g_out, double* t_out);

}  // namespace ghcwave
