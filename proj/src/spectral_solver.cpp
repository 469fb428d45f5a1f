#include "ghcwave/spectral_solver.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ghcwave/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "raw field dumps assume a little-endian host");

namespace ghcwave {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;  // FFTW plan creation/destruction is not thread-safe
    return m;
}

using Cplx = std::complex<double>;

// FFT scratch for one grid size: physical arrays and r2c/c2r plans on the
// base grid (n) and on the 2x padded grid.
class Workspace {
   public:
    explicit Workspace(int n) : n_(n), np_(2 * n) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        re_ = fftw_alloc_real(static_cast<size_t>(np_));
        sp_ = fftw_alloc_complex(static_cast<size_t>(np_ / 2 + 1));
        fwd_n_ = fftw_plan_dft_r2c_1d(n_, re_, sp_, FFTW_ESTIMATE);
        inv_n_ = fftw_plan_dft_c2r_1d(n_, sp_, re_, FFTW_ESTIMATE);
        fwd_np_ = fftw_plan_dft_r2c_1d(np_, re_, sp_, FFTW_ESTIMATE);
        inv_np_ = fftw_plan_dft_c2r_1d(np_, sp_, re_, FFTW_ESTIMATE);
    }
    ~Workspace() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd_n_);
        fftw_destroy_plan(inv_n_);
        fftw_destroy_plan(fwd_np_);
        fftw_destroy_plan(inv_np_);
        fftw_free(re_);
        fftw_free(sp_);
    }
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    // normalized spectrum (coefficients of e^{ikx}), length n/2+1
    std::vector<Cplx> forward(const Field& u) {
        for (int j = 0; j < n_; ++j) re_[j] = u[static_cast<size_t>(j)];
        fftw_execute(fwd_n_);
        std::vector<Cplx> out(static_cast<size_t>(n_ / 2 + 1));
        for (size_t k = 0; k < out.size(); ++k)
            out[k] = Cplx(sp_[k][0], sp_[k][1]) / static_cast<double>(n_);
        return out;
    }
    Field inverse(const std::vector<Cplx>& s) {
        for (size_t k = 0; k < s.size(); ++k) {
            sp_[k][0] = s[k].real();
            sp_[k][1] = s[k].imag();
        }
        fftw_execute(inv_n_);
        Field out(static_cast<size_t>(n_));
        for (int j = 0; j < n_; ++j) out[static_cast<size_t>(j)] = re_[j];
        return out;
    }
    // inverse of an n-spectrum zero-padded onto the 2n grid
    Field inverse_padded(const std::vector<Cplx>& s) {
        const size_t kp = static_cast<size_t>(np_ / 2 + 1);
        for (size_t k = 0; k < kp; ++k) sp_[k][0] = sp_[k][1] = 0.0;
        for (size_t k = 0; k + 1 < s.size(); ++k) {  // drop the base Nyquist
            sp_[k][0] = s[k].real();
            sp_[k][1] = s[k].imag();
        }
        fftw_execute(inv_np_);
        Field out(static_cast<size_t>(np_));
        for (int j = 0; j < np_; ++j) out[static_cast<size_t>(j)] = re_[j];
        return out;
    }
    // forward transform of a 2n-grid field, truncated to the n-spectrum
    std::vector<Cplx> forward_truncated(const Field& u) {
        for (int j = 0; j < np_; ++j) re_[j] = u[static_cast<size_t>(j)];
        fftw_execute(fwd_np_);
        std::vector<Cplx> out(static_cast<size_t>(n_ / 2 + 1));
        for (size_t k = 0; k < out.size(); ++k)
            out[k] = Cplx(sp_[k][0], sp_[k][1]) / static_cast<double>(np_);
        out.back() = 0.0;  // keep the truncated Nyquist empty
        return out;
    }

    int n() const { return n_; }

   private:
    int n_, np_;
    double* re_;
    fftw_complex* sp_;
    fftw_plan fwd_n_, inv_n_, fwd_np_, inv_np_;
};

Workspace& workspace_for(int n) {
    thread_local std::map<int, std::unique_ptr<Workspace>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Workspace>(n);
    return *slot;
}

double wavenumber(int k, const Grid& g) {
    return 2.0 * M_PI * k / g.length;
}

void check_field(const Field& u, const Grid& g) {
    if (static_cast<int>(u.size()) != g.n)
        throw ValidationError("field length does not match grid");
}

void apply_derivative(std::vector<Cplx>& s, int order, const Grid& g) {
    const int half = g.n / 2;
    for (int k = 0; k <= half; ++k) {
        Cplx ik(0.0, wavenumber(k, g));
        Cplx m = 1.0;
        for (int o = 0; o < order; ++o) m *= ik;
        if (k == half && order % 2 == 1) m = 0.0;  // symmetric Nyquist choice
        s[static_cast<size_t>(k)] *= m;
    }
}

void apply_two_thirds(std::vector<Cplx>& s, const Grid& g) {
    const int half = g.n / 2;
    for (int k = 0; k <= half; ++k)
        if (3 * k > g.n) s[static_cast<size_t>(k)] = 0.0;
}

std::vector<Cplx> linear_symbol(const EquationParams& p, const Grid& g) {
    const int half = g.n / 2;
    std::vector<Cplx> L(static_cast<size_t>(half + 1));
    double e2 = p.epsilon * p.epsilon;
    for (int k = 0; k <= half; ++k) {
        double kk = wavenumber(k, g);
        double num = kk * (p.alpha - p.big_gamma * kk * kk);
        L[static_cast<size_t>(k)] = Cplx(0.0, num / (1.0 + e2 * kk * kk));
        if (k == half) L[static_cast<size_t>(k)] = 0.0;
    }
    return L;
}

// spectral evaluation of the dealiased nonlinear part of the flux:
//   eps^2 (u u_xx + u_x^2/2) - (3/2) u^2 + (beta/3) u^3 + (gamma/4) u^4
std::vector<Cplx> nonlinear_hat(const std::vector<Cplx>& uhat,
                                const EquationParams& p, const Grid& g,
                                Dealias dealias, Workspace& ws) {
    const double e2 = p.epsilon * p.epsilon;
    std::vector<Cplx> u_s = uhat, ux_s = uhat, uxx_s = uhat;
    apply_derivative(ux_s, 1, g);
    apply_derivative(uxx_s, 2, g);

    Field u, ux, uxx;
    if (dealias == Dealias::zero_pad_2x) {
        u = ws.inverse_padded(u_s);
        ux = ws.inverse_padded(ux_s);
        uxx = ws.inverse_padded(uxx_s);
    } else {
        apply_two_thirds(u_s, g);
        apply_two_thirds(ux_s, g);
        apply_two_thirds(uxx_s, g);
        u = ws.inverse(u_s);
        ux = ws.inverse(ux_s);
        uxx = ws.inverse(uxx_s);
    }

    Field flux(u.size());
    for (size_t j = 0; j < u.size(); ++j) {
        double uj = u[j];
        flux[j] = e2 * (uj * uxx[j] + 0.5 * ux[j] * ux[j]) - 1.5 * uj * uj +
                  (p.beta / 3.0) * uj * uj * uj +
                  (p.gamma / 4.0) * uj * uj * uj * uj;
    }

    std::vector<Cplx> fhat = (dealias == Dealias::zero_pad_2x)
                                 ? ws.forward_truncated(flux)
                                 : ws.forward(flux);
    if (dealias == Dealias::two_thirds) apply_two_thirds(fhat, g);

    const int half = g.n / 2;
    for (int k = 0; k <= half; ++k) {
        double kk = wavenumber(k, g);
        Cplx ik(0.0, kk);
        if (k == half) ik = 0.0;
        fhat[static_cast<size_t>(k)] *= ik / (1.0 + e2 * kk * kk);
    }
    return fhat;
}

void check_finite(const Field& u, double t) {
    for (double v : u)
        if (!std::isfinite(v) || std::abs(v) > 1e8)
            throw BlowUpError(t, "solution blew up (non-finite or |u| > 1e8)");
}

}  // namespace

Field spectral_derivative(const Field& f, int order, const Grid& g) {
    check_field(f, g);
    auto& ws = workspace_for(g.n);
    auto s = ws.forward(f);
    apply_derivative(s, order, g);
    return ws.inverse(s);
}

Field helmholtz_inverse(const Field& f, double epsilon, const Grid& g) {
    check_field(f, g);
    if (epsilon == 0.0) return f;
    auto& ws = workspace_for(g.n);
    auto s = ws.forward(f);
    for (int k = 0; k <= g.n / 2; ++k) {
        double kk = wavenumber(k, g);
        s[static_cast<size_t>(k)] /= (1.0 + epsilon * epsilon * kk * kk);
    }
    return ws.inverse(s);
}

Field rhs(const Field& u, const EquationParams& p, const Grid& g,
          Dealias dealias) {
    check_field(u, g);
    p.validate();
    auto& ws = workspace_for(g.n);
    auto uhat = ws.forward(u);
    auto nhat = nonlinear_hat(uhat, p, g, dealias, ws);
    auto L = linear_symbol(p, g);
    for (size_t k = 0; k < nhat.size(); ++k) nhat[k] += L[k] * uhat[k];
    return ws.inverse(nhat);
}

namespace {

std::vector<Cplx> step_spectral(const std::vector<Cplx>& uhat, double dt,
                                const EquationParams& p, const Grid& g,
                                Dealias dealias, Workspace& ws) {
    auto L = linear_symbol(p, g);
    const size_t m = uhat.size();
    std::vector<Cplx> E(m), E2(m);
    for (size_t k = 0; k < m; ++k) {
        E[k] = std::exp(L[k] * (dt / 2.0));
        E2[k] = E[k] * E[k];
    }
    auto N = [&](const std::vector<Cplx>& s) {
        return nonlinear_hat(s, p, g, dealias, ws);
    };
    std::vector<Cplx> a = N(uhat);
    std::vector<Cplx> tmp(m);

    for (size_t k = 0; k < m; ++k) tmp[k] = E[k] * (uhat[k] + 0.5 * dt * a[k]);
    std::vector<Cplx> b = N(tmp);

    for (size_t k = 0; k < m; ++k) tmp[k] = E[k] * uhat[k] + 0.5 * dt * b[k];
    std::vector<Cplx> c = N(tmp);

    for (size_t k = 0; k < m; ++k)
        tmp[k] = E2[k] * uhat[k] + dt * E[k] * c[k];
    std::vector<Cplx> d = N(tmp);

    std::vector<Cplx> out(m);
    for (size_t k = 0; k < m; ++k)
        out[k] = E2[k] * uhat[k] +
                 (dt / 6.0) * (E2[k] * a[k] + 2.0 * E[k] * (b[k] + c[k]) + d[k]);
    return out;
}

}  // namespace

Field step(const Field& u, double dt, const EquationParams& p, const Grid& g,
           const SolverConfig& cfg) {
    check_field(u, g);
    p.validate();
    auto& ws = workspace_for(g.n);
    auto out = ws.inverse(step_spectral(ws.forward(u), dt, p, g, cfg.dealias, ws));
    check_finite(out, dt);
    return out;
}

Trajectory simulate(const Field& u0, const EquationParams& p, const Grid& g,
                    const SolverConfig& cfg) {
    check_field(u0, g);
    p.validate();
    cfg.validate();
    check_finite(u0, 0.0);

    auto& ws = workspace_for(g.n);
    Trajectory tr;
    auto record = [&](double t, const Field& u) {
        tr.times.push_back(t);
        tr.states.push_back(u);
        for (auto& [name, value] : monitors(u, p, g))
            tr.monitors[name].push_back(value);
    };
    record(0.0, u0);

    const long nsteps = static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-12));
    auto uhat = ws.forward(u0);
    double t = 0.0;
    for (long s = 1; s <= nsteps; ++s) {
        double dt = std::min(cfg.dt, cfg.t_end - t);
        uhat = step_spectral(uhat, dt, p, g, cfg.dealias, ws);
        t += dt;
        bool snapshot = (s % cfg.monitor_every == 0) || (s == nsteps);
        if (snapshot) {
            Field u = ws.inverse(uhat);
            try {
                check_finite(u, t);
            } catch (const BlowUpError&) {
                throw BlowUpError(tr.times.back(),
                                  "solution blew up; last valid time attached");
            }
            record(t, u);
        }
    }
    return tr;
}

std::map<std::string, double> monitors(const Field& u, const EquationParams& p,
                                       const Grid& g) {
    check_field(u, g);
    const double h = g.spacing();
    const double e2 = p.epsilon * p.epsilon;
    Field ux = spectral_derivative(u, 1, g);
    Field uxx = spectral_derivative(u, 2, g);

    double mass = 0.0, energy = 0.0, m_mass = 0.0;
    double m_min = std::numeric_limits<double>::infinity();
    double slope_bound = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < u.size(); ++j) {
        double m = u[j] - e2 * uxx[j];
        mass += u[j];
        energy += u[j] * u[j] + e2 * ux[j] * ux[j];
        m_mass += m;
        m_min = std::min(m_min, m);
        slope_bound = std::max(slope_bound, -e2 * ux[j]);
    }
    std::map<std::string, double> out{
        {"mass", mass * h},
        {"energy", 0.5 * energy * h},
        {"m_mass", m_mass * h},
        {"m_min", m_min},
        {"slope_bound", slope_bound},
    };
    bool sqrt_regime = p.beta == 0.0 && p.gamma == 0.0 &&
                       std::abs(p.big_gamma + p.alpha * e2) <=
                           1e-14 * (1.0 + std::abs(p.big_gamma));
    if (sqrt_regime && m_min > 0.0) {
        double sm = 0.0;
        for (size_t j = 0; j < u.size(); ++j)
            sm += std::sqrt(u[j] - e2 * uxx[j]);
        out["sqrt_m_mass"] = sm * h;
    }
    return out;
}

std::string trajectory_to_csv(const Trajectory& tr, const Grid& g) {
    std::ostringstream os;
    os.precision(17);
    os << "t,x,u\n";
    for (size_t i = 0; i < tr.times.size(); ++i)
        for (int j = 0; j < g.n; ++j)
            os << tr.times[i] << "," << g.x(j) << ","
               << tr.states[i][static_cast<size_t>(j)] << "\n";
    return os.str();
}

std::string monitors_to_csv(const Trajectory& tr) {
    std::ostringstream os;
    os.precision(17);
    os << "t,name,value\n";
    for (size_t i = 0; i < tr.times.size(); ++i)
        for (auto& [name, series] : tr.monitors)
            os << tr.times[i] << "," << name << "," << series[i] << "\n";
    return os.str();
}

std::string trajectory_summary_json(const Trajectory& tr,
                                    const EquationParams& p, const Grid& g) {
    nlohmann::json j;
    j["params"] = {{"alpha", p.alpha},     {"beta", p.beta},
                   {"gamma", p.gamma},     {"Gamma", p.big_gamma},
                   {"epsilon", p.epsilon}};
    j["grid"] = {{"L", g.length}, {"n", g.n}};
    j["times"] = tr.times;
    for (auto& [name, series] : tr.monitors) j["monitors"][name] = series;
    return j.dump(2);
}

void write_raw_field(const Field& u, const Grid& g, double t,
                     const std::string& path_base) {
    std::ofstream raw(path_base + ".f64", std::ios::binary);
    raw.write(reinterpret_cast<const char*>(u.data()),
              static_cast<std::streamsize>(u.size() * sizeof(double)));
    nlohmann::json j{{"n", g.n}, {"L", g.length}, {"t", t}};
    std::ofstream side(path_base + ".json");
    side << j.dump(2) << "\n";
}

Field read_raw_field(const std::string& path_base, Grid* g_out, double* t_out) {
    std::ifstream side(path_base + ".json");
    if (!side) throw ValidationError("missing sidecar: " + path_base + ".json");
    nlohmann::json j;
    side >> j;
    Grid g(j.at("L").get<double>(), j.at("n").get<int>());
    Field u(static_cast<size_t>(g.n));
    std::ifstream raw(path_base + ".f64", std::ios::binary);
    if (!raw) throw ValidationError("missing raw dump: " + path_base + ".f64");
    raw.read(reinterpret_cast<char*>(u.data()),
             static_cast<std::streamsize>(u.size() * sizeof(double)));
    if (g_out) *g_out = g;
    if (t_out) *t_out = j.at("t").get<double>();
    return u;
}

}  // namespace ghcwave
