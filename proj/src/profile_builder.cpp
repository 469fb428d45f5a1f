#include "ghcwave/profile_builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ghcwave/errors.hpp"
#include "ghcwave/numerics.hpp"

namespace ghcwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailEps = 1e-12;  // asymptotic tables stop at |phi-r| < this

// order of the zero of F at an endpoint, probed from inside
double endpoint_order(const std::function<double(double)>& F, double at,
                      double inward, double width) {
    double d1 = width * 1e-4, d2 = width * 1e-5;
    double f1 = F(at + inward * d1), f2 = F(at + inward * d2);
    if (f1 <= 0.0 || f2 <= 0.0)
        throw DomainError("F not positive approaching an endpoint");
    return std::log10(f1 / f2);  // f ~ C d^p  =>  log-ratio = p
}

double checked_F(const std::function<double(double)>& F, double x, double lo,
                 double hi) {
    double v = F(x);
    double margin = 1e-7 * (hi - lo);
    if (v <= 0.0 && x > lo + margin && x < hi - margin)
        throw DomainError("F <= 0 inside the integration interval");
    return std::max(v, 1e-300);
}

// Quadrature data in factored-friendly form: P / D with
// D = eps^2 (ctil - phi) for eps != 0, else the constant -Gamma.
struct QuadForm {
    QuinticPoly P;
    bool has_pole = false;
    double e2 = 0.0, ctil = 0.0, neg_gamma = 0.0;

    double D(double phi) const {
        return has_pole ? e2 * (ctil - phi) : neg_gamma;
    }
    double F(double phi) const { return P.eval(phi) / D(phi); }
};

// synthetic division by (phi - r); remainder dropped (r is a root)
std::vector<double> deflate_once(const std::vector<double>& asc, double r) {
    std::vector<double> out(asc.size() - 1, 0.0);
    double carry = asc.back();
    for (size_t k = asc.size() - 1; k-- > 0;) {
        out[k] = carry;
        carry = asc[k] + carry * r;
    }
    return out;
}

double eval_asc(const std::vector<double>& asc, double x) {
    double v = 0.0;
    for (size_t k = asc.size(); k-- > 0;) v = v * x + asc[k];
    return v;
}

// endpoint structure: multiplicity of the P-root there (0 for a pure pole)
// and whether the quadrature pole sits at this value
struct EndpointInfo {
    double value = 0.0;
    int root_mult = 0;
    bool pole_here = false;
};

// base(phi) and vanishing order k such that F = (dir (phi-e))^k * base near e
struct FactoredEnd {
    std::vector<double> Q;  // P with the endpoint root divided out
    bool pole_folded = false;
    QuadForm quad;          // owned copy: eval closures outlive the caller
    int k = 0;

    double base(double phi) const {
        double q = eval_asc(Q, phi);
        if (pole_folded) return -q / quad.e2;
        return q / quad.D(phi);
    }
};

FactoredEnd factor_end(const QuadForm& quad, const EndpointInfo& e) {
    FactoredEnd fe;
    fe.quad = quad;
    fe.Q.assign(quad.P.c.begin(), quad.P.c.end());
    while (fe.Q.size() > 1 && fe.Q.back() == 0.0) fe.Q.pop_back();
    for (int m = 0; m < e.root_mult; ++m) fe.Q = deflate_once(fe.Q, e.value);
    fe.pole_folded = e.pole_here;
    fe.k = e.root_mult - (e.pole_here ? 1 : 0);
    if (fe.k < -1 || fe.k > 2)
        throw ValidationError(
            "endpoint vanishing order outside the supported profile cases");
    return fe;
}

// One smooth monotone piece of the map z(p); phi(p) strictly monotone.
struct Segment {
    double p_lo, p_hi;
    double z_lo, z_hi;
    std::function<double(double)> phi_of_p;
    std::function<double(double)> dz_dp;  // >= 0, smooth
    std::vector<double> pn, zn;           // cumulative nodes for inversion

    void build_nodes(int count = 64) {
        pn.resize(static_cast<size_t>(count) + 1);
        zn.resize(pn.size());
        double z = z_lo;
        for (int i = 0; i <= count; ++i) {
            double p = p_lo + (p_hi - p_lo) * i / static_cast<double>(count);
            if (i > 0)
                z += num::integrate(dz_dp, pn[static_cast<size_t>(i - 1)], p,
                                    1e-13);
            pn[static_cast<size_t>(i)] = p;
            zn[static_cast<size_t>(i)] = z;
        }
        z_hi = zn.back();
    }

    // invert z(p) = zq: locate the node interval, then safeguarded Newton on
    // z(p) - zq measured from the nearest cumulative node
    double p_of_z(double zq) const {
        size_t hi = static_cast<size_t>(
            std::upper_bound(zn.begin(), zn.end(), zq) - zn.begin());
        if (hi == 0) return pn.front();
        if (hi >= zn.size()) return pn.back();
        size_t lo = hi - 1;
        double a = pn[lo], b = pn[hi];
        double t = (zq - zn[lo]) / std::max(zn[hi] - zn[lo], 1e-300);
        double p = a + t * (b - a);
        for (int it = 0; it < 40; ++it) {
            double z = zn[lo] + num::integrate(dz_dp, pn[lo], p, 1e-13);
            double f = z - zq;
            if (std::abs(f) <= 1e-14 * (1.0 + std::abs(zq))) break;
            if (f > 0.0)
                b = p;
            else
                a = p;
            double d = dz_dp(p);
            double step = d > 0.0 ? f / d : 0.0;
            double next = p - step;
            if (!(next >= a && next <= b)) next = 0.5 * (a + b);
            if (std::abs(next - p) < 1e-16 * (1.0 + std::abs(p))) {
                p = next;
                break;
            }
            p = next;
        }
        return p;
    }
};

// Half of a symmetric (or one signed side of a front) profile: z in [0, z_end]
// plus an optional analytic exponential tail.
struct HalfBranch {
    std::vector<Segment> segments;  // consecutive in z
    double z_end = 0.0;
    bool has_tail = false;
    double tail_root = 0.0, tail_kappa = 0.0, tail_d0 = 0.0, tail_sign = 1.0;

    double eval(double z) const {
        if (z <= 0.0) return segments.front().phi_of_p(segments.front().p_lo);
        for (const auto& s : segments)
            if (z <= s.z_hi) return s.phi_of_p(s.p_of_z(z));
        if (has_tail)
            return tail_root +
                   tail_sign * tail_d0 * std::exp(-tail_kappa * (z - z_end));
        return segments.back().phi_of_p(segments.back().p_hi);
    }
};

// Build the half-branch from the crest endpoint toward the far endpoint.
// The crest sits at z = 0; phi moves from crest.value to far.value.
// Endpoint singularities are removed exactly: the known root factors are
// divided out before the square root is taken.
HalfBranch build_half_factored(const QuadForm& quad, const EndpointInfo& crest,
                               const EndpointInfo& far, bool far_asymptotic) {
    HalfBranch hb;
    const double dir = (far.value < crest.value) ? -1.0 : 1.0;
    const double span = std::abs(crest.value - far.value);

    // crest side: phi = crest + dir s^2, F = (dir s^2)^k base(phi)
    {
        FactoredEnd fe = factor_end(quad, crest);
        double e = crest.value;
        int k = fe.k;
        if (k > 1)
            throw ValidationError("crest endpoint cannot be asymptotic");
        Segment seg;
        seg.p_lo = 0.0;
        seg.p_hi = std::sqrt(span * 0.5);
        seg.phi_of_p = [=](double s) { return e + dir * s * s; };
        seg.dz_dp = [=](double s) {
            double phi = e + dir * s * s;
            double val = fe.base(phi);
            if (k == 1 || k == -1) val *= dir;
            val = std::max(val, 1e-300);
            double spow = (k == 1) ? 1.0 : (k == 0 ? s : s * s);
            return 2.0 * spow / std::sqrt(val);
        };
        seg.z_lo = 0.0;
        seg.build_nodes();
        hb.segments.push_back(seg);
    }
    double z_mid = hb.segments.back().z_hi;

    if (!far_asymptotic) {
        FactoredEnd fe = factor_end(quad, far);
        double e = far.value;
        double dir_f = -dir;
        int k = fe.k;
        Segment seg;
        double sg_max = std::sqrt(span * 0.5);
        seg.p_lo = 0.0;
        seg.p_hi = sg_max;
        seg.phi_of_p = [=](double p) {
            double sg = sg_max - p;
            return e + dir_f * sg * sg;
        };
        seg.dz_dp = [=](double p) {
            double sg = sg_max - p;
            double phi = e + dir_f * sg * sg;
            double val = fe.base(phi);
            if (k == 1 || k == -1) val *= dir_f;
            val = std::max(val, 1e-300);
            double spow = (k == 1) ? 1.0 : (k == 0 ? sg : sg * sg);
            return 2.0 * spow / std::sqrt(val);
        };
        seg.z_lo = z_mid;
        seg.build_nodes();
        hb.segments.push_back(seg);
        hb.z_end = hb.segments.back().z_hi;
        hb.has_tail = false;
    } else {
        // approach to a double root: phi = far + dir_f d0 e^{-tau},
        // dz/dtau = 1/sqrt(base(phi))
        FactoredEnd fe = factor_end(quad, far);
        if (fe.k != 2)
            throw ValidationError(
                "asymptotic endpoint of order other than two is not supported");
        double e = far.value;
        double dir_f = -dir;
        Segment seg;
        double d0 = span * 0.5;
        double tau_max = std::log(d0 / (kTailEps * (1.0 + std::abs(e))));
        seg.p_lo = 0.0;
        seg.p_hi = tau_max;
        seg.phi_of_p = [=](double tau) {
            return e + dir_f * d0 * std::exp(-tau);
        };
        seg.dz_dp = [=](double tau) {
            double phi = e + dir_f * d0 * std::exp(-tau);
            double val = std::max(fe.base(phi), 1e-300);
            return 1.0 / std::sqrt(val);
        };
        seg.z_lo = z_mid;
        seg.build_nodes();
        hb.segments.push_back(seg);
        hb.z_end = hb.segments.back().z_hi;
        hb.has_tail = true;
        hb.tail_root = e;
        hb.tail_kappa = std::sqrt(std::max(fe.base(e), 1e-300));
        hb.tail_d0 = kTailEps * (1.0 + std::abs(e));
        hb.tail_sign = dir_f;
    }
    return hb;
}

enum class Cat { attained, asymptotic, cusp, peak };

Cat cat_of(Role r) {
    switch (r) {
        case Role::min_attained:
        case Role::max_attained: return Cat::attained;
        case Role::inf_asymptotic:
        case Role::sup_asymptotic: return Cat::asymptotic;
        case Role::cusp_extremum: return Cat::cusp;
        case Role::peak_extremum: return Cat::peak;
        default:
            throw ValidationError("verdict endpoint role not profilable");
    }
}

void require_exact(bool ok, const std::string& constraint) {
    if (!ok) throw ValidationError("rejected: " + constraint);
}

}  // namespace

double half_period(const std::function<double(double)>& F, double lo,
                   double hi) {
    if (!(lo < hi)) throw ValidationError("half_period needs lo < hi");
    double w = hi - lo;
    double p_lo = endpoint_order(F, lo, +1.0, w);
    double p_hi = endpoint_order(F, hi, -1.0, w);
    if (p_lo >= 1.5 || p_hi >= 1.5)
        return std::numeric_limits<double>::infinity();

    double mid = 0.5 * (lo + hi);
    auto left = [&](double s) {
        return 2.0 * s / std::sqrt(checked_F(F, lo + s * s, lo, hi));
    };
    auto right = [&](double s) {
        return 2.0 * s / std::sqrt(checked_F(F, hi - s * s, lo, hi));
    };
    // below s_floor the black-box F suffers cancellation noise near a root; one
    // midpoint-rule slice there (the substituted integrand is smooth)
    double s_floor = 1e-5 * std::sqrt(w);
    double sm = std::sqrt(mid - lo);
    double sp = std::sqrt(hi - mid);
    double patch_l = s_floor * left(0.5 * s_floor);
    double patch_r = s_floor * right(0.5 * s_floor);
    return patch_l + num::integrate(left, s_floor, sm, 1e-12) + patch_r +
           num::integrate(right, s_floor, sp, 1e-12);
}

Profile integrate_profile(const WaveVerdict& v, const EquationParams& p,
                          const WaveParams& w,
                          const std::vector<double>& zgrid) {
    if (v.kind == Kind::none || v.kind == Kind::unbounded)
        throw ValidationError("verdict kind carries no bounded profile");
    p.validate();
    w.validate();

    QuadForm quad;
    quad.P = poly_from_params(p, w);
    quad.e2 = p.epsilon * p.epsilon;
    quad.has_pole = p.epsilon != 0.0;
    quad.ctil = quad.has_pole ? w.c - p.big_gamma / quad.e2 : 0.0;
    quad.neg_gamma = -p.big_gamma;

    // endpoint structure: root multiplicities from the classifier's root set,
    // pole coincidence from the pole location
    RootSet rs = real_roots(quad.P);
    auto pole = pole_location(p, w);
    auto end_info = [&](double value) {
        EndpointInfo e;
        e.value = value;
        for (auto& r : rs.roots)
            if (std::abs(r.value - value) <= 2e-6 * (1.0 + std::abs(value))) {
                e.value = r.value;
                e.root_mult = r.multiplicity;
                break;
            }
        e.pole_here = pole && std::abs(*pole - value) <=
                                  2e-6 * (1.0 + std::abs(value));
        return e;
    };

    Cat lo_cat = cat_of(v.lo_role), hi_cat = cat_of(v.hi_role);

    Profile prof;
    prof.meta.c = w.c;
    prof.meta.kind = v.kind;

    if (lo_cat == Cat::asymptotic && hi_cat == Cat::asymptotic) {
        // monotone front between two double roots; center where phi = midpoint
        double mid = 0.5 * (v.lo + v.hi);
        EndpointInfo center{mid, 0, false};
        HalfBranch up = build_half_factored(quad, center, end_info(v.hi), true);
        HalfBranch down =
            build_half_factored(quad, center, end_info(v.lo), true);
        prof.eval = [up, down](double z) {
            if (z >= 0.0) return up.eval(z);
            return down.eval(-z);
        };
    } else {
        // crest: prefer the pole endpoint, else the attained hi, else lo
        bool crest_is_hi;
        if (hi_cat == Cat::cusp || hi_cat == Cat::peak)
            crest_is_hi = true;
        else if (lo_cat == Cat::cusp || lo_cat == Cat::peak)
            crest_is_hi = false;
        else if (hi_cat == Cat::attained)
            crest_is_hi = true;
        else
            crest_is_hi = false;
        EndpointInfo crest = end_info(crest_is_hi ? v.hi : v.lo);
        EndpointInfo far = end_info(crest_is_hi ? v.lo : v.hi);
        Cat crest_cat = crest_is_hi ? hi_cat : lo_cat;
        Cat far_cat = crest_is_hi ? lo_cat : hi_cat;

        HalfBranch hb =
            build_half_factored(quad, crest, far, far_cat == Cat::asymptotic);
        bool periodic = far_cat != Cat::asymptotic;
        double half = hb.z_end;

        if (periodic) {
            double period = 2.0 * half;
            prof.meta.period = period;
            prof.eval = [hb, period, half](double z) {
                double zz = std::fmod(std::abs(z), period);
                if (zz > half) zz = period - zz;
                return hb.eval(zz);
            };
            prof.meta.crests = {0.0};
            if (crest_cat == Cat::cusp || crest_cat == Cat::peak) {
                double zspan = 0.0;
                for (double zq : zgrid) zspan = std::max(zspan, std::abs(zq));
                for (double zk = 0.0; zk <= zspan + period; zk += period) {
                    prof.kinks.push_back(zk);
                    if (zk > 0.0) prof.kinks.push_back(-zk);
                }
            }
        } else {
            prof.eval = [hb](double z) { return hb.eval(std::abs(z)); };
            prof.meta.crests = {0.0};
            if (crest_cat == Cat::cusp || crest_cat == Cat::peak)
                prof.kinks.push_back(0.0);
        }
    }

    prof.z = zgrid;
    std::sort(prof.z.begin(), prof.z.end());
    prof.phi.resize(prof.z.size());
    for (size_t i = 0; i < prof.z.size(); ++i) prof.phi[i] = prof.eval(prof.z[i]);
    return prof;
}

double quadrature_residual(const Profile& prof, const EquationParams& p,
                           const WaveParams& w) {
    const auto& z = prof.z;
    const auto& f = prof.phi;
    const size_t n = z.size();
    if (n < 7) throw ValidationError("profile too short for residual check");
    const double e2 = p.epsilon * p.epsilon;

    // uniform grid? then 4th-order stencils
    double h = z[1] - z[0];
    bool uniform = true;
    for (size_t i = 1; i + 1 < n; ++i)
        if (std::abs((z[i + 1] - z[i]) - h) > 1e-10 * std::abs(h)) {
            uniform = false;
            break;
        }

    auto near_kink = [&](double zi) {
        double guard = 3.0 * std::abs(h);
        for (double k : prof.kinks)
            if (std::abs(zi - k) <= guard) return true;
        return false;
    };

    double worst = 0.0;
    for (size_t i = 3; i + 3 < n; ++i) {
        if (near_kink(z[i])) continue;
        double d1, d2;
        if (uniform) {
            d1 = (-f[i + 2] + 8 * f[i + 1] - 8 * f[i - 1] + f[i - 2]) / (12 * h);
            d2 = (-f[i + 2] + 16 * f[i + 1] - 30 * f[i] + 16 * f[i - 1] -
                  f[i - 2]) /
                 (12 * h * h);
        } else {
            double hl = z[i] - z[i - 1], hr = z[i + 1] - z[i];
            d1 = (hl * hl * f[i + 1] - hr * hr * f[i - 1] +
                  (hr * hr - hl * hl) * f[i]) /
                 (hl * hr * (hl + hr));
            d2 = 2.0 * (hl * f[i + 1] + hr * f[i - 1] - (hl + hr) * f[i]) /
                 (hl * hr * (hl + hr));
        }
        double u = f[i];
        double lhs = -w.c * u + 1.5 * u * u - e2 * u * d2 - 0.5 * e2 * d1 * d1 +
                     w.c * e2 * d2 - p.alpha * u - (p.beta / 3.0) * u * u * u -
                     (p.gamma / 4.0) * u * u * u * u - p.big_gamma * d2;
        worst = std::max(worst, std::abs(lhs - w.A));
    }
    return worst;
}

Profile peakon(const EquationParams& p, double c) {
    p.validate();
    require_exact(p.beta == 0.0, "beta != 0 (need beta = 0)");
    require_exact(p.gamma == 0.0, "gamma != 0 (need gamma = 0)");
    require_exact(p.epsilon != 0.0, "eps = 0 (need eps != 0)");
    double e2 = p.epsilon * p.epsilon;
    require_exact(std::abs(p.big_gamma + p.alpha * e2) <=
                      1e-14 * (1.0 + std::abs(p.big_gamma)),
                  "Gamma != -alpha eps^2");
    require_exact(p.alpha + c != 0.0, "alpha + c = 0 (flat profile)");

    double amp = p.alpha + c;
    double eps = p.epsilon;
    Profile prof;
    prof.meta.c = c;
    prof.meta.kind = Kind::peakon_decay;
    prof.meta.crests = {0.0};
    prof.kinks = {0.0};
    prof.eval = [amp, eps](double z) { return amp * std::exp(-std::abs(z) / eps); };
    return prof;
}

WaveParams explicit_family_wave(const EquationParams& p, double lambda,
                                FamilyBranch branch, double c) {
    double e2 = p.epsilon * p.epsilon;
    double s = (p.big_gamma + p.alpha * e2) / (2.0 * e2);
    double phi_c = c - p.big_gamma / e2;
    double bq = -2.0 * s / e2;
    double d = (branch == FamilyBranch::cosh_even)
                   ? (s * s - lambda * lambda / 4.0) / e2
                   : (s * s + lambda * lambda / 4.0) / e2;
    double A = (bq * phi_c - d) * e2 / 2.0;
    double B = d * e2 * phi_c;
    return WaveParams(c, A, B);
}

Profile explicit_family(const EquationParams& p, double lambda,
                        FamilyBranch branch, double c) {
    p.validate();
    require_exact(p.beta == 0.0 && p.gamma == 0.0,
                  "explicit family needs beta = gamma = 0");
    require_exact(p.epsilon != 0.0, "explicit family needs eps != 0");
    require_exact(lambda != 0.0, "lambda must be nonzero");
    double e2 = p.epsilon * p.epsilon;
    double s = (p.big_gamma + p.alpha * e2) / (2.0 * e2);
    double eps = p.epsilon;

    Profile prof;
    prof.meta.c = c;
    prof.meta.kind = Kind::unbounded;
    double d = (branch == FamilyBranch::cosh_even)
                   ? (s * s - lambda * lambda / 4.0) / e2
                   : (s * s + lambda * lambda / 4.0) / e2;
    prof.meta.surface_d = d;
    switch (branch) {
        case FamilyBranch::cosh_even:
            prof.eval = [lambda, eps, s](double z) {
                return 0.5 * lambda * std::cosh(z / eps) + s;
            };
            break;
        case FamilyBranch::sinh_plus:
            prof.eval = [lambda, eps, s](double z) {
                return 0.5 * lambda * std::sinh(z / eps) + s;
            };
            break;
        case FamilyBranch::sinh_minus:
            prof.eval = [lambda, eps, s](double z) {
                return -0.5 * lambda * std::sinh(z / eps) + s;
            };
            break;
    }
    return prof;
}

Profile sqrt_m_quadrature(const EquationParams& p, double c, double k1,
                          double k2, const std::vector<double>& wgrid,
                          bool weak) {
    p.validate();
    require_exact(p.beta == 0.0 && p.gamma == 0.0,
                  "sqrt-m quadrature needs beta = gamma = 0");
    double e2 = p.epsilon * p.epsilon;
    require_exact(std::abs(p.big_gamma + p.alpha * e2) <=
                      1e-14 * (1.0 + std::abs(p.big_gamma)),
                  "sqrt-m quadrature needs Gamma = -alpha eps^2");
    if (k1 == 0.0 && weak) return peakon(p, c);
    if (wgrid.size() < 2)
        throw ValidationError("sqrt-m quadrature needs a w-range");

    double ac = p.alpha + c;
    auto G = [=](double w) {
        return k1 * w * w * w + (ac * w + 1.0) * (ac * w + 1.0);
    };
    for (double w : wgrid)
        if (w == 0.0 || G(w) <= 0.0)
            throw DomainError("singular integrand on the requested w-range");

    std::vector<double> zs(wgrid.size(), 0.0);
    for (size_t i = 1; i < wgrid.size(); ++i) {
        auto f = [&](double w) { return 1.0 / (w * std::sqrt(G(w))); };
        zs[i] = zs[i - 1] +
                p.epsilon * num::integrate(f, wgrid[i - 1], wgrid[i], 1e-12);
    }
    for (auto& z : zs) z += k2;

    Profile prof;
    prof.meta.c = c;
    prof.meta.kind = Kind::none;
    prof.z = zs;
    prof.phi.resize(wgrid.size());
    for (size_t i = 0; i < wgrid.size(); ++i)
        prof.phi[i] = ac + 1.0 / wgrid[i];
    if (prof.z.front() > prof.z.back()) {
        std::reverse(prof.z.begin(), prof.z.end());
        std::reverse(prof.phi.begin(), prof.phi.end());
    }
    num::MonotoneCubic interp(prof.z, prof.phi);
    prof.eval = [interp](double z) { return interp(z); };
    return prof;
}

std::string profile_to_csv(const Profile& prof) {
    std::ostringstream os;
    os.precision(17);
    os << "z,phi\n";
    for (size_t i = 0; i < prof.z.size(); ++i)
        os << prof.z[i] << "," << prof.phi[i] << "\n";
    return os.str();
}

std::string profile_meta_json(const Profile& prof) {
    nlohmann::json j;
    j["c"] = prof.meta.c;
    j["kind"] = kind_name(prof.meta.kind);
    if (prof.meta.period)
        j["period"] = *prof.meta.period;
    else
        j["period"] = nullptr;
    j["crests"] = prof.meta.crests;
    if (prof.meta.surface_d) j["surface_d"] = *prof.meta.surface_d;
    return j.dump(2);
}

Field profile_to_field(const Profile& prof, const Grid& g, double center) {
    if (!prof.eval) throw ValidationError("profile carries no evaluator");
    Field u(static_cast<size_t>(g.n));
    for (int j = 0; j < g.n; ++j)
        u[static_cast<size_t>(j)] = prof.eval(g.x(j) - center);
    return u;
}

}  // namespace ghcwave
