#include "ghcwave/wave_classifier.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ghcwave/errors.hpp"

namespace ghcwave {

namespace {

// Fixed-precision floor of multiple-root resolution: eigenvalues of an exact
// double root scatter by about sqrt(machine eps), so clusters tighter than
// this cannot be told apart from a single multiple root.
constexpr double kMultiplicityFloor = 2e-6;

double cluster_radius(double tol, double scale) {
    return std::max(tol, kMultiplicityFloor) * (1.0 + std::abs(scale));
}

std::vector<double> trimmed_coeffs(const QuinticPoly& poly) {
    double scale = 0.0;
    for (double c : poly.c) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) throw DomainError("zero polynomial has no root set");
    std::vector<double> c(poly.c.begin(), poly.c.end());
    while (c.size() > 1 && std::abs(c.back()) <= 1e-13 * scale) c.pop_back();
    return c;  // c[k] multiplies phi^k, leading coefficient last
}

std::complex<double> eval_poly(const std::vector<double>& c,
                               std::complex<double> z) {
    std::complex<double> r = 0.0;
    for (size_t k = c.size(); k-- > 0;) r = r * z + c[k];
    return r;
}

std::vector<double> derive_coeffs(const std::vector<double>& c) {
    std::vector<double> d;
    for (size_t k = 1; k < c.size(); ++k) d.push_back(k * c[k]);
    if (d.empty()) d.push_back(0.0);
    return d;
}

void newton_polish(const std::vector<double>& c, std::complex<double>& z,
                   int iters = 40) {
    auto dc = derive_coeffs(c);
    for (int i = 0; i < iters; ++i) {
        auto f = eval_poly(c, z);
        auto df = eval_poly(dc, z);
        if (std::abs(df) == 0.0) break;
        auto step = f / df;
        z -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
}

double newton_polish_real(const std::vector<double>& c, double x,
                          int iters = 40) {
    auto dc = derive_coeffs(c);
    for (int i = 0; i < iters; ++i) {
        double f = eval_poly(c, x).real();
        double df = eval_poly(dc, x).real();
        if (df == 0.0) break;
        double step = f / df;
        x -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    return x;
}

}  // namespace

int RootSpec::degree() const {
    int d = 0;
    for (auto& [v, m] : roots) {
        (void)v;
        d += m;
    }
    return d + 2 * static_cast<int>(pairs.size());
}

const char* role_name(Role r) {
    switch (r) {
        case Role::min_attained: return "min_attained";
        case Role::inf_asymptotic: return "inf_asymptotic";
        case Role::max_attained: return "max_attained";
        case Role::sup_asymptotic: return "sup_asymptotic";
        case Role::cusp_extremum: return "cusp_extremum";
        case Role::peak_extremum: return "peak_extremum";
    }
    return "?";
}

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::smooth_periodic: return "smooth_periodic";
        case Kind::smooth_asymptotic: return "smooth_asymptotic";
        case Kind::peakon_periodic: return "peakon_periodic";
        case Kind::peakon_decay: return "peakon_decay";
        case Kind::cuspon_periodic: return "cuspon_periodic";
        case Kind::cuspon_decay: return "cuspon_decay";
        case Kind::unbounded: return "unbounded";
        case Kind::none: return "none";
    }
    return "?";
}

namespace {

constexpr double kEpsMach = 2.220446049250313e-16;

// Horner evaluation together with the running magnitude sum |c_k||x|^k,
// the natural bound on the round-off of the computed value.
std::pair<double, double> eval_with_magnitude(const std::vector<double>& c,
                                              double x) {
    double v = 0.0, mag = 0.0, ax = std::abs(x);
    for (size_t k = c.size(); k-- > 0;) {
        v = v * x + c[k];
        mag = mag * ax + std::abs(c[k]);
    }
    return {v, mag};
}

// Resolve a sorted run of near-real eigenvalue abscissae into roots with
// multiplicities.  A candidate m-fold root (polished on P^(m-1)) is accepted
// when every lower derivative evaluates at the round-off floor there -- the
// fixed-precision criterion separating a true multiple root from a tight
// cluster of simple ones.  Otherwise the run splits at its widest gap.
void resolve_real_run(const std::vector<double>& c, std::vector<double>& vals,
                      size_t lo, size_t hi, double tol, RootSet& out) {
    const size_t m = hi - lo;
    if (m == 0) return;
    double centroid = 0.0;
    for (size_t i = lo; i < hi; ++i) centroid += vals[i];
    centroid /= static_cast<double>(m);
    std::vector<double> pm = c;
    for (size_t k = 1; k < m; ++k) pm = derive_coeffs(pm);
    double r = newton_polish_real(pm, centroid);
    if (!std::isfinite(r)) throw IllConditionedError("root polish diverged");

    bool ok = true;
    if (m > 1) {
        std::vector<double> dj = c;
        for (size_t j = 0; j + 1 < m; ++j) {
            auto [v, mag] = eval_with_magnitude(dj, r);
            if (std::abs(v) > mag * std::max(50.0 * kEpsMach, 0.0)) ok = false;
            dj = derive_coeffs(dj);
        }
        // user-facing coarse clustering: members within tol of the centre
        // merge regardless of the value criterion
        if (!ok) {
            bool within = true;
            for (size_t i = lo; i < hi; ++i)
                within &= std::abs(vals[i] - r) <= tol * (1.0 + std::abs(r));
            ok = within;
        }
    }
    if (ok || m == 1) {
        out.roots.push_back({r, static_cast<int>(m)});
        return;
    }
    size_t split = lo + 1;
    double widest = -1.0;
    for (size_t i = lo; i + 1 < hi; ++i) {
        double gap = vals[i + 1] - vals[i];
        if (gap > widest) {
            widest = gap;
            split = i + 1;
        }
    }
    resolve_real_run(c, vals, lo, split, tol, out);
    resolve_real_run(c, vals, split, hi, tol, out);
}

}  // namespace

RootSet real_roots(const QuinticPoly& poly, double tol) {
    auto c = trimmed_coeffs(poly);
    const int deg = static_cast<int>(c.size()) - 1;
    RootSet rs;
    rs.degree = deg;
    if (deg == 0) return rs;

    // companion matrix of the monic normalization
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i)
        comp(i, deg - 1) = -c[static_cast<size_t>(i)] / c.back();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
    if (es.info() != Eigen::Success)
        throw IllConditionedError("companion eigenvalue solve failed");

    std::vector<std::complex<double>> z(static_cast<size_t>(deg));
    for (int i = 0; i < deg; ++i) {
        z[static_cast<size_t>(i)] = es.eigenvalues()[i];
        newton_polish(c, z[static_cast<size_t>(i)]);
    }

    // split near-real from genuinely complex eigenvalues; real companion
    // matrices deliver complex values in conjugate pairs
    std::vector<double> reals;
    int complex_count = 0;
    for (auto& v : z) {
        if (std::abs(v.imag()) <= cluster_radius(tol, std::abs(v)))
            reals.push_back(v.real());
        else
            ++complex_count;
    }
    if (complex_count % 2 != 0)
        throw IllConditionedError(
            "unpaired complex eigenvalue at this tolerance");
    rs.complex_pairs = complex_count / 2;

    std::sort(reals.begin(), reals.end());
    // break the sorted abscissae into runs: a gap wider than the worst-case
    // multiple-root scatter (eps_mach^{1/5}, with margin) separates roots
    size_t start = 0;
    for (size_t i = 1; i <= reals.size(); ++i) {
        double run_radius =
            std::max(tol, 2e-3) * (1.0 + std::abs(i < reals.size() ? reals[i] : reals[i - 1]));
        bool cut = (i == reals.size()) ||
                   (reals[i] - reals[i - 1] > run_radius);
        if (cut) {
            resolve_real_run(c, reals, start, i, tol, rs);
            start = i;
        }
    }
    std::sort(rs.roots.begin(), rs.roots.end(),
              [](const RootSet::Root& a, const RootSet::Root& b) {
                  return a.value < b.value;
              });
    for (size_t i = 0; i + 1 < rs.roots.size(); ++i) {
        double rad = cluster_radius(tol, rs.roots[i + 1].value);
        if (rs.roots[i + 1].value - rs.roots[i].value <= rad)
            throw IllConditionedError(
                "distinct roots closer than clustering tolerance");
    }
    return rs;
}

namespace {

enum class EndCat { attained, asymptotic, cusp, peak };

struct Endpoint {
    double value;
    EndCat cat;
    bool beyond_paper = false;
};

Role role_of(const Endpoint& e, bool is_lo) {
    switch (e.cat) {
        case EndCat::attained:
            return is_lo ? Role::min_attained : Role::max_attained;
        case EndCat::asymptotic:
            return is_lo ? Role::inf_asymptotic : Role::sup_asymptotic;
        case EndCat::cusp: return Role::cusp_extremum;
        case EndCat::peak: return Role::peak_extremum;
    }
    return Role::min_attained;
}

Kind kind_of(EndCat lo, EndCat hi) {
    bool asym = (lo == EndCat::asymptotic) || (hi == EndCat::asymptotic);
    if (lo == EndCat::peak || hi == EndCat::peak)
        return asym ? Kind::peakon_decay : Kind::peakon_periodic;
    if (lo == EndCat::cusp || hi == EndCat::cusp)
        return asym ? Kind::cuspon_decay : Kind::cuspon_periodic;
    return asym ? Kind::smooth_asymptotic : Kind::smooth_periodic;
}

std::string theorem_family(const EquationParams& p, const RootSet& rs) {
    int nreal = 0;
    for (auto& r : rs.roots) nreal += r.multiplicity;
    const bool eps0 = (p.epsilon == 0.0);
    const double gs = p.gamma / 10.0, bs = p.beta / 6.0;
    if (gs == 0.0 && bs == 0.0) return "CH/DGH family (prior work)";
    if (gs != 0.0) {
        if (eps0) {
            if (nreal == 3) return "Thm 5.1";
            if (nreal == 5) return "Thm 5.2";
            return "gamma!=0, one real zero (no bounded waves)";
        }
        if (nreal == 3) return "Thm 5.5";
        if (nreal == 5) return gs > 0.0 ? "Thm 5.6" : "Thm 5.7";
        return "gamma!=0, one real zero (no bounded waves)";
    }
    if (eps0) {
        if (nreal == 2) return "Thm 5.3";
        if (nreal == 4) return "Thm 5.4";
        return "beta!=0, no real zeros";
    }
    if (nreal == 2) return "Thm 5.8";
    if (nreal == 4) return bs > 0.0 ? "Thm 5.9" : "Thm 5.10";
    return "beta!=0, no real zeros";
}

std::string item_of(const std::string& family, Kind k, const EquationParams& p,
                    const EquationParams&) {
    auto base = [&]() -> std::string {
        if (family == "Thm 5.1" || family == "Thm 5.2") {
            if (k == Kind::smooth_periodic) return "item 1";
            if (k == Kind::smooth_asymptotic) return "item 2";
            return "";
        }
        if (family == "Thm 5.3") return "";
        if (family == "Thm 5.4") {
            double bt = (p.beta / 6.0) / p.big_gamma;
            return bt > 0.0 ? "item 1" : "item 2";
        }
        if (family == "Thm 5.8") {
            if (k == Kind::smooth_periodic) return "item 1";
            if (k == Kind::peakon_periodic) return "item 2";
            if (k == Kind::cuspon_periodic) return "item 3";
            return "";
        }
        switch (k) {
            case Kind::smooth_periodic: return "item 1";
            case Kind::smooth_asymptotic: return "item 2";
            case Kind::peakon_periodic: return "item 3";
            case Kind::peakon_decay: return "item 4";
            case Kind::cuspon_periodic: return "item 5";
            case Kind::cuspon_decay: return "item 6";
            default: return "";
        }
    }();
    return base;
}

std::string endpoint_label(double v, const RootSet& rs,
                           const std::optional<double>& pole, double rad) {
    if (pole && std::abs(v - *pole) <= rad) {
        // name the pole; when it coincides with a root the root index follows
        for (size_t i = 0; i < rs.roots.size(); ++i)
            if (std::abs(rs.roots[i].value - v) <= rad)
                return "c~=r" + std::to_string(i + 1);
        return "c~";
    }
    for (size_t i = 0; i < rs.roots.size(); ++i)
        if (std::abs(rs.roots[i].value - v) <= rad)
            return "r" + std::to_string(i + 1);
    return "?";
}

}  // namespace

std::vector<WaveVerdict> classify(const EquationParams& p, const WaveParams& w,
                                  double tol) {
    p.validate();
    w.validate();
    QuinticPoly P = poly_from_params(p, w);
    RootSet rs = real_roots(P, tol);
    std::optional<double> pole = pole_location(p, w);
    const double e2 = p.epsilon * p.epsilon;

    auto denom = [&](double x) {
        return (p.epsilon != 0.0) ? e2 * (w.c - x) - p.big_gamma : -p.big_gamma;
    };
    auto F = [&](double x) { return P.eval(x) / denom(x); };

    // distinguished points: distinct roots plus a non-coincident pole
    struct Dist {
        double value;
        int mult;       // 0: pure pole
        bool is_pole;   // pole lies here (possibly coincident with a root)
    };
    std::vector<Dist> pts;
    bool pole_on_root = false;
    for (auto& r : rs.roots) {
        bool coincide = pole && std::abs(r.value - *pole) <=
                                    cluster_radius(tol, std::max(std::abs(r.value), std::abs(*pole)));
        pts.push_back({r.value, r.multiplicity, coincide});
        pole_on_root |= coincide;
    }
    if (pole && !pole_on_root) pts.push_back({*pole, 0, true});
    std::sort(pts.begin(), pts.end(),
              [](const Dist& a, const Dist& b) { return a.value < b.value; });

    auto endpoint_of = [&](const Dist& d) -> Endpoint {
        Endpoint e{d.value, EndCat::attained, false};
        if (d.is_pole) {
            if (d.mult == 0) {
                e.cat = EndCat::cusp;
            } else if (d.mult == 1) {
                e.cat = EndCat::peak;
            } else {
                // pole cancels one factor; effective zero order mult-1
                int eff = d.mult - 1;
                e.cat = (eff % 2 == 0) ? EndCat::asymptotic : EndCat::attained;
                e.beyond_paper = true;
            }
        } else {
            e.cat = (d.mult % 2 == 1) ? EndCat::attained : EndCat::asymptotic;
            e.beyond_paper = d.mult > 2;
        }
        return e;
    };

    std::vector<WaveVerdict> out;
    const std::string family = theorem_family(p, rs);
    const double rad = cluster_radius(tol, 1.0);

    auto push_verdict = [&](const Endpoint& lo, const Endpoint& hi) {
        WaveVerdict v;
        v.lo = lo.value;
        v.hi = hi.value;
        v.lo_role = role_of(lo, true);
        v.hi_role = role_of(hi, false);
        v.kind = kind_of(lo.cat, hi.cat);
        std::ostringstream tag;
        tag << family;
        std::string item = item_of(family, v.kind, p, p);
        if (!item.empty()) tag << " " << item;
        tag << " [" << endpoint_label(v.lo, rs, pole, rad) << ","
            << endpoint_label(v.hi, rs, pole, rad) << "]";
        if (lo.beyond_paper || hi.beyond_paper)
            tag << " beyond-paper: endpoint multiplicity outside enumerated cases";
        v.theorem_tag = tag.str();
        out.push_back(std::move(v));
    };

    // bounded gaps only: intervals running to infinity carry no bounded wave
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double a = pts[i].value, b = pts[i + 1].value;
        double mid = 0.5 * (a + b);
        if (!(F(mid) > 0.0)) continue;
        push_verdict(endpoint_of(pts[i]), endpoint_of(pts[i + 1]));
    }
    return out;
}

VietaResult coefficients_from_roots(const RootSpec& spec,
                                    const EquationParams& partial, double c) {
    const int deg = spec.degree();
    if (deg != 4 && deg != 5)
        throw ValidationError("root spec degree must be 4 or 5");
    if (c == 0.0) throw ValidationError("wave speed c must be nonzero");
    for (auto& [pp, qq] : spec.pairs)
        if (qq - pp * pp / 4.0 <= 0.0)
            throw ValidationError("quadratic factor has real zeros");

    // expand the monic product
    std::vector<double> mono{1.0};  // descending powers
    auto mul_factor = [&](const std::vector<double>& f) {
        std::vector<double> r(mono.size() + f.size() - 1, 0.0);
        for (size_t i = 0; i < mono.size(); ++i)
            for (size_t j = 0; j < f.size(); ++j) r[i + j] += mono[i] * f[j];
        mono = std::move(r);
    };
    for (auto& [v, m] : spec.roots)
        for (int k = 0; k < m; ++k) mul_factor({1.0, -v});
    for (auto& [pp, qq] : spec.pairs) mul_factor({1.0, pp, qq});

    // mono[k] multiplies phi^{deg-k}; phi^3 coefficient is mono[deg-3]
    double a3 = mono[static_cast<size_t>(deg - 3)];
    double mscale = 0.0;
    for (double v : mono) mscale = std::max(mscale, std::abs(v));
    if (std::abs(a3) <= 1e-12 * mscale)
        throw ValidationError(
            "infeasible root spec: forced phi^3 coefficient -1 cannot be met");

    double lead = -1.0 / a3;
    VietaResult res;
    res.gamma_scaled = (deg == 5) ? lead : 0.0;
    res.beta_scaled = (deg == 5) ? lead * mono[1] : lead;
    double a2 = mono[static_cast<size_t>(deg - 2)];
    double a1 = mono[static_cast<size_t>(deg - 1)];
    double a0 = mono[static_cast<size_t>(deg)];

    res.params = partial;
    res.params.gamma = 10.0 * res.gamma_scaled;
    res.params.beta = 6.0 * res.beta_scaled;
    res.params.alpha = lead * a2 - c;
    res.params.validate();
    res.wave = WaveParams(c, lead * a1 / 2.0, lead * a0);
    return res;
}

double stumpon_A(const EquationParams& p, double c) {
    p.validate();
    if (p.epsilon == 0.0)
        throw ValidationError("plateau constant needs eps != 0");
    double ct = c - p.big_gamma / (p.epsilon * p.epsilon);
    double gs = p.gamma / 10.0, bs = p.beta / 6.0;
    return 0.5 * (-5.0 * gs * ct * ct * ct * ct - 4.0 * bs * ct * ct * ct +
                  3.0 * ct * ct - 2.0 * (p.alpha + c) * ct);
}

std::string verdicts_to_json(const std::vector<WaveVerdict>& verdicts,
                             const EquationParams& p, const WaveParams& w,
                             double tol) {
    nlohmann::json j;
    QuinticPoly P = poly_from_params(p, w);
    RootSet rs = real_roots(P, tol);
    auto pole = pole_location(p, w);
    j["roots"] = nlohmann::json::array();
    for (auto& r : rs.roots)
        j["roots"].push_back({{"value", r.value}, {"mult", r.multiplicity}});
    j["complex_pairs"] = rs.complex_pairs;
    if (pole)
        j["pole"] = *pole;
    else
        j["pole"] = nullptr;
    j["verdicts"] = nlohmann::json::array();
    for (auto& v : verdicts) {
        nlohmann::json jv;
        jv["kind"] = kind_name(v.kind);
        jv["interval"] = nlohmann::json::array();
        auto endp = [](double x) -> nlohmann::json {
            if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
            return x;
        };
        jv["interval"].push_back(endp(v.lo));
        jv["interval"].push_back(endp(v.hi));
        jv["lo_role"] = role_name(v.lo_role);
        jv["hi_role"] = role_name(v.hi_role);
        jv["theorem_tag"] = v.theorem_tag;
        j["verdicts"].push_back(jv);
    }
    return j.dump(2);
}

}  // namespace ghcwave
