#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ghcwave/profile_builder.hpp"
#include "ghcwave/wave_classifier.hpp"
#include "oracles.hpp"

using namespace ghcwave;

namespace {

// mpmath tanh-sinh value of the z-span of the eps=0 smooth periodic instance
// F(phi) = (1 - phi^2)(phi^2 - phi + 1) on (-1, 1)
constexpr double kThm53HalfPeriod = 2.8175842073530862278;

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<size_t>(i)] = a + (b - a) * i / (n - 1.0);
    return v;
}

const EquationParams kCH(0, 0, 0, 0, 1);          // CH peakon member
const WaveParams kCHWave(1, 0, 0);
const EquationParams kThm53(1, 6, 0, 1, 0);       // eps=0 periodic member
const WaveParams kThm53Wave(-1, 0.5, -1);

double thm53_F(double x) {
    return (1.0 - x * x) * (x * x - x + 1.0);
}
double thm53_dF(double x) {
    // d/dphi of -(phi^4 - phi^3 + phi - 1)
    return -(4.0 * x * x * x - 3.0 * x * x + 1.0);
}

}  // namespace

TEST_CASE("half_period basics") {
    CHECK(half_period([](double x) { return 1.0 - x * x; }, -1.0, 1.0) ==
          doctest::Approx(M_PI).epsilon(1e-10));
    CHECK(std::isinf(
        half_period([](double x) { return x * x; }, 0.0, 1.0)));
    double hp = half_period(thm53_F, -1.0, 1.0);
    CHECK(hp == doctest::Approx(kThm53HalfPeriod).epsilon(1e-10));
    // independent tanh-sinh route; xc (distance to the nearer endpoint) keeps
    // the vanishing factors of F exact near +-1
    double ts = oracle::tanh_sinh_xc(
        [](double x, double xc) {
            double one_minus = (xc > 0.0) ? xc : 1.0 - x;
            double one_plus = (xc < 0.0) ? -xc : 1.0 + x;
            return 1.0 /
                   std::sqrt(one_minus * one_plus * (x * x - x + 1.0));
        },
        -1.0, 1.0);
    CHECK(hp == doctest::Approx(ts).epsilon(1e-11));
    // F <= 0 inside the interval is a domain error
    CHECK_THROWS_AS(half_period([](double x) { return 0.25 - x * x; }, -1.0, 1.0),
                    DomainError);
}

TEST_CASE("peakon closed form and its constraints") {
    Profile pk = peakon(kCH, 1.0);
    CHECK(pk.eval(0.0) == doctest::Approx(1.0));
    CHECK(pk.eval(2.0) == doctest::Approx(std::exp(-2.0)));
    CHECK(pk.eval(-2.0) == doctest::Approx(std::exp(-2.0)));

    Profile pk2 = peakon(EquationParams(1, 0, 0, -1, 1), 2.0);
    CHECK(pk2.eval(0.0) == doctest::Approx(3.0));
    CHECK(pk2.eval(1.5) == doctest::Approx(3.0 * std::exp(-1.5)));

    CHECK_THROWS_WITH_AS(peakon(EquationParams(0, 1, 0, 0, 1), 1.0),
                         doctest::Contains("beta"), ValidationError);
    CHECK_THROWS_WITH_AS(peakon(EquationParams(0, 0, 0.1, 0, 1), 1.0),
                         doctest::Contains("gamma"), ValidationError);
    CHECK_THROWS_WITH_AS(peakon(EquationParams(1, 0, 0, 0.5, 1), 1.0),
                         doctest::Contains("Gamma"), ValidationError);
}

TEST_CASE("numeric peakon profile vs closed form") {
    auto verdicts = classify(kCH, kCHWave);
    REQUIRE(verdicts.size() == 1);
    auto zg = linspace(-8, 8, 1601);
    Profile num = integrate_profile(verdicts[0], kCH, kCHWave, zg);
    double worst = 0.0;
    for (double z : zg)
        worst = std::max(worst, std::abs(num.eval(z) - std::exp(-std::abs(z))));
    CHECK(worst <= 1e-8);

    SUBCASE("slope jump at the crest") {
        double h = 1e-6;
        double right = (num.eval(h) - num.eval(0.0)) / h;
        double left = (num.eval(0.0) - num.eval(-h)) / h;
        CHECK(right == doctest::Approx(-1.0).epsilon(1e-4));
        CHECK(left == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("periodic profile: period, residual, symmetry, ODE cross-check") {
    auto verdicts = classify(kThm53, kThm53Wave);
    REQUIRE(verdicts.size() == 1);
    double hp = half_period(thm53_F, -1.0, 1.0);

    auto zg = linspace(-2.0 * hp, 2.0 * hp, 4096);
    Profile prof = integrate_profile(verdicts[0], kThm53, kThm53Wave, zg);
    REQUIRE(prof.meta.period.has_value());
    CHECK(*prof.meta.period == doctest::Approx(2.0 * hp).epsilon(1e-10));

    // independent turning-point RK4 oracle for the period
    double ode_T = oracle::ode_period(thm53_dF, 1.0, 2.0 * hp, 1e-5 * hp);
    CHECK(*prof.meta.period == doctest::Approx(ode_T).epsilon(1e-6));

    // quadrature residual of the once-integrated relation
    CHECK(quadrature_residual(prof, kThm53, kThm53Wave) <= 1e-6);

    // profile bounded by the root interval and even about the crest
    double sym = 0.0;
    for (double z : linspace(0.0, 2.0 * hp, 500)) {
        CHECK(prof.eval(z) >= -1.0 - 1e-9);
        CHECK(prof.eval(z) <= 1.0 + 1e-9);
        sym = std::max(sym, std::abs(prof.eval(z) - prof.eval(-z)));
    }
    CHECK(sym <= 1e-8);

    SUBCASE("corrupted profile trips the residual detector") {
        Profile bad = prof;
        for (size_t i = 0; i < bad.phi.size(); ++i)
            bad.phi[i] += 0.01 * std::sin(7.0 * bad.z[i]);
        CHECK(quadrature_residual(bad, kThm53, kThm53Wave) >= 1e-3);
    }
}

TEST_CASE("asymptotic profile approaches the double root exponentially") {
    // CH-type smooth asymptotic wave: scaled (beta,gamma)=(1,-1) peakon-decay
    // has a double root at 0; check its tail rate against linearized sqrt(F)
    EquationParams p(0, 6, -10, 0, 1);
    WaveParams w(1, 0, 0);
    auto verdicts = classify(p, w);
    REQUIRE(verdicts.size() == 1);
    REQUIRE(verdicts[0].kind == Kind::peakon_decay);
    auto zg = linspace(-12, 12, 801);
    Profile prof = integrate_profile(verdicts[0], p, w, zg);

    // F(phi) = phi^2 (phi^2 + 1) near 0: kappa = sqrt(F''(0)/2) = 1
    double kappa = 1.0;
    for (double z : {4.0, 6.0, 8.0}) {
        double ratio = prof.eval(z + 1.0) / prof.eval(z);
        CHECK(ratio == doctest::Approx(std::exp(-kappa)).epsilon(2e-2));
    }
    CHECK(prof.eval(30.0) < 1e-10);
}

TEST_CASE("explicit hyperbolic families satisfy the integrated relation") {
    SUBCASE("cosh with alpha = Gamma = 0 reduces to cosh(z)") {
        Profile f = explicit_family(kCH, 2.0, FamilyBranch::cosh_even, 1.0);
        CHECK(f.eval(0.7) == doctest::Approx(std::cosh(0.7)).epsilon(1e-14));
        Profile sp = explicit_family(kCH, 2.0, FamilyBranch::sinh_plus, 1.0);
        CHECK(sp.eval(0.7) == doctest::Approx(std::sinh(0.7)).epsilon(1e-14));
        Profile sm = explicit_family(kCH, 2.0, FamilyBranch::sinh_minus, 1.0);
        CHECK(sm.eval(0.7) == doctest::Approx(-std::sinh(0.7)).epsilon(1e-14));
    }
    SUBCASE("residual against (A, B) from the quadrature, generic parameters") {
        // step near the 4th-order-stencil optimum eps_mach^{1/6}
        EquationParams p(0.4, 0, 0, 0.3, 1.25);
        for (auto branch : {FamilyBranch::cosh_even, FamilyBranch::sinh_plus,
                            FamilyBranch::sinh_minus}) {
            double c = 0.8, lambda = 1.5;
            Profile f = explicit_family(p, lambda, branch, c);
            WaveParams w = explicit_family_wave(p, lambda, branch, c);
            auto zg = linspace(-3, 3, 2049);
            f.z = zg;
            f.phi.resize(zg.size());
            for (size_t i = 0; i < zg.size(); ++i) f.phi[i] = f.eval(zg[i]);
            CHECK(quadrature_residual(f, p, w) <= 1e-8);
        }
    }
    SUBCASE("parameter constraints are enforced") {
        CHECK_THROWS_AS(
            explicit_family(EquationParams(0, 1, 0, 0, 1), 2.0,
                            FamilyBranch::cosh_even, 1.0),
            ValidationError);
        CHECK_THROWS_AS(explicit_family(kCH, 0.0, FamilyBranch::cosh_even, 1.0),
                        ValidationError);
    }
}

TEST_CASE("sqrt-m quadrature branches") {
    SUBCASE("k1 = 0 regular branch gives pure exponentials") {
        // (eps phi')^2 = phi^2 -> phi = C e^{+-z/eps}
        EquationParams p(0, 0, 0, 0, 1);  // alpha=0, c=1 -> phi = 1/w
        auto wg = linspace(0.5, 1.5, 101);
        Profile prof = sqrt_m_quadrature(p, 1.0, 0.0, 0.0, wg);
        // phi = 1 + 1/w; z = -eps ln(phi) + const: check log-linearity
        double c0 = prof.phi.front() * std::exp(prof.z.front());
        for (size_t i = 0; i < prof.z.size(); ++i)
            CHECK(prof.phi[i] * std::exp(prof.z[i]) ==
                  doctest::Approx(c0).epsilon(1e-9));
    }
    SUBCASE("k1 = 0 weak branch delegates to the peakon") {
        Profile prof = sqrt_m_quadrature(kCH, 1.0, 0.0, 0.0, {}, true);
        CHECK(prof.eval(1.0) == doctest::Approx(std::exp(-1.0)));
    }
    SUBCASE("k1 = 0.1 against direct integration of the phi-equation") {
        EquationParams p(0, 0, 0, 0, 1);
        double k1 = 0.1, c = 1.0;
        auto wg = linspace(0.5, 1.5, 401);
        Profile prof = sqrt_m_quadrature(p, c, k1, 0.0, wg);
        // frozen z-span from the mpmath tanh-sinh oracle
        double span = std::abs(prof.z.back() - prof.z.front());
        CHECK(span == doctest::Approx(0.58192658060908182466).epsilon(1e-10));

        // march (eps phi')^2 = phi^2 + k1/(phi - alpha - c) with RK4 between
        // the profile's own samples and compare at the nodes
        double sign = prof.phi.back() > prof.phi.front() ? 1.0 : -1.0;
        auto dphi = [&](double phi) {
            return sign * std::sqrt(phi * phi + k1 / (phi - c));
        };
        double worst = 0.0;
        double y = prof.phi.front();
        for (size_t i = 0; i + 1 < prof.z.size(); ++i) {
            double span = prof.z[i + 1] - prof.z[i];
            int sub = 64;
            double dz = span / sub;
            for (int s = 0; s < sub; ++s) {
                double k1r = dphi(y);
                double k2r = dphi(y + 0.5 * dz * k1r);
                double k3r = dphi(y + 0.5 * dz * k2r);
                double k4r = dphi(y + dz * k3r);
                y += dz / 6.0 * (k1r + 2 * k2r + 2 * k3r + k4r);
            }
            worst = std::max(worst, std::abs(prof.phi[i + 1] - y));
        }
        CHECK(worst <= 1e-6);
    }
    SUBCASE("singular range is rejected") {
        auto wg = linspace(-0.5, 0.5, 11);  // crosses w = 0
        CHECK_THROWS_AS(sqrt_m_quadrature(kCH, 1.0, 0.1, 0.0, wg), DomainError);
    }
}

TEST_CASE("profile CSV and meta round out the export surface") {
    auto verdicts = classify(kCH, kCHWave);
    auto zg = linspace(-4, 4, 33);
    Profile prof = integrate_profile(verdicts[0], kCH, kCHWave, zg);
    std::string csv = profile_to_csv(prof);
    CHECK(csv.rfind("z,phi\n", 0) == 0);
    CHECK(profile_meta_json(prof).find("peakon_decay") != std::string::npos);

    Grid g(40.0, 256);
    Field u = profile_to_field(prof, g, 20.0);
    CHECK(u.size() == 256);
    // crest lands at x = 20
    size_t imax = 0;
    for (size_t i = 0; i < u.size(); ++i)
        if (u[i] > u[imax]) imax = i;
    CHECK(std::abs(g.x(static_cast<int>(imax)) - 20.0) <= g.spacing());
}
