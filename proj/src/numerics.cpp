#include "ghcwave/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ghcwave::num {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

double adaptive(const std::function<double(double)>& f, double a, double b,
                double tol, int depth) {
    double err = 0.0;
    double v = GK::integrate(f, a, b, 0, 0.0, &err);
    if (std::isfinite(v) && err <= tol * std::max(1.0, std::abs(v)))
        return v;
    if (depth <= 0) {
        if (!std::isfinite(v))
            throw DomainError("integrand not integrable at this tolerance");
        return v;
    }
    double m = 0.5 * (a + b);
    return adaptive(f, a, m, tol, depth - 1) + adaptive(f, m, b, tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth) {
    if (a == b) return 0.0;
    return adaptive(f, a, b, tol, max_depth);
}

double integrate_piecewise(const std::function<double(double)>& f, double a,
                           double b, const std::vector<double>& kinks,
                           double tol) {
    std::vector<double> pts{a, b};
    for (double k : kinks)
        if (k > a && k < b) pts.push_back(k);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate(f, pts[i], pts[i + 1], tol);
    return total;
}

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    const size_t n = xs_.size();
    if (n < 2 || ys_.size() != n)
        throw DomainError("MonotoneCubic needs >= 2 matching nodes");
    std::vector<double> d(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        double h = xs_[i + 1] - xs_[i];
        if (h <= 0.0) throw DomainError("MonotoneCubic abscissae not increasing");
        d[i] = (ys_[i + 1] - ys_[i]) / h;
    }
    ms_.assign(n, 0.0);
    // parabolic one-sided boundary slopes
    if (n == 2) {
        ms_[0] = ms_[1] = d[0];
    } else {
        double h0 = xs_[1] - xs_[0], h1 = xs_[2] - xs_[1];
        ms_[0] = ((2.0 * h0 + h1) * d[0] - h0 * d[1]) / (h0 + h1);
        double hm = xs_[n - 2] - xs_[n - 3], hl = xs_[n - 1] - xs_[n - 2];
        ms_[n - 1] = ((2.0 * hl + hm) * d[n - 2] - hl * d[n - 3]) / (hm + hl);
    }
    for (size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0)
            ms_[i] = 0.0;
        else
            ms_[i] = 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]);  // harmonic mean
    }
    // Fritsch-Carlson limiter
    for (size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            ms_[i] = ms_[i + 1] = 0.0;
            continue;
        }
        double a = ms_[i] / d[i], b = ms_[i + 1] / d[i];
        double s = a * a + b * b;
        if (s > 9.0) {
            double t = 3.0 / std::sqrt(s);
            ms_[i] = t * a * d[i];
            ms_[i + 1] = t * b * d[i];
        }
    }
}

double MonotoneCubic::operator()(double x) const {
    const size_t n = xs_.size();
    if (x <= xs_.front()) return ys_.front();
    if (x >= xs_.back()) return ys_.back();
    size_t hi = static_cast<size_t>(
        std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
    size_t lo = hi - 1;
    double h = xs_[hi] - xs_[lo];
    double t = (x - xs_[lo]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    (void)n;
    return h00 * ys_[lo] + h10 * h * ms_[lo] + h01 * ys_[hi] + h11 * h * ms_[hi];
}

}  // namespace ghcwave::num
