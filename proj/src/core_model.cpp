#include "ghcwave/core_model.hpp"

namespace ghcwave {

QuinticPoly poly_from_params(const EquationParams& p, const WaveParams& w) {
    p.validate();
    w.validate();
    QuinticPoly q;
    q.c[0] = w.B;
    q.c[1] = 2.0 * w.A;
    q.c[2] = w.c + p.alpha;
    q.c[3] = -1.0;
    q.c[4] = p.beta / 6.0;
    q.c[5] = p.gamma / 10.0;
    return q;
}

std::optional<double> pole_location(const EquationParams& p, const WaveParams& w) {
    p.validate();
    if (p.epsilon == 0.0) return std::nullopt;
    return w.c - p.big_gamma / (p.epsilon * p.epsilon);
}

}  // namespace ghcwave
