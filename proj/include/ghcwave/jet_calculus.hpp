#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ghcwave/core_model.hpp"
#include "ghcwave/rng.hpp"

namespace ghcwave {

// Jet coordinates treated as independent labels.  Supported orders: five
// x-derivatives and one t-derivative with up to four x-derivatives on top
// (utxxx/utxxxx only appear as intermediates of the Euler operator).
enum class Jet : int {
    u, ux, uxx, uxxx, uxxxx, uxxxxx,
    ut, utx, utxx, utxxx, utxxxx,
    count
};

constexpr int kJetCount = static_cast<int>(Jet::count);
const char* jet_name(Jet j);

struct JetPoint {
    std::array<double, kJetCount> value{};
    std::bitset<kJetCount> bound;

    double get(Jet j) const;
    void set(Jet j, double v) {
        value[static_cast<size_t>(j)] = v;
        bound.set(static_cast<size_t>(j));
    }
};

// All labels drawn uniformly from [lo, hi).
JetPoint random_jet(Rng& rng, double lo, double hi);

// Immutable expression tree over jet labels and real constants, closed under
// +, *, integer powers and square root.
class JetExpr {
   public:
    JetExpr() : JetExpr(0.0) {}
    JetExpr(double v);                 // implicit: constants mix freely
    static JetExpr label(Jet j);

    double eval(const JetPoint& p) const;
    JetExpr total_dx() const;
    JetExpr total_dt() const;
    JetExpr partial(Jet j) const;      // formal d/d(label)
    bool depends_on(Jet j) const;
    std::string str() const;

    friend JetExpr operator+(const JetExpr& a, const JetExpr& b);
    friend JetExpr operator-(const JetExpr& a, const JetExpr& b);
    friend JetExpr operator*(const JetExpr& a, const JetExpr& b);
    friend JetExpr operator-(const JetExpr& a);
    friend JetExpr pow(const JetExpr& a, int k);
    friend JetExpr sqrt(const JetExpr& a);

    struct Node;  // definition is internal to the implementation

   private:
    explicit JetExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

inline JetExpr total_dx(const JetExpr& e) { return e.total_dx(); }
inline JetExpr total_dt(const JetExpr& e) { return e.total_dt(); }

// Residual Delta = m_t + u m_x + 2 u_x m - alpha u_x - beta u^2 u_x
// - gamma u^3 u_x - Gamma u_xxx with m = u - eps^2 u_xx.
JetExpr pde_residual(const EquationParams& p);

enum class Characteristic { q_one, q_u, q_sqrt_m };

// Conserved current (C0, C1) for the given characteristic.  q_sqrt_m requires
// beta = gamma = 0 and Gamma = -alpha eps^2.
std::pair<JetExpr, JetExpr> conserved_current(Characteristic which,
                                              const EquationParams& p);

// Characteristic as an expression: 1, u, or (1/2) m^{-1/2}.
JetExpr characteristic_expr(Characteristic which, const EquationParams& p);

// lhs = (D_t C0 + D_x C1)(j), rhs = (Q Delta)(j).  The two agree identically
// as differential functions, hence numerically to round-off.
std::pair<double, double> current_divergence_check(Characteristic which,
                                                   const EquationParams& p,
                                                   const JetPoint& j);

// Euler-Lagrange operator applied to Q*Delta, evaluated at j.  `order` caps
// the total derivative order of the multi-indices used (4 suffices for the
// supported Q).  `scale`, when given, receives the sum of the magnitudes of
// the individual Euler terms (the natural cancellation scale).
double euler_residual(const JetExpr& Q, const EquationParams& p,
                      const JetPoint& j, int order = 4,
                      double* scale = nullptr);

}  // namespace ghcwave
