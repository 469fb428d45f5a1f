#include "ghcwave/jet_calculus.hpp"

#include <cmath>
#include <sstream>

#include "ghcwave/errors.hpp"

namespace ghcwave {

namespace {

constexpr int kNoSucc = -1;

int x_successor(int j) {
    switch (static_cast<Jet>(j)) {
        case Jet::u: return static_cast<int>(Jet::ux);
        case Jet::ux: return static_cast<int>(Jet::uxx);
        case Jet::uxx: return static_cast<int>(Jet::uxxx);
        case Jet::uxxx: return static_cast<int>(Jet::uxxxx);
        case Jet::uxxxx: return static_cast<int>(Jet::uxxxxx);
        case Jet::ut: return static_cast<int>(Jet::utx);
        case Jet::utx: return static_cast<int>(Jet::utxx);
        case Jet::utxx: return static_cast<int>(Jet::utxxx);
        case Jet::utxxx: return static_cast<int>(Jet::utxxxx);
        default: return kNoSucc;
    }
}

int t_successor(int j) {
    switch (static_cast<Jet>(j)) {
        case Jet::u: return static_cast<int>(Jet::ut);
        case Jet::ux: return static_cast<int>(Jet::utx);
        case Jet::uxx: return static_cast<int>(Jet::utxx);
        case Jet::uxxx: return static_cast<int>(Jet::utxxx);
        case Jet::uxxxx: return static_cast<int>(Jet::utxxxx);
        default: return kNoSucc;
    }
}

}  // namespace

const char* jet_name(Jet j) {
    static const char* names[kJetCount] = {"u",  "u_x",  "u_xx",  "u_xxx",
                                           "u_xxxx", "u_xxxxx", "u_t", "u_tx",
                                           "u_txx", "u_txxx", "u_txxxx"};
    return names[static_cast<int>(j)];
}

double JetPoint::get(Jet j) const {
    if (!bound.test(static_cast<size_t>(j)))
        throw DomainError(std::string("jet label not bound: ") + jet_name(j));
    return value[static_cast<size_t>(j)];
}

JetPoint random_jet(Rng& rng, double lo, double hi) {
    JetPoint p;
    for (int i = 0; i < kJetCount; ++i)
        p.set(static_cast<Jet>(i), rng.uniform(lo, hi));
    return p;
}

struct JetExpr::Node {
    enum class Op { constant, label, add, mul, pw, sq } op;
    double value = 0.0;              // constant
    int label = 0;                   // label
    int exponent = 1;                // pw
    std::vector<std::shared_ptr<const Node>> kids;
};

namespace {

using NodePtr = std::shared_ptr<const JetExpr::Node>;
using Op = JetExpr::Node::Op;

NodePtr make_const(double v) {
    auto n = std::make_shared<JetExpr::Node>();
    n->op = Op::constant;
    n->value = v;
    return n;
}

bool is_const(const NodePtr& n, double v) {
    return n->op == Op::constant && n->value == v;
}

NodePtr make_add(NodePtr a, NodePtr b) {
    if (a->op == Op::constant && b->op == Op::constant)
        return make_const(a->value + b->value);
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    auto n = std::make_shared<JetExpr::Node>();
    n->op = Op::add;
    n->kids = {std::move(a), std::move(b)};
    return n;
}

NodePtr make_mul(NodePtr a, NodePtr b) {
    if (a->op == Op::constant && b->op == Op::constant)
        return make_const(a->value * b->value);
    if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    auto n = std::make_shared<JetExpr::Node>();
    n->op = Op::mul;
    n->kids = {std::move(a), std::move(b)};
    return n;
}

NodePtr make_pow(NodePtr a, int k) {
    if (k == 0) return make_const(1.0);
    if (k == 1) return a;
    if (a->op == Op::constant) return make_const(std::pow(a->value, k));
    auto n = std::make_shared<JetExpr::Node>();
    n->op = Op::pw;
    n->exponent = k;
    n->kids = {std::move(a)};
    return n;
}

NodePtr make_sqrt(NodePtr a) {
    auto n = std::make_shared<JetExpr::Node>();
    n->op = Op::sq;
    n->kids = {std::move(a)};
    return n;
}

double eval_node(const NodePtr& n, const JetPoint& p) {
    switch (n->op) {
        case Op::constant: return n->value;
        case Op::label: return p.get(static_cast<Jet>(n->label));
        case Op::add: return eval_node(n->kids[0], p) + eval_node(n->kids[1], p);
        case Op::mul: return eval_node(n->kids[0], p) * eval_node(n->kids[1], p);
        case Op::pw: {
            double b = eval_node(n->kids[0], p);
            if (b == 0.0 && n->exponent < 0)
                throw DomainError("negative power of zero");
            return std::pow(b, n->exponent);
        }
        case Op::sq: {
            double b = eval_node(n->kids[0], p);
            if (b <= 0.0) throw DomainError("sqrt of non-positive value");
            return std::sqrt(b);
        }
    }
    return 0.0;
}

NodePtr derive(const NodePtr& n, int (*succ)(int)) {
    switch (n->op) {
        case Op::constant: return make_const(0.0);
        case Op::label: {
            int s = succ(n->label);
            if (s == kNoSucc)
                throw OrderOverflowError(
                    std::string("total derivative exceeds supported order at ") +
                    jet_name(static_cast<Jet>(n->label)));
            auto r = std::make_shared<JetExpr::Node>();
            r->op = Op::label;
            r->label = s;
            return r;
        }
        case Op::add:
            return make_add(derive(n->kids[0], succ), derive(n->kids[1], succ));
        case Op::mul:
            return make_add(make_mul(derive(n->kids[0], succ), n->kids[1]),
                            make_mul(n->kids[0], derive(n->kids[1], succ)));
        case Op::pw:
            // d(e^k) = k e^{k-1} e'
            return make_mul(make_const(n->exponent),
                            make_mul(make_pow(n->kids[0], n->exponent - 1),
                                     derive(n->kids[0], succ)));
        case Op::sq:
            // d sqrt(e) = e' / (2 sqrt(e))
            return make_mul(make_const(0.5),
                            make_mul(derive(n->kids[0], succ),
                                     make_pow(make_sqrt(n->kids[0]), -1)));
    }
    return make_const(0.0);
}

NodePtr partial_node(const NodePtr& n, int lbl) {
    switch (n->op) {
        case Op::constant: return make_const(0.0);
        case Op::label: return make_const(n->label == lbl ? 1.0 : 0.0);
        case Op::add:
            return make_add(partial_node(n->kids[0], lbl),
                            partial_node(n->kids[1], lbl));
        case Op::mul:
            return make_add(make_mul(partial_node(n->kids[0], lbl), n->kids[1]),
                            make_mul(n->kids[0], partial_node(n->kids[1], lbl)));
        case Op::pw:
            return make_mul(make_const(n->exponent),
                            make_mul(make_pow(n->kids[0], n->exponent - 1),
                                     partial_node(n->kids[0], lbl)));
        case Op::sq:
            return make_mul(make_const(0.5),
                            make_mul(partial_node(n->kids[0], lbl),
                                     make_pow(make_sqrt(n->kids[0]), -1)));
    }
    return make_const(0.0);
}

bool depends_node(const NodePtr& n, int lbl) {
    if (n->op == Op::label) return n->label == lbl;
    for (const auto& k : n->kids)
        if (depends_node(k, lbl)) return true;
    return false;
}

void str_node(const NodePtr& n, std::ostringstream& os) {
    switch (n->op) {
        case Op::constant: os << n->value; break;
        case Op::label: os << jet_name(static_cast<Jet>(n->label)); break;
        case Op::add:
            os << "(";
            str_node(n->kids[0], os);
            os << " + ";
            str_node(n->kids[1], os);
            os << ")";
            break;
        case Op::mul:
            os << "(";
            str_node(n->kids[0], os);
            os << "*";
            str_node(n->kids[1], os);
            os << ")";
            break;
        case Op::pw:
            str_node(n->kids[0], os);
            os << "^" << n->exponent;
            break;
        case Op::sq:
            os << "sqrt(";
            str_node(n->kids[0], os);
            os << ")";
            break;
    }
}

}  // namespace

JetExpr::JetExpr(double v) : node_(make_const(v)) {}

JetExpr JetExpr::label(Jet j) {
    auto n = std::make_shared<Node>();
    n->op = Node::Op::label;
    n->label = static_cast<int>(j);
    return JetExpr(std::move(n));
}

double JetExpr::eval(const JetPoint& p) const { return eval_node(node_, p); }
JetExpr JetExpr::total_dx() const { return JetExpr(derive(node_, x_successor)); }
JetExpr JetExpr::total_dt() const { return JetExpr(derive(node_, t_successor)); }
JetExpr JetExpr::partial(Jet j) const {
    return JetExpr(partial_node(node_, static_cast<int>(j)));
}
bool JetExpr::depends_on(Jet j) const {
    return depends_node(node_, static_cast<int>(j));
}
std::string JetExpr::str() const {
    std::ostringstream os;
    str_node(node_, os);
    return os.str();
}

JetExpr operator+(const JetExpr& a, const JetExpr& b) {
    return JetExpr(make_add(a.node_, b.node_));
}
JetExpr operator-(const JetExpr& a, const JetExpr& b) {
    return JetExpr(make_add(a.node_, make_mul(make_const(-1.0), b.node_)));
}
JetExpr operator*(const JetExpr& a, const JetExpr& b) {
    return JetExpr(make_mul(a.node_, b.node_));
}
JetExpr operator-(const JetExpr& a) {
    return JetExpr(make_mul(make_const(-1.0), a.node_));
}
JetExpr pow(const JetExpr& a, int k) { return JetExpr(make_pow(a.node_, k)); }
JetExpr sqrt(const JetExpr& a) { return JetExpr(make_sqrt(a.node_)); }

namespace {

const JetExpr U = JetExpr::label(Jet::u);
const JetExpr Ux = JetExpr::label(Jet::ux);
const JetExpr Uxx = JetExpr::label(Jet::uxx);
const JetExpr Uxxx = JetExpr::label(Jet::uxxx);
const JetExpr Ut = JetExpr::label(Jet::ut);
const JetExpr Utx = JetExpr::label(Jet::utx);
const JetExpr Utxx = JetExpr::label(Jet::utxx);

JetExpr momentum(double eps2) { return U - JetExpr(eps2) * Uxx; }

void require_sqrt_regime(const EquationParams& p) {
    double e2 = p.epsilon * p.epsilon;
    if (p.beta != 0.0 || p.gamma != 0.0 ||
        std::abs(p.big_gamma + p.alpha * e2) >
            1e-14 * (1.0 + std::abs(p.big_gamma)))
        throw ValidationError(
            "sqrt-m characteristic needs beta = gamma = 0 and Gamma = -alpha eps^2");
}

}  // namespace

JetExpr pde_residual(const EquationParams& p) {
    p.validate();
    double e2 = p.epsilon * p.epsilon;
    JetExpr m = momentum(e2);
    JetExpr mt = Ut - JetExpr(e2) * Utxx;
    JetExpr mx = Ux - JetExpr(e2) * Uxxx;
    return mt + U * mx + JetExpr(2.0) * Ux * m - JetExpr(p.alpha) * Ux -
           JetExpr(p.beta) * pow(U, 2) * Ux - JetExpr(p.gamma) * pow(U, 3) * Ux -
           JetExpr(p.big_gamma) * Uxxx;
}

std::pair<JetExpr, JetExpr> conserved_current(Characteristic which,
                                              const EquationParams& p) {
    p.validate();
    double e2 = p.epsilon * p.epsilon;
    switch (which) {
        case Characteristic::q_one: {
            JetExpr c0 = U;
            JetExpr c1 = JetExpr(1.5) * pow(U, 2) - JetExpr(e2) * Utx -
                         JetExpr(e2) * U * Uxx - JetExpr(e2 / 2.0) * pow(Ux, 2) -
                         JetExpr(p.alpha) * U - JetExpr(p.beta / 3.0) * pow(U, 3) -
                         JetExpr(p.gamma / 4.0) * pow(U, 4) -
                         JetExpr(p.big_gamma) * Uxx;
            return {c0, c1};
        }
        case Characteristic::q_u: {
            JetExpr c0 = JetExpr(0.5) * (pow(U, 2) + JetExpr(e2) * pow(Ux, 2));
            JetExpr c1 = pow(U, 3) - JetExpr(e2) * pow(U, 2) * Uxx -
                         JetExpr(e2) * U * Utx +
                         JetExpr(p.big_gamma / 2.0) * pow(Ux, 2) -
                         JetExpr(p.big_gamma) * U * Uxx -
                         JetExpr(p.alpha / 2.0) * pow(U, 2) -
                         JetExpr(p.beta / 4.0) * pow(U, 4) -
                         JetExpr(p.gamma / 5.0) * pow(U, 5);
            return {c0, c1};
        }
        case Characteristic::q_sqrt_m: {
            require_sqrt_regime(p);
            JetExpr m = momentum(e2);
            return {sqrt(m), (U - JetExpr(p.alpha)) * sqrt(m)};
        }
    }
    throw ValidationError("unknown characteristic");
}

JetExpr characteristic_expr(Characteristic which, const EquationParams& p) {
    switch (which) {
        case Characteristic::q_one: return JetExpr(1.0);
        case Characteristic::q_u: return U;
        case Characteristic::q_sqrt_m: {
            require_sqrt_regime(p);
            return JetExpr(0.5) * pow(sqrt(momentum(p.epsilon * p.epsilon)), -1);
        }
    }
    throw ValidationError("unknown characteristic");
}

std::pair<double, double> current_divergence_check(Characteristic which,
                                                   const EquationParams& p,
                                                   const JetPoint& j) {
    if (which == Characteristic::q_sqrt_m) {
        double e2 = p.epsilon * p.epsilon;
        if (j.get(Jet::u) - e2 * j.get(Jet::uxx) <= 0.0)
            throw DomainError("sqrt-m current needs m > 0 at the jet");
    }
    auto [c0, c1] = conserved_current(which, p);
    double lhs = (c0.total_dt() + c1.total_dx()).eval(j);
    double rhs = (characteristic_expr(which, p) * pde_residual(p)).eval(j);
    return {lhs, rhs};
}

double euler_residual(const JetExpr& Q, const EquationParams& p,
                      const JetPoint& j, int order, double* scale) {
    const JetExpr L = Q * pde_residual(p);
    struct Entry {
        Jet lbl;
        int dx, dt;
    };
    static const Entry table[] = {
        {Jet::u, 0, 0},     {Jet::ux, 1, 0},    {Jet::uxx, 2, 0},
        {Jet::uxxx, 3, 0},  {Jet::uxxxx, 4, 0}, {Jet::uxxxxx, 5, 0},
        {Jet::ut, 0, 1},    {Jet::utx, 1, 1},   {Jet::utxx, 2, 1},
        {Jet::utxxx, 3, 1}, {Jet::utxxxx, 4, 1},
    };
    double total = 0.0, mag = 0.0;
    for (const auto& e : table) {
        if (e.dx + e.dt > order) continue;
        if (!L.depends_on(e.lbl)) continue;
        JetExpr term = L.partial(e.lbl);
        for (int k = 0; k < e.dt; ++k) term = term.total_dt();
        for (int k = 0; k < e.dx; ++k) term = term.total_dx();
        double v = term.eval(j);
        double sign = ((e.dx + e.dt) % 2 == 0) ? 1.0 : -1.0;
        total += sign * v;
        mag += std::abs(v);
    }
    if (scale) *scale = mag;
    return total;
}

}  // namespace ghcwave
