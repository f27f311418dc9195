#include "effcurves/interval.hpp"

namespace effcurves {

namespace {

// exact q^n when q is a rational constant of moderate size
bool exact_power(const mpq_class& q, long n, mpq_class& out) {
    const std::size_t bits = mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
    const unsigned long an = static_cast<unsigned long>(n < 0 ? -n : n);
    if (bits * an > (1u << 20) || (n < 0 && q == 0))
        return false;
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), an);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), an);
    out = n >= 0 ? mpq_class(num, den) : mpq_class(den, num);
    out.canonicalize();
    return true;
}

IntervalScalar eval_node(const Expr& e, const Box* b, long prec) {
    const ExprNode& n = e.node();
    switch (n.op) {
    case Op::Const: return IntervalScalar::point(n.value, prec);
    case Op::Pi: return IntervalScalar::pi(prec);
    case Op::Var: {
        if (b) {
            auto it = b->find(n.name);
            if (it != b->end())
                return it->second;
        }
        throw DomainError("unbound variable '" + n.name + "'");
    }
    case Op::Add: return eval_node(n.kids[0], b, prec) + eval_node(n.kids[1], b, prec);
    case Op::Sub: return eval_node(n.kids[0], b, prec) - eval_node(n.kids[1], b, prec);
    case Op::Mul: return eval_node(n.kids[0], b, prec) * eval_node(n.kids[1], b, prec);
    case Op::Div: return eval_node(n.kids[0], b, prec) / eval_node(n.kids[1], b, prec);
    case Op::Neg: return -eval_node(n.kids[0], b, prec);
    case Op::Pow: {
        if (n.kids[0].is_const()) {
            mpq_class q;
            if (exact_power(n.kids[0].node().value, n.power, q))
                return IntervalScalar::point(q, prec);
        }
        return pow(eval_node(n.kids[0], b, prec), n.power);
    }
    case Op::Sqrt: return sqrt(eval_node(n.kids[0], b, prec));
    case Op::Exp: return exp(eval_node(n.kids[0], b, prec));
    case Op::Log: return log(eval_node(n.kids[0], b, prec));
    case Op::Log2: return log2(eval_node(n.kids[0], b, prec));
    case Op::Sinh: return sinh(eval_node(n.kids[0], b, prec));
    case Op::Cosh: return cosh(eval_node(n.kids[0], b, prec));
    case Op::Asinh: return asinh(eval_node(n.kids[0], b, prec));
    case Op::Acosh: return acosh(eval_node(n.kids[0], b, prec));
    case Op::Floor: return floor(eval_node(n.kids[0], b, prec));
    case Op::Abs: return abs(eval_node(n.kids[0], b, prec));
    case Op::Min: return min(eval_node(n.kids[0], b, prec), eval_node(n.kids[1], b, prec));
    case Op::Max: return max(eval_node(n.kids[0], b, prec), eval_node(n.kids[1], b, prec));
    }
    throw DomainError("unknown node");
}

} // namespace

IntervalScalar eval(const Expr& e, const Box& b, long prec) {
    IntervalScalar r = eval_node(e, &b, prec);
    if (!r.is_finite())
        throw PrecisionExhausted("enclosure of " + e.render() + " is unbounded");
    return r;
}

IntervalScalar eval(const Expr& e, long prec) {
    IntervalScalar r = eval_node(e, nullptr, prec);
    if (!r.is_finite())
        throw PrecisionExhausted("enclosure of " + e.render() + " is unbounded");
    return r;
}

} // namespace effcurves
