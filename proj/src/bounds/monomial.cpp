#include "effcurves/bounds.hpp"

#include <sstream>

namespace effcurves {

namespace {

bool perfect_square(const mpz_class& n, mpz_class& root) {
    if (n < 0)
        return false;
    root = sqrt(n);
    return root * root == n;
}

std::string render_rational(const mpq_class& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : "(" + q.get_str() + ")";
}

} // namespace

Monomial::Monomial(const mpq_class& coeff) : coeff_(coeff) {
    if (coeff_ == 0)
        throw DomainError("monomial with zero coefficient");
    normalize();
}

Monomial Monomial::two(const mpq_class& e) {
    Monomial m;
    m.exps_["2"] = e;
    m.normalize();
    return m;
}

Monomial Monomial::pi(const mpq_class& e) {
    Monomial m;
    m.exps_["pi"] = e;
    m.normalize();
    return m;
}

Monomial Monomial::eps0(const mpq_class& e) {
    Monomial m;
    m.exps_["eps0"] = e;
    m.normalize();
    return m;
}

Monomial Monomial::chi(const mpq_class& e) {
    Monomial m;
    m.exps_["chi"] = e;
    m.normalize();
    return m;
}

void Monomial::normalize() {
    mpz_class num = coeff_.get_num(), den = coeff_.get_den();
    long shift = 0;
    if (num != 0) {
        const unsigned long tz = mpz_scan1(num.get_mpz_t(), 0);
        mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), tz);
        shift += static_cast<long>(tz);
    }
    const unsigned long td = mpz_scan1(den.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(den.get_mpz_t(), den.get_mpz_t(), td);
    shift -= static_cast<long>(td);
    coeff_ = mpq_class(num, den);
    coeff_.canonicalize();
    if (shift != 0)
        exps_["2"] += shift;
    for (auto it = exps_.begin(); it != exps_.end();) {
        it->second.canonicalize();
        if (it->second == 0)
            it = exps_.erase(it);
        else
            ++it;
    }
}

mpq_class Monomial::exponent(const std::string& base) const {
    auto it = exps_.find(base);
    return it == exps_.end() ? mpq_class(0) : it->second;
}

Monomial Monomial::pow(long n) const {
    Monomial r;
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), coeff_.get_num_mpz_t(), static_cast<unsigned long>(n < 0 ? -n : n));
    mpz_pow_ui(den.get_mpz_t(), coeff_.get_den_mpz_t(), static_cast<unsigned long>(n < 0 ? -n : n));
    r.coeff_ = n < 0 ? mpq_class(den, num) : mpq_class(num, den);
    r.coeff_.canonicalize();
    for (const auto& [b, e] : exps_)
        r.exps_[b] = e * n;
    r.normalize();
    return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.coeff_ = a.coeff_ * b.coeff_;
    r.exps_ = a.exps_;
    for (const auto& [base, e] : b.exps_)
        r.exps_[base] += e;
    r.normalize();
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.coeff_ = a.coeff_ / b.coeff_;
    r.exps_ = a.exps_;
    for (const auto& [base, e] : b.exps_)
        r.exps_[base] -= e;
    r.normalize();
    return r;
}

std::string Monomial::render() const {
    std::vector<std::string> parts;
    if (coeff_ != 1 || exps_.empty())
        parts.push_back(render_rational(coeff_));
    // fixed base order: 2, pi, eps0, chi
    for (const char* base : {"2", "pi", "eps0", "chi"}) {
        auto it = exps_.find(base);
        if (it == exps_.end())
            continue;
        const mpq_class& e = it->second;
        parts.push_back(e == 1 ? std::string(base) : std::string(base) + "^" + render_rational(e));
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < parts.size(); ++i)
        os << (i ? " * " : "") << parts[i];
    return os.str();
}

Expr Monomial::to_expr() const {
    Expr r = Expr::constant(coeff_);
    for (const auto& [base, e] : exps_) {
        if (e.get_den() != 1)
            throw DomainError("monomial " + render() + " has a fractional exponent");
        const long n = e.get_num().get_si();
        if (base == "2") {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(n < 0 ? -n : n));
            r = n < 0 ? r / Expr::constant(mpq_class(p)) : r * Expr::constant(mpq_class(p));
            continue;
        }
        const Expr b = base == "pi" ? Expr::pi() : Expr::var(base);
        r = n < 0 ? r / effcurves::pow(b, -n) : r * effcurves::pow(b, n);
    }
    return r;
}

std::optional<Monomial> as_monomial(const Expr& e, const std::map<std::string, Monomial>& names) {
    const ExprNode& n = e.node();
    switch (n.op) {
    case Op::Const:
        if (n.value == 0)
            return std::nullopt;
        return Monomial(n.value);
    case Op::Pi:
        return Monomial::pi(1);
    case Op::Var: {
        if (auto it = names.find(n.name); it != names.end())
            return it->second;
        if (n.name == "eps0")
            return Monomial::eps0(1);
        if (n.name == "chi")
            return Monomial::chi(1);
        return std::nullopt;
    }
    case Op::Mul:
    case Op::Div: {
        auto a = as_monomial(n.kids[0], names);
        auto b = as_monomial(n.kids[1], names);
        if (!a || !b)
            return std::nullopt;
        return n.op == Op::Mul ? *a * *b : *a / *b;
    }
    case Op::Neg: {
        auto a = as_monomial(n.kids[0], names);
        if (!a)
            return std::nullopt;
        return Monomial(-1) * *a;
    }
    case Op::Pow: {
        auto a = as_monomial(n.kids[0], names);
        if (!a)
            return std::nullopt;
        return a->pow(n.power);
    }
    case Op::Sqrt: {
        auto a = as_monomial(n.kids[0], names);
        if (!a)
            return std::nullopt;
        mpz_class rn, rd;
        if (!perfect_square(a->coeff().get_num(), rn) || !perfect_square(a->coeff().get_den(), rd))
            return std::nullopt;
        Monomial r(mpq_class(rn, rd));
        for (const auto& [base, x] : a->exponents()) {
            const mpq_class half = x / 2;
            if (base == "2")
                r = r * Monomial::two(half);
            else if (base == "pi")
                r = r * Monomial::pi(half);
            else if (base == "eps0")
                r = r * Monomial::eps0(half);
            else
                r = r * Monomial::chi(half);
        }
        return r;
    }
    default:
        return std::nullopt;
    }
}

IdentityReport check_identity(const Monomial& lhs, const Monomial& rhs) {
    IdentityReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = lhs / rhs;
    r.holds = r.ratio == Monomial();
    return r;
}

} // namespace effcurves
