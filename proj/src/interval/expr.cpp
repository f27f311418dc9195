#include "effcurves/interval.hpp"

#include <algorithm>
#include <set>

namespace effcurves {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_rational(const mpq_class& q) {
    return std::hash<std::string>{}(q.get_str(16));
}

Expr make(ExprNode n) {
    std::size_t h = std::hash<int>{}(static_cast<int>(n.op));
    switch (n.op) {
    case Op::Const: h = mix(h, hash_rational(n.value)); break;
    case Op::Var: h = mix(h, std::hash<std::string>{}(n.name)); break;
    case Op::Pow: h = mix(h, std::hash<long>{}(n.power)); break;
    default: break;
    }
    for (const auto& k : n.kids)
        h = mix(h, k.hash());
    n.hash = h;
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

bool is_unary(Op op) {
    switch (op) {
    case Op::Neg: case Op::Sqrt: case Op::Exp: case Op::Log: case Op::Log2: case Op::Sinh:
    case Op::Cosh: case Op::Asinh: case Op::Acosh: case Op::Floor: case Op::Abs:
        return true;
    default:
        return false;
    }
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
    if (e.op() == Op::Var)
        out.insert(e.node().name);
    for (const auto& k : e.kids())
        collect_vars(k, out);
}

std::string render_rational(const mpq_class& q) {
    if (q.get_den() == 1 && q >= 0)
        return q.get_num().get_str();
    return "(" + q.get_str() + ")";
}

} // namespace

const char* op_name(Op op) {
    switch (op) {
    case Op::Const: return "const";
    case Op::Var: return "var";
    case Op::Pi: return "pi";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Neg: return "neg";
    case Op::Pow: return "^";
    case Op::Sqrt: return "sqrt";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Log2: return "log2";
    case Op::Sinh: return "sinh";
    case Op::Cosh: return "cosh";
    case Op::Asinh: return "asinh";
    case Op::Acosh: return "acosh";
    case Op::Floor: return "floor";
    case Op::Abs: return "abs";
    case Op::Min: return "min";
    case Op::Max: return "max";
    }
    return "?";
}

Expr::Expr() : Expr(constant(mpq_class(0))) {}

Expr Expr::constant(const mpq_class& q) {
    ExprNode n;
    n.op = Op::Const;
    n.value = q;
    n.value.canonicalize();
    return make(std::move(n));
}

Expr Expr::var(const std::string& name) {
    ExprNode n;
    n.op = Op::Var;
    n.name = name;
    return make(std::move(n));
}

Expr Expr::pi() {
    ExprNode n;
    n.op = Op::Pi;
    return make(std::move(n));
}

Expr Expr::unary(Op op, const Expr& a) {
    if (!is_unary(op))
        throw std::invalid_argument(std::string("not a unary operator: ") + op_name(op));
    ExprNode n;
    n.op = op;
    n.kids = {a};
    return make(std::move(n));
}

Expr Expr::binary(Op op, const Expr& a, const Expr& b) {
    switch (op) {
    case Op::Add: case Op::Sub: case Op::Mul: case Op::Div: case Op::Min: case Op::Max: break;
    default: throw std::invalid_argument(std::string("not a binary operator: ") + op_name(op));
    }
    ExprNode n;
    n.op = op;
    n.kids = {a, b};
    return make(std::move(n));
}

Expr Expr::power(const Expr& a, long p) {
    ExprNode n;
    n.op = Op::Pow;
    n.power = p;
    n.kids = {a};
    return make(std::move(n));
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.id() == b.id())
        return true;
    const ExprNode& x = a.node();
    const ExprNode& y = b.node();
    if (x.hash != y.hash || x.op != y.op || x.kids.size() != y.kids.size())
        return false;
    if (x.op == Op::Const && x.value != y.value)
        return false;
    if (x.op == Op::Var && x.name != y.name)
        return false;
    if (x.op == Op::Pow && x.power != y.power)
        return false;
    for (std::size_t i = 0; i < x.kids.size(); ++i)
        if (!(x.kids[i] == y.kids[i]))
            return false;
    return true;
}

std::vector<std::string> Expr::variables() const {
    std::set<std::string> s;
    collect_vars(*this, s);
    return {s.begin(), s.end()};
}

bool Expr::depends_on(const std::string& v) const {
    if (op() == Op::Var)
        return node().name == v;
    return std::any_of(kids().begin(), kids().end(), [&](const Expr& k) { return k.depends_on(v); });
}

Expr Expr::substitute(const std::map<std::string, Expr>& subs) const {
    if (op() == Op::Var) {
        auto it = subs.find(node().name);
        return it == subs.end() ? *this : it->second;
    }
    if (kids().empty())
        return *this;
    ExprNode n = node();
    for (auto& k : n.kids)
        k = k.substitute(subs);
    return make(std::move(n));
}

std::string Expr::render() const {
    const ExprNode& n = node();
    switch (n.op) {
    case Op::Const: return render_rational(n.value);
    case Op::Var: return n.name;
    case Op::Pi: return "pi";
    case Op::Add: case Op::Sub: case Op::Mul: case Op::Div:
        return "(" + n.kids[0].render() + " " + op_name(n.op) + " " + n.kids[1].render() + ")";
    case Op::Neg: return "(-(" + n.kids[0].render() + "))";
    case Op::Pow:
        return "(" + n.kids[0].render() + "^" +
               (n.power < 0 ? "(" + std::to_string(n.power) + ")" : std::to_string(n.power)) + ")";
    case Op::Min: case Op::Max:
        return std::string(op_name(n.op)) + "(" + n.kids[0].render() + ", " + n.kids[1].render() + ")";
    default:
        return std::string(op_name(n.op)) + "(" + n.kids[0].render() + ")";
    }
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(Op::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(Op::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(Op::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(Op::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::unary(Op::Neg, a); }
Expr pow(const Expr& a, long n) { return Expr::power(a, n); }
Expr sqrt(const Expr& a) { return Expr::unary(Op::Sqrt, a); }
Expr exp(const Expr& a) { return Expr::unary(Op::Exp, a); }
Expr log(const Expr& a) { return Expr::unary(Op::Log, a); }
Expr log2(const Expr& a) { return Expr::unary(Op::Log2, a); }
Expr sinh(const Expr& a) { return Expr::unary(Op::Sinh, a); }
Expr cosh(const Expr& a) { return Expr::unary(Op::Cosh, a); }
Expr asinh(const Expr& a) { return Expr::unary(Op::Asinh, a); }
Expr acosh(const Expr& a) { return Expr::unary(Op::Acosh, a); }
Expr floor(const Expr& a) { return Expr::unary(Op::Floor, a); }
Expr abs(const Expr& a) { return Expr::unary(Op::Abs, a); }
Expr min(const Expr& a, const Expr& b) { return Expr::binary(Op::Min, a, b); }
Expr max(const Expr& a, const Expr& b) { return Expr::binary(Op::Max, a, b); }

} // namespace effcurves
