#include "effcurves/interval.hpp"

#include <algorithm>
#include <cctype>

namespace effcurves {

namespace {

enum class Tok { Num, Ident, Sym, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

mpq_class decimal_literal(const std::string& s) {
    // digits[.digits][e[+-]digits]
    std::size_t epos = s.find_first_of("eE");
    std::string mant = s.substr(0, epos);
    long e10 = 0;
    if (epos != std::string::npos)
        e10 = std::stol(s.substr(epos + 1));
    std::size_t dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        e10 -= static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty())
        digits = "0";
    mpq_class q(mpz_class(digits, 10));
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(e10 < 0 ? -e10 : e10));
    if (e10 >= 0)
        q *= p10;
    else
        q /= p10;
    q.canonicalize();
    return q;
}

class Lexer {
public:
    Lexer(const std::string& text, int line) : s_(text), line_(line) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            if (i_ >= s_.size()) {
                out.push_back({Tok::End, "", line_, col_});
                return out;
            }
            const char c = s_[i_];
            const int l = line_, cl = col_;
            if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i_ + 1 < s_.size() &&
                                                                std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
                std::string t;
                while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.'))
                    t += take();
                if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
                    std::size_t j = i_ + 1;
                    if (j < s_.size() && (s_[j] == '+' || s_[j] == '-'))
                        ++j;
                    if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
                        while (i_ < j)
                            t += take();
                        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                            t += take();
                    }
                }
                if (std::count(t.begin(), t.end(), '.') > 1)
                    throw ParseError("malformed number '" + t + "'", l, cl);
                out.push_back({Tok::Num, t, l, cl});
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string t;
                while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                    t += take();
                out.push_back({Tok::Ident, t, l, cl});
            } else if ((c == '>' || c == '<') && i_ + 1 < s_.size() && s_[i_ + 1] == '=') {
                std::string t;
                t += take();
                t += take();
                out.push_back({Tok::Sym, t, l, cl});
            } else if (std::string("+-*/^(),[]").find(c) != std::string::npos) {
                out.push_back({Tok::Sym, std::string(1, take()), l, cl});
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
            }
        }
    }

private:
    void skip_space() {
        while (i_ < s_.size()) {
            if (s_[i_] == '#') {
                while (i_ < s_.size() && s_[i_] != '\n')
                    take();
            } else if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
                take();
            } else {
                break;
            }
        }
    }

    char take() {
        char c = s_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int line_;
    int col_ = 1;
};

const std::map<std::string, Op>& functions() {
    static const std::map<std::string, Op> f = {
        {"sqrt", Op::Sqrt}, {"exp", Op::Exp}, {"log", Op::Log}, {"log2", Op::Log2},
        {"sinh", Op::Sinh}, {"cosh", Op::Cosh}, {"asinh", Op::Asinh}, {"acosh", Op::Acosh},
        {"floor", Op::Floor}, {"abs", Op::Abs}, {"min", Op::Min}, {"max", Op::Max},
    };
    return f;
}

// keep folded constants to a sane size
constexpr std::size_t kMaxFoldBits = 1 << 16;

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    Expr expression() {
        Expr e = term();
        while (is_sym("+") || is_sym("-")) {
            const std::string s = next().text;
            Expr r = term();
            e = s == "+" ? e + r : e - r;
        }
        return e;
    }

    const Token& peek() const { return t_[k_]; }
    bool is_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
    bool is_ident(const char* s) const { return peek().kind == Tok::Ident && peek().text == s; }
    Token next() { return t_[k_++]; }

    void expect(const char* s) {
        if (!is_sym(s))
            fail(std::string("expected '") + s + "'");
        next();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(msg + ", got " + got, t.line, t.col);
    }

private:
    static Expr fold_div(const Expr& a, const Expr& b) {
        if (a.is_const() && b.is_const() && b.node().value != 0)
            return Expr::constant(a.node().value / b.node().value);
        return a / b;
    }

    static Expr fold_mul(const Expr& a, const Expr& b) {
        if (a.is_const() && b.is_const())
            return Expr::constant(a.node().value * b.node().value);
        return a * b;
    }

    static Expr fold_pow(const Expr& a, long n) {
        if (a.is_const()) {
            const mpq_class& q = a.node().value;
            const std::size_t bits = mpz_sizeinbase(q.get_num_mpz_t(), 2) +
                                     mpz_sizeinbase(q.get_den_mpz_t(), 2);
            const unsigned long an = static_cast<unsigned long>(n < 0 ? -n : n);
            if (bits * an < kMaxFoldBits && !(n < 0 && q == 0)) {
                mpz_class num, den;
                mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), an);
                mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), an);
                mpq_class r = n >= 0 ? mpq_class(num, den) : mpq_class(den, num);
                r.canonicalize();
                return Expr::constant(r);
            }
        }
        return pow(a, n);
    }

    Expr term() {
        Expr e = unary();
        while (is_sym("*") || is_sym("/")) {
            const std::string s = next().text;
            Expr r = unary();
            e = s == "*" ? fold_mul(e, r) : fold_div(e, r);
        }
        return e;
    }

    Expr unary() {
        if (is_sym("-")) {
            next();
            if (peek().kind == Tok::Num) {
                // a negative literal, still subject to a following power
                Token t = next();
                Expr lit = Expr::constant(-decimal_literal(t.text));
                if (is_sym("^")) {
                    // -2^2 reads as -(2^2)
                    Expr p = power_tail(Expr::constant(decimal_literal(t.text)));
                    return p.is_const() ? Expr::constant(-p.node().value) : -p;
                }
                return lit;
            }
            Expr u = unary();
            return -u;
        }
        if (is_sym("+")) {
            next();
            return unary();
        }
        return power_tail(primary());
    }

    Expr power_tail(Expr base) {
        if (!is_sym("^"))
            return base;
        next();
        bool paren = false;
        if (is_sym("(")) {
            paren = true;
            next();
        }
        bool neg = false;
        if (is_sym("-")) {
            neg = true;
            next();
        }
        if (peek().kind != Tok::Num || peek().text.find_first_of(".eE") != std::string::npos)
            fail("expected an integer exponent");
        Token t = next();
        long n = std::stol(t.text);
        if (neg)
            n = -n;
        if (paren)
            expect(")");
        if (is_sym("^"))
            fail("chained powers need parentheses");
        return fold_pow(base, n);
    }

    Expr primary() {
        const Token& t = peek();
        if (t.kind == Tok::Num) {
            next();
            return Expr::constant(decimal_literal(t.text));
        }
        if (t.kind == Tok::Sym && t.text == "(") {
            next();
            Expr e = expression();
            expect(")");
            return e;
        }
        if (t.kind == Tok::Ident) {
            Token id = next();
            auto it = functions().find(id.text);
            if (it != functions().end()) {
                if (!is_sym("("))
                    fail("expected '(' after " + id.text);
                next();
                Expr a = expression();
                if (it->second == Op::Min || it->second == Op::Max) {
                    expect(",");
                    Expr b = expression();
                    expect(")");
                    return Expr::binary(it->second, a, b);
                }
                expect(")");
                return Expr::unary(it->second, a);
            }
            if (id.text == "pi")
                return Expr::pi();
            return Expr::var(id.text);
        }
        fail("expected an expression");
    }

    std::vector<Token> t_;
    std::size_t k_ = 0;
};

} // namespace

Expr parse_expr(const std::string& text) {
    Parser p(Lexer(text, 1).run());
    Expr e = p.expression();
    if (p.peek().kind != Tok::End)
        p.fail("unexpected trailing input");
    return e;
}

mpq_class parse_rational(const std::string& text) {
    Expr e = parse_expr(text);
    if (!e.is_const())
        throw ParseError("expected a rational constant in '" + text + "'", 1, 1);
    return e.node().value;
}

Inequality parse_inequality(const std::string& line, int line_no) {
    Parser p(Lexer(line, line_no).run());
    Inequality q;
    q.text = line;
    Expr lhs = p.expression();
    if (!(p.is_sym(">=") || p.is_sym("<=")))
        p.fail("expected '>=' or '<='");
    const bool ge = p.next().text == ">=";
    Expr rhs = p.expression();
    if (rhs.is_const() && rhs.node().value == 0)
        q.expr = ge ? lhs : -lhs;
    else
        q.expr = ge ? lhs - rhs : rhs - lhs;
    if (p.is_ident("on")) {
        p.next();
        while (true) {
            if (p.peek().kind != Tok::Ident)
                p.fail("expected a variable name");
            std::string v = p.next().text;
            if (!p.is_ident("in"))
                p.fail("expected 'in'");
            p.next();
            p.expect("[");
            Expr lo = p.expression();
            p.expect(",");
            Expr hi = p.expression();
            p.expect("]");
            if (!lo.is_const() || !hi.is_const())
                p.fail("domain bounds must be rational constants");
            if (lo.node().value > hi.node().value)
                p.fail("empty domain for " + v);
            q.domain.push_back({v, {lo.node().value, hi.node().value}});
            if (!p.is_sym(","))
                break;
            p.next();
        }
    }
    if (p.peek().kind != Tok::End)
        p.fail("unexpected trailing input");
    return q;
}

Box inequality_box(const Inequality& q, long prec) {
    Box b;
    for (const auto& [v, r] : q.domain)
        box_set(b, v, r.first, r.second, prec);
    return b;
}

} // namespace effcurves
