#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

namespace effcurves {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int l, int c);
};

constexpr long kDefaultPrecision = 128;
constexpr int kDefaultMaxDepth = 40;

// mantissa * 2^exponent, mantissa odd or zero. The exponent is a 64-bit
// integer, which is far beyond what MPFR itself can represent.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(mpz_class mantissa, std::int64_t exponent);

    static Dyadic from_mpfr(const mpfr_t x);

    const mpz_class& mantissa() const { return m_; }
    std::int64_t exponent() const { return e_; }
    bool is_zero() const { return m_ == 0; }
    mpq_class to_rational() const;

    friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.m_ == b.m_ && a.e_ == b.e_; }
    friend bool operator<(const Dyadic& a, const Dyadic& b);

private:
    void canonicalize();
    mpz_class m_ = 0;
    std::int64_t e_ = 0;
};

namespace detail {

// Owning wrapper around an mpfr_t.
class Mpfr {
public:
    explicit Mpfr(long prec);
    Mpfr(const Mpfr& o);
    Mpfr(Mpfr&& o) noexcept;
    Mpfr& operator=(const Mpfr& o);
    Mpfr& operator=(Mpfr&& o) noexcept;
    ~Mpfr();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    long prec() const { return static_cast<long>(mpfr_get_prec(v_)); }

private:
    mpfr_t v_;
    bool live_ = true;
};

} // namespace detail

// Closed interval [lo, hi] with MPFR endpoints. Endpoints may be infinite
// (used internally for derivative enclosures); values produced by eval on
// valid boxes are finite.
class IntervalScalar {
public:
    explicit IntervalScalar(long prec = kDefaultPrecision);

    static IntervalScalar point(const mpq_class& q, long prec = kDefaultPrecision);
    static IntervalScalar bounds(const mpq_class& lo, const mpq_class& hi, long prec = kDefaultPrecision);
    static IntervalScalar from_int(long v, long prec = kDefaultPrecision);
    static IntervalScalar entire(long prec = kDefaultPrecision);
    static IntervalScalar pi(long prec = kDefaultPrecision);

    long prec() const { return prec_; }
    Dyadic lo() const { return Dyadic::from_mpfr(lo_.get()); }
    Dyadic hi() const { return Dyadic::from_mpfr(hi_.get()); }
    mpfr_srcptr lo_ptr() const { return lo_.get(); }
    mpfr_srcptr hi_ptr() const { return hi_.get(); }
    mpfr_ptr lo_ptr() { return lo_.get(); }
    mpfr_ptr hi_ptr() { return hi_.get(); }

    double lo_double() const;
    double hi_double() const;
    double mid_double() const;
    bool is_finite() const;
    bool is_point() const;

    // upper bound on hi - lo
    double width_double() const;
    // upper bound on (hi - lo) / max(|lo|, |hi|), or width if the interval is {0}
    double rel_width_double() const;

    bool contains(const mpq_class& q) const;
    bool contains(const IntervalScalar& o) const;
    bool contains_zero() const;
    bool certainly_nonneg() const;  // lo >= 0
    bool certainly_pos() const;     // lo > 0
    bool certainly_neg() const;     // hi < 0
    bool certainly_le(const IntervalScalar& o) const;  // hi <= o.lo
    bool certainly_lt(const IntervalScalar& o) const;  // hi < o.lo
    bool overlaps(const IntervalScalar& o) const;

    IntervalScalar midpoint() const;
    IntervalScalar hull(const IntervalScalar& o) const;
    IntervalScalar intersect(const IntervalScalar& o) const;

    // "[lo, hi]" with both endpoints rounded outward to `digits` significant digits
    std::string to_string(int digits = 10) const;

    friend IntervalScalar operator+(const IntervalScalar& a, const IntervalScalar& b);
    friend IntervalScalar operator-(const IntervalScalar& a, const IntervalScalar& b);
    friend IntervalScalar operator*(const IntervalScalar& a, const IntervalScalar& b);
    friend IntervalScalar operator/(const IntervalScalar& a, const IntervalScalar& b);
    friend IntervalScalar operator-(const IntervalScalar& a);

private:
    friend struct IntervalAccess;
    long prec_;
    detail::Mpfr lo_;
    detail::Mpfr hi_;
};

IntervalScalar pow(const IntervalScalar& x, long n);
IntervalScalar sqrt(const IntervalScalar& x);
IntervalScalar exp(const IntervalScalar& x);
IntervalScalar log(const IntervalScalar& x);
IntervalScalar log2(const IntervalScalar& x);
IntervalScalar sinh(const IntervalScalar& x);
IntervalScalar cosh(const IntervalScalar& x);
IntervalScalar asinh(const IntervalScalar& x);
IntervalScalar acosh(const IntervalScalar& x);
IntervalScalar min(const IntervalScalar& a, const IntervalScalar& b);
IntervalScalar max(const IntervalScalar& a, const IntervalScalar& b);
IntervalScalar floor(const IntervalScalar& x);
IntervalScalar abs(const IntervalScalar& x);
// division that tolerates a denominator touching zero, giving (half-)infinite results
IntervalScalar div_relaxed(const IntervalScalar& a, const IntervalScalar& b);

// ---------------------------------------------------------------- expressions

enum class Op {
    Const, Var, Pi,
    Add, Sub, Mul, Div, Neg, Pow,
    Sqrt, Exp, Log, Log2, Sinh, Cosh, Asinh, Acosh, Floor, Abs,
    Min, Max,
};

const char* op_name(Op op);

class Expr;

struct ExprNode {
    Op op;
    mpq_class value;        // Const
    std::string name;       // Var
    long power = 0;         // Pow
    std::vector<Expr> kids;
    std::size_t hash = 0;
};

class Expr {
public:
    Expr();  // the constant 0
    explicit Expr(std::shared_ptr<const ExprNode> n) : n_(std::move(n)) {}

    static Expr constant(const mpq_class& q);
    static Expr integer(long v) { return constant(mpq_class(v)); }
    static Expr var(const std::string& name);
    static Expr pi();
    static Expr unary(Op op, const Expr& a);
    static Expr binary(Op op, const Expr& a, const Expr& b);
    static Expr power(const Expr& a, long n);

    Op op() const { return n_->op; }
    const ExprNode& node() const { return *n_; }
    const std::vector<Expr>& kids() const { return n_->kids; }
    std::size_t hash() const { return n_->hash; }
    const ExprNode* id() const { return n_.get(); }

    bool is_const() const { return n_->op == Op::Const; }
    std::vector<std::string> variables() const;  // sorted, unique
    bool depends_on(const std::string& v) const;
    // replace variables by expressions
    Expr substitute(const std::map<std::string, Expr>& subs) const;

    // fully parenthesized DSL text
    std::string render() const;

    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    std::shared_ptr<const ExprNode> n_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& a, long n);
Expr sqrt(const Expr& a);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr log2(const Expr& a);
Expr sinh(const Expr& a);
Expr cosh(const Expr& a);
Expr asinh(const Expr& a);
Expr acosh(const Expr& a);
Expr floor(const Expr& a);
Expr abs(const Expr& a);
Expr min(const Expr& a, const Expr& b);
Expr max(const Expr& a, const Expr& b);

struct ExprHash {
    std::size_t operator()(const Expr& e) const { return e.hash(); }
};

Expr parse_expr(const std::string& text);

// A rational made of an optional sign, digits, optional fraction, optional
// decimal exponent, optionally "p/q". Used for box bounds and CLI flags.
mpq_class parse_rational(const std::string& text);

// ---------------------------------------------------------------- boxes

using Box = std::map<std::string, IntervalScalar>;

void box_set(Box& b, const std::string& name, const mpq_class& lo, const mpq_class& hi,
             long prec = kDefaultPrecision);
std::string box_to_string(const Box& b, int digits = 10);

IntervalScalar eval(const Expr& e, const Box& b, long prec = kDefaultPrecision);
// evaluate a variable-free expression
IntervalScalar eval(const Expr& e, long prec = kDefaultPrecision);

// ---------------------------------------------------------------- inequalities

// EXPR >= 0 on VAR in [lo,hi], ...
struct Inequality {
    Expr expr;
    std::vector<std::pair<std::string, std::pair<mpq_class, mpq_class>>> domain;
    std::string text;
};

Inequality parse_inequality(const std::string& line, int line_no = 1);
Box inequality_box(const Inequality& q, long prec = kDefaultPrecision);

// ---------------------------------------------------------------- certification

enum class CertStatus { Proved, Disproved, Unknown };
const char* cert_status_name(CertStatus s);

struct CertStats {
    std::uint64_t subdomains = 0;
    int max_depth_reached = 0;
    long precision = kDefaultPrecision;
};

struct CertResult {
    CertStatus status = CertStatus::Unknown;
    std::optional<Box> witness;
    // enclosure of the expression on the witness box
    std::optional<IntervalScalar> witness_value;
    CertStats stats;
};

struct CertOptions {
    long precision = kDefaultPrecision;
    int max_depth = kDefaultMaxDepth;
    unsigned threads = 1;
    std::uint64_t max_subdomains = 200000;
};

// thrown when the certifier meets a sub-box outside the expression's domain
struct CertDomainError : DomainError {
    Box box;
    CertDomainError(const std::string& msg, Box b) : DomainError(msg), box(std::move(b)) {}
};

CertResult certify_nonneg(const Expr& e, const Box& b, const CertOptions& opt);
CertResult certify_nonneg(const Expr& e, const Box& b, long precision = kDefaultPrecision,
                          int max_depth = kDefaultMaxDepth);

} // namespace effcurves
