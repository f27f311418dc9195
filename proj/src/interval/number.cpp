#include "effcurves/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace effcurves {

ParseError::ParseError(const std::string& msg, int l, int c)
    : std::runtime_error(msg + " at line " + std::to_string(l) + ", column " + std::to_string(c)),
      line(l), column(c) {}

// ---------------------------------------------------------------- Dyadic

Dyadic::Dyadic(mpz_class mantissa, std::int64_t exponent) : m_(std::move(mantissa)), e_(exponent) {
    canonicalize();
}

void Dyadic::canonicalize() {
    if (m_ == 0) {
        e_ = 0;
        return;
    }
    mp_bitcnt_t tz = mpz_scan1(m_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_fdiv_q_2exp(m_.get_mpz_t(), m_.get_mpz_t(), tz);
        e_ += static_cast<std::int64_t>(tz);
    }
}

Dyadic Dyadic::from_mpfr(const mpfr_t x) {
    if (!mpfr_number_p(x))
        throw DomainError("non-finite value has no dyadic form");
    if (mpfr_zero_p(x))
        return {};
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    return Dyadic(m, static_cast<std::int64_t>(e));
}

mpq_class Dyadic::to_rational() const {
    mpq_class q(m_);
    if (e_ > 0)
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e_));
    else if (e_ < 0)
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e_));
    return q;
}

bool operator<(const Dyadic& a, const Dyadic& b) { return a.to_rational() < b.to_rational(); }

// ---------------------------------------------------------------- Mpfr

namespace detail {

Mpfr::Mpfr(long prec) {
    mpfr_init2(v_, static_cast<mpfr_prec_t>(prec));
    mpfr_set_zero(v_, 1);
}

Mpfr::Mpfr(const Mpfr& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

Mpfr& Mpfr::operator=(const Mpfr& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& o) noexcept {
    if (this != &o)
        mpfr_swap(v_, o.v_);
    return *this;
}

Mpfr::~Mpfr() { mpfr_clear(v_); }

} // namespace detail

// ---------------------------------------------------------------- IntervalScalar

namespace {

using Fn1 = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

// monotone nondecreasing function applied endpoint-wise
IntervalScalar apply_increasing(const IntervalScalar& x, Fn1 f) {
    IntervalScalar r(x.prec());
    f(r.lo_ptr(), x.lo_ptr(), MPFR_RNDD);
    f(r.hi_ptr(), x.hi_ptr(), MPFR_RNDU);
    return r;
}

void fix_nan(IntervalScalar& r) {
    if (mpfr_nan_p(r.lo_ptr()) || mpfr_nan_p(r.hi_ptr())) {
        mpfr_set_inf(r.lo_ptr(), -1);
        mpfr_set_inf(r.hi_ptr(), 1);
    }
}

// product of endpoints where 0 * inf counts as 0
void mul_round(mpfr_ptr r, mpfr_srcptr a, mpfr_srcptr b, mpfr_rnd_t rnd) {
    if ((mpfr_zero_p(a) && mpfr_inf_p(b)) || (mpfr_inf_p(a) && mpfr_zero_p(b)))
        mpfr_set_zero(r, 1);
    else
        mpfr_mul(r, a, b, rnd);
}

long pmax(const IntervalScalar& a, const IntervalScalar& b) { return std::max(a.prec(), b.prec()); }

} // namespace

IntervalScalar::IntervalScalar(long prec) : prec_(prec), lo_(prec), hi_(prec) {}

IntervalScalar IntervalScalar::point(const mpq_class& q, long prec) { return bounds(q, q, prec); }

IntervalScalar IntervalScalar::bounds(const mpq_class& lo, const mpq_class& hi, long prec) {
    if (lo > hi)
        throw DomainError("interval with lo > hi");
    IntervalScalar r(prec);
    mpfr_set_q(r.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

IntervalScalar IntervalScalar::from_int(long v, long prec) { return point(mpq_class(v), prec); }

IntervalScalar IntervalScalar::entire(long prec) {
    IntervalScalar r(prec);
    mpfr_set_inf(r.lo_.get(), -1);
    mpfr_set_inf(r.hi_.get(), 1);
    return r;
}

IntervalScalar IntervalScalar::pi(long prec) {
    IntervalScalar r(prec);
    mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
    return r;
}

double IntervalScalar::lo_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
double IntervalScalar::hi_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
double IntervalScalar::mid_double() const { return 0.5 * (lo_double() + hi_double()); }

bool IntervalScalar::is_finite() const { return mpfr_number_p(lo_.get()) && mpfr_number_p(hi_.get()); }
bool IntervalScalar::is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }

double IntervalScalar::width_double() const {
    detail::Mpfr w(prec_);
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
}

double IntervalScalar::rel_width_double() const {
    if (!is_finite())
        return INFINITY;
    detail::Mpfr w(prec_), m(prec_), a(prec_);
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    mpfr_abs(m.get(), lo_.get(), MPFR_RNDN);
    mpfr_abs(a.get(), hi_.get(), MPFR_RNDN);
    mpfr_max(m.get(), m.get(), a.get(), MPFR_RNDN);
    if (mpfr_zero_p(m.get()))
        return 0.0;
    mpfr_div(w.get(), w.get(), m.get(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
}

bool IntervalScalar::contains(const mpq_class& q) const {
    return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool IntervalScalar::contains(const IntervalScalar& o) const {
    return mpfr_lessequal_p(lo_.get(), o.lo_.get()) && mpfr_greaterequal_p(hi_.get(), o.hi_.get());
}

bool IntervalScalar::contains_zero() const {
    return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool IntervalScalar::certainly_nonneg() const { return mpfr_sgn(lo_.get()) >= 0 && !mpfr_nan_p(lo_.get()); }
bool IntervalScalar::certainly_pos() const { return mpfr_sgn(lo_.get()) > 0 && !mpfr_nan_p(lo_.get()); }
bool IntervalScalar::certainly_neg() const { return mpfr_sgn(hi_.get()) < 0 && !mpfr_nan_p(hi_.get()); }

bool IntervalScalar::certainly_le(const IntervalScalar& o) const {
    return mpfr_lessequal_p(hi_.get(), o.lo_.get()) != 0;
}

bool IntervalScalar::certainly_lt(const IntervalScalar& o) const {
    return mpfr_less_p(hi_.get(), o.lo_.get()) != 0;
}

bool IntervalScalar::overlaps(const IntervalScalar& o) const {
    return mpfr_lessequal_p(lo_.get(), o.hi_.get()) && mpfr_lessequal_p(o.lo_.get(), hi_.get());
}

IntervalScalar IntervalScalar::midpoint() const {
    if (!is_finite())
        throw DomainError("midpoint of an unbounded interval");
    IntervalScalar r(prec_);
    mpfr_add(r.lo_.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(r.lo_.get(), r.lo_.get(), 1, MPFR_RNDN);
    // rounding may push the midpoint outside on tiny intervals
    if (mpfr_less_p(r.lo_.get(), lo_.get()))
        mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDN);
    if (mpfr_greater_p(r.lo_.get(), hi_.get()))
        mpfr_set(r.lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_set(r.hi_.get(), r.lo_.get(), MPFR_RNDN);
    return r;
}

IntervalScalar IntervalScalar::hull(const IntervalScalar& o) const {
    IntervalScalar r(pmax(*this, o));
    mpfr_min(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return r;
}

IntervalScalar IntervalScalar::intersect(const IntervalScalar& o) const {
    IntervalScalar r(pmax(*this, o));
    mpfr_max(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_min(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    if (mpfr_greater_p(r.lo_.get(), r.hi_.get()))
        throw DomainError("empty intersection");
    return r;
}

std::string IntervalScalar::to_string(int digits) const {
    char* a = nullptr;
    char* b = nullptr;
    mpfr_asprintf(&a, "%.*RDg", digits, lo_.get());
    mpfr_asprintf(&b, "%.*RUg", digits, hi_.get());
    std::string s = std::string("[") + a + ", " + b + "]";
    mpfr_free_str(a);
    mpfr_free_str(b);
    return s;
}

IntervalScalar operator+(const IntervalScalar& a, const IntervalScalar& b) {
    IntervalScalar r(pmax(a, b));
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    fix_nan(r);
    return r;
}

IntervalScalar operator-(const IntervalScalar& a, const IntervalScalar& b) {
    IntervalScalar r(pmax(a, b));
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    fix_nan(r);
    return r;
}

IntervalScalar operator-(const IntervalScalar& a) {
    IntervalScalar r(a.prec());
    mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
    return r;
}

IntervalScalar operator*(const IntervalScalar& a, const IntervalScalar& b) {
    const long p = pmax(a, b);
    IntervalScalar r(p);
    detail::Mpfr t(p);
    mpfr_srcptr ea[2] = {a.lo_.get(), a.hi_.get()};
    mpfr_srcptr eb[2] = {b.lo_.get(), b.hi_.get()};
    bool first = true;
    for (auto x : ea)
        for (auto y : eb) {
            mul_round(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), r.lo_.get()))
                mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
            mul_round(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), r.hi_.get()))
                mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    fix_nan(r);
    return r;
}

IntervalScalar operator/(const IntervalScalar& a, const IntervalScalar& b) {
    if (b.contains_zero())
        throw DomainError("division by an interval containing zero");
    const long p = pmax(a, b);
    IntervalScalar r(p);
    detail::Mpfr t(p);
    mpfr_srcptr ea[2] = {a.lo_.get(), a.hi_.get()};
    mpfr_srcptr eb[2] = {b.lo_.get(), b.hi_.get()};
    bool first = true;
    for (auto x : ea)
        for (auto y : eb) {
            mpfr_div(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), r.lo_.get()))
                mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
            mpfr_div(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), r.hi_.get()))
                mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    fix_nan(r);
    return r;
}

IntervalScalar div_relaxed(const IntervalScalar& a, const IntervalScalar& b) {
    if (!b.contains_zero())
        return a / b;
    const long p = pmax(a, b);
    const bool b_nonneg = mpfr_sgn(b.lo_ptr()) >= 0;
    const bool b_nonpos = mpfr_sgn(b.hi_ptr()) <= 0;
    if ((b_nonneg && b_nonpos) || (!b_nonneg && !b_nonpos) || a.contains_zero())
        return IntervalScalar::entire(p);
    // b touches zero at one end: a / b is a half line
    IntervalScalar r(p);
    const bool a_pos = mpfr_sgn(a.lo_ptr()) > 0;
    if (b_nonneg == a_pos) {
        // result >= a_near / b_far
        mpfr_div(r.lo_ptr(), a_pos ? a.lo_ptr() : a.hi_ptr(), b_nonneg ? b.hi_ptr() : b.lo_ptr(), MPFR_RNDD);
        mpfr_set_inf(r.hi_ptr(), 1);
    } else {
        mpfr_set_inf(r.lo_ptr(), -1);
        mpfr_div(r.hi_ptr(), a_pos ? a.lo_ptr() : a.hi_ptr(), b_nonneg ? b.hi_ptr() : b.lo_ptr(), MPFR_RNDU);
    }
    fix_nan(r);
    return r;
}

IntervalScalar pow(const IntervalScalar& x, long n) {
    const long p = x.prec();
    IntervalScalar r(p);
    if (n == 0) {
        mpfr_set_ui(r.lo_ptr(), 1, MPFR_RNDN);
        mpfr_set_ui(r.hi_ptr(), 1, MPFR_RNDN);
        return r;
    }
    if (n < 0 && x.contains_zero())
        throw DomainError("negative power of an interval containing zero");
    if (n % 2 != 0) {
        if (n > 0) {
            mpfr_pow_si(r.lo_ptr(), x.lo_ptr(), n, MPFR_RNDD);
            mpfr_pow_si(r.hi_ptr(), x.hi_ptr(), n, MPFR_RNDU);
        } else {
            mpfr_pow_si(r.lo_ptr(), x.hi_ptr(), n, MPFR_RNDD);
            mpfr_pow_si(r.hi_ptr(), x.lo_ptr(), n, MPFR_RNDU);
        }
        fix_nan(r);
        return r;
    }
    // even power: work with |x|
    IntervalScalar ax = abs(x);
    if (n > 0) {
        mpfr_pow_si(r.lo_ptr(), ax.lo_ptr(), n, MPFR_RNDD);
        mpfr_pow_si(r.hi_ptr(), ax.hi_ptr(), n, MPFR_RNDU);
    } else {
        mpfr_pow_si(r.lo_ptr(), ax.hi_ptr(), n, MPFR_RNDD);
        mpfr_pow_si(r.hi_ptr(), ax.lo_ptr(), n, MPFR_RNDU);
    }
    fix_nan(r);
    return r;
}

IntervalScalar sqrt(const IntervalScalar& x) {
    if (mpfr_sgn(x.lo_ptr()) < 0)
        throw DomainError("sqrt of an interval reaching below 0");
    return apply_increasing(x, mpfr_sqrt);
}

IntervalScalar exp(const IntervalScalar& x) { return apply_increasing(x, mpfr_exp); }

IntervalScalar log(const IntervalScalar& x) {
    if (mpfr_sgn(x.lo_ptr()) <= 0)
        throw DomainError("log of an interval touching or below 0");
    return apply_increasing(x, mpfr_log);
}

IntervalScalar log2(const IntervalScalar& x) {
    if (mpfr_sgn(x.lo_ptr()) <= 0)
        throw DomainError("log2 of an interval touching or below 0");
    return apply_increasing(x, mpfr_log2);
}

IntervalScalar sinh(const IntervalScalar& x) { return apply_increasing(x, mpfr_sinh); }
IntervalScalar asinh(const IntervalScalar& x) { return apply_increasing(x, mpfr_asinh); }

IntervalScalar acosh(const IntervalScalar& x) {
    if (mpfr_cmp_ui(x.lo_ptr(), 1) < 0)
        throw DomainError("acosh of an interval reaching below 1");
    return apply_increasing(x, mpfr_acosh);
}

IntervalScalar cosh(const IntervalScalar& x) {
    IntervalScalar ax = abs(x);
    return apply_increasing(ax, mpfr_cosh);
}

IntervalScalar min(const IntervalScalar& a, const IntervalScalar& b) {
    IntervalScalar r(pmax(a, b));
    mpfr_min(r.lo_ptr(), a.lo_ptr(), b.lo_ptr(), MPFR_RNDD);
    mpfr_min(r.hi_ptr(), a.hi_ptr(), b.hi_ptr(), MPFR_RNDU);
    return r;
}

IntervalScalar max(const IntervalScalar& a, const IntervalScalar& b) {
    IntervalScalar r(pmax(a, b));
    mpfr_max(r.lo_ptr(), a.lo_ptr(), b.lo_ptr(), MPFR_RNDD);
    mpfr_max(r.hi_ptr(), a.hi_ptr(), b.hi_ptr(), MPFR_RNDU);
    return r;
}

IntervalScalar floor(const IntervalScalar& x) {
    IntervalScalar r(x.prec());
    mpfr_rint_floor(r.lo_ptr(), x.lo_ptr(), MPFR_RNDD);
    mpfr_rint_floor(r.hi_ptr(), x.hi_ptr(), MPFR_RNDU);
    return r;
}

IntervalScalar abs(const IntervalScalar& x) {
    if (mpfr_sgn(x.lo_ptr()) >= 0)
        return x;
    if (mpfr_sgn(x.hi_ptr()) <= 0)
        return -x;
    IntervalScalar r(x.prec());
    mpfr_set_zero(r.lo_ptr(), 1);
    mpfr_neg(r.hi_ptr(), x.lo_ptr(), MPFR_RNDU);
    mpfr_max(r.hi_ptr(), r.hi_ptr(), x.hi_ptr(), MPFR_RNDU);
    return r;
}

// ---------------------------------------------------------------- boxes

void box_set(Box& b, const std::string& name, const mpq_class& lo, const mpq_class& hi, long prec) {
    b.insert_or_assign(name, IntervalScalar::bounds(lo, hi, prec));
}

std::string box_to_string(const Box& b, int digits) {
    std::string s;
    for (const auto& [k, v] : b) {
        if (!s.empty())
            s += ", ";
        s += k + " in " + v.to_string(digits);
    }
    return s;
}

} // namespace effcurves
