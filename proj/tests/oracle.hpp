#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include "effcurves/interval.hpp"

namespace oracle {

// 512-bit round-to-nearest scalar built straight on MPFR, independent of Expr/eval
struct R {
    mpfr_t v;
    R() { mpfr_init2(v, 512); mpfr_set_zero(v, 1); }
    R(const mpq_class& q) { mpfr_init2(v, 512); mpfr_set_q(v, q.get_mpq_t(), MPFR_RNDN); }
    R(long x) : R(mpq_class(x)) {}
    R(const R& o) { mpfr_init2(v, 512); mpfr_set(v, o.v, MPFR_RNDN); }
    R& operator=(const R& o) { mpfr_set(v, o.v, MPFR_RNDN); return *this; }
    ~R() { mpfr_clear(v); }
    double d() const { return mpfr_get_d(v, MPFR_RNDN); }
    mpq_class q() const { mpq_class r; mpfr_get_q(r.get_mpq_t(), v); return r; }
};
using F1 = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
inline R ap(F1 f, const R& a) { R r; f(r.v, a.v, MPFR_RNDN); return r; }
inline R operator+(const R& a, const R& b) { R r; mpfr_add(r.v, a.v, b.v, MPFR_RNDN); return r; }
inline R operator-(const R& a, const R& b) { R r; mpfr_sub(r.v, a.v, b.v, MPFR_RNDN); return r; }
inline R operator*(const R& a, const R& b) { R r; mpfr_mul(r.v, a.v, b.v, MPFR_RNDN); return r; }
inline R operator/(const R& a, const R& b) { R r; mpfr_div(r.v, a.v, b.v, MPFR_RNDN); return r; }
inline R powi(const R& a, long n) { R r; mpfr_pow_si(r.v, a.v, n, MPFR_RNDN); return r; }
inline R pi512() { R r; mpfr_const_pi(r.v, MPFR_RNDN); return r; }

// r lies in x, allowing 2^-400 relative slack for the oracle's own rounding
inline bool encloses(const effcurves::IntervalScalar& x, const R& r) {
    mpq_class q = r.q();
    mpq_class slack = abs(q) / mpq_class(mpz_class(1) << 400);
    return x.contains(q) || x.contains(q + slack) || x.contains(q - slack);
}

// |x.mid - r| / |r|
inline double rel_err(const effcurves::IntervalScalar& x, const R& r) {
    R mid = (R(x.lo().to_rational()) + R(x.hi().to_rational())) / R(2);
    R diff = ap(mpfr_abs, mid - r) / ap(mpfr_abs, r);
    return diff.d();
}

} // namespace oracle
