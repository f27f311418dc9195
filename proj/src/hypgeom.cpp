#include "effcurves/hypgeom.hpp"

#include <algorithm>
#include <string>

namespace effcurves {

SurfaceSig::SurfaceSig(long g, long p, long b) : genus(g), punctures(p), boundary(b) {
    if (g < 0 || p < 0 || b < 0)
        throw DomainError("surface signature entries must be nonnegative");
    if (euler() >= 0)
        throw DomainError("surface must have negative Euler characteristic, got " + std::to_string(euler()));
}

SurfaceSig SurfaceSig::with_abs_euler(long abs_chi) {
    if (abs_chi < 1)
        throw DomainError("|chi| must be at least 1");
    return SurfaceSig(0, abs_chi + 2, 0);
}

MargulisEps::MargulisEps(const mpq_class& eps0) : eps0_(eps0) {
    if (eps0 <= 0)
        throw InvalidEps0("eps0 must be positive");
    // 256 bits is far more than needed to separate any sane rational from arcsinh(1/4)
    const IntervalScalar cap = asinh(IntervalScalar::point(mpq_class(1, 4), 256));
    const IntervalScalar e = IntervalScalar::point(eps0, 256);
    if (!e.certainly_lt(cap))
        throw InvalidEps0("eps0 = " + eps0.get_str() + " is not certainly below arcsinh(1/4) = " + cap.to_string(8));
}

namespace hyp {

mpq_class bilipschitz_factor() { return mpq_class(907, 125); }
mpq_class separation_slack() { return mpq_class(21, 500); }
mpq_class default_volume_radius() { return mpq_class(1, 4); }

namespace formula {

namespace {
Expr c(long v) { return Expr::integer(v); }
Expr q(const mpq_class& v) { return Expr::constant(v); }
} // namespace

Expr shortest_loop(const Expr& chi) { return c(2) * acosh(chi + c(1)); }

Expr thick_two_loop(const Expr& chi, const Expr& eps0) {
    return c(2) * log(c(256) * pow(Expr::pi(), 2) * pow(chi, 4) / pow(eps0, 2));
}

Expr bers(const Expr& chi) { return c(2) * Expr::pi() * chi; }

Expr collar_width(const Expr& len) { return asinh(c(1) / sinh(len / c(2))); }

Expr collar_width_lower(const Expr& len) { return exp(-len / c(2)); }

Expr inj_annulus(const Expr& core_len, const Expr& r) { return asinh(cosh(r) * sinh(core_len / c(2))); }

Expr inj_cusp(const Expr& r) { return asinh(exp(-r) / c(2)); }

Expr radius_at_injectivity_annulus(const Expr& eps, const Expr& core_len) {
    return acosh(sinh(eps) / sinh(core_len / c(2)));
}

Expr tube_separation(const Expr& eps0, const Expr& eps1) {
    return acosh(eps0 / sqrt(q(bilipschitz_factor()) * eps1)) - q(separation_slack());
}

Expr cusp_separation(const Expr& eps0, const Expr& eps1) { return log(sinh(eps0) / sinh(eps1)); }

Expr ball_volume_lower(const Expr& eps) { return c(2) * Expr::pi() / c(3) * pow(eps, 3); }

Expr anosov_T() {
    const Expr l2 = log(c(2));
    return c(3072) * l2 * log2(c(148)) + c(3280) * l2 + c(384);
}

Expr recurrence_ratio(const Expr& m, const Expr& eps, const Expr& chi) {
    return ball_volume_lower(eps / c(2)) / (c(2) * Expr::pi() * chi) * m;
}

Expr flat_meridian_upper(const Expr& eps_y, const Expr& core_len) {
    return c(8) * Expr::pi() * eps_y / core_len;
}

Expr normalized_length_lower(const Expr& flat_len, const Expr& eps0) {
    return sqrt(flat_len / sinh(c(2) * eps0));
}

} // namespace formula

namespace {

const Expr& va() {
    static const Expr v = Expr::var("a");
    return v;
}
const Expr& vb() {
    static const Expr v = Expr::var("b");
    return v;
}

IntervalScalar run1(const Expr& e, const IntervalScalar& a) {
    Box b;
    b.emplace("a", a);
    return eval(e, b, a.prec());
}

IntervalScalar run2(const Expr& e, const IntervalScalar& a, const IntervalScalar& bv) {
    Box b;
    b.emplace("a", a);
    b.emplace("b", bv);
    return eval(e, b, std::max(a.prec(), bv.prec()));
}

IntervalScalar chi_of(const SurfaceSig& sig, long prec) { return IntervalScalar::from_int(sig.abs_euler(), prec); }

void require_pos(const IntervalScalar& x, const char* what) {
    if (!x.certainly_pos())
        throw DomainError(std::string(what) + " must be positive, got " + x.to_string());
}

// raise lo to 1 for an argument known mathematically to be >= 1
IntervalScalar clip_ge1(IntervalScalar x) {
    if (mpfr_cmp_si(x.hi_ptr(), 1) < 0)
        throw DomainError("argument of arccosh is below 1: " + x.to_string());
    if (mpfr_cmp_si(x.lo_ptr(), 1) < 0)
        mpfr_set_si(x.lo_ptr(), 1, MPFR_RNDD);
    return x;
}

} // namespace

IntervalScalar shortest_loop_bound(const SurfaceSig& sig, long prec) {
    return run1(formula::shortest_loop(va()), chi_of(sig, prec));
}

IntervalScalar thick_two_loop_bound(const SurfaceSig& sig, const MargulisEps& eps, long prec) {
    return run2(formula::thick_two_loop(va(), vb()), chi_of(sig, prec), eps.interval(prec));
}

IntervalScalar bers_bound(const SurfaceSig& sig, long prec) {
    return run1(formula::bers(va()), chi_of(sig, prec));
}

IntervalScalar collar_width(const IntervalScalar& len) {
    require_pos(len, "collar length");
    return run1(formula::collar_width(va()), len);
}

IntervalScalar collar_width_lower(const IntervalScalar& len) {
    require_pos(len, "collar length");
    return run1(formula::collar_width_lower(va()), len);
}

IntervalScalar inj_annulus(const IntervalScalar& core_len, const IntervalScalar& r) {
    require_pos(core_len, "core length");
    return run2(formula::inj_annulus(va(), vb()), core_len, r);
}

IntervalScalar inj_cusp(const IntervalScalar& r) { return run1(formula::inj_cusp(va()), r); }

IntervalScalar radius_at_injectivity_annulus(const IntervalScalar& eps, const IntervalScalar& core_len) {
    require_pos(core_len, "core length");
    require_pos(eps, "eps");
    const long prec = std::max(eps.prec(), core_len.prec());
    const IntervalScalar two = IntervalScalar::from_int(2, prec);
    if (eps.certainly_lt(core_len / two))
        throw DomainError("radius_at_injectivity_annulus needs sinh(eps) >= sinh(core_len/2)");
    return acosh(clip_ge1(sinh(eps) / sinh(core_len / two)));
}

IntervalScalar tube_separation(const IntervalScalar& eps0, const IntervalScalar& eps1) {
    require_pos(eps1, "eps1");
    if (!eps1.certainly_lt(eps0))
        throw DomainError("tube_separation needs eps1 < eps0");
    const long prec = std::max(eps0.prec(), eps1.prec());
    const IntervalScalar k = IntervalScalar::point(bilipschitz_factor(), prec);
    if ((eps0 * eps0).certainly_lt(k * eps1))
        throw DomainError("tube_separation needs eps0 >= sqrt(7.256 eps1)");
    return run2(formula::tube_separation(va(), vb()), eps0, eps1);
}

IntervalScalar cusp_separation(const IntervalScalar& eps0, const IntervalScalar& eps1) {
    require_pos(eps1, "eps1");
    if (eps0.certainly_lt(eps1))
        throw DomainError("cusp_separation needs eps1 <= eps0");
    return run2(formula::cusp_separation(va(), vb()), eps0, eps1);
}

IntervalScalar t1_ball_volume_lower(const IntervalScalar& eps, const mpq_class& radius) {
    if (!eps.certainly_nonneg() || !eps.certainly_le(IntervalScalar::point(radius, eps.prec())))
        throw DomainError("ball volume surrogate is only used for 0 <= eps <= " + radius.get_str());
    return run1(formula::ball_volume_lower(va()), eps);
}

IntervalScalar anosov_T(long prec) { return eval(formula::anosov_T(), prec); }

IntervalScalar anosov_T(TChoice choice, long prec) {
    if (choice == TChoice::Rounded)
        return IntervalScalar::from_int(200000, prec);
    return anosov_T(prec);
}

RecurrenceCount recurrence_count(std::uint64_t m, const mpq_class& eps, const MargulisEps& eps0,
                                 const SurfaceSig& sig, long prec, const mpq_class& radius) {
    if (eps <= 0 || eps >= eps0.value() / 2)
        throw DomainError("recurrence_count needs 0 < eps < eps0/2");
    if (eps / 2 > radius)
        throw DomainError("eps/2 lies outside the ball-volume surrogate radius " + radius.get_str());
    RecurrenceCount out;
    mpq_class mq(mpz_class(std::to_string(m)));
    Box b;
    box_set(b, "m", mq, mq, prec);
    box_set(b, "e", eps, eps, prec);
    box_set(b, "c", sig.abs_euler(), sig.abs_euler(), prec);
    out.value = eval(formula::recurrence_ratio(Expr::var("m"), Expr::var("e"), Expr::var("c")), b, prec);
    mpz_class lo, hi;
    mpfr_get_z(lo.get_mpz_t(), out.value.lo_ptr(), MPFR_RNDD);
    mpfr_get_z(hi.get_mpz_t(), out.value.hi_ptr(), MPFR_RNDD);
    if (lo < 0)
        lo = 0;
    out.straddles = lo != hi;
    out.n = lo.get_ui();
    return out;
}

IntervalScalar flat_meridian_upper(const IntervalScalar& eps_y, const IntervalScalar& core_len) {
    require_pos(core_len, "core length");
    return run2(formula::flat_meridian_upper(va(), vb()), eps_y, core_len);
}

IntervalScalar normalized_length_lower(const IntervalScalar& flat_len, const IntervalScalar& eps0) {
    require_pos(eps0, "eps0");
    if (!flat_len.certainly_nonneg())
        throw DomainError("flat length must be nonnegative");
    return run2(formula::normalized_length_lower(va(), vb()), flat_len, eps0);
}

} // namespace hyp
} // namespace effcurves
