#include "effcurves/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace effcurves {

namespace {

IntervalScalar I(long v, long prec) { return IntervalScalar::from_int(v, prec); }
IntervalScalar Q(const mpq_class& v, long prec) { return IntervalScalar::point(v, prec); }

// re-round an interval to another precision, outward
IntervalScalar at_prec(const IntervalScalar& x, long prec) {
    IntervalScalar r(prec);
    mpfr_set(r.lo_ptr(), x.lo_ptr(), MPFR_RNDD);
    mpfr_set(r.hi_ptr(), x.hi_ptr(), MPFR_RNDU);
    return r;
}

void require_chi(long chi, long min, const char* what) {
    if (chi < min)
        throw DomainError(std::string(what) + " must be at least " + std::to_string(min) + ", got " +
                          std::to_string(chi));
}

// (sinh(2r) - 2r) for the H^3 ball volume pi (sinh 2r - 2r), needs extra bits
// for small r because of the cancellation
IntervalScalar sinh_excess(const IntervalScalar& r) {
    const IntervalScalar two_r = I(2, r.prec()) * r;
    return sinh(two_r) - two_r;
}

long cancellation_bits(const IntervalScalar& eps) {
    const double lo = eps.lo_double();
    if (!(lo > 0))
        return 64;
    // sinh(x) - x ~ x^3/6 loses about 2 log2(1/x) bits
    return 16 + static_cast<long>(std::max(0.0, -2.0 * std::log2(lo)));
}

} // namespace

BelowThreshold::BelowThreshold(std::string stage_name, const std::string& msg)
    : DomainError(msg), stage(std::move(stage_name)) {}

IntervalScalar thmA_threshold(const ConstantLedger& L, long chi_y, long chi_s) {
    require_chi(chi_y, 1, "|chi(Y)|");
    require_chi(chi_s, 1, "|chi(S)|");
    const long p = L.precision();
    const IntervalScalar a = L.value("a");
    IntervalScalar t = a * pow(I(chi_y, p), 345);
    if (chi_s > 1)
        t = t + L.value("b") * log(I(chi_s, p));
    return t;
}

IntervalScalar thmA_length_bound(const ConstantLedger& L, long chi_y, long chi_s, const IntervalScalar& dy) {
    const IntervalScalar th = thmA_threshold(L, chi_y, chi_s);
    if (!th.certainly_le(dy))
        throw BelowThreshold("threshold", "d_Y = " + dy.to_string(8) + " is not certainly above the threshold " +
                                              th.to_string(8));
    const long p = L.precision();
    IntervalScalar denom = at_prec(dy, p);
    if (chi_s > 1)
        denom = denom - L.value("b") * log(I(chi_s, p));
    return L.value("c") * pow(I(chi_y, p), 248) / denom;
}

ThmBResult thmB_bound(const ConstantLedger& L, long chi_s, const IntervalScalar& inj) {
    require_chi(chi_s, 1, "|chi(S)|");
    if (!inj.certainly_pos())
        throw DomainError("injectivity radius must be positive, got " + inj.to_string(8));
    const long p = L.precision();
    ThmBResult r;
    r.bound = L.value("k") * pow(I(chi_s, p), 346) / at_prec(inj, p);
    const IntervalScalar cap = log(I(4 * chi_s, p));
    if (!inj.certainly_le(cap))
        r.warnings.push_back("inj = " + inj.to_string(8) + " is not certainly at most log(4|chi(S)|) = " +
                             cap.to_string(8) + ", which every closed hyperbolic M fibering over S satisfies");
    return r;
}

IntervalScalar efficiency_bound(const ConstantLedger& L, long chi_s, const IntervalScalar& len, hyp::TChoice t) {
    require_chi(chi_s, 1, "|chi(S)|");
    if (!len.certainly_nonneg())
        throw DomainError("length must be nonnegative, got " + len.to_string(8));
    const long p = L.precision();
    const IntervalScalar pi = IntervalScalar::pi(p);
    const IntervalScalar e0 = L.eps0().interval(p);
    const IntervalScalar chi = I(chi_s, p);
    // the displayed radius uses 2^43, not the 2^37 of eps1
    const IntervalScalar x = pow(e0, 10) / (Q(mpq_class(mpz_class(1) << 43), p) * pow(pi, 8) * pow(chi, 16));
    const IntervalScalar vol = hyp::t1_ball_volume_lower(x);
    return I(4, p) * e0 + I(16, p) * pi / sinh(x) +
           I(256, p) * hyp::anosov_T(t, p) * pow(pi, 2) * pow(chi, 2) / pow(vol, 2) + I(2, p) * at_prec(len, p);
}

IntervalScalar efficiency_bound_simplified(const ConstantLedger& L, long chi_s, const IntervalScalar& len) {
    require_chi(chi_s, 1, "|chi(S)|");
    if (!len.certainly_nonneg())
        throw DomainError("length must be nonnegative, got " + len.to_string(8));
    const long p = L.precision();
    const Monomial m = Monomial::two(384) / Monomial::eps0(60);
    Box b;
    box_set(b, "eps0", L.eps0().value(), L.eps0().value(), p);
    return I(2, p) * at_prec(len, p) + eval(m.to_expr(), b, p) * pow(I(chi_s, p), 98);
}

IntervalScalar curves_per_segment(const IntervalScalar& len, const IntervalScalar& eps) {
    if (!len.certainly_nonneg())
        throw DomainError("length must be nonnegative, got " + len.to_string(8));
    if (!eps.certainly_pos())
        throw DomainError("eps must be positive, got " + eps.to_string(8));
    const long base = std::max(len.prec(), eps.prec());
    const long p = base + cancellation_bits(eps);
    const IntervalScalar e = at_prec(eps, p), l = at_prec(len, p);
    const IntervalScalar r = sinh_excess(l + e) / sinh_excess(e);
    // the ratio is at least 1 because sinh(2r) - 2r is increasing
    return at_prec(max(r, I(1, p)), base);
}

IntervalScalar width_bound(const IntervalScalar& len, const IntervalScalar& eps, const IntervalScalar& kappa_len,
                           std::optional<long> chi_y, std::optional<mpq_class> eps0) {
    if (!kappa_len.certainly_nonneg())
        throw DomainError("kappa length must be nonnegative, got " + kappa_len.to_string(8));
    if (!eps.certainly_pos())
        throw DomainError("eps must be positive, got " + eps.to_string(8));
    const long base = std::max({len.prec(), eps.prec(), kappa_len.prec()});
    if (eps0 && !eps.certainly_le(IntervalScalar::point(*eps0, base)))
        throw DomainError("eps = " + eps.to_string(8) + " exceeds eps0 = " + eps0->get_str());
    if (chi_y) {
        require_chi(*chi_y, 1, "|chi(Y)|");
        const IntervalScalar pi = IntervalScalar::pi(base);
        const IntervalScalar need =
            I(2, base) * log(I(256, base) * pow(pi, 2) * pow(I(*chi_y, base), 4) / pow(at_prec(eps, base), 2));
        if (!need.certainly_le(len))
            throw DomainError("length " + len.to_string(8) + " is below 2 log(256 pi^2 |chi(Y)|^4/eps^2) = " +
                              need.to_string(8));
    }
    if (kappa_len.is_point() && kappa_len.certainly_le(I(0, base)))
        return I(0, base);
    const long p = base + cancellation_bits(eps);
    const IntervalScalar l = at_prec(len, p);
    const IntervalScalar inner = l * exp(l / I(2, p));
    // log2 of inner must be positive for the factor to make sense
    if (!I(1, p).certainly_lt(inner))
        throw DomainError("L e^{L/2} must exceed 1, got " + inner.to_string(8));
    const IntervalScalar factor = I(2, p) + I(2, p) * log2(inner);
    const IntervalScalar e = at_prec(eps, p);
    return at_prec(factor * sinh_excess(e + l) / sinh_excess(e) * at_prec(kappa_len, p), base);
}

IntervalScalar meridian_lower(const ConstantLedger& L, long chi_y, const IntervalScalar& dy) {
    require_chi(chi_y, 1, "|chi(Y)|");
    if (!dy.certainly_nonneg())
        throw DomainError("d_Y must be nonnegative, got " + dy.to_string(8));
    const long p = L.precision();
    const IntervalScalar chi = I(chi_y, p);
    return L.value("c3") * at_prec(dy, p) / pow(chi, 264) - I(36, p) * log(chi) - L.value("c4");
}

IntervalScalar dehn_filling_threshold(const IntervalScalar& eps, const IntervalScalar& J) {
    const long p = std::max(eps.prec(), J.prec());
    if (!eps.certainly_pos() || !eps.certainly_le(log(I(3, p))))
        throw DomainError("need 0 < eps <= log 3, got " + eps.to_string(8));
    if (!I(1, p).certainly_lt(J))
        throw DomainError("need J > 1, got " + J.to_string(8));
    const IntervalScalar pi = IntervalScalar::pi(p);
    const IntervalScalar e = at_prec(eps, p);
    const IntervalScalar tail = Q(mpq_class(117, 10), p);
    const IntervalScalar first =
        I(2, p) * pi * I(6771, p) * pow(cosh(Q(mpq_class(3, 5), p) * e + Q(mpq_class(1475, 10000), p)), 5) / pow(e, 5) +
        tail;
    const IntervalScalar second =
        I(2, p) * pi * Q(mpq_class(1135, 100), p) / (pow(e, 2) * sqrt(e) * log(at_prec(J, p))) + tail;
    return I(4, p) * max(first, second);
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Undecided: return "undecided";
    }
    return "?";
}

DehnCheck dehn_filling_check(const std::vector<MeridianData>& meridians, const IntervalScalar& eps,
                             const IntervalScalar& J) {
    if (meridians.empty())
        throw DomainError("no meridians");
    DehnCheck r;
    r.threshold = dehn_filling_threshold(eps, J);
    const long p = r.threshold.prec();
    IntervalScalar sum = I(0, p);
    std::optional<IntervalScalar> min_sq;
    for (const auto& m : meridians) {
        if (!m.normalized_length.certainly_pos())
            throw DomainError("meridian " + m.label + " has no certainly positive normalized length");
        const IntervalScalar sq = pow(at_prec(m.normalized_length, p), 2);
        sum = sum + I(1, p) / sq;
        min_sq = min_sq ? min(*min_sq, sq) : sq;
    }
    r.total = I(1, p) / sum;
    r.shortcut = *min_sq / I(static_cast<long>(meridians.size()), p);
    r.margin = r.total - r.threshold;
    if (r.threshold.certainly_le(r.total))
        r.verdict = Verdict::Holds;
    else if (r.total.certainly_lt(r.threshold))
        r.verdict = Verdict::Fails;
    else
        r.verdict = Verdict::Undecided;
    return r;
}

EndCurveBounds end_curve_bounds(const ConstantLedger& L, long chi_s, long chi_y) {
    require_chi(chi_s, 1, "|chi(S)|");
    require_chi(chi_y, 1, "|chi(Y)|");
    const long p = L.precision();
    EndCurveBounds r;
    r.alpha_length = I(4, p) * IntervalScalar::pi(p) * I(chi_s, p);
    r.alpha_drift = I(4, p);
    r.delta_length = I(2, p) * acosh(I(chi_y + 1, p));
    r.delta_drift = chi_s == 1 ? I(0, p) : L.value("c2") * log(I(chi_s, p));
    r.total_drift = r.alpha_drift + r.delta_drift;
    return r;
}

} // namespace effcurves
