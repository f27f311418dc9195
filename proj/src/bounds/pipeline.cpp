#include "effcurves/bounds.hpp"

namespace effcurves {

namespace {

IntervalScalar I(long v, long prec) { return IntervalScalar::from_int(v, prec); }

CertStatus status_of(bool certain_true, bool certain_false) {
    if (certain_true)
        return CertStatus::Proved;
    if (certain_false)
        return CertStatus::Disproved;
    return CertStatus::Unknown;
}

// a <= b as a three-valued check
CertStatus le_status(const IntervalScalar& a, const IntervalScalar& b) {
    return status_of(a.certainly_le(b), b.certainly_lt(a));
}

class Builder {
public:
    explicit Builder(const ConstantLedger& L) { trace_.variants = L.variants(); }

    StageRecord& stage(const std::string& name, const std::string& citation) {
        trace_.stages.push_back({name, citation, {}, {}});
        return trace_.stages.back();
    }

    void value(const std::string& name, const IntervalScalar& v) { trace_.stages.back().values.push_back({name, v}); }

    void consistency(const std::string& name, const std::string& statement, CertStatus s) {
        trace_.stages.back().checks.push_back({name, statement, s, false});
        if (s != CertStatus::Proved)
            trace_.consistent = false;
    }

    // throws BelowThreshold with the trace so far
    void hypothesis(const std::string& name, const std::string& statement, CertStatus s) {
        trace_.stages.back().checks.push_back({name, statement, s, true});
        if (s == CertStatus::Proved)
            return;
        trace_.verdict = "BelowThreshold at " + trace_.stages.back().name;
        BelowThreshold e(trace_.stages.back().name, "hypothesis '" + statement + "' of stage " +
                                                        trace_.stages.back().name + " is " +
                                                        (s == CertStatus::Disproved ? "false" : "not certified"));
        e.partial = std::make_shared<PipelineTrace>(trace_);
        throw e;
    }

    PipelineTrace& trace() { return trace_; }

private:
    PipelineTrace trace_;
};

} // namespace

PipelineTrace theorem_a_pipeline(const ConstantLedger& L, long chi_s, long chi_y, const IntervalScalar& dy_in) {
    const long p = L.precision();
    Builder B(L);
    const IntervalScalar chiS = I(chi_s, p), chiY = I(chi_y, p);
    const IntervalScalar dy = dy_in + I(0, p);
    const IntervalScalar logS = log(chiS), logY = log(chiY);

    // 1. end invariants to moderate-length curves alpha
    B.stage("end_curves", "end curve lemma: length at most 4 pi |chi(S)|, projection drift at most 4");
    B.hypothesis("chi_s", "|chi(S)| >= 2", status_of(chi_s >= 2, chi_s < 2));
    B.hypothesis("chi_y", "1 <= |chi(Y)| <= |chi(S)|", status_of(chi_y >= 1 && chi_y <= chi_s, true));
    B.hypothesis("dy_nonneg", "d_Y(nu-, nu+) >= 0", status_of(dy.certainly_nonneg(), dy.certainly_neg()));
    const EndCurveBounds ends = end_curve_bounds(L, chi_s, chi_y);
    B.value("alpha_length", ends.alpha_length);
    B.value("alpha_drift", ends.alpha_drift);

    // 2. efficiency: projections of alpha as curves beta of bounded length
    B.stage("beta_length", "covering lemma: beta length at most c1 |chi(S)|^98");
    const IntervalScalar eff = efficiency_bound_simplified(L, chi_s, ends.alpha_length);
    const IntervalScalar beta = L.value("c1") * pow(chiS, 98);
    B.value("efficiency_output", eff);
    B.value("beta_length", beta);
    B.consistency("beta_vs_c1", "2 * 4 pi |chi(S)| + 2^384/eps0^60 |chi(S)|^98 <= c1 |chi(S)|^98", le_status(eff, beta));

    // 3. short curves delta close to beta
    B.stage("delta_drift", "shorter curves lemma: d_Y(delta, beta) <= c2 log |chi(S)|");
    B.value("delta_length", ends.delta_length);
    B.value("delta_drift", ends.delta_drift);
    B.value("total_drift", ends.total_drift);
    // the intersection-number route the proof sketches, against the stated c2 log |chi(S)|
    const IntervalScalar via_i = I(2, p) + I(2, p) * log2(beta * exp(ends.delta_length / I(2, p)));
    B.value("drift_via_intersection", via_i);
    B.consistency("drift_vs_c2", "2 + 2 log2(c1 |chi(S)|^98 e^{l(delta)/2}) <= c2 log |chi(S)|",
                  le_status(via_i, ends.delta_drift));
    const IntervalScalar d_delta = dy - ends.total_drift;
    B.value("d_delta_lower", d_delta);

    // 4. meridian length on the cusp torus
    B.stage("meridian", "covering proposition: c3 d/|chi(Y)|^264 - 36 log|chi(Y)| - c4");
    const IntervalScalar m = L.value("c3") * d_delta / pow(chiY, 264) - I(36, p) * logY - L.value("c4");
    B.value("meridian_lower", m);

    // 5. normalized length from the area lemma
    B.stage("normalized_length", "area lemma: normalized length >= sqrt(Length/sinh(2 eps0))");
    const IntervalScalar e0 = L.eps0().interval(p);
    const IntervalScalar sinh2e0 = sinh(I(2, p) * e0);
    B.value("sinh_2eps0", sinh2e0);
    std::optional<IntervalScalar> normalized;
    if (m.certainly_pos()) {
        normalized = hyp::normalized_length_lower(m, e0);
        B.value("normalized_lower", *normalized);
    }

    // 6. the filling condition, in the form the theorem's threshold is tuned to
    B.stage("filling_condition", "filling lower bound remark: condition with c6 |chi(Y)|^80");
    const IntervalScalar lhs6 = L.value("c3") / (I(2, p) * pow(chiY, 265)) * d_delta -
                                (I(36, p) * logY + L.value("c4")) / (I(2, p) * chiY);
    const IntervalScalar rhs6 = L.value("c6") * pow(chiY, 80);
    B.value("condition_lhs", lhs6);
    B.value("condition_rhs", rhs6);
    B.hypothesis("c6_condition", "c3/(2|chi(Y)|^265) d - (36 log|chi(Y)| + c4)/(2|chi(Y)|) >= c6 |chi(Y)|^80",
                 le_status(rhs6, lhs6));
    // the filling theorem itself at eps = 2 epsY, J = 2, with n <= 2|chi(Y)| meridians each of
    // squared normalized length at least m / sinh(2 eps0)
    const IntervalScalar epsY = L.value("epsY", chi_y);
    const IntervalScalar dehn_th = dehn_filling_threshold(I(2, p) * epsY, I(2, p));
    const IntervalScalar total_lower = m / (sinh2e0 * I(2 * chi_y, p));
    B.value("epsY", epsY);
    B.value("dehn_threshold", dehn_th);
    B.value("total_normalized_lower", total_lower);
    B.consistency("dehn_direct", "min L^2 / n >= filling threshold at eps = 2 epsY, J = 2", le_status(dehn_th, total_lower));

    // 7. tube radius: the core length from the meridian length
    B.stage("tube_radius", "tube radius conversion: l <= 16 pi epsY / m <= c7 / (|chi(Y)|^16 m)");
    const IntervalScalar sixteen_pi_eps = I(16, p) * IntervalScalar::pi(p) * epsY;
    const IntervalScalar c7_term = L.value("c7") / pow(chiY, 16);
    B.consistency("c7_dominates", "16 pi epsY <= c7 / |chi(Y)|^16", le_status(sixteen_pi_eps, c7_term));
    const IntervalScalar composed = sixteen_pi_eps / m;
    B.value("length_via_epsY", composed);
    B.value("length_via_c7", c7_term / m);

    // 8. the closed form of the theorem
    B.stage("final_bound", "Theorem A: c |chi(Y)|^248 / (d_Y - b log |chi(S)|)");
    const IntervalScalar th = thmA_threshold(L, chi_y, chi_s);
    B.value("threshold", th);
    B.hypothesis("threshold", "d_Y >= a |chi(Y)|^345 + b log |chi(S)|", le_status(th, dy));
    const IntervalScalar stated = thmA_length_bound(L, chi_y, chi_s, dy);
    B.value("stated_bound", stated);
    B.value("composed_bound", composed);
    B.consistency("composed_le_stated", "bound produced by the stages <= stated closed form", le_status(composed, stated));

    PipelineTrace& t = B.trace();
    t.final_bound = stated;
    t.composed_bound = composed;
    t.verdict = t.consistent ? "bound emitted; every stage consistent" : "bound emitted; some consistency checks fail";
    return t;
}

} // namespace effcurves
