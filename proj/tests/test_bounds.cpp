#include "doctest.h"

#include <random>

#include "effcurves/bounds.hpp"
#include "oracle.hpp"

using namespace effcurves;
using namespace oracle;

namespace {

IntervalScalar I(long v) { return IntervalScalar::from_int(v); }
IntervalScalar pt(const mpq_class& q) { return IntervalScalar::point(q); }

const ConstantLedger& ledger(const char* variant = "lemma") {
    static std::map<std::string, std::unique_ptr<ConstantLedger>> cache;
    auto& p = cache[variant];
    if (!p)
        p = std::make_unique<ConstantLedger>(mpq_class(1, 10), Variants::parse(variant));
    return *p;
}

mpz_class pow2(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

// log2 of c * 2^t / eps0^s at a given eps0, at 512 bits
R log2_mono(long c, long t, long s, const mpq_class& eps0) {
    R v = R(c) * powi(R(2), t) / powi(R(eps0), s);
    return ap(mpfr_log2, v);
}

// exponents (of 2 and of eps0) of a ratio recovered from its values at two eps0
std::pair<double, double> recover_gap(const R& f1, const R& f2, const mpq_class& e1, const mpq_class& e2) {
    const R l1 = ap(mpfr_log2, R(e1)), l2 = ap(mpfr_log2, R(e2));
    const R b = (f1 - f2) / (l1 - l2);
    const R a = f1 - b * l1;
    return {a.d(), b.d()};
}

DehnCheck check_one(const IntervalScalar& L) {
    return dehn_filling_check({{L, L, "m"}}, pt(mpq_class(1, 5)), I(2));
}

} // namespace

TEST_CASE("monomial normal form") {
    CHECK(Monomial(mpq_class(12)) == Monomial(mpq_class(3)) * Monomial::two(2));
    CHECK(Monomial(mpq_class(1, 8)) == Monomial::two(-3));
    CHECK(Monomial(mpq_class(3, 4)).coeff() == 3);
    CHECK(Monomial(mpq_class(3, 4)).exponent("2") == -2);
    CHECK((Monomial::eps0(3) / Monomial::eps0(3)) == Monomial());
    CHECK(Monomial::eps0(2).pow(-3) == Monomial::eps0(-6));
    CHECK(Monomial(mpq_class(-6)).pow(2) == Monomial(mpq_class(9)) * Monomial::two(2));
    CHECK(Monomial::two(1095) / Monomial::eps0(200) != Monomial::two(1095) / Monomial::eps0(199));
    CHECK((Monomial::two(331) / Monomial::eps0(160)).render() == "2^331 * eps0^-160");
    CHECK(Monomial().render() == "1");
    CHECK_THROWS_AS(Monomial(mpq_class(0)), DomainError);

    auto m = as_monomial(parse_expr("sqrt(9*eps0^4/4)"));
    REQUIRE(m);
    CHECK(*m == Monomial(mpq_class(3)) * Monomial::two(-1) * Monomial::eps0(2));
    CHECK_FALSE(as_monomial(parse_expr("eps0 + 1")));
    CHECK_FALSE(as_monomial(parse_expr("log(eps0)")));
    CHECK_FALSE(as_monomial(parse_expr("sqrt(3*eps0)")));
    auto half = as_monomial(parse_expr("sqrt(2*eps0^2)"));
    REQUIRE(half);
    CHECK(half->exponent("2") == mpq_class(1, 2));

    // to_expr evaluates to the same number
    const Monomial x = Monomial(mpq_class(5, 3)) * Monomial::two(-40) * Monomial::pi(3) * Monomial::eps0(-7) *
                       Monomial::chi(2);
    Box b;
    box_set(b, "eps0", mpq_class(1, 10), mpq_class(1, 10));
    box_set(b, "chi", 3, 3);
    const R want = R(mpq_class(5, 3)) * powi(R(2), -40) * powi(pi512(), 3) * powi(R(mpq_class(1, 10)), -7) * R(9);
    CHECK(encloses(eval(x.to_expr(), b), want));
}

TEST_CASE("variant selection") {
    CHECK(Variants::parse("lemma") == Variants::lemma());
    CHECK(Variants::parse("sec76") == Variants::assembly());
    CHECK(Variants::parse("assembly") == Variants::assembly());
    const Variants mixed = Variants::parse("c1=lemma, c3=alt");
    CHECK_FALSE(mixed.c1_alt);
    CHECK_FALSE(mixed.c2_alt);
    CHECK(mixed.c3_alt);
    CHECK(mixed.name() == "c1=lemma,c2=lemma,c3=alt");
    CHECK(Variants::parse(mixed.name()) == mixed);
    CHECK(Variants::lemma().name() == "lemma");
    CHECK(Variants::assembly().name() == "sec76");
    CHECK_THROWS_AS(Variants::parse("c4=alt"), DomainError);
    CHECK_THROWS_AS(Variants::parse("c1=maybe"), DomainError);
    CHECK_THROWS_AS(Variants::parse(""), DomainError);
}

TEST_CASE("ledger values") {
    const ConstantLedger& L = ledger();
    // a = 2^1095 * 10^200 exactly at eps0 = 1/10
    const Monomial& a = *L.entry("a").monomial;
    CHECK(a.coeff() == 1);
    CHECK(a.exponent("2") == 1095);
    CHECK(a.exponent("eps0") == -200);
    const mpq_class exact_a(pow2(1095) * pow10(200));
    CHECK(L.value("a").contains(exact_a));
    CHECK(L.value("a").rel_width_double() < 1e-35);

    CHECK_THROWS_AS(ConstantLedger(mpq_class(3, 10)), InvalidEps0);
    CHECK_THROWS_AS(ConstantLedger(mpq_class(-1, 10)), InvalidEps0);

    // eps ordering for |chi| = 1..10
    const IntervalScalar e0 = pt(mpq_class(1, 10));
    for (long chi = 1; chi <= 10; ++chi) {
        const IntervalScalar e1 = L.value("eps1", chi), e2 = L.value("eps2", chi), e3 = L.value("eps3", chi);
        CHECK(e2.certainly_lt(e3));
        CHECK(e3.certainly_lt(e1));
        CHECK(e1.certainly_lt(e0));
        CHECK(L.value("epsY", chi).overlaps(e1));
        if (chi > 1)
            CHECK(e1.certainly_lt(L.value("eps1", chi - 1)));
    }
    const R eps1_oracle = powi(R(mpq_class(1, 10)), 10) / (powi(R(2), 37) * powi(pi512(), 8) * powi(R(3), 16));
    CHECK(encloses(L.value("eps1", 3), eps1_oracle));

    // log-bearing entries against direct formulas
    const R log2_c1 = R(385) + R(60) * ap(mpfr_log2, R(10));
    CHECK(encloses(L.value("c2"), R(570) * log2_c1));
    CHECK(encloses(L.value("b"), R(1040) * log2_c1));
    CHECK(encloses(L.value("c4"), R(40) * ap(mpfr_log, R(640))));
    const R log2_c1_alt = R(109) + R(60) * ap(mpfr_log2, R(10));
    CHECK(encloses(ledger("sec76").value("c2"), R(230) * log2_c1_alt));
    // b does not follow the c1 selection
    CHECK(ledger("sec76").value("b").overlaps(L.value("b")));
    const R k = R(2) * R(exact_a) + R(3) * R(1040) * log2_c1 + R(2) * powi(R(2), 331) * powi(R(10), 160);
    CHECK(encloses(L.value("k"), k));

    CHECK(*L.entry("c3").monomial == *L.entry("c3_lemma").monomial);
    CHECK(*ledger("sec76").entry("c3").monomial == *L.entry("c3_alt").monomial);
    CHECK(*ledger("sec76").entry("c1").monomial == Monomial::two(109) / Monomial::eps0(60));
    CHECK_THROWS_AS(L.value("c9"), DomainError);
    CHECK_THROWS_AS(L.value("a", 0), DomainError);
    CHECK(L.certified_facts().size() == 3);

    // every entry expression is in eps0 and chi only
    for (const auto& en : L.entries())
        for (const auto& v : en.expr.variables())
            CHECK((v == "eps0" || v == "chi"));
}

TEST_CASE("identities match an independent exponent recovery") {
    // log2(lhs/rhs) at two values of eps0 at 512 bits, solved for the 2 and eps0 exponents
    const mpq_class e1(1, 10), e2(1, 7);
    struct Case {
        const char* lhs;
        const char* variant;
        long c, t, s;  // claimed rhs = c 2^t / eps0^s
        // lhs as c 2^t / eps0^s, written out from the ledger's defining formulas
        long lc, lt, ls;
    };
    const Case cases[] = {
        {"4*c6/c3", "lemma", 1, 1095, 200, 4, 223 + 870, 50 + 150},
        {"4*c6/c3", "sec76", 1, 1095, 200, 4, 223 + 270, 50 + 150},
        {"2*c7/c3", "lemma", 1, 331, 160, 2, 60 + 870, -10 + 150},
        {"2*c7/c3", "sec76", 1, 331, 160, 2, 60 + 270, -10 + 150},
    };
    for (const auto& k : cases) {
        CAPTURE(k.lhs);
        CAPTURE(k.variant);
        const ConstantLedger& L = ledger(k.variant);
        auto lhs = as_monomial(parse_expr(k.lhs), L.monomials());
        REQUIRE(lhs);
        const Monomial rhs = Monomial(mpq_class(k.c)) * Monomial::two(k.t) / Monomial::eps0(k.s);
        const IdentityReport rep = check_identity(*lhs, rhs);

        const R f1 = log2_mono(k.lc, k.lt, k.ls, e1) - log2_mono(k.c, k.t, k.s, e1);
        const R f2 = log2_mono(k.lc, k.lt, k.ls, e2) - log2_mono(k.c, k.t, k.s, e2);
        const auto [two_gap, eps_gap] = recover_gap(f1, f2, e1, e2);
        CHECK(rep.ratio.exponent("2").get_d() == doctest::Approx(two_gap).epsilon(1e-12));
        CHECK(rep.ratio.exponent("eps0").get_d() == doctest::Approx(eps_gap).epsilon(1e-12));
        CHECK(rep.holds == (std::abs(two_gap) < 1e-9 && std::abs(eps_gap) < 1e-9));
    }
    // the outcomes this pins down
    CHECK(check_identity(*as_monomial(parse_expr("4*c6/c3"), ledger().monomials()), *ledger().entry("a").monomial).holds);
    const IdentityReport r = check_identity(*as_monomial(parse_expr("2*c7/c3"), ledger("sec76").monomials()),
                                            Monomial::two(331) / Monomial::eps0(160));
    CHECK_FALSE(r.holds);
    CHECK(r.ratio == Monomial::eps0(20));
}

TEST_CASE("Theorem A threshold and length bound") {
    const ConstantLedger& L = ledger();
    const mpq_class a(pow2(1095) * pow10(200));
    mpz_class p345;
    mpz_pow_ui(p345.get_mpz_t(), mpz_class(2).get_mpz_t(), 345);
    CHECK(thmA_threshold(L, 2, 1).contains(a * p345));
    const R b = R(1040) * (R(385) + R(60) * ap(mpfr_log2, R(10)));
    CHECK(encloses(thmA_threshold(L, 1, 2), R(a) + b * ap(mpfr_log, R(2))));
    for (long y = 1; y < 5; ++y)
        CHECK(thmA_threshold(L, y, 6).certainly_lt(thmA_threshold(L, y + 1, 6)));
    CHECK_THROWS_AS(thmA_threshold(L, 0, 2), DomainError);

    const IntervalScalar th = thmA_threshold(L, 1, 2);
    const IntervalScalar dy = th * I(2);
    const IntervalScalar v = thmA_length_bound(L, 1, 2, dy);
    CHECK(v.certainly_pos());
    const R c = powi(R(2), 331) * powi(R(10), 160);
    const R dyo = R(2) * (R(a) + b * ap(mpfr_log, R(2)));
    CHECK(rel_err(v, c / (dyo - b * ap(mpfr_log, R(2)))) < 1e-30);

    CHECK_THROWS_AS(thmA_length_bound(L, 1, 2, th / I(2)), BelowThreshold);
    CHECK_THROWS_AS(thmA_length_bound(L, 1, 2, I(0)), BelowThreshold);
    // an interval straddling the threshold is not certainly above it
    CHECK_THROWS_AS(thmA_length_bound(L, 1, 2, th.hull(th * I(2)) - th / I(1000)), BelowThreshold);
    try {
        thmA_length_bound(L, 1, 2, I(5));
    } catch (const BelowThreshold& e) {
        CHECK(e.stage == "threshold");
    }

    // the bound tends to 0 from above
    const IntervalScalar far1 = thmA_length_bound(L, 1, 2, th * I(100000));
    const IntervalScalar far2 = thmA_length_bound(L, 1, 2, th * I(1000000000));
    CHECK(far2.certainly_lt(far1));
    CHECK(far2.certainly_pos());
    CHECK(far2.certainly_lt(v / I(100000000)));
}

TEST_CASE("Theorem A length bound is strictly antitone in dY") {
    std::mt19937_64 rng(7);
    for (const char* variant : {"lemma", "sec76"}) {
        const ConstantLedger& L = ledger(variant);
        for (int k = 0; k < 30; ++k) {
            const long y = 1 + static_cast<long>(rng() % 4), s = y + 1 + static_cast<long>(rng() % 5);
            const IntervalScalar th = thmA_threshold(L, y, s);
            const long f1 = 1 + static_cast<long>(rng() % 1000);
            const long f2 = f1 + 1 + static_cast<long>(rng() % 1000);
            const IntervalScalar d1 = th * pt(mpq_class(1000 + f1, 1000)), d2 = th * pt(mpq_class(1000 + f2, 1000));
            CHECK(thmA_length_bound(L, y, s, d2).certainly_lt(thmA_length_bound(L, y, s, d1)));
        }
    }
}

TEST_CASE("Theorem B bound") {
    const ConstantLedger& L = ledger();
    const ThmBResult r = thmB_bound(L, 2, pt(mpq_class(1, 100)));
    const R k = L.value("k").mid_double() > 0 ? R(2) * R(pow2(1095) * pow10(200)) +
                                                    R(3) * R(1040) * (R(385) + R(60) * ap(mpfr_log2, R(10))) +
                                                    R(2) * powi(R(2), 331) * powi(R(10), 160)
                                              : R(0);
    CHECK(encloses(r.bound, k * powi(R(2), 346) * R(100)));
    CHECK(r.warnings.empty());
    const ThmBResult twice = thmB_bound(L, 2, pt(mpq_class(2, 100)));
    CHECK((twice.bound * I(2)).overlaps(r.bound));
    CHECK(thmB_bound(L, 2, I(10)).warnings.size() == 1);  // 10 > log 8
    CHECK_THROWS_AS(thmB_bound(L, 2, I(0)), DomainError);
    CHECK_THROWS_AS(thmB_bound(L, 2, pt(mpq_class(-1, 2))), DomainError);
}

TEST_CASE("efficiency bounds") {
    const ConstantLedger& L = ledger();
    CHECK(efficiency_bound_simplified(L, 1, I(0)).contains(mpq_class(pow2(384) * pow10(60))));
    for (long chi = 1; chi < 6; ++chi) {
        CHECK(efficiency_bound(L, chi, I(1)).certainly_lt(efficiency_bound(L, chi + 1, I(1))));
        CHECK(efficiency_bound(L, chi, I(1)).certainly_le(efficiency_bound_simplified(L, chi, I(1))));
    }
    const IntervalScalar full = efficiency_bound(L, 2, I(1));
    // oracle for the displayed formula with T = 2 10^5 and vol(x) = (2 pi / 3) x^3
    const R pi = pi512();
    const R x = powi(R(mpq_class(1, 10)), 10) / (powi(R(2), 43) * powi(pi, 8) * powi(R(2), 16));
    const R vol = R(2) * pi / R(3) * powi(x, 3);
    const R want = R(4) * R(mpq_class(1, 10)) + R(16) * pi / ap(mpfr_sinh, x) +
                   R(256) * R(200000) * powi(pi, 2) * R(4) / powi(vol, 2) + R(2);
    CHECK(rel_err(full, want) < 1e-30);
    // the closed-form T is smaller and gives a smaller bound
    CHECK(efficiency_bound(L, 2, I(1), hyp::TChoice::ClosedForm).certainly_lt(full));
    CHECK_THROWS_AS(efficiency_bound(L, 2, I(-1)), DomainError);
}

TEST_CASE("width and per-segment count") {
    const IntervalScalar eps = pt(mpq_class(1, 10));
    CHECK(width_bound(I(30), eps, I(0)).certainly_le(I(0)));
    const IntervalScalar w = width_bound(I(30), eps, I(1));
    CHECK(w.certainly_pos());
    const R l(30), e(mpq_class(1, 10));
    auto ex = [](const R& r) { return ap(mpfr_sinh, R(2) * r) - R(2) * r; };
    const R want = (R(2) + R(2) * ap(mpfr_log2, l * ap(mpfr_exp, l / R(2)))) * ex(l + e) / ex(e);
    CHECK(rel_err(w, want) < 1e-30);
    CHECK(rel_err(curves_per_segment(I(30), eps), ex(l + e) / ex(e)) < 1e-30);
    // tiny eps needs the extra precision
    const IntervalScalar tiny = pt(mpq_class(1, 1000000000));
    const R et(mpq_class(1, 1000000000));
    CHECK(rel_err(curves_per_segment(I(1), tiny), ex(R(1) + et) / ex(et)) < 1e-25);
    CHECK(curves_per_segment(I(0), eps).contains(1));
    for (long len = 0; len < 20; ++len)
        CHECK(I(1).certainly_le(curves_per_segment(I(len), eps)));

    CHECK_THROWS_AS(width_bound(pt(mpq_class(1, 2)), eps, I(1)), DomainError);  // L e^{L/2} < 1
    // the length hypothesis 2 log(256 pi^2/eps^2) is about 24.88 here
    CHECK_NOTHROW(width_bound(I(30), eps, I(1), std::optional<long>()));
    CHECK_NOTHROW(width_bound(I(25), eps, I(1), 1));
    CHECK_THROWS_AS(width_bound(I(24), eps, I(1), 1), DomainError);
    CHECK_THROWS_AS(width_bound(I(25), eps, I(1), 2), DomainError);
    CHECK_THROWS_AS(width_bound(I(30), pt(mpq_class(2, 10)), I(1), std::nullopt, mpq_class(1, 10)), DomainError);
    CHECK_THROWS_AS(width_bound(I(30), eps, I(-1)), DomainError);
}

TEST_CASE("meridian lower bound") {
    const ConstantLedger& L = ledger();
    // the algebraic root
    const long y = 2;
    const IntervalScalar root = pow(I(y), 264) / L.value("c3") * (I(36) * log(I(y)) + L.value("c4"));
    CHECK(meridian_lower(L, y, root).contains_zero());
    // slope c3/|chi|^264
    const IntervalScalar m1 = meridian_lower(L, y, root * I(3)), m2 = meridian_lower(L, y, root * I(5));
    CHECK(((m2 - m1) / (root * I(2))).overlaps(L.value("c3") / pow(I(y), 264)));
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 500);
    CHECK(meridian_lower(L, 1, pt(mpq_class(big))).certainly_pos());
    CHECK(meridian_lower(L, 1, I(0)).certainly_neg());
    CHECK_THROWS_AS(meridian_lower(L, 1, I(-1)), DomainError);
}

TEST_CASE("Dehn filling threshold against a 512-bit oracle") {
    const R e(mpq_class(1, 5));
    const R pi = pi512();
    const R first = R(2) * pi * R(6771) * powi(ap(mpfr_cosh, R(mpq_class(3, 5)) * e + R(mpq_class(1475, 10000))), 5) /
                        powi(e, 5) +
                    R(mpq_class(117, 10));
    const R second = R(2) * pi * R(mpq_class(1135, 100)) / (powi(e, 2) * ap(mpfr_sqrt, e) * ap(mpfr_log, R(2))) +
                     R(mpq_class(117, 10));
    const R want = R(4) * (mpfr_cmp(first.v, second.v) > 0 ? first : second);
    const IntervalScalar th = dehn_filling_threshold(pt(mpq_class(1, 5)), I(2));
    CHECK(rel_err(th, want) < 1e-20);
    CHECK(encloses(th, want));
    CHECK(th.mid_double() == doctest::Approx(4 * 1.5866e8).epsilon(1e-3));
    CHECK(mpfr_cmp(first.v, second.v) > 0);
    // near J = 1 the second branch takes over
    const IntervalScalar near1 = dehn_filling_threshold(pt(mpq_class(1, 5)), pt(mpq_class(1000001, 1000000)));
    CHECK(th.certainly_lt(near1));

    CHECK_THROWS_AS(dehn_filling_threshold(I(0), I(2)), DomainError);
    CHECK_THROWS_AS(dehn_filling_threshold(pt(mpq_class(11, 10)), I(2)), DomainError);  // > log 3
    CHECK_NOTHROW(dehn_filling_threshold(pt(mpq_class(109, 100)), I(2)));
    CHECK_THROWS_AS(dehn_filling_threshold(pt(mpq_class(1, 5)), I(1)), DomainError);
}

TEST_CASE("Dehn filling check") {
    const IntervalScalar th = dehn_filling_threshold(pt(mpq_class(1, 5)), I(2));
    // squared length exactly at the threshold cannot be decided with enclosures
    const DehnCheck at = check_one(sqrt(th));
    CHECK(at.verdict == Verdict::Undecided);
    CHECK(at.margin.contains_zero());
    CHECK(check_one(sqrt(th * I(2))).verdict == Verdict::Holds);
    CHECK(check_one(sqrt(th / I(2))).verdict == Verdict::Fails);
    CHECK_THROWS_AS(dehn_filling_check({}, pt(mpq_class(1, 5)), I(2)), DomainError);
    CHECK_THROWS_AS(check_one(I(0)), DomainError);

    // total against the min-length shortcut: two equal meridians give exactly half
    const IntervalScalar L = I(40000);
    const DehnCheck two = dehn_filling_check({{L, L, "a"}, {L, L, "b"}}, pt(mpq_class(1, 5)), I(2));
    CHECK(two.total.overlaps(pow(L, 2) / I(2)));
    CHECK(two.shortcut.overlaps(two.total));
    CHECK(two.verdict == Verdict::Holds);
}

TEST_CASE("Dehn filling check is monotone in the meridian lengths") {
    std::mt19937_64 rng(11);
    const IntervalScalar eps = pt(mpq_class(1, 5)), J = I(2);
    const double root = std::sqrt(dehn_filling_threshold(eps, J).mid_double());
    int holds = 0;
    for (int k = 0; k < 1000; ++k) {
        const int n = 1 + static_cast<int>(rng() % 4);
        std::vector<MeridianData> ms;
        for (int i = 0; i < n; ++i) {
            // around the threshold, scaled for n meridians
            const long v = static_cast<long>(root * std::sqrt(n) * (0.5 + (rng() % 1500) / 1000.0));
            ms.push_back({I(v), I(v), "m" + std::to_string(i)});
        }
        const DehnCheck before = dehn_filling_check(ms, eps, J);
        const int which = static_cast<int>(rng() % n);
        const long grow = 1 + static_cast<long>(rng() % 10000);
        ms[which].normalized_length = ms[which].normalized_length + I(grow);
        const DehnCheck after = dehn_filling_check(ms, eps, J);
        CHECK(before.total.lo() < after.total.lo());
        if (before.holds()) {
            ++holds;
            CHECK(after.holds());
        }
        CHECK(before.shortcut.lo_double() <= before.total.hi_double());
    }
    CHECK(holds > 100);
}

TEST_CASE("end curve bounds") {
    const ConstantLedger& L = ledger();
    const EndCurveBounds one = end_curve_bounds(L, 1, 1);
    CHECK(one.total_drift.contains(4));
    CHECK(one.total_drift.is_point());
    const EndCurveBounds b = end_curve_bounds(L, 2, 1);
    CHECK(encloses(b.alpha_length, R(8) * pi512()));
    CHECK(b.alpha_drift.contains(4));
    CHECK(encloses(b.delta_length, R(2) * ap(mpfr_acosh, R(2))));
    const R c2 = R(570) * (R(385) + R(60) * ap(mpfr_log2, R(10)));
    CHECK(encloses(b.total_drift, R(4) + c2 * ap(mpfr_log, R(2))));
    CHECK_THROWS_AS(end_curve_bounds(L, 0, 1), DomainError);
}

TEST_CASE("Theorem A pipeline") {
    auto stage_names = [](const PipelineTrace& t) {
        std::vector<std::string> v;
        for (const auto& s : t.stages)
            v.push_back(s.name);
        return v;
    };
    auto check = [](const PipelineTrace& t, const std::string& name) {
        for (const auto& s : t.stages)
            for (const auto& c : s.checks)
                if (c.name == name)
                    return c.status;
        FAIL("no check " << name);
        return CertStatus::Unknown;
    };
    const std::vector<std::string> order{"end_curves", "delta_drift", "normalized_length", "final_bound"};

    SUBCASE("lemma constants: completes, stated bound does not dominate the composed one") {
        const ConstantLedger& L = ledger();
        const IntervalScalar dy = thmA_threshold(L, 1, 4) * I(2);
        const PipelineTrace t = theorem_a_pipeline(L, 4, 1, dy);
        CHECK(t.stages.size() == kPipelineStages);
        const auto names = stage_names(t);
        CHECK(names.front() == "end_curves");
        CHECK(names.back() == "final_bound");
        CHECK(std::is_sorted(names.begin(), names.end(), [&](auto& a, auto& b) {
            auto ia = std::find(order.begin(), order.end(), a), ib = std::find(order.begin(), order.end(), b);
            return ia != order.end() && ib != order.end() && ia < ib;
        }));
        REQUIRE(t.final_bound);
        CHECK(t.final_bound->overlaps(thmA_length_bound(L, 1, 4, dy)));
        CHECK(check(t, "beta_vs_c1") == CertStatus::Proved);
        CHECK(check(t, "composed_le_stated") == CertStatus::Disproved);
        CHECK(check(t, "dehn_direct") == CertStatus::Disproved);
        CHECK_FALSE(t.consistent);
        for (const auto& s : t.stages)
            for (const auto& c : s.checks)
                if (c.hypothesis)
                    CHECK(c.status == CertStatus::Proved);
    }
    SUBCASE("assembly constants: the beta step fails") {
        const ConstantLedger& L = ledger("sec76");
        const PipelineTrace t = theorem_a_pipeline(L, 4, 1, thmA_threshold(L, 1, 4) * I(2));
        CHECK(t.stages.size() == kPipelineStages);
        CHECK(check(t, "beta_vs_c1") == CertStatus::Disproved);
        CHECK(check(t, "composed_le_stated") == CertStatus::Proved);
        CHECK(t.variants == Variants::assembly());
    }
    SUBCASE("lemma c1 with the assembly c3: consistent") {
        const ConstantLedger& L = ledger("c1=lemma,c2=lemma,c3=alt");
        for (long y = 1; y <= 3; ++y) {
            const PipelineTrace t = theorem_a_pipeline(L, 6, y, thmA_threshold(L, y, 6) * I(2));
            CHECK(t.consistent);
            CHECK(t.composed_bound->certainly_le(*t.final_bound));
        }
    }
    SUBCASE("dY = 0 stops at the filling condition") {
        try {
            theorem_a_pipeline(ledger(), 4, 1, I(0));
            FAIL("expected BelowThreshold");
        } catch (const BelowThreshold& e) {
            CHECK(e.stage == "filling_condition");
            REQUIRE(e.partial);
            CHECK(e.partial->stages.size() == 6);
            CHECK(e.partial->stages.back().checks.back().status == CertStatus::Disproved);
        }
    }
    SUBCASE("hypotheses on chi") {
        CHECK_THROWS_AS(theorem_a_pipeline(ledger(), 1, 1, I(1)), BelowThreshold);
        CHECK_THROWS_AS(theorem_a_pipeline(ledger(), 2, 3, I(1)), BelowThreshold);
    }
    SUBCASE("just below the threshold the final stage refuses") {
        const ConstantLedger& L = ledger("c1=lemma,c2=lemma,c3=alt");
        const IntervalScalar th = thmA_threshold(L, 1, 4);
        try {
            theorem_a_pipeline(L, 4, 1, th * pt(mpq_class(999, 1000)));
            FAIL("expected BelowThreshold");
        } catch (const BelowThreshold& e) {
            CHECK(e.stage == "final_bound");
            CHECK(e.partial->stages.size() == kPipelineStages);
        }
    }
}

TEST_CASE("chain file parsing") {
    const std::string ok = "# comment\nchain x1 | title\ncitation somewhere\nnote n\nineq y >= 0 on y in [0, 1]\n";
    auto defs = parse_chain_file(ok, "t.ineq");
    REQUIRE(defs.size() == 1);
    CHECK(defs[0].id == "x1");
    CHECK(defs[0].title == "title");
    CHECK(defs[0].steps.size() == 1);
    CHECK(defs[0].steps[0].line == 5);
    CHECK_THROWS_AS(parse_chain_file("ineq y >= 0 on y in [0, 1]\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_chain_file("chain a\nfrobnicate 1\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_chain_file("chain a\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_chain_file("chain a b\nineq 1 >= 0\n", "t"), ParseError);
    try {
        parse_chain_file("chain a\nbogus\n", "f.ineq");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("f.ineq") != std::string::npos);
    }
}

TEST_CASE("chain steps") {
    const ConstantLedger& L = ledger();
    ChainOptions opt;
    auto run = [&](const std::string& text) {
        return run_chain(parse_chain_file("chain t\n" + text, "t.ineq")[0], L, opt);
    };
    CHECK(run("ineq y^2 >= 0 on y in [-1, 1]\n").status == CertStatus::Proved);
    const ChainCert bad = run("ineq y - 1/2 >= 0 on y in [0, 1]\n");
    CHECK(bad.status == CertStatus::Disproved);
    CHECK(chain_status_name(bad.status) == "Refuted");
    REQUIRE(bad.steps[0].cert->witness);
    // one refuted step refutes the chain even after proved ones
    CHECK(run("ineq 1 >= 0 on y in [0, 1]\nidentity c6 == 2^223/eps0^49\n").status == CertStatus::Disproved);
    // a non-monomial identity is Unknown, not Refuted
    const ChainCert unk = run("identity c4 == 40\n");
    CHECK(unk.status == CertStatus::Unknown);
    // lets and ledger names
    CHECK(run("let z = 2*c7\nidentity z/c3 == 2^931/eps0^140\n").status == CertStatus::Proved);
    CHECK(run("ineq c4 - 40*log(64/eps0) + 1/1000 >= 0 on eps0 in [$eps0_lo, $eps0_hi]\n").status == CertStatus::Proved);
    // an identically zero left side is not certified by enclosures
    CHECK(run("ineq c4 - 40*log(64/eps0) >= 0 on eps0 in [$eps0_lo, $eps0_hi]\n").status == CertStatus::Unknown);
    // a box outside the expression's domain gives Unknown with the reason
    const ChainCert dom = run("ineq log(y) >= -100 on y in [-1, 1]\n");
    CHECK(dom.status == CertStatus::Unknown);
    CHECK(dom.steps[0].detail.find("domain") != std::string::npos);
    CHECK_THROWS_AS(run("ineq 1 + >= 0 on y in [0, 1]\n"), ParseError);
    // per-variant outcomes appear only for the variant constants
    CHECK(run("identity c6 == c6\n").variant_outcomes.empty());
    const ChainCert v = run("identity 2*c7/c3 == 2^331/eps0^160\n");
    REQUIRE(v.variant_outcomes.size() == 2);
    CHECK(v.variant_outcomes[0].variant == "c3=lemma");
    CHECK(v.variant_outcomes[1].details[0].find("lhs/rhs = eps0^20") != std::string::npos);
    CHECK(run("ineq c2 >= 0 on eps0 in [1/10, 1/10]\n").variant_outcomes.size() == 4);
    opt.eps0_hi = mpq_class(3, 10);
    CHECK_THROWS_AS(run("ineq 1 >= 0 on y in [0, 1]\n"), InvalidEps0);
}

TEST_CASE("shipped chain corpus") {
    const ConstantLedger& L = ledger();
    ChainOptions opt;
    const auto certs = verify_assembly(L, opt, default_chains_dir());
    std::map<std::string, const ChainCert*> by_id;
    for (const auto& c : certs)
        by_id[c.id] = &c;
    REQUIRE(certs.size() == by_id.size());
    CHECK(std::is_sorted(certs.begin(), certs.end(), [](auto& a, auto& b) { return a.id < b.id; }));
    for (const char* id : {"thmB_logbound", "thmB_injbound", "sinh_lower", "collar_lower", "assembly_4c6_over_c3",
                           "assembly_c6_dominates", "assembly_lower_order", "assembly_length_denominator",
                           "ledger_eps_ordering", "ledger_beta_length", "efficiency_simplified",
                           "fellow_travel_product"}) {
        CAPTURE(id);
        REQUIRE(by_id.count(id));
        CHECK(by_id[id]->status == CertStatus::Proved);
    }
    REQUIRE(by_id.count("assembly_2c7_over_c3"));
    const ChainCert& c7 = *by_id["assembly_2c7_over_c3"];
    CHECK(c7.status == CertStatus::Disproved);
    REQUIRE(c7.variant_outcomes.size() == 2);
    for (const auto& o : c7.variant_outcomes)
        CHECK(o.status == CertStatus::Disproved);
    const ChainCert& c6 = *by_id["assembly_4c6_over_c3"];
    CHECK(c6.variant_outcomes[0].status == CertStatus::Proved);
    CHECK(c6.variant_outcomes[1].status == CertStatus::Disproved);
    const ChainCert& beta = *by_id["ledger_beta_length"];
    CHECK(beta.variant_outcomes[1].status == CertStatus::Disproved);

    // tails are recorded as their own steps
    int tails = 0;
    for (const auto& s : by_id["thmB_logbound"]->steps)
        tails += s.kind == "tail";
    CHECK(tails == 2);
    // the assembly variant ledger refutes 4c6/c3 in the main status as well
    ChainCert alt = run_chain(load_chain_corpus(default_chains_dir())[0], ledger("sec76"), opt);
    CHECK(alt.id == "assembly_2c7_over_c3");
    CHECK(alt.status == CertStatus::Disproved);

    // re-running is bit-reproducible, also with threads
    ChainOptions threaded = opt;
    threaded.cert.threads = 4;
    const auto again = verify_assembly(L, threaded, default_chains_dir());
    REQUIRE(again.size() == certs.size());
    for (std::size_t i = 0; i < certs.size(); ++i) {
        CHECK(again[i].status == certs[i].status);
        for (std::size_t j = 0; j < certs[i].steps.size(); ++j) {
            const auto& x = certs[i].steps[j];
            const auto& y = again[i].steps[j];
            CHECK(x.detail == y.detail);
            if (x.cert) {
                CHECK(x.cert->stats.subdomains == y.cert->stats.subdomains);
                if (x.cert->witness_value)
                    CHECK(x.cert->witness_value->to_string(30) == y.cert->witness_value->to_string(30));
            }
        }
    }
}
