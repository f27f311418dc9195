// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "effcurves/bounds.hpp"
#include "effcurves/projection.hpp"
#include "oracle.hpp"
#include "report.hpp"

using namespace effcurves;
using namespace oracle;

namespace {

IntervalScalar I(long v) { return IntervalScalar::from_int(v); }

struct Line {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& name, double limit_s, const std::function<Line()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Line r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s < limit_s;
    const bool ok = r.pass && in_time;
    failures += !ok;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s, limit %.0f s", s, limit_s);
    std::cout << (ok ? "PASS " : "FAIL ") << n << " " << name << ": " << r.detail << " (" << buf
              << (in_time ? "" : ", over time") << ")" << std::endl;
}

const ConstantLedger& ledger(const mpq_class& eps0, const char* variant = "lemma") {
    static std::map<std::pair<std::string, std::string>, std::unique_ptr<ConstantLedger>> cache;
    auto& p = cache[{eps0.get_str(), variant}];
    if (!p)
        p = std::make_unique<ConstantLedger>(eps0, Variants::parse(variant));
    return *p;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

// ---------------------------------------------------------------- 1

Line anosov() {
    const IntervalScalar t = hyp::anosov_T(hyp::TChoice::ClosedForm, kDefaultPrecision);
    const double width = (t.hi_double() - t.lo_double());
    const bool range = I(18000).certainly_lt(t) && t.certainly_lt(I(18100));
    const bool below = t.certainly_lt(I(200000));
    const bool rounded = hyp::anosov_T(hyp::TChoice::Rounded, kDefaultPrecision).contains(200000);
    return {width < 1e-6 && range && below && rounded,
            "T = " + t.to_string(12) + ", width " + fmt(width) + ", inside (18000, 18100) " + (range ? "yes" : "no") +
                ", certified < 200000 " + (below ? "yes" : "no")};
}

// ---------------------------------------------------------------- 2

// exponents of 2 and eps0, copied from the constant definitions as rational pairs
struct Exp2E {
    mpq_class two, eps;
};
Exp2E operator*(const Exp2E& a, const Exp2E& b) { return {a.two + b.two, a.eps + b.eps}; }
Exp2E operator/(const Exp2E& a, const Exp2E& b) { return {a.two - b.two, a.eps - b.eps}; }

Line identities() {
    const Exp2E c6{223, -50}, c7{60, 10}, c3_lemma{-870, 150}, c3_alt{-270, 150}, four{2, 0}, two{1, 0};
    struct Case {
        std::string name, variant, lhs;
        Exp2E independent, rhs;
        Monomial rhs_m;
    };
    const std::vector<Case> cases{
        {"4c6/c3 = 2^1095/eps0^200 (c3 = eps0^150/2^870)", "lemma", "4*c6/c3", four * c6 / c3_lemma, {1095, -200},
         Monomial::two(1095) / Monomial::eps0(200)},
        {"2c7/c3 = 2^331/eps0^160 (c3 = eps0^150/2^870)", "lemma", "2*c7/c3", two * c7 / c3_lemma, {331, -160},
         Monomial::two(331) / Monomial::eps0(160)},
        {"2c7/c3 = 2^331/eps0^160 (c3 = eps0^150/2^270)", "sec76", "2*c7/c3", two * c7 / c3_alt, {331, -160},
         Monomial::two(331) / Monomial::eps0(160)},
    };
    bool pass = true;
    std::string detail;
    for (const auto& k : cases) {
        const ConstantLedger& L = ledger(mpq_class(1, 10), k.variant.c_str());
        const auto lhs = as_monomial(parse_expr(k.lhs), L.monomials());
        if (!lhs)
            return {false, k.lhs + " is not a monomial"};
        const IdentityReport rep = check_identity(*lhs, k.rhs_m);
        const Exp2E gap = k.independent / k.rhs;
        const bool indep_holds = gap.two == 0 && gap.eps == 0;
        const bool agree = rep.holds == indep_holds && rep.ratio.exponent("2") == gap.two &&
                           rep.ratio.exponent("eps0") == gap.eps && rep.ratio.coeff() == 1;
        pass = pass && agree;
        detail += "; " + k.name + ": " + (rep.holds ? "holds" : "fails, lhs/rhs = " + rep.ratio.render()) +
                  (agree ? ", matches recomputation" : ", DISAGREES with recomputation 2^" + gap.two.get_str() +
                                                           " eps0^" + gap.eps.get_str());
    }
    // the stated 4c6/c3 identity itself must hold
    const auto first = as_monomial(parse_expr("4*c6/c3"), ledger(mpq_class(1, 10)).monomials());
    pass = pass && check_identity(*first, Monomial::two(1095) / Monomial::eps0(200)).holds;
    return {pass, detail.substr(2)};
}

// ---------------------------------------------------------------- 3

Line assembly_chains() {
    ChainOptions opt;
    opt.cert.precision = 128;
    const auto defs = load_chain_corpus(default_chains_dir());
    const std::vector<std::pair<std::string, std::string>> wanted{{"(i)", "thmB_logbound"},
                                                                  {"(ii)", "thmB_injbound"},
                                                                  {"(iii)", "sinh_lower"},
                                                                  {"(iv)", "collar_lower"}};
    bool pass = true;
    std::string detail;
    for (const auto& [tag, id] : wanted) {
        auto it = std::find_if(defs.begin(), defs.end(), [&](const ChainDef& d) { return d.id == id; });
        if (it == defs.end())
            return {false, "chain " + id + " missing"};
        const ChainCert c = run_chain(*it, ledger(mpq_class(1, 10)), opt);
        std::uint64_t boxes = 0;
        int tails = 0;
        for (const auto& s : c.steps) {
            tails += s.kind == "tail";
            if (s.cert)
                boxes += s.cert->stats.subdomains;
        }
        pass = pass && c.status == CertStatus::Proved;
        detail += " " + tag + " " + id + " " + chain_status_name(c.status) + " [" + std::to_string(boxes) +
                  " boxes, " + std::to_string(tails) + " tails]";
    }
    return {pass, detail.substr(1)};
}

// ---------------------------------------------------------------- 4

Line hempel_exhaustive() {
    const FareyBall ball(30);
    const auto& v = ball.slopes();
    std::uint64_t pairs = 0, violations = 0, unresolved_first = 0, skipped = 0;
    int radius0 = 8;
    for (std::size_t a = 0; a < v.size(); ++a) {
        const auto d = ball.distances(static_cast<int>(a), radius0);
        std::vector<int> far;
        for (std::size_t b = a + 1; b < v.size(); ++b) {
            ++pairs;
            if (d[b] < 0) {
                far.push_back(static_cast<int>(b));
                continue;
            }
            if (!hempel_holds(d[b], static_cast<std::uint64_t>(slope_det(v[a], v[b]))))
                ++violations;
        }
        unresolved_first += far.size();
        // re-run the unresolved ones at a larger radius
        for (int radius = 2 * radius0; !far.empty(); radius *= 2) {
            const auto dd = ball.distances(static_cast<int>(a), radius);
            std::vector<int> still;
            for (int b : far) {
                if (dd[b] < 0) {
                    still.push_back(b);
                    continue;
                }
                if (!hempel_holds(dd[b], static_cast<std::uint64_t>(slope_det(v[a], v[b]))))
                    ++violations;
            }
            far = still;
            if (radius > 1024) {
                for (int b : far)
                    std::cerr << "skipped " << v[a].to_string() << " " << v[b].to_string() << "\n";
                skipped += far.size();
                break;
            }
        }
    }
    const double frac = static_cast<double>(unresolved_first) / static_cast<double>(pairs);
    return {violations == 0 && frac < 0.01 && skipped == 0,
            std::to_string(pairs) + " pairs over " + std::to_string(v.size()) + " slopes, " +
                std::to_string(violations) + " violations, unresolved at radius " + std::to_string(radius0) + ": " +
                std::to_string(unresolved_first) + " (" + fmt(100 * frac) + "%), skipped " + std::to_string(skipped)};
}

// ---------------------------------------------------------------- 5

std::vector<NormalCurve> crossing_curves(const SubsurfaceEmbedding& emb, std::size_t count, unsigned seed) {
    const auto& S = emb.ambient();
    const auto slice = enumerate_curve_graph(S, 12);
    std::mt19937 rng(seed);
    std::set<NormalCurve> seen;
    std::vector<NormalCurve> out;
    for (int tries = 0; out.size() < count && tries < 50 * static_cast<int>(count); ++tries) {
        NormalCurve c = slice.curves[rng() % slice.curves.size()];
        for (int k = static_cast<int>(rng() % 4); k > 0; --k)
            c = c + slice.curves[rng() % slice.curves.size()];
        const auto comps = c.components();
        const NormalCurve a = NormalCurve::from_word(S, comps[rng() % comps.size()]);
        if (!normal_is_valid(a).ok || !seen.insert(a).second)
            continue;
        try {
            split_into_arcs(emb, a);
        } catch (const NoEssentialIntersection&) {
            continue;
        }
        out.push_back(a);
    }
    return out;
}

std::string whole_set_info;

Line projections() {
    bool pass = true;
    std::string detail, info;
    for (const auto& name : standard_fixture_names()) {
        const SubsurfaceEmbedding emb =
            SubsurfaceEmbedding::load(std::string(EFFCURVES_SOURCE_DIR) + "/fixtures/" + name + ".fix");
        const CurveGraphOracle oracle(emb.sub(), 20);
        const RibbonGraph& G = emb.ambient()->dual();
        std::mt19937 rng(5);
        std::uint64_t per_arc = 0, whole = 0;
        int max_diam = 0, unresolved = 0, isotopy_bad = 0;
        const auto curves = crossing_curves(emb, 120, 17);
        for (const auto& a : curves) {
            const ProjectionSet ps = project_curve(emb, a);
            for (const auto& arc : ps.per_arc)
                for (int x : arc)
                    for (int y : arc)
                        if (x < y)
                            per_arc = std::max(per_arc, normal_intersection(ps.curves[x], ps.curves[y]));
            for (std::size_t x = 0; x < ps.curves.size(); ++x)
                for (std::size_t y = x + 1; y < ps.curves.size(); ++y)
                    whole = std::max(whole, normal_intersection(ps.curves[x], ps.curves[y]));
            const DistanceBounds d = projection_diameter(ps, oracle);
            if (d.bfs_hi < 0)
                ++unresolved;
            max_diam = std::max(max_diam, d.hi);
            // another representative: rotated, maybe reversed, with backtracks
            Word w = a.components().at(0);
            std::rotate(w.begin(), w.begin() + static_cast<long>(rng() % w.size()), w.end());
            if (rng() % 2)
                w = words::inverse(w);
            for (int k = 0; k < 3; ++k) {
                const std::size_t at = rng() % (w.size() + 1);
                const int x = at == 0 ? w.back() : w[at - 1];
                int spur = RibbonGraph::twin(x);
                for (int r = static_cast<int>(rng() % 3); r > 0; --r)
                    spur = G.sigma(spur);
                w.insert(w.begin() + static_cast<long>(at), {spur, RibbonGraph::twin(spur)});
            }
            if (project_words(emb, {w}, "perturbed").curves != ps.curves || project_curve(emb, a + a).curves != ps.curves)
                ++isotopy_bad;
        }
        const bool ok = curves.size() >= 100 && per_arc <= 2 && max_diam <= 4 && unresolved == 0 && isotopy_bad == 0;
        pass = pass && ok;
        detail += "; " + name + ": " + std::to_string(curves.size()) + " curves, max i per arc " +
                  std::to_string(per_arc) + ", max diameter " + std::to_string(max_diam) + ", isotopy failures " +
                  std::to_string(isotopy_bad);
        info += "; " + name + " max i over the whole set " + std::to_string(whole);
    }
    whole_set_info = info.substr(2);
    return {pass, detail.substr(2)};
}

// ---------------------------------------------------------------- 6

Line pipeline_vs_evaluator() {
    std::mt19937_64 rng(2024);
    const mpq_class eps_choices[] = {mpq_class(1, 20), mpq_class(1, 10), mpq_class(1, 5)};
    int complete = 0, overlap = 0;
    for (int k = 0; k < 20; ++k) {
        const mpq_class e0 = eps_choices[rng() % 3];
        const long y = 1 + static_cast<long>(rng() % 4);
        const long s = std::max(2L, y) + static_cast<long>(rng() % (7 - std::max(2L, y)));
        const ConstantLedger& L = ledger(e0);
        const IntervalScalar dy = thmA_threshold(L, y, s) * I(2);
        const PipelineTrace t = theorem_a_pipeline(L, s, y, dy);
        complete += t.stages.size() == kPipelineStages;
        overlap += t.final_bound && t.final_bound->overlaps(thmA_length_bound(L, y, s, dy));
    }
    int antitone = 0;
    for (int k = 0; k < 50; ++k) {
        const mpq_class e0 = eps_choices[rng() % 3];
        const long y = 1 + static_cast<long>(rng() % 4);
        const long s = std::max(2L, y) + static_cast<long>(rng() % (7 - std::max(2L, y)));
        const ConstantLedger& L = ledger(e0);
        const IntervalScalar th = thmA_threshold(L, y, s);
        const long f1 = static_cast<long>(rng() % 10000), f2 = f1 + 1 + static_cast<long>(rng() % 10000);
        const IntervalScalar d1 = th * IntervalScalar::point(mpq_class(10000 + f1, 10000));
        const IntervalScalar d2 = th * IntervalScalar::point(mpq_class(10000 + f2, 10000));
        antitone += thmA_length_bound(L, y, s, d2).certainly_lt(thmA_length_bound(L, y, s, d1));
    }
    return {complete == 20 && overlap == 20 && antitone == 50,
            std::to_string(complete) + "/20 pipelines with 8 stages, " + std::to_string(overlap) +
                "/20 final intervals meet the evaluator, " + std::to_string(antitone) + "/50 pairs antitone"};
}

// ---------------------------------------------------------------- 7

Line dehn() {
    const R e(mpq_class(1, 5));
    const R pi = pi512();
    const R first = R(2) * pi * R(6771) * powi(ap(mpfr_cosh, R(mpq_class(3, 5)) * e + R(mpq_class(1475, 10000))), 5) /
                        powi(e, 5) +
                    R(mpq_class(117, 10));
    const R second = R(2) * pi * R(mpq_class(1135, 100)) / (powi(e, 2) * ap(mpfr_sqrt, e) * ap(mpfr_log, R(2))) +
                     R(mpq_class(117, 10));
    const R want = R(4) * (mpfr_cmp(first.v, second.v) > 0 ? first : second);
    const IntervalScalar eps = IntervalScalar::point(mpq_class(1, 5)), J = I(2);
    const IntervalScalar th = dehn_filling_threshold(eps, J);
    const double rel = rel_err(th, want);

    std::mt19937_64 rng(3);
    const double root = std::sqrt(th.mid_double());
    int monotone = 0;
    for (int k = 0; k < 1000; ++k) {
        const int n = 1 + static_cast<int>(rng() % 4);
        std::vector<MeridianData> ms;
        for (int i = 0; i < n; ++i) {
            const long v = static_cast<long>(root * std::sqrt(n) * (0.5 + static_cast<double>(rng() % 1500) / 1000.0));
            ms.push_back({I(v), I(v), "m" + std::to_string(i)});
        }
        const DehnCheck before = dehn_filling_check(ms, eps, J);
        const int which = static_cast<int>(rng() % n);
        ms[which].normalized_length = ms[which].normalized_length + I(1 + static_cast<long>(rng() % 10000));
        const DehnCheck after = dehn_filling_check(ms, eps, J);
        monotone += before.total.lo() < after.total.lo() && (!before.holds() || after.holds());
    }
    return {rel < 1e-20 && encloses(th, want) && monotone == 1000,
            "threshold " + th.to_string(15) + ", relative error vs 512-bit oracle " + fmt(rel) + ", " +
                std::to_string(monotone) + "/1000 lists monotone"};
}

// ---------------------------------------------------------------- 8

Line determinism() {
    report::Settings s;
    report::VerifyArgs a;
    a.threads = 1;
    const std::string one = report::verify(a, s).json.dump(2);
    const std::string again = report::verify(a, s).json.dump(2);
    a.threads = 8;
    const std::string eight = report::verify(a, s).json.dump(2);
    return {one == again && one == eight, "verify --chain all JSON: " + std::to_string(one.size()) + " bytes, runs " +
                                              (one == again ? "identical" : "DIFFER") + ", threads 1 vs 8 " +
                                              (one == eight ? "identical" : "DIFFER")};
}

} // namespace

int main() {
    criterion(1, "Anosov constant", 1, anosov);
    criterion(2, "exact ledger identities", 1, identities);
    criterion(3, "assembly chain certification", 60, assembly_chains);
    criterion(4, "Hempel bound, exhaustive to height 30", 300, hempel_exhaustive);
    criterion(5, "projection properties on fixtures", 300, projections);
    std::cout << "INFO 5 whole projection sets (pairwise, not required): " << whole_set_info << std::endl;
    criterion(6, "Theorem A evaluator vs pipeline", 120, pipeline_vs_evaluator);
    criterion(7, "Dehn filling criterion", 60, dehn);
    criterion(8, "determinism of the verification suite", 600, determinism);
    std::cout << (failures ? "FAIL" : "PASS") << " acceptance: " << 8 - failures << "/8 criteria" << std::endl;
    return failures ? 1 : 0;
}
