#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "effcurves/curves.hpp"

using namespace effcurves;

namespace {

std::vector<Slope> slopes_up_to(long h) {
    std::vector<Slope> out;
    for (long q = 0; q <= h; ++q)
        for (long p = -h; p <= h; ++p)
            if (std::gcd(p, q) == 1 && (q > 0 || p == 1))
                out.emplace_back(p, q);
    return out;
}

// plain BFS over explicit Farey edges of all slopes up to height h
std::map<std::pair<Slope, Slope>, int> reference_distances(long h, const std::vector<Slope>& sources) {
    const auto vs = slopes_up_to(h);
    std::map<Slope, int> idx;
    for (std::size_t i = 0; i < vs.size(); ++i)
        idx[vs[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> adj(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (slope_det(vs[i], vs[j]) == 1) {
                adj[i].push_back(static_cast<int>(j));
                adj[j].push_back(static_cast<int>(i));
            }
    std::map<std::pair<Slope, Slope>, int> out;
    for (const Slope& s : sources) {
        std::vector<int> d(vs.size(), -1);
        std::vector<int> q{idx[s]};
        d[idx[s]] = 0;
        for (std::size_t k = 0; k < q.size(); ++k)
            for (int w : adj[q[k]])
                if (d[w] < 0) {
                    d[w] = d[q[k]] + 1;
                    q.push_back(w);
                }
        for (std::size_t i = 0; i < vs.size(); ++i)
            out[{s, vs[i]}] = d[i];
    }
    return out;
}

// recover the slope of a curve on the standard once-punctured torus
Slope torus_slope(const NormalCurve& c) {
    const auto w = c.edge_weights();
    const long p = w[0], q = w[1], d = w[2];
    if (q == 0)
        return Slope(1, 0);
    return Slope(std::labs(p - q) == d ? p : -p, q);
}

} // namespace

TEST_CASE("slope canonical form and parsing") {
    CHECK(Slope(-1, -2) == Slope(1, 2));
    CHECK(Slope(-1, 0) == Slope(1, 0));
    CHECK(Slope(3, -5).p == -3);
    CHECK_THROWS_AS(Slope(0, 0), CurveError);
    CHECK_THROWS_AS(Slope(2, 4), CurveError);
    CHECK(Slope::parse("3/5") == Slope(3, 5));
    CHECK(Slope::parse("-7") == Slope(-7, 1));
    CHECK(Slope::parse("1/0") == Slope(1, 0));
    CHECK_THROWS_AS(Slope::parse("1/x"), CurveError);
    CHECK_THROWS_AS(Slope::parse("2/2"), CurveError);
    CHECK(Slope(-3, 5).to_string() == "-3/5");
}

TEST_CASE("slope intersection examples") {
    const auto T = Sporadic::OneHoledTorus, F = Sporadic::FourHoledSphere;
    CHECK(slope_intersection(Slope(0, 1), Slope(1, 0), T) == 1);
    CHECK(slope_intersection(Slope(2, 7), Slope(2, 7), T) == 0);
    CHECK(slope_intersection(Slope(1, 2), Slope(3, 5), T) == 1);
    CHECK(slope_intersection(Slope(1, 2), Slope(3, 5), F) == 2);
    CHECK(slope_intersection(Slope(1, 3), Slope(-2, 5), T) == 11);
}

TEST_CASE("farey distance examples") {
    CHECK(farey_distance(Slope(0, 1), Slope(1, 0), 4) == 1);
    CHECK(farey_distance(Slope(5, 8), Slope(5, 8), 4) == 0);
    // 0/1 and 1/2 have determinant 1, so they are neighbours; 2/1 is two steps away via 1/1
    CHECK(farey_distance(Slope(0, 1), Slope(1, 2), 4) == 1);
    CHECK(farey_distance(Slope(0, 1), Slope(2, 1), 4) == 2);
    // 0/1, 1/1, 2/1, 5/2, 12/5; a radius of 3 must not produce a number
    CHECK(farey_distance(Slope(0, 1), Slope(12, 5), 8) == 4);
    CHECK_FALSE(farey_distance(Slope(0, 1), Slope(12, 5), 3).has_value());
}

TEST_CASE("farey ball matches an explicit all-pairs BFS in a larger ball") {
    const auto small = slopes_up_to(7);
    const auto ref = reference_distances(21, small);
    for (const Slope& a : small)
        for (const Slope& b : small) {
            const auto d = farey_distance(a, b, 50);
            REQUIRE(d.has_value());
            CHECK(*d == ref.at({a, b}));
            CHECK(d == farey_distance(b, a, 50));
        }
}

TEST_CASE("hempel bound") {
    CHECK(hempel_bound(1).contains(mpq_class(2)));
    CHECK(hempel_bound(4).contains(mpq_class(6)));
    CHECK(hempel_bound(0).contains(mpq_class(1)));
    CHECK(hempel_bound(0).is_point());
    for (std::uint64_t i = 0; i <= 300; ++i)
        for (int d = 0; d <= 20; ++d) {
            const IntervalScalar h = hempel_bound(i);
            const IntervalScalar dd = IntervalScalar::from_int(d);
            if (dd.certainly_le(h) || h.certainly_lt(dd))
                CHECK(hempel_holds(d, i) == dd.certainly_le(h));
        }
    CHECK(hempel_holds(6, 4));
    CHECK_FALSE(hempel_holds(7, 4));
}

TEST_CASE("length intersection bound") {
    const auto one = IntervalScalar::from_int(1), two = IntervalScalar::from_int(2);
    const auto zero = IntervalScalar::from_int(0);
    const auto e = length_intersection_bound(one, two);
    CHECK(e.lo_double() > 2.718281828);
    CHECK(e.hi_double() < 2.718281829);
    CHECK(length_intersection_bound(IntervalScalar::from_int(3), zero).contains(mpq_class(3)));
    CHECK(length_intersection_bound(zero, two).contains(mpq_class(0)));
    CHECK_THROWS_AS(length_intersection_bound(-one, two), DomainError);
}

TEST_CASE("standard triangulations") {
    auto t = TriSurface::once_punctured_torus();
    CHECK(t->genus() == 1);
    CHECK(t->punctures() == 1);
    CHECK(sporadic_type(*t) == Sporadic::OneHoledTorus);
    auto s = TriSurface::four_punctured_sphere();
    CHECK(s->genus() == 0);
    CHECK(s->punctures() == 4);
    CHECK(sporadic_type(*s) == Sporadic::FourHoledSphere);
    for (int g = 1; g <= 4; ++g) {
        auto f = TriSurface::fan(g);
        CHECK(f->genus() == g);
        CHECK(f->punctures() == 1);
        CHECK(f->euler() == 1 - 2 * g);
    }
    CHECK_THROWS_AS(TriSurface("bad", {{SideRef{0, 0}, SideRef{1, 1}, SideRef{1, 2}},
                                       {SideRef{0, 0}, SideRef{0, 1}, SideRef{0, 2}}}),
                    CurveError);
    // dual of the dual ribbon graph is the same triangulation up to labels
    auto back = TriSurface::from_ribbon("copy", TriSurface::fan(2)->dual());
    CHECK(back->genus() == 2);
    CHECK(back->punctures() == 1);
}

TEST_CASE("normal curve validity") {
    auto t = TriSurface::once_punctured_torus();
    const NormalCurve empty(t, {{0, 0, 0}, {0, 0, 0}});
    CHECK_FALSE(normal_is_valid(empty).ok);
    CHECK(normal_is_valid(empty).diagnostic.find("empty") != std::string::npos);
    const NormalCurve around(t, {{1, 1, 1}, {1, 1, 1}});
    CHECK(is_peripheral(around));
    CHECK(normal_is_valid(around).diagnostic == "peripheral");
    const NormalCurve c = slope_to_normal(Slope(1, 1), Sporadic::OneHoledTorus);
    CHECK(normal_is_valid(c).ok);
    const NormalCurve broken(t, {{1, 0, 0}, {0, 0, 0}});
    CHECK(normal_is_valid(broken).diagnostic.find("matching equation") != std::string::npos);
    const NormalCurve two = c + c;
    CHECK(two.components().size() == 2);
    CHECK(normal_is_valid(two).diagnostic.find("disconnected") != std::string::npos);
    CHECK_THROWS_AS(NormalCurve::from_edge_weights(t, {1, 0, 0}), CurveError);
}

TEST_CASE("word round trip and simplicity of slope curves") {
    for (auto kind : {Sporadic::OneHoledTorus, Sporadic::FourHoledSphere})
        for (const Slope& s : slopes_up_to(9)) {
            const NormalCurve c = slope_to_normal(s, kind);
            REQUIRE(normal_is_valid(c).ok);
            const Word w = c.word();
            CHECK(static_cast<long>(w.size()) == c.total_weight());
            CHECK(NormalCurve::from_word(c.surface(), w) == c);
            CHECK(NormalCurve::from_word(c.surface(), words::inverse(w)) == c);
            CHECK(words::is_simple(c.surface()->dual(), w, kDefaultBudget));
        }
}

TEST_CASE("cross-model agreement, exhaustive up to height 12") {
    for (auto kind : {Sporadic::OneHoledTorus, Sporadic::FourHoledSphere}) {
        const auto sl = slopes_up_to(12);
        std::vector<NormalCurve> cs;
        for (const Slope& s : sl)
            cs.push_back(slope_to_normal(s, kind));
        long mismatches = 0;
        for (std::size_t i = 0; i < sl.size(); ++i)
            for (std::size_t j = i; j < sl.size(); ++j) {
                const auto x = normal_intersection(cs[i], cs[j]);
                if (static_cast<long>(x) != slope_intersection(sl[i], sl[j], kind))
                    ++mismatches;
            }
        CHECK(mismatches == 0);
    }
}

TEST_CASE("cross-model agreement, sampled up to height 30") {
    std::mt19937_64 rng(20261014);
    const auto sl = slopes_up_to(30);
    std::uniform_int_distribution<std::size_t> pick(0, sl.size() - 1);
    for (auto kind : {Sporadic::OneHoledTorus, Sporadic::FourHoledSphere}) {
        long mismatches = 0, asym = 0;
        for (int n = 0; n < 1500; ++n) {
            const Slope a = sl[pick(rng)], b = sl[pick(rng)];
            const auto ca = slope_to_normal(a, kind), cb = slope_to_normal(b, kind);
            const auto x = normal_intersection(ca, cb);
            if (static_cast<long>(x) != slope_intersection(a, b, kind))
                ++mismatches;
            if (x != normal_intersection(cb, ca))
                ++asym;
        }
        CHECK(mismatches == 0);
        CHECK(asym == 0);
    }
}

TEST_CASE("brute-force oracle on sporadic and fan triangulations") {
    for (auto kind : {Sporadic::OneHoledTorus, Sporadic::FourHoledSphere}) {
        const auto sl = slopes_up_to(2);
        for (const Slope& a : sl)
            for (const Slope& b : sl) {
                const auto ca = slope_to_normal(a, kind), cb = slope_to_normal(b, kind);
                const auto bf = brute_force_intersection(ca, cb);
                REQUIRE(bf.has_value());
                CHECK(static_cast<long>(*bf) == slope_intersection(a, b, kind));
                CHECK(*bf == normal_intersection(ca, cb));
            }
    }
    for (int g : {2, 3}) {
        auto S = TriSurface::fan(g);
        const auto slice = enumerate_curve_graph(S, g == 2 ? 10 : 8);
        REQUIRE(slice.curves.size() > 20);
        long checked = 0, mismatches = 0;
        for (std::size_t i = 0; i < slice.curves.size(); ++i)
            for (std::size_t j = i; j < slice.curves.size(); ++j) {
                const auto bf = brute_force_intersection(slice.curves[i], slice.curves[j], 200000);
                if (!bf)
                    continue;
                ++checked;
                if (*bf != normal_intersection(slice.curves[i], slice.curves[j]))
                    ++mismatches;
            }
        CHECK(checked > 200);
        CHECK(mismatches == 0);
    }
    // the oracle gives up rather than guessing
    const auto big = slope_to_normal(Slope(29, 30), Sporadic::FourHoledSphere);
    CHECK_FALSE(brute_force_intersection(big, big, 1000).has_value());
}

TEST_CASE("self intersection and disjoint multicurves") {
    auto S = TriSurface::fan(2);
    const auto slice = enumerate_curve_graph(S, 10);
    for (const auto& c : slice.curves)
        CHECK(normal_intersection(c, c) == 0);
    // three pairwise disjoint curves cut the closed-up genus 2 surface into pants
    bool found = false;
    for (std::size_t a = 0; a < slice.curves.size() && !found; ++a)
        for (int b : slice.adjacency[a])
            for (int c : slice.adjacency[b])
                if (static_cast<int>(a) < b && b < c &&
                    std::binary_search(slice.adjacency[a].begin(), slice.adjacency[a].end(), c)) {
                    CHECK(normal_intersection(slice.curves[a], slice.curves[b]) == 0);
                    CHECK(normal_intersection(slice.curves[a], slice.curves[c]) == 0);
                    CHECK(normal_intersection(slice.curves[b], slice.curves[c]) == 0);
                    const NormalCurve multi = slice.curves[a] + slice.curves[b] + slice.curves[c];
                    CHECK(multi.components().size() == 3);
                    found = true;
                }
    CHECK(found);
}

TEST_CASE("the work budget is enforced") {
    const auto a = slope_to_normal(Slope(29, 30), Sporadic::OneHoledTorus);
    const auto b = slope_to_normal(Slope(-17, 23), Sporadic::OneHoledTorus);
    CHECK_THROWS_AS(normal_intersection(a, b, 100), ComplexityExceeded);
}

TEST_CASE("sporadic slices") {
    const auto s = enumerate_curve_graph(Sporadic::OneHoledTorus, 2);
    for (const char* x : {"0/1", "1/0", "1/1", "-1/1", "1/2", "2/1", "-1/2", "-2/1"})
        CHECK(s.index_of(Slope::parse(x)) >= 0);
    const int zero = s.index_of(Slope(0, 1));
    CHECK(std::binary_search(s.adjacency[zero].begin(), s.adjacency[zero].end(), s.index_of(Slope(1, 0))));
    CHECK(std::binary_search(s.adjacency[zero].begin(), s.adjacency[zero].end(), s.index_of(Slope(1, 2))));
    CHECK_FALSE(std::binary_search(s.adjacency[zero].begin(), s.adjacency[zero].end(), s.index_of(Slope(2, 1))));
    CHECK(s.relation == "i=1");
    CHECK(enumerate_curve_graph(Sporadic::FourHoledSphere, 2).relation == "i=2");
    const auto big = enumerate_curve_graph(Sporadic::OneHoledTorus, 8);
    for (std::size_t i = 0; i < big.adjacency.size(); ++i) {
        CHECK_FALSE(big.adjacency[i].empty());
        for (int j : big.adjacency[i])
            CHECK(std::binary_search(big.adjacency[j].begin(), big.adjacency[j].end(), static_cast<int>(i)));
    }
    CHECK(s.to_edge_list().find("e ") != std::string::npos);
}

TEST_CASE("triangulated slice of the torus agrees with the Farey slice") {
    const auto tri = enumerate_curve_graph(TriSurface::once_punctured_torus(), 14);
    const auto far = enumerate_curve_graph(Sporadic::OneHoledTorus, 7);
    REQUIRE(tri.relation == "i=1");
    std::vector<Slope> slopes;
    for (const auto& c : tri.curves) {
        slopes.push_back(torus_slope(c));
        CHECK(slope_to_normal(slopes.back(), Sporadic::OneHoledTorus) == c);
    }
    for (std::size_t i = 0; i < tri.curves.size(); ++i)
        for (std::size_t j = 0; j < tri.curves.size(); ++j) {
            const bool edge = std::binary_search(tri.adjacency[i].begin(), tri.adjacency[i].end(), static_cast<int>(j));
            CHECK(edge == (slope_det(slopes[i], slopes[j]) == 1));
        }
    // every slope with |p| + |q| + |p - q| <= 14 shows up
    long expect = 0;
    for (const Slope& x : far.slopes)
        if (std::labs(x.p) + x.q + std::labs(x.p - x.q) <= 14)
            ++expect;
    CHECK(static_cast<long>(tri.curves.size()) == expect);
}

TEST_CASE("slice distances: symmetry and triangle inequality") {
    for (const auto& slice : {enumerate_curve_graph(TriSurface::fan(2), 10),
                              enumerate_curve_graph(TriSurface::four_punctured_sphere(), 12),
                              enumerate_curve_graph(Sporadic::OneHoledTorus, 6)}) {
        const int n = static_cast<int>(slice.adjacency.size());
        std::vector<std::vector<int>> d(n);
        for (int i = 0; i < n; ++i)
            d[i] = slice.distances(i, 100);
        long violations = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (d[i][j] != d[j][i])
                    ++violations;
                for (int k = 0; k < n; ++k)
                    if (d[i][j] >= 0 && d[j][k] >= 0 && (d[i][k] < 0 || d[i][k] > d[i][j] + d[j][k]))
                        ++violations;
            }
        CHECK(violations == 0);
    }
}

TEST_CASE("hempel consistency on the Farey model up to height 12") {
    const FareyBall ball(12);
    long violations = 0;
    for (std::size_t a = 0; a < ball.slopes().size(); ++a) {
        const auto d = ball.distances(static_cast<int>(a), 64);
        for (std::size_t b = 0; b < ball.slopes().size(); ++b) {
            if (a == b)
                continue;
            REQUIRE(d[b] >= 0);
            const auto i = static_cast<std::uint64_t>(slope_det(ball.slopes()[a], ball.slopes()[b]));
            if (!hempel_holds(d[b], i))
                ++violations;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("exchange format round trips") {
    for (SurfacePtr s : {TriSurface::once_punctured_torus(), TriSurface::four_punctured_sphere(), TriSurface::fan(3)}) {
        const std::string text = format_triangulation(*s);
        const SurfacePtr back = parse_triangulation(text);
        CHECK(back->gluing() == s->gluing());
        CHECK(back->id() == s->id());
    }
    const auto c = slope_to_normal(Slope(2, 5), Sporadic::FourHoledSphere);
    const std::string line = format_curve(c);
    CHECK(line.rfind("surface s04; weights t0:(", 0) == 0);
    CHECK(parse_curve(line, c.surface()) == c);
    CHECK(parse_curve("slope 2/5", c.surface()) == c);
    CHECK_THROWS_AS(parse_curve("surface s11; weights t0:(1,0,0) t1:(0,0,0)", c.surface()), CurveError);
    CHECK_THROWS_AS(parse_curve("surface s04; weights t0:(1,0,0)", c.surface()), CurveError);
    CHECK_THROWS_AS(parse_triangulation("triangulation x; t0:(t1.1,t1.2,t1.0) junk"), CurveError);
    CHECK_THROWS_AS(parse_triangulation("triangulation x; t0:(t0.0,t0.1,t0.2)"), CurveError);
}
