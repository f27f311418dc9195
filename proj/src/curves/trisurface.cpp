#include "effcurves/curves.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace effcurves {

namespace {

std::string side_name(const SideRef& s) { return "t" + std::to_string(s.tri) + "." + std::to_string(s.side); }

} // namespace

TriSurface::TriSurface(std::string id, std::vector<std::array<SideRef, 3>> glue)
    : id_(std::move(id)), glue_(std::move(glue)) {
    const int T = triangles();
    if (T == 0 || T % 2 != 0)
        throw CurveError("an ideal triangulation needs a positive even number of triangles");
    edge_.assign(T, {-1, -1, -1});
    for (int t = 0; t < T; ++t) {
        for (int k = 0; k < 3; ++k) {
            const SideRef o = glue_[t][k];
            if (o.tri < 0 || o.tri >= T || o.side < 0 || o.side > 2)
                throw CurveError("side " + side_name({t, k}) + " is glued to a side that does not exist");
            if (o == SideRef{t, k})
                throw CurveError("side " + side_name({t, k}) + " is glued to itself");
            if (!(glue_[o.tri][o.side] == SideRef{t, k}))
                throw CurveError("gluing is not an involution at " + side_name({t, k}));
            if (edge_[t][k] == -1) {
                const int e = static_cast<int>(edge_sides_.size());
                edge_sides_.push_back({SideRef{t, k}, o});
                edge_[t][k] = e;
                edge_[o.tri][o.side] = e;
            }
        }
    }
    std::vector<int> sigma(2 * edges());
    for (int t = 0; t < T; ++t)
        for (int k = 0; k < 3; ++k)
            sigma[dart(t, k)] = dart(t, (k + 1) % 3);
    dual_ = RibbonGraph(std::move(sigma));
    // connectivity
    std::vector<char> seen(T, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int t = stack.back();
        stack.pop_back();
        for (int k = 0; k < 3; ++k) {
            const int u = glue_[t][k].tri;
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                stack.push_back(u);
            }
        }
    }
    if (count != T)
        throw CurveError("triangulation " + id_ + " is not connected");
    if ((2 - euler() - punctures()) % 2 != 0 || genus() < 0)
        throw CurveError("triangulation " + id_ + " has inconsistent Euler characteristic");
}

int TriSurface::dart(int t, int k) const {
    const int e = edge_[t][k];
    return 2 * e + (edge_sides_[e][0] == SideRef{t, k} ? 0 : 1);
}

SideRef TriSurface::side_of_dart(int d) const { return edge_sides_[d / 2][d % 2]; }

SurfacePtr TriSurface::once_punctured_torus() {
    // square ABCD cut along AC: t0 = ABC (bottom, right, diagonal), t1 = ACD (diagonal, top, left)
    static const SurfacePtr s = std::make_shared<const TriSurface>(
        "s11", std::vector<std::array<SideRef, 3>>{
                   {SideRef{1, 1}, SideRef{1, 2}, SideRef{1, 0}},
                   {SideRef{0, 2}, SideRef{0, 0}, SideRef{0, 1}},
               });
    return s;
}

SurfacePtr TriSurface::four_punctured_sphere() {
    // boundary of a tetrahedron on vertices 0..3, faces 012, 023, 031, 132
    static const SurfacePtr s = [] {
        const std::vector<std::array<int, 3>> faces = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
        return std::make_shared<const TriSurface>("s04", [&] {
            std::vector<std::array<SideRef, 3>> glue(4);
            for (int t = 0; t < 4; ++t)
                for (int k = 0; k < 3; ++k) {
                    const int a = faces[t][k], b = faces[t][(k + 1) % 3];
                    for (int u = 0; u < 4; ++u)
                        for (int j = 0; j < 3; ++j)
                            if (faces[u][j] == b && faces[u][(j + 1) % 3] == a)
                                glue[t][k] = SideRef{u, j};
                }
            return glue;
        }());
    }();
    return s;
}

SurfacePtr TriSurface::fan(int genus) {
    if (genus < 1)
        throw CurveError("fan triangulation needs genus >= 1");
    const int n = 4 * genus;
    const int T = n - 2;
    // triangle m-1 has vertices (0, m, m+1) for m = 1..n-2
    std::vector<std::array<SideRef, 3>> glue(T);
    auto polygon_side = [&](int i) -> SideRef {
        if (i == 0)
            return {0, 0};
        if (i == n - 1)
            return {T - 1, 2};
        return {i - 1, 1};
    };
    for (int m = 2; m <= n - 2; ++m) {
        // diagonal [0, m]: side 2 of triangle m-2 and side 0 of triangle m-1
        glue[m - 2][2] = {m - 1, 0};
        glue[m - 1][0] = {m - 2, 2};
    }
    for (int j = 0; j < genus; ++j) {
        const int a1 = 4 * j, b1 = 4 * j + 1, a2 = 4 * j + 2, b2 = 4 * j + 3;
        for (auto [x, y] : {std::pair{a1, a2}, std::pair{b1, b2}}) {
            const SideRef sx = polygon_side(x), sy = polygon_side(y);
            glue[sx.tri][sx.side] = sy;
            glue[sy.tri][sy.side] = sx;
        }
    }
    return std::make_shared<const TriSurface>("fan" + std::to_string(genus), std::move(glue));
}

SurfacePtr TriSurface::from_ribbon(std::string id, const RibbonGraph& g) {
    for (int v = 0; v < g.vertices(); ++v)
        if (g.degree(v) != 3)
            throw CurveError("dual triangulation needs a trivalent ribbon graph");
    std::vector<std::array<SideRef, 3>> glue(g.vertices());
    auto side_of = [&](int d) {
        const int v = g.vertex(d);
        return SideRef{v, g.dist(g.rotation(v)[0], d)};
    };
    for (int d = 0; d < g.darts(); ++d) {
        const SideRef s = side_of(d);
        glue[s.tri][s.side] = side_of(RibbonGraph::twin(d));
    }
    return std::make_shared<const TriSurface>(std::move(id), std::move(glue));
}

std::optional<SurfacePtr> TriSurface::flip(int e, std::string id) const {
    const auto [ts, us] = edge_sides_.at(e);
    const int t = ts.tri, k = ts.side, u = us.tri, j = us.side;
    if (t == u)
        return std::nullopt;
    // quadrilateral sides in order: a = t.(k+1), b = t.(k+2), c = u.(j+1), d = u.(j+2);
    // new t = (b, c, diagonal), new u = (d, a, diagonal)
    std::map<SideRef, SideRef> moved = {
        {SideRef{t, (k + 2) % 3}, SideRef{t, 0}},
        {SideRef{u, (j + 1) % 3}, SideRef{t, 1}},
        {SideRef{u, (j + 2) % 3}, SideRef{u, 0}},
        {SideRef{t, (k + 1) % 3}, SideRef{u, 1}},
    };
    auto to_new = [&](const SideRef& s) {
        const auto it = moved.find(s);
        return it == moved.end() ? s : it->second;
    };
    std::vector<std::array<SideRef, 3>> g = glue_;
    for (int x = 0; x < triangles(); ++x)
        if (x != t && x != u)
            for (int y = 0; y < 3; ++y)
                g[x][y] = to_new(glue_[x][y]);
    for (const auto& [old_side, new_side] : moved)
        g[new_side.tri][new_side.side] = to_new(glue_[old_side.tri][old_side.side]);
    g[t][2] = SideRef{u, 2};
    g[u][2] = SideRef{t, 2};
    return std::make_shared<const TriSurface>(std::move(id), std::move(g));
}

SurfacePtr TriSurface::add_puncture(int t, std::string id) const {
    const int T = triangles();
    if (t < 0 || t >= T)
        throw CurveError("no triangle t" + std::to_string(t));
    // side k of t becomes side 0 of the cone triangle over it
    const std::array<int, 3> cone = {t, T, T + 1};
    auto to_new = [&](const SideRef& s) { return s.tri == t ? SideRef{cone[s.side], 0} : s; };
    std::vector<std::array<SideRef, 3>> g = glue_;
    g.resize(T + 2);
    for (int x = 0; x < T; ++x)
        if (x != t)
            for (int y = 0; y < 3; ++y)
                g[x][y] = to_new(glue_[x][y]);
    for (int k = 0; k < 3; ++k) {
        g[cone[k]][0] = to_new(glue_[t][k]);
        g[cone[k]][1] = SideRef{cone[(k + 1) % 3], 2};
        g[cone[(k + 1) % 3]][2] = SideRef{cone[k], 1};
    }
    return std::make_shared<const TriSurface>(std::move(id), std::move(g));
}

// ---------------------------------------------------------------- normal curves

NormalCurve::NormalCurve(SurfacePtr s, std::vector<std::array<long, 3>> weights)
    : s_(std::move(s)), w_(std::move(weights)) {
    if (!s_)
        throw CurveError("normal curve needs a surface");
    if (static_cast<int>(w_.size()) != s_->triangles())
        throw CurveError("normal curve has " + std::to_string(w_.size()) + " weight triples, surface has " +
                         std::to_string(s_->triangles()) + " triangles");
    for (const auto& t : w_)
        for (long x : t)
            if (x < 0)
                throw CurveError("normal weights must be nonnegative");
}

NormalCurve NormalCurve::from_word(SurfacePtr s, const Word& w) {
    const TriSurface& S = *s;
    if (!words::is_cyclic_path(S.dual(), w))
        throw CurveError("word is not a closed path in the dual graph");
    std::vector<std::array<long, 3>> wt(S.triangles(), {0, 0, 0});
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
        const SideRef in = S.side_of_dart(RibbonGraph::twin(w[i]));
        const SideRef out = S.side_of_dart(w[(i + 1) % n]);
        if (in.side == out.side)
            throw CurveError("word backtracks");
        const int corner = out.side == (in.side + 1) % 3 ? in.side : out.side;
        ++wt[in.tri][corner];
    }
    return NormalCurve(std::move(s), std::move(wt));
}

NormalCurve NormalCurve::from_edge_weights(SurfacePtr s, const std::vector<long>& ew) {
    if (static_cast<int>(ew.size()) != s->edges())
        throw CurveError("wrong number of edge weights");
    std::vector<std::array<long, 3>> wt(s->triangles());
    for (int t = 0; t < s->triangles(); ++t) {
        std::array<long, 3> sw{};
        for (int k = 0; k < 3; ++k)
            sw[k] = ew[s->edge_of(t, k)];
        for (int k = 0; k < 3; ++k) {
            const long twice = sw[k] + sw[(k + 1) % 3] - sw[(k + 2) % 3];
            if (twice < 0 || twice % 2 != 0)
                throw CurveError("edge weights violate the triangle conditions in t" + std::to_string(t));
            wt[t][k] = twice / 2;
        }
    }
    return NormalCurve(std::move(s), std::move(wt));
}

long NormalCurve::side_weight(int t, int k) const { return w_[t][k] + w_[t][(k + 2) % 3]; }

std::vector<long> NormalCurve::edge_weights() const {
    std::vector<long> out(s_->edges());
    for (int e = 0; e < s_->edges(); ++e) {
        const SideRef a = s_->edge_sides(e)[0];
        out[e] = side_weight(a.tri, a.side);
    }
    return out;
}

long NormalCurve::total_weight() const {
    long sum = 0;
    for (long x : edge_weights())
        sum += x;
    return sum;
}

bool NormalCurve::is_empty() const {
    for (const auto& t : w_)
        for (long x : t)
            if (x != 0)
                return false;
    return true;
}

std::optional<std::string> NormalCurve::matching_violation() const {
    for (int e = 0; e < s_->edges(); ++e) {
        const auto& [a, b] = s_->edge_sides(e);
        const long wa = side_weight(a.tri, a.side), wb = side_weight(b.tri, b.side);
        if (wa != wb)
            return "matching equation on edge " + std::to_string(e) + " (" + side_name(a) + " = " +
                   std::to_string(wa) + ", " + side_name(b) + " = " + std::to_string(wb) + ")";
    }
    return std::nullopt;
}

std::vector<Word> NormalCurve::components() const {
    if (auto bad = matching_violation())
        throw CurveError("cannot trace a curve violating the " + *bad);
    const TriSurface& S = *s_;
    const std::vector<long> ew = edge_weights();
    std::vector<std::vector<char>> seen(S.edges());
    for (int e = 0; e < S.edges(); ++e)
        seen[e].assign(static_cast<std::size_t>(ew[e]), 0);
    // position along the reference side of each edge
    auto ref_pos = [&](int t, int k, long pos) {
        const int e = S.edge_of(t, k);
        return S.edge_sides(e)[0] == SideRef{t, k} ? pos : ew[e] - 1 - pos;
    };
    std::vector<Word> out;
    for (int e0 = 0; e0 < S.edges(); ++e0) {
        for (long p0 = 0; p0 < ew[e0]; ++p0) {
            if (seen[e0][p0])
                continue;
            // enter the reference triangle through its reference side at p0
            SideRef at = S.edge_sides(e0)[0];
            long pos = p0;
            Word w;
            while (true) {
                const int e = S.edge_of(at.tri, at.side);
                const long rp = ref_pos(at.tri, at.side, pos);
                if (seen[e][rp])
                    break;
                seen[e][rp] = 1;
                const int t = at.tri, k = at.side;
                const long before = w_[t][(k + 2) % 3];  // corner k-1 arcs sit first on side k
                int out_side;
                long out_pos;
                if (pos < before) {
                    out_side = (k + 2) % 3;
                    out_pos = side_weight(t, out_side) - 1 - pos;
                } else {
                    out_side = (k + 1) % 3;
                    out_pos = side_weight(t, k) - 1 - pos;
                }
                w.push_back(S.dart(t, out_side));
                const SideRef nxt = S.glued(t, out_side);
                pos = side_weight(t, out_side) - 1 - out_pos;
                at = nxt;
            }
            // the trace started by entering, so the first exit belongs after the last
            out.push_back(std::move(w));
        }
    }
    return out;
}

Word NormalCurve::word() const {
    std::vector<Word> c = components();
    if (c.size() != 1)
        throw CurveError("normal curve has " + std::to_string(c.size()) + " components");
    return c[0];
}

NormalCurve NormalCurve::operator+(const NormalCurve& o) const {
    if (s_ != o.s_)
        throw CurveError("normal sum of curves on different surfaces");
    std::vector<std::array<long, 3>> w = w_;
    for (std::size_t t = 0; t < w.size(); ++t)
        for (int k = 0; k < 3; ++k)
            w[t][k] += o.w_[t][k];
    return NormalCurve(s_, std::move(w));
}

bool is_peripheral(const NormalCurve& c) { return words::is_face_cycle(c.surface()->dual(), c.word()); }

Validity normal_is_valid(const NormalCurve& c) {
    if (auto bad = c.matching_violation())
        return {false, *bad};
    if (c.is_empty())
        return {false, "empty curve"};
    const std::vector<Word> comp = c.components();
    if (comp.size() != 1)
        return {false, "disconnected: " + std::to_string(comp.size()) + " components"};
    if (words::is_face_cycle(c.surface()->dual(), comp[0]))
        return {false, "peripheral"};
    return {true, ""};
}

std::uint64_t normal_intersection(const NormalCurve& a, const NormalCurve& b, std::uint64_t budget) {
    if (a.surface() != b.surface())
        throw CurveError("curves live on different surfaces");
    const RibbonGraph& g = a.surface()->dual();
    std::uint64_t sum = 0;
    for (const Word& x : a.components())
        for (const Word& y : b.components())
            sum += words::linked_pairs(g, x, y, budget);
    return sum;
}

// ---------------------------------------------------------------- brute force

namespace {

struct Arc {
    int s1;
    long p1;  // side and own-curve position
    int s2;
    long p2;
};

std::vector<std::vector<Arc>> corner_arcs(const NormalCurve& c) {
    std::vector<std::vector<Arc>> out(c.surface()->triangles());
    for (int t = 0; t < c.surface()->triangles(); ++t)
        for (int k = 0; k < 3; ++k)
            for (long i = 0; i < c.weights()[t][k]; ++i)
                out[t].push_back({k, c.side_weight(t, k) - 1 - i, (k + 1) % 3, i});
    return out;
}

// all bitmasks of length n with exactly r ones (r-th bit meaning "an a-strand")
std::vector<std::vector<char>> shuffles(long na, long nb) {
    std::vector<std::vector<char>> out;
    std::vector<char> cur;
    std::function<void(long, long)> rec = [&](long x, long y) {
        if (x == 0 && y == 0) {
            out.push_back(cur);
            return;
        }
        if (x > 0) {
            cur.push_back(1);
            rec(x - 1, y);
            cur.pop_back();
        }
        if (y > 0) {
            cur.push_back(0);
            rec(x, y - 1);
            cur.pop_back();
        }
    };
    rec(na, nb);
    return out;
}

} // namespace

std::optional<std::uint64_t> brute_force_intersection(const NormalCurve& a, const NormalCurve& b,
                                                      std::uint64_t budget) {
    const TriSurface& S = *a.surface();
    if (a.surface() != b.surface())
        throw CurveError("curves live on different surfaces");
    const std::vector<long> wa = a.edge_weights(), wb = b.edge_weights();
    const int E = S.edges();
    std::uint64_t combos = 1;
    std::vector<std::vector<std::vector<char>>> opts(E);
    for (int e = 0; e < E; ++e) {
        // binomial(wa+wb, wa) without overflow trouble at desk scale
        long double c = 1;
        for (long i = 1; i <= wa[e]; ++i)
            c = c * static_cast<long double>(wb[e] + i) / static_cast<long double>(i);
        if (c * static_cast<long double>(combos) > static_cast<long double>(budget))
            return std::nullopt;
        combos *= static_cast<std::uint64_t>(c + 0.5L);
        opts[e] = shuffles(wa[e], wb[e]);
    }
    const auto arcs_a = corner_arcs(a), arcs_b = corner_arcs(b);
    std::vector<std::size_t> choice(E, 0);
    // combined position of the own-position p of curve a (is_a) or b on side (t,k)
    std::vector<std::vector<long>> pos_a(E), pos_b(E);
    auto fill = [&](int e) {
        const auto& sh = opts[e][choice[e]];
        pos_a[e].clear();
        pos_b[e].clear();
        for (long i = 0; i < static_cast<long>(sh.size()); ++i)
            (sh[i] ? pos_a[e] : pos_b[e]).push_back(i);
    };
    for (int e = 0; e < E; ++e)
        fill(e);
    std::optional<std::uint64_t> best;
    while (true) {
        std::uint64_t total = 0;
        for (int t = 0; t < S.triangles() && (!best || total < *best); ++t) {
            long offset[3];
            long acc = 0;
            for (int k = 0; k < 3; ++k) {
                offset[k] = acc;
                acc += wa[S.edge_of(t, k)] + wb[S.edge_of(t, k)];
            }
            auto place = [&](bool is_a, int k, long own) {
                const int e = S.edge_of(t, k);
                const long len = wa[e] + wb[e];
                const bool ref = S.edge_sides(e)[0] == SideRef{t, k};
                const long own_ref = ref ? own : (is_a ? wa[e] : wb[e]) - 1 - own;
                const long comb = (is_a ? pos_a[e] : pos_b[e])[own_ref];
                return offset[k] + (ref ? comb : len - 1 - comb);
            };
            for (const Arc& x : arcs_a[t]) {
                long x1 = place(true, x.s1, x.p1), x2 = place(true, x.s2, x.p2);
                if (x1 > x2)
                    std::swap(x1, x2);
                for (const Arc& y : arcs_b[t]) {
                    const long y1 = place(false, y.s1, y.p1), y2 = place(false, y.s2, y.p2);
                    const bool in1 = x1 < y1 && y1 < x2, in2 = x1 < y2 && y2 < x2;
                    if (in1 != in2)
                        ++total;
                }
            }
        }
        if (!best || total < *best)
            best = total;
        int e = 0;
        while (e < E) {
            if (++choice[e] < opts[e].size()) {
                fill(e);
                break;
            }
            choice[e] = 0;
            fill(e);
            ++e;
        }
        if (e == E)
            break;
    }
    return best;
}

// ---------------------------------------------------------------- slope models

SurfacePtr sporadic_surface(Sporadic kind) {
    return kind == Sporadic::OneHoledTorus ? TriSurface::once_punctured_torus() : TriSurface::four_punctured_sphere();
}

NormalCurve slope_to_normal(const Slope& s, Sporadic kind) {
    const long wh = std::labs(s.p), wv = std::labs(s.q), wd = std::labs(s.p - s.q);
    SurfacePtr S = sporadic_surface(kind);
    std::vector<long> ew(S->edges());
    if (kind == Sporadic::OneHoledTorus) {
        // edges in order of first appearance: bottom/top, right/left, diagonal
        ew = {wh, wv, wd};
    } else {
        // tetrahedron edges by endpoint pair; opposite edges carry equal weight
        const std::vector<std::array<int, 3>> faces = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
        for (int e = 0; e < S->edges(); ++e) {
            const SideRef r = S->edge_sides(e)[0];
            int u = faces[r.tri][r.side], v = faces[r.tri][(r.side + 1) % 3];
            if (u > v)
                std::swap(u, v);
            long x = 0;
            if ((u == 0 && v == 1) || (u == 2 && v == 3))
                x = wh;
            else if ((u == 1 && v == 2) || (u == 0 && v == 3))
                x = wv;
            else
                x = wd;
            ew[e] = x;
        }
    }
    return NormalCurve::from_edge_weights(S, ew);
}

} // namespace effcurves
