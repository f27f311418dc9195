#include "effcurves/curves.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace effcurves {

std::optional<Sporadic> sporadic_type(const TriSurface& s) {
    if (s.genus() == 1 && s.punctures() == 1)
        return Sporadic::OneHoledTorus;
    if (s.genus() == 0 && s.punctures() == 4)
        return Sporadic::FourHoledSphere;
    return std::nullopt;
}

int CurveGraphSlice::index_of(const NormalCurve& c) const {
    const auto it = std::lower_bound(curves.begin(), curves.end(), c);
    return it != curves.end() && *it == c ? static_cast<int>(it - curves.begin()) : -1;
}

int CurveGraphSlice::index_of(const Slope& s) const {
    const auto it = std::lower_bound(slopes.begin(), slopes.end(), s);
    return it != slopes.end() && *it == s ? static_cast<int>(it - slopes.begin()) : -1;
}

std::vector<int> CurveGraphSlice::distances(int src, int radius) const {
    std::vector<int> d(adjacency.size(), -1);
    std::deque<int> queue{src};
    d[src] = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        if (d[u] >= radius)
            continue;
        for (int w : adjacency[u])
            if (d[w] == -1) {
                d[w] = d[u] + 1;
                queue.push_back(w);
            }
    }
    return d;
}

std::string CurveGraphSlice::to_edge_list() const {
    std::ostringstream os;
    os << "# curve graph slice: surface " << surface << ", bound " << bound << ", relation " << relation << "\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        os << "v " << i << " " << labels[i] << "\n";
    for (std::size_t i = 0; i < adjacency.size(); ++i)
        for (int j : adjacency[i])
            if (static_cast<int>(i) < j)
                os << "e " << i << " " << j << "\n";
    return os.str();
}

namespace {

std::string weights_label(const std::vector<long>& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i)
        s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

} // namespace

CurveGraphSlice enumerate_curve_graph(const SurfacePtr& s, long bound, std::uint64_t max_vertices) {
    if (bound < 1)
        throw CurveError("slice bound must be >= 1");
    const TriSurface& S = *s;
    const int E = S.edges();
    const auto kind = sporadic_type(S);
    const std::uint64_t target = !kind ? 0 : (*kind == Sporadic::OneHoledTorus ? 1 : 2);

    // a triangle can be checked once its last edge has been assigned
    std::vector<std::vector<int>> closes(E);
    for (int t = 0; t < S.triangles(); ++t) {
        int last = 0;
        for (int k = 0; k < 3; ++k)
            last = std::max(last, S.edge_of(t, k));
        closes[last].push_back(t);
    }
    CurveGraphSlice out;
    out.surface = S.id();
    out.bound = bound;
    out.relation = !kind ? "disjoint" : (target == 1 ? "i=1" : "i=2");
    std::vector<long> w(E, 0);
    std::function<void(int, long)> rec = [&](int e, long left) {
        if (e == E) {
            NormalCurve c = NormalCurve::from_edge_weights(s, w);
            if (normal_is_valid(c).ok) {
                out.curves.push_back(std::move(c));
                if (out.curves.size() > max_vertices)
                    throw ComplexityExceeded("curve graph slice exceeds " + std::to_string(max_vertices) +
                                             " vertices");
            }
            return;
        }
        for (long x = 0; x <= left; ++x) {
            w[e] = x;
            bool ok = true;
            for (int t : closes[e]) {
                const long a = w[S.edge_of(t, 0)], b = w[S.edge_of(t, 1)], c = w[S.edge_of(t, 2)];
                if ((a + b + c) % 2 != 0 || a > b + c || b > a + c || c > a + b) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                rec(e + 1, left - x);
        }
        w[e] = 0;
    };
    rec(0, bound);
    std::sort(out.curves.begin(), out.curves.end());
    const std::size_t n = out.curves.size();
    std::vector<Word> words(n);
    for (std::size_t i = 0; i < n; ++i) {
        words[i] = out.curves[i].word();
        out.labels.push_back(weights_label(out.curves[i].edge_weights()));
    }
    out.adjacency.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (words::linked_pairs(S.dual(), words[i], words[j], kDefaultBudget) == target) {
                out.adjacency[i].push_back(static_cast<int>(j));
                out.adjacency[j].push_back(static_cast<int>(i));
            }
    for (auto& a : out.adjacency)
        std::sort(a.begin(), a.end());
    return out;
}

CurveGraphSlice enumerate_curve_graph(Sporadic kind, long bound) {
    const FareyBall ball(bound);
    CurveGraphSlice out;
    out.surface = sporadic_name(kind);
    out.bound = bound;
    out.relation = kind == Sporadic::OneHoledTorus ? "i=1" : "i=2";
    out.slopes = ball.slopes();
    const long target = kind == Sporadic::OneHoledTorus ? 1 : 2;
    out.adjacency = ball.adjacency();
    for (std::size_t i = 0; i < out.slopes.size(); ++i) {
        out.labels.push_back(out.slopes[i].to_string());
        for (int j : out.adjacency[i])
            if (slope_intersection(out.slopes[i], out.slopes[j], kind) != target)
                throw CurveError("Farey edge " + out.slopes[i].to_string() + " -- " + out.slopes[j].to_string() +
                                 " fails the intersection check");
    }
    return out;
}

} // namespace effcurves
