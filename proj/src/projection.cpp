#include "effcurves/projection.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

namespace effcurves {

namespace {

Word concat(std::initializer_list<const Word*> parts) {
    Word out;
    for (const Word* p : parts)
        out.insert(out.end(), p->begin(), p->end());
    return out;
}

Word rotate_to(const Word& w, std::size_t start) {
    Word out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        out[i] = w[(start + i) % w.size()];
    return out;
}

// free (non-cyclic) reduction
Word free_reduce(const Word& w) {
    Word s;
    for (int d : w) {
        if (!s.empty() && s.back() == RibbonGraph::twin(d))
            s.pop_back();
        else
            s.push_back(d);
    }
    return s;
}

bool is_power_of(const Word& r, const Word& f) {
    if (r.empty())
        return true;
    for (const Word& g : {f, words::inverse(f)}) {
        if (r.size() % g.size() != 0)
            continue;
        bool ok = true;
        for (std::size_t i = 0; i < r.size() && ok; ++i)
            ok = r[i] == g[i % g.size()];
        if (ok)
            return true;
    }
    return false;
}

} // namespace

SubsurfaceEmbedding::SubsurfaceEmbedding(SurfacePtr ambient, std::vector<int> edges, std::string sub_id)
    : ambient_(std::move(ambient)), edges_(std::move(edges)) {
    const TriSurface& S = *ambient_;
    const RibbonGraph& G = S.dual();
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    in_k_.assign(S.edges(), 0);
    for (int e : edges_) {
        if (e < 0 || e >= S.edges())
            throw CurveError("subsurface edge " + std::to_string(e) + " does not exist");
        in_k_[e] = 1;
    }
    if (static_cast<int>(edges_.size()) == S.edges())
        throw CurveError("subsurface is the whole surface");
    const int T = S.triangles();
    std::vector<int> degree(T, 0);
    for (int t = 0; t < T; ++t)
        for (int k = 0; k < 3; ++k)
            degree[t] += in_k_[S.edge_of(t, k)];
    for (int t = 0; t < T; ++t)
        if (degree[t] == 1)
            throw CurveError("subsurface graph has a dangling edge at t" + std::to_string(t));
    auto tri = [&](int d) { return S.side_of_dart(d).tri; };
    auto sigma_y = [&](int d) {
        int x = G.sigma(d);
        while (!in_sub(x))
            x = G.sigma(x);
        return x;
    };

    // connectivity of the subgraph
    std::vector<int> kdarts;
    for (int d = 0; d < G.darts(); ++d)
        if (in_sub(d))
            kdarts.push_back(d);
    if (kdarts.empty())
        throw CurveError("empty subsurface");
    {
        std::vector<char> seen(G.darts(), 0);
        std::vector<int> stack{kdarts[0]};
        seen[kdarts[0]] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            const int d = stack.back();
            stack.pop_back();
            for (int x : {RibbonGraph::twin(d), sigma_y(d)})
                if (!seen[x]) {
                    seen[x] = 1;
                    ++count;
                    stack.push_back(x);
                }
        }
        if (count != kdarts.size())
            throw CurveError("subsurface is not connected");
    }

    // faces of the subgraph
    face_of_dart_.assign(G.darts(), -1);
    pos_in_face_.assign(G.darts(), -1);
    for (int d : kdarts) {
        if (face_of_dart_[d] != -1)
            continue;
        Word f;
        for (int x = d; face_of_dart_[x] == -1; x = sigma_y(RibbonGraph::twin(x))) {
            face_of_dart_[x] = static_cast<int>(faces_.size());
            pos_in_face_[x] = static_cast<int>(f.size());
            f.push_back(x);
        }
        faces_.push_back(std::move(f));
    }
    bool any_boundary = false;
    for (const Word& f : faces_) {
        const bool b = !words::is_face_cycle(G, f);
        boundary_.push_back(b ? 1 : 0);
        any_boundary |= b;
    }
    if (!any_boundary)
        throw CurveError("subsurface has no boundary circle");

    // chains between branch vertices become the sub edges
    chain_start_sub_.assign(G.darts(), -1);
    std::vector<Word> chains;
    std::vector<int> chain_id(G.darts(), -1);
    for (int d : kdarts) {
        if (degree[tri(d)] != 3 || chain_id[d] != -1)
            continue;
        Word c{d};
        int cur = d;
        while (degree[tri(RibbonGraph::twin(cur))] == 2) {
            cur = sigma_y(RibbonGraph::twin(cur));
            c.push_back(cur);
        }
        const Word r = words::inverse(c);
        chain_id[c.front()] = static_cast<int>(chains.size());
        chains.push_back(c);
        chain_id[r.front()] = static_cast<int>(chains.size());
        chains.push_back(r);
    }
    if (chains.empty())
        throw CurveError("subsurface is an annulus");
    std::vector<int> sigma_sub(chains.size());
    for (std::size_t c = 0; c < chains.size(); ++c)
        sigma_sub[c] = chain_id[sigma_y(chains[c].front())];
    const RibbonGraph gsub(sigma_sub);
    sub_ = TriSurface::from_ribbon(std::move(sub_id), gsub);
    if (sub_->genus() == 0 && sub_->punctures() == 3)
        throw CurveError("subsurface is a pair of pants; its curve graph is empty");

    chain_of_sub_.assign(chains.size(), {});
    for (std::size_t c = 0; c < chains.size(); ++c) {
        const int v = gsub.vertex(static_cast<int>(c));
        const int sd = sub_->dart(v, gsub.dist(gsub.rotation(v)[0], static_cast<int>(c)));
        chain_start_sub_[chains[c].front()] = sd;
        chain_of_sub_[sd] = chains[c];
    }
    tri_map_.assign(sub_->triangles(), -1);
    sub_vertex_.assign(T, -1);
    for (std::size_t c = 0; c < chains.size(); ++c) {
        const int v = gsub.vertex(static_cast<int>(c));
        tri_map_[v] = tri(chains[c].front());
        sub_vertex_[tri(chains[c].front())] = v;
    }
    face_to_sub_.assign(faces_.size(), -1);
    for (std::size_t f = 0; f < faces_.size(); ++f)
        for (int d : faces_[f])
            if (chain_start_sub_[d] >= 0) {
                face_to_sub_[f] = sub_->dual().face_of(chain_start_sub_[d]);
                break;
            }
}

std::vector<NormalCurve> SubsurfaceEmbedding::boundary_curves() const {
    std::vector<NormalCurve> out;
    for (std::size_t f = 0; f < faces_.size(); ++f)
        if (boundary_[f])
            out.push_back(NormalCurve::from_word(ambient_, faces_[f]));
    return out;
}

SubsurfaceEmbedding::Gap SubsurfaceEmbedding::gap_of(int o) const {
    const RibbonGraph& G = ambient_->dual();
    if (in_sub(o))
        throw CurveError("gap_of needs a dart outside the subsurface");
    const int x = G.sigma_inv(o), y = G.sigma(o);
    if (!in_sub(x) || !in_sub(y))
        throw CurveError("outside dart does not sit at a degree 2 vertex of the subsurface");
    const int f = face_of_dart_[y];
    const int c = pos_in_face_[y];
    const Word& fw = faces_[f];
    if (fw[(c + fw.size() - 1) % fw.size()] != RibbonGraph::twin(x))
        throw CurveError("inconsistent corner at a subsurface gap");
    return {f, c};
}

Word SubsurfaceEmbedding::to_sub(const Word& w) const {
    const std::size_t n = w.size();
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_sub(w[i]))
            throw CurveError("word leaves the subsurface");
        if (start == n && chain_start_sub_[w[i]] >= 0)
            start = i;
    }
    if (start == n)
        throw CurveError("word meets no branch vertex of the subsurface");
    Word out;
    std::size_t i = 0;
    while (i < n) {
        const int sd = chain_start_sub_[w[(start + i) % n]];
        if (sd < 0)
            throw CurveError("word is not a union of subsurface chains");
        const Word& c = chain_of_sub_[sd];
        for (std::size_t j = 0; j < c.size(); ++j)
            if (i + j >= n || w[(start + i + j) % n] != c[j])
                throw CurveError("word is not a union of subsurface chains");
        out.push_back(sd);
        i += c.size();
    }
    return out;
}

Word SubsurfaceEmbedding::to_ambient(const Word& sw) const {
    Word out;
    for (int d : sw)
        out.insert(out.end(), chain_of_sub_.at(d).begin(), chain_of_sub_.at(d).end());
    return out;
}

std::vector<long> SubsurfaceEmbedding::sub_edge_crossings(const Word& p) const {
    std::vector<long> out(sub_->edges(), 0);
    std::size_t i = 0;
    while (i < p.size()) {
        const int sd = chain_start_sub_[p[i]];
        if (sd >= 0) {
            const Word& c = chain_of_sub_[sd];
            if (i + c.size() <= p.size() && std::equal(c.begin(), c.end(), p.begin() + static_cast<long>(i))) {
                ++out[sd / 2];
                i += c.size();
                continue;
            }
        }
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------- fixture text

std::string SubsurfaceEmbedding::format() const {
    std::ostringstream os;
    os << format_triangulation(*ambient_) << "\n" << format_triangulation(*sub_) << "\n";
    os << "embedding " << sub_->id() << " in " << ambient_->id() << "; edges";
    for (int e : edges_)
        os << " " << e;
    os << "; triangles";
    for (std::size_t u = 0; u < tri_map_.size(); ++u)
        os << " u" << u << "=t" << tri_map_[u];
    os << "\n";
    return os.str();
}

SubsurfaceEmbedding SubsurfaceEmbedding::parse(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<SurfacePtr> tris;
    std::string emb_line;
    while (std::getline(is, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        if (line.compare(first, 13, "triangulation") == 0)
            tris.push_back(parse_triangulation(line));
        else if (line.compare(first, 9, "embedding") == 0)
            emb_line = line;
        else
            throw CurveError("unexpected fixture line: " + line);
    }
    static const std::regex re(
        R"(^\s*embedding\s+(\S+)\s+in\s+(\S+)\s*;\s*edges((?:\s+\d+)+)\s*;\s*triangles((?:\s+u\d+=t\d+)+)\s*$)");
    std::smatch m;
    if (tris.size() != 2 || !std::regex_match(emb_line, m, re))
        throw CurveError("fixture needs two triangulation lines and one embedding line");
    const std::string sub_id = m[1], amb_id = m[2];
    SurfacePtr amb = tris[0]->id() == amb_id ? tris[0] : tris[1];
    SurfacePtr declared = tris[0]->id() == sub_id ? tris[0] : tris[1];
    if (amb->id() != amb_id || declared->id() != sub_id || amb_id == sub_id)
        throw CurveError("embedding names triangulations that are not in the fixture");
    std::vector<int> edges;
    {
        std::istringstream es(m[3].str());
        int e;
        while (es >> e)
            edges.push_back(e);
    }
    SubsurfaceEmbedding emb(amb, edges, sub_id);
    if (emb.sub()->gluing() != declared->gluing())
        throw CurveError("declared sub triangulation does not match the one induced by the edge set");
    static const std::regex tre(R"(u(\d+)=t(\d+))");
    const std::string tm = m[4];
    std::size_t count = 0;
    for (auto it = std::sregex_iterator(tm.begin(), tm.end(), tre); it != std::sregex_iterator(); ++it, ++count) {
        const std::size_t u = std::stoul((*it)[1]);
        if (u >= emb.tri_map_.size() || emb.tri_map_[u] != std::stoi((*it)[2]))
            throw CurveError("triangle map entry u" + (*it)[1].str() + " does not match the edge set");
    }
    if (count != emb.tri_map_.size())
        throw CurveError("triangle map is incomplete");
    return emb;
}

SubsurfaceEmbedding SubsurfaceEmbedding::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CurveError("cannot open fixture " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

// ---------------------------------------------------------------- arcs

bool operator<(const Arc& a, const Arc& b) {
    return std::tie(a.path, a.start_face, a.start_corner, a.end_face, a.end_corner, a.exit_follows_entry) <
           std::tie(b.path, b.start_face, b.start_corner, b.end_face, b.end_corner, b.exit_follows_entry);
}

Arc reverse_arc(const Arc& a) {
    Arc r;
    r.path = words::inverse(a.path);
    r.start_face = a.end_face;
    r.start_corner = a.end_corner;
    r.end_face = a.start_face;
    r.end_corner = a.start_corner;
    const bool same = a.start_face == a.end_face && a.start_corner == a.end_corner;
    r.exit_follows_entry = same ? !a.exit_follows_entry : false;
    return r;
}

namespace {

Arc tighten_start(const SubsurfaceEmbedding& emb, Arc a) {
    const Word& f = emb.faces()[a.start_face];
    const int n = static_cast<int>(f.size());
    while (!a.path.empty()) {
        const int c = a.start_corner;
        if (a.path.front() == f[c])
            a.start_corner = (c + 1) % n;
        else if (a.path.front() == RibbonGraph::twin(f[(c + n - 1) % n]))
            a.start_corner = (c + n - 1) % n;
        else
            break;
        a.path.erase(a.path.begin());
    }
    return a;
}

} // namespace

Arc tighten_arc(const SubsurfaceEmbedding& emb, const Arc& a) {
    Arc t = reverse_arc(tighten_start(emb, reverse_arc(tighten_start(emb, a))));
    t.exit_follows_entry = false;
    return t;
}

namespace {

// face segments between the entry and exit corners of an arc on one face
void split_face(const Word& f, const Arc& a, Word& A, Word& B) {
    const std::size_t n = f.size();
    const std::size_t c1 = static_cast<std::size_t>(a.start_corner), c2 = static_cast<std::size_t>(a.end_corner);
    A.clear();
    B.clear();
    if (c1 == c2) {
        (a.exit_follows_entry ? B : A) = rotate_to(f, c1);
        return;
    }
    for (std::size_t i = c1; i != c2; i = (i + 1) % n)
        A.push_back(f[i]);
    for (std::size_t i = c2; i != c1; i = (i + 1) % n)
        B.push_back(f[i]);
}

bool arc_is_essential(const SubsurfaceEmbedding& emb, const Arc& a) {
    if (a.start_face != a.end_face)
        return true;
    const Word& f = emb.faces()[a.start_face];
    Word A, B;
    split_face(f, a, A, B);
    const Word invA = words::inverse(A);
    const Word r = free_reduce(concat({&a.path, &invA}));
    return !is_power_of(r, rotate_to(f, static_cast<std::size_t>(a.start_corner)));
}

} // namespace

ArcSystem split_into_arcs(const SubsurfaceEmbedding& emb, const std::vector<Word>& components) {
    const RibbonGraph& G = emb.ambient()->dual();
    ArcSystem out;
    out.pairwise_disjoint = components.size() <= 1;
    std::vector<Arc> arcs;
    for (const Word& raw : components) {
        const Word w = words::cyclic_reduce(raw);
        const std::size_t n = w.size();
        if (n == 0)
            continue;
        if (!words::is_cyclic_path(G, w))
            throw CurveError("component is not a closed path in the ambient dual graph");
        std::size_t inside = 0;
        for (int d : w)
            inside += emb.in_sub(d) ? 1 : 0;
        if (inside == 0)
            continue;
        if (inside == n) {
            bool peripheral = false;
            const Word cw = words::canonical_cycle(w);
            for (std::size_t f = 0; f < emb.faces().size() && !peripheral; ++f)
                peripheral = emb.faces()[f].size() == n && words::canonical_cycle(emb.faces()[f]) == cw;
            if (!peripheral)
                out.contained.push_back(NormalCurve::from_word(emb.sub(), emb.to_sub(w)));
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!emb.in_sub(w[i]) || emb.in_sub(w[(i + n - 1) % n]))
                continue;
            std::size_t len = 1;
            while (emb.in_sub(w[(i + len) % n]))
                ++len;
            Arc a;
            for (std::size_t j = 0; j < len; ++j)
                a.path.push_back(w[(i + j) % n]);
            const int o_in = RibbonGraph::twin(w[(i + n - 1) % n]);
            const int o_out = w[(i + len) % n];
            const auto g1 = emb.gap_of(o_in), g2 = emb.gap_of(o_out);
            a.start_face = g1.face;
            a.start_corner = g1.corner;
            a.end_face = g2.face;
            a.end_corner = g2.corner;
            if (g1.face == g2.face && g1.corner == g2.corner) {
                // both strands run out along the same outside edge; the one
                // turning further left at their divergence lies nearer the
                // corner's far side, so decide the order along the face there
                auto X = [&](std::size_t k) { return w[(i + len + k) % n]; };
                auto E = [&](std::size_t k) { return RibbonGraph::twin(w[(i + 2 * n - 1 - k) % n]); };
                std::size_t k = 0;
                while (k < 2 * n && X(k) == E(k))
                    ++k;
                if (k == 0 || k >= 2 * n)
                    throw CurveError("cannot order the two ends of an arc");
                const int e = RibbonGraph::twin(X(k - 1));
                a.exit_follows_entry = G.dist(e, X(k)) > G.dist(e, E(k));
            }
            if (!arc_is_essential(emb, a)) {
                ++out.inessential_runs;
                continue;
            }
            out.endpoints += 2;
            const Arc r = reverse_arc(a);
            arcs.push_back(std::min(a, r));
        }
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    out.arcs = std::move(arcs);
    std::sort(out.contained.begin(), out.contained.end());
    out.contained.erase(std::unique(out.contained.begin(), out.contained.end()), out.contained.end());
    if (out.arcs.empty() && out.contained.empty())
        throw NoEssentialIntersection("curve does not meet " + emb.sub()->id() + " essentially");
    return out;
}

ArcSystem split_into_arcs(const SubsurfaceEmbedding& emb, const NormalCurve& alpha) {
    if (alpha.surface() != emb.ambient())
        throw CurveError("curve is not on the ambient surface");
    ArcSystem a = split_into_arcs(emb, alpha.components());
    a.pairwise_disjoint = true;
    return a;
}

std::vector<NormalCurve> project_arc(const SubsurfaceEmbedding& emb, const Arc& tau) {
    const SurfacePtr& sub = emb.sub();
    const RibbonGraph& gs = sub->dual();
    std::vector<Word> cands;
    const Word& f1 = emb.faces()[tau.start_face];
    if (tau.start_face != tau.end_face) {
        const Word L1 = rotate_to(f1, static_cast<std::size_t>(tau.start_corner));
        const Word L2 = rotate_to(emb.faces()[tau.end_face], static_cast<std::size_t>(tau.end_corner));
        const Word L2i = words::inverse(L2), pi = words::inverse(tau.path);
        // the band sum of the two boundary circles along tau; of the two
        // relative orientations only one is embedded
        for (const Word* l2 : {&L2, &L2i}) {
            const Word c = words::cyclic_reduce(concat({&L1, &tau.path, l2, &pi}));
            if (words::is_simple(gs, emb.to_sub(c), kDefaultBudget)) {
                cands.push_back(c);
                break;
            }
        }
        if (cands.empty())
            throw DegenerateSurgery("no embedded band sum for an arc between two boundary circles");
    } else {
        Word A, B;
        split_face(f1, tau, A, B);
        const Word Ai = words::inverse(A);
        cands.push_back(words::cyclic_reduce(concat({&tau.path, &B})));
        cands.push_back(words::cyclic_reduce(concat({&tau.path, &Ai})));
    }
    std::vector<NormalCurve> out;
    for (const Word& c : cands) {
        if (c.empty())
            continue;
        const Word sw = emb.to_sub(c);
        if (words::is_face_cycle(gs, sw))
            continue;
        if (!words::is_primitive(sw))
            throw CurveError("surgery produced a non-primitive curve");
        out.push_back(NormalCurve::from_word(sub, sw));
    }
    if (out.empty())
        throw DegenerateSurgery("every boundary circle of the arc neighbourhood is trivial or peripheral");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ProjectionSet project_words(const SubsurfaceEmbedding& emb, const std::vector<Word>& components, std::string source) {
    const ArcSystem arcs = split_into_arcs(emb, components);
    ProjectionSet ps;
    ps.source = std::move(source);
    std::vector<std::vector<NormalCurve>> per;
    for (const Arc& a : arcs.arcs) {
        per.push_back(project_arc(emb, a));
        ps.curves.insert(ps.curves.end(), per.back().begin(), per.back().end());
    }
    ps.curves.insert(ps.curves.end(), arcs.contained.begin(), arcs.contained.end());
    std::sort(ps.curves.begin(), ps.curves.end());
    ps.curves.erase(std::unique(ps.curves.begin(), ps.curves.end()), ps.curves.end());
    auto idx = [&](const NormalCurve& c) {
        return static_cast<int>(std::lower_bound(ps.curves.begin(), ps.curves.end(), c) - ps.curves.begin());
    };
    for (const auto& p : per) {
        std::vector<int> ix;
        for (const auto& c : p)
            ix.push_back(idx(c));
        ps.per_arc.push_back(std::move(ix));
    }
    return ps;
}

ProjectionSet project_curve(const SubsurfaceEmbedding& emb, const NormalCurve& alpha) {
    if (alpha.surface() != emb.ambient())
        throw CurveError("curve is not on the ambient surface");
    return project_words(emb, alpha.components(), format_curve(alpha));
}

// ---------------------------------------------------------------- distances

namespace {

int hempel_floor(std::uint64_t i) {
    int d = 2;
    while (hempel_holds(d + 1, i))
        ++d;
    return d;
}

} // namespace

CurveGraphOracle::CurveGraphOracle(SurfacePtr sub, long slice_bound) : sub_(std::move(sub)) {
    kind_ = sporadic_type(*sub_);
    if (kind_) {
        for (long b = 2;; b += 2) {
            const CurveGraphSlice s = enumerate_curve_graph(sub_, b);
            for (std::size_t a = 0; a < s.curves.size(); ++a)
                for (int x : s.adjacency[a])
                    for (int y : s.adjacency[x])
                        if (static_cast<int>(a) < x && x < y &&
                            std::binary_search(s.adjacency[a].begin(), s.adjacency[a].end(), y)) {
                            ref_ = {s.curves[a], s.curves[x], s.curves[y]};
                            return;
                        }
            if (b > 64)
                throw CurveError("no Farey triangle found on the sporadic sub surface");
        }
    }
    slice_ = enumerate_curve_graph(sub_, slice_bound);
    dist_.resize(slice_->curves.size());
}

Slope CurveGraphOracle::slope_of(const NormalCurve& c) const {
    if (!kind_)
        throw CurveError("slopes exist only on sporadic surfaces");
    const long f = *kind_ == Sporadic::OneHoledTorus ? 1 : 2;
    std::array<long, 3> i{};
    for (int k = 0; k < 3; ++k) {
        i[k] = static_cast<long>(normal_intersection(c, ref_[k]));
        if (i[k] % f != 0)
            throw CurveError("intersection with a reference curve is not a multiple of " + std::to_string(f));
        i[k] /= f;
    }
    const long q = i[0], ap = i[1], d = i[2];
    if (q == 0)
        return Slope(1, 0);
    if (ap == 0)
        return Slope(0, 1);
    if (std::labs(ap - q) == d)
        return Slope(ap, q);
    if (ap + q == d)
        return Slope(-ap, q);
    throw CurveError("reference intersections are not those of a slope");
}

DistanceBounds CurveGraphOracle::distance(const NormalCurve& a, const NormalCurve& b) const {
    DistanceBounds r;
    if (a == b) {
        r.bfs_hi = 0;
        return r;
    }
    if (kind_) {
        const auto d = farey_distance(slope_of(a), slope_of(b), 64);
        if (!d)
            throw CurveError("Farey distance unresolved at radius 64");
        r.lo = r.hi = r.bfs_hi = *d;
        return r;
    }
    const std::uint64_t i = normal_intersection(a, b);
    if (i == 0) {
        r.lo = r.hi = r.bfs_hi = 1;
        return r;
    }
    r.lo = 2;
    r.hi = hempel_floor(i);
    // a curve outside the slice enters it through the slice curves it misses
    auto entry = [&](const NormalCurve& c, std::vector<int>& src) {
        const int k = slice_->index_of(c);
        if (k >= 0) {
            src = {k};
            return 0;
        }
        for (std::size_t v = 0; v < slice_->curves.size(); ++v)
            if (normal_intersection(c, slice_->curves[v]) == 0)
                src.push_back(static_cast<int>(v));
        return 1;
    };
    std::vector<int> sa, sb;
    const int oa = entry(a, sa), ob = entry(b, sb);
    if (sa.empty() || sb.empty())
        return r;
    int best = -1;
    if (sa.size() == 1) {
        auto& row = dist_[sa[0]];
        if (row.empty())
            row = slice_->distances(sa[0], 1 << 20);
        for (int v : sb)
            if (row[v] >= 0 && (best < 0 || row[v] < best))
                best = row[v];
    } else {
        std::vector<int> d(slice_->curves.size(), -1);
        std::deque<int> queue;
        for (int v : sa) {
            d[v] = 0;
            queue.push_back(v);
        }
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int w : slice_->adjacency[u])
                if (d[w] == -1) {
                    d[w] = d[u] + 1;
                    queue.push_back(w);
                }
        }
        for (int v : sb)
            if (d[v] >= 0 && (best < 0 || d[v] < best))
                best = d[v];
    }
    if (best >= 0) {
        r.bfs_hi = oa + best + ob;
        r.hi = std::min(r.hi, r.bfs_hi);
    }
    return r;
}

DistanceBounds projection_diameter(const ProjectionSet& ps, const CurveGraphOracle& oracle) {
    DistanceBounds out;
    out.bfs_hi = 0;
    for (std::size_t i = 0; i < ps.curves.size(); ++i)
        for (std::size_t j = i + 1; j < ps.curves.size(); ++j) {
            const DistanceBounds d = oracle.distance(ps.curves[i], ps.curves[j]);
            out.lo = std::max(out.lo, d.lo);
            out.hi = std::max(out.hi, d.hi);
            out.bfs_hi = (out.bfs_hi < 0 || d.bfs_hi < 0) ? -1 : std::max(out.bfs_hi, d.bfs_hi);
        }
    return out;
}

DistanceBounds projection_distance(const ProjectionSet& a, const ProjectionSet& b, const CurveGraphOracle& oracle) {
    ProjectionSet u;
    u.curves = a.curves;
    u.curves.insert(u.curves.end(), b.curves.begin(), b.curves.end());
    std::sort(u.curves.begin(), u.curves.end());
    u.curves.erase(std::unique(u.curves.begin(), u.curves.end()), u.curves.end());
    return projection_diameter(u, oracle);
}

// ---------------------------------------------------------------- fixture search

std::vector<std::vector<int>> search_subsurfaces(const SurfacePtr& ambient, SubsurfaceType type,
                                                 std::size_t max_results) {
    std::vector<std::vector<int>> out;
    const int E = ambient->edges();
    for (int size = 1; size < E && out.size() < max_results; ++size) {
        std::vector<char> mask(static_cast<std::size_t>(E), 0);
        std::fill(mask.begin(), mask.begin() + size, 1);
        do {
            std::vector<int> edges;
            for (int e = 0; e < E; ++e)
                if (mask[e])
                    edges.push_back(e);
            try {
                const SubsurfaceEmbedding emb(ambient, edges, "candidate");
                if (emb.sub()->genus() == type.genus && emb.sub()->punctures() == type.ends)
                    out.push_back(edges);
            } catch (const CurveError&) {
            }
        } while (out.size() < max_results && std::prev_permutation(mask.begin(), mask.end()));
    }
    return out;
}

const std::vector<std::string>& standard_fixture_names() {
    static const std::vector<std::string> names = {"s11_in_g2", "s04_in_g2", "s12_in_g3"};
    return names;
}

SubsurfaceEmbedding standard_fixture(const std::string& name) {
    SurfacePtr ambient;
    SubsurfaceType type;
    std::string sub_id;
    if (name == "s11_in_g2") {
        ambient = TriSurface::fan(2);
        type = {1, 1};
        sub_id = "y11";
    } else if (name == "s04_in_g2") {
        // a 4-holed sphere does not fit in six triangles, so add a puncture
        ambient = TriSurface::fan(2)->add_puncture(0, "fan2p");
        type = {0, 4};
        sub_id = "y04";
    } else if (name == "s12_in_g3") {
        ambient = TriSurface::fan(3);
        type = {1, 2};
        sub_id = "y12";
    } else {
        throw CurveError("unknown fixture '" + name + "'");
    }
    const auto found = search_subsurfaces(ambient, type, 1);
    if (found.empty())
        throw CurveError("no subsurface of the requested type in " + ambient->id());
    return SubsurfaceEmbedding(ambient, found[0], sub_id);
}

} // namespace effcurves
