#include "effcurves/curves.hpp"

#include <algorithm>

namespace effcurves {

RibbonGraph::RibbonGraph(std::vector<int> sigma) : sigma_(std::move(sigma)) {
    const int n = darts();
    if (n % 2 != 0)
        throw CurveError("ribbon graph needs an even number of darts");
    sigma_inv_.assign(n, -1);
    for (int d = 0; d < n; ++d) {
        if (sigma_[d] < 0 || sigma_[d] >= n || sigma_inv_[sigma_[d]] != -1)
            throw CurveError("sigma is not a permutation");
        sigma_inv_[sigma_[d]] = d;
    }
    vertex_.assign(n, -1);
    pos_.assign(n, 0);
    for (int d = 0; d < n; ++d) {
        if (vertex_[d] != -1)
            continue;
        std::vector<int> orbit;
        for (int x = d; vertex_[x] == -1; x = sigma_[x]) {
            vertex_[x] = static_cast<int>(rot_.size());
            pos_[x] = static_cast<int>(orbit.size());
            orbit.push_back(x);
        }
        rot_.push_back(std::move(orbit));
    }
    face_of_.assign(n, -1);
    for (int d = 0; d < n; ++d) {
        if (face_of_[d] != -1)
            continue;
        Word f;
        for (int x = d; face_of_[x] == -1; x = face_next(x)) {
            face_of_[x] = static_cast<int>(faces_.size());
            f.push_back(x);
        }
        faces_.push_back(std::move(f));
    }
}

int RibbonGraph::dist(int x, int y) const {
    const int deg = degree(vertex_[x]);
    return ((pos_[y] - pos_[x]) % deg + deg) % deg;
}

namespace words {

bool is_cyclic_path(const RibbonGraph& g, const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] < 0 || w[i] >= g.darts())
            return false;
        const int nxt = w[(i + 1) % n];
        if (nxt < 0 || nxt >= g.darts() || g.vertex(nxt) != g.vertex(RibbonGraph::twin(w[i])))
            return false;
    }
    return true;
}

Word inverse(const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (int& d : r)
        d = RibbonGraph::twin(d);
    return r;
}

Word cyclic_reduce(const Word& w) {
    Word s;
    for (int d : w) {
        if (!s.empty() && s.back() == RibbonGraph::twin(d))
            s.pop_back();
        else
            s.push_back(d);
    }
    std::size_t lo = 0, hi = s.size();
    while (hi - lo >= 2 && s[lo] == RibbonGraph::twin(s[hi - 1])) {
        ++lo;
        --hi;
    }
    return Word(s.begin() + static_cast<long>(lo), s.begin() + static_cast<long>(hi));
}

Word canonical_rotation(const Word& w) {
    const std::size_t n = w.size();
    std::size_t best = 0;
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            const int x = w[(r + i) % n], y = w[(best + i) % n];
            if (x != y) {
                if (x < y)
                    best = r;
                break;
            }
        }
    }
    Word out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = w[(best + i) % n];
    return out;
}

Word canonical_cycle(const Word& w) {
    Word a = canonical_rotation(w), b = canonical_rotation(inverse(w));
    return std::min(a, b);
}

bool is_primitive(const Word& w) {
    const std::size_t n = w.size();
    if (n == 0)
        return false;
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0)
            continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i)
            periodic = w[i] == w[i - p];
        if (periodic)
            return false;
    }
    return true;
}

bool is_face_cycle(const RibbonGraph& g, const Word& w) {
    if (w.empty())
        return false;
    const Word c = canonical_cycle(w);
    for (const Word& f : g.faces())
        if (f.size() == w.size() && canonical_cycle(f) == c)
            return true;
    return false;
}

namespace {

// linked maximal common segments of a and b, both read forwards
std::uint64_t linked_oriented(const RibbonGraph& g, const Word& a, const Word& b, bool zero_length,
                              std::uint64_t& work, std::uint64_t budget) {
    const std::size_t n = a.size(), m = b.size();
    std::uint64_t count = 0;
    auto A = [&](std::size_t i) { return a[i % n]; };
    auto B = [&](std::size_t j) { return b[j % m]; };
    for (std::size_t i = 0; i < n; ++i) {
        const int v = g.vertex(a[i]);
        const int a_prev = a[(i + n - 1) % n];
        for (std::size_t j = 0; j < m; ++j) {
            if (g.vertex(b[j]) != v)
                continue;
            const int b_prev = b[(j + m - 1) % m];
            if (a_prev == b_prev)
                continue;
            std::size_t k = 0;
            while (k < n + m && A(i + k) == B(j + k))
                ++k;
            work += k + 1;
            if (work > budget)
                throw ComplexityExceeded("intersection work budget exhausted");
            if (k >= n + m)
                continue;  // the two lifts coincide
            const int a_in = RibbonGraph::twin(a_prev), b_in = RibbonGraph::twin(b_prev);
            if (k == 0) {
                if (!zero_length)
                    continue;
                const int a_out = a[i], b_out = b[j];
                if (a_in == b_out || a_out == b_in)
                    continue;  // a shared edge traversed in opposite directions
                const int pa = g.dist(a_in, a_out), p1 = g.dist(a_in, b_in), p2 = g.dist(a_in, b_out);
                const bool in1 = p1 < pa, in2 = p2 < pa;
                if (in1 != in2)
                    ++count;
                continue;
            }
            const int c = A(i);
            const bool a_left_start = g.dist(c, a_in) < g.dist(c, b_in);
            const int e = RibbonGraph::twin(A(i + k - 1));
            const bool a_left_end = g.dist(e, A(i + k)) > g.dist(e, B(j + k));
            if (a_left_start != a_left_end)
                ++count;
        }
    }
    return count;
}

} // namespace

std::uint64_t linked_pairs(const RibbonGraph& g, const Word& a, const Word& b, std::uint64_t budget) {
    if (a.empty() || b.empty())
        return 0;
    std::uint64_t work = 0;
    return linked_oriented(g, a, b, true, work, budget) + linked_oriented(g, a, inverse(b), false, work, budget);
}

bool is_simple(const RibbonGraph& g, const Word& w, std::uint64_t budget) {
    if (w.empty() || !is_primitive(w) || cyclic_reduce(w).size() != w.size())
        return false;
    return linked_pairs(g, w, w, budget) == 0;
}

} // namespace words
} // namespace effcurves
