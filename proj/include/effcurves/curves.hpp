#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "effcurves/interval.hpp"

namespace effcurves {

struct ComplexityExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CurveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- slopes

enum class Sporadic { OneHoledTorus, FourHoledSphere };

const char* sporadic_name(Sporadic s);

struct Slope {
    long p = 1;
    long q = 0;

    Slope() = default;
    Slope(long p, long q);  // canonicalizes; throws CurveError on (0,0) or non-coprime

    static Slope parse(const std::string& s);  // "p/q" or "p"
    long height() const;                       // max(|p|, |q|)
    std::string to_string() const;

    friend bool operator==(const Slope& a, const Slope& b) { return a.p == b.p && a.q == b.q; }
    friend bool operator!=(const Slope& a, const Slope& b) { return !(a == b); }
    friend bool operator<(const Slope& a, const Slope& b) { return a.q != b.q ? a.q < b.q : a.p < b.p; }
};

long slope_det(const Slope& a, const Slope& b);  // |p_a q_b - q_a p_b|
long slope_intersection(const Slope& a, const Slope& b, Sporadic s);

// All slopes of height <= H with the Farey edges among them. Any geodesic of
// the Farey graph between two slopes runs through the triangles crossed by the
// hyperbolic geodesic joining them, whose vertices are Stern-Brocot ancestors
// of the endpoints. Those have height at most the larger endpoint height, so
// BFS inside the ball of that height gives true distances.
class FareyBall {
public:
    explicit FareyBall(long height);

    long height() const { return h_; }
    const std::vector<Slope>& slopes() const { return v_; }
    const std::vector<std::vector<int>>& adjacency() const { return adj_; }
    int index(const Slope& s) const;  // -1 when outside the ball
    // BFS distances from src, -1 beyond radius
    std::vector<int> distances(int src, int radius) const;

private:
    long h_;
    std::vector<Slope> v_;
    std::vector<std::vector<int>> adj_;
};

// nullopt means Unresolved: no path of length <= radius in the enumerated ball.
std::optional<int> farey_distance(const Slope& a, const Slope& b, int radius);

// 2 + 2 log2(i) for i >= 1, and 1 for i = 0
IntervalScalar hempel_bound(std::uint64_t i, long prec = kDefaultPrecision);
// exact test d <= 2 + 2 log2(i), i.e. 2^(d-2) <= i^2 (with the i = 0 convention)
bool hempel_holds(int d, std::uint64_t i);

// len_a * exp(len_b / 2)
IntervalScalar length_intersection_bound(const IntervalScalar& len_a, const IntervalScalar& len_b);

// ---------------------------------------------------------------- ribbon graphs

using Word = std::vector<int>;

// Darts 0..2E-1 with twin(d) = d ^ 1; sigma(d) is the next dart counterclockwise
// around the vertex of d. A path is a sequence of darts, each leaving the
// vertex the previous one arrives at.
class RibbonGraph {
public:
    RibbonGraph() = default;
    explicit RibbonGraph(std::vector<int> sigma);

    int darts() const { return static_cast<int>(sigma_.size()); }
    int edges() const { return darts() / 2; }
    static int twin(int d) { return d ^ 1; }
    int sigma(int d) const { return sigma_[d]; }
    int sigma_inv(int d) const { return sigma_inv_[d]; }
    int vertex(int d) const { return vertex_[d]; }
    int vertices() const { return static_cast<int>(rot_.size()); }
    int degree(int v) const { return static_cast<int>(rot_[v].size()); }
    // darts at v in counterclockwise order, starting from the smallest
    const std::vector<int>& rotation(int v) const { return rot_[v]; }
    // sigma steps from x to y around their common vertex
    int dist(int x, int y) const;
    int face_next(int d) const { return sigma_[twin(d)]; }
    // face cycles under face_next, each starting at its smallest dart
    const std::vector<Word>& faces() const { return faces_; }
    int face_of(int d) const { return face_of_[d]; }
    long euler() const { return static_cast<long>(vertices()) - edges(); }

private:
    std::vector<int> sigma_, sigma_inv_, vertex_, pos_, face_of_;
    std::vector<std::vector<int>> rot_;
    std::vector<Word> faces_;
};

namespace words {
bool is_cyclic_path(const RibbonGraph& g, const Word& w);
Word inverse(const Word& w);
// remove backtracks d, twin(d), cyclically
Word cyclic_reduce(const Word& w);
// lexicographically least rotation
Word canonical_rotation(const Word& w);
// least of the canonical rotations of w and its inverse
Word canonical_cycle(const Word& w);
bool is_primitive(const Word& w);
bool is_face_cycle(const RibbonGraph& g, const Word& w);
// linked pairs between two reduced cyclic words (the geometric intersection number
// of the curves they represent when both are simple)
std::uint64_t linked_pairs(const RibbonGraph& g, const Word& a, const Word& b, std::uint64_t budget);
// a reduced nonempty primitive cyclic word with no self-crossings
bool is_simple(const RibbonGraph& g, const Word& w, std::uint64_t budget);
} // namespace words

constexpr std::uint64_t kDefaultBudget = 400'000'000;

// ---------------------------------------------------------------- triangulations

struct SideRef {
    int tri = 0;
    int side = 0;
    friend bool operator==(const SideRef& a, const SideRef& b) { return a.tri == b.tri && a.side == b.side; }
    friend bool operator<(const SideRef& a, const SideRef& b) {
        return a.tri != b.tri ? a.tri < b.tri : a.side < b.side;
    }
};

// An ideal triangulation: every side is glued, vertices are punctures (or
// boundary circles, which play the same role for curves). Side k of a triangle
// runs from its vertex k to vertex k+1; gluings reverse side direction.
class TriSurface {
public:
    TriSurface(std::string id, std::vector<std::array<SideRef, 3>> glue);

    static std::shared_ptr<const TriSurface> once_punctured_torus();
    static std::shared_ptr<const TriSurface> four_punctured_sphere();
    // fan triangulation of the 4g-gon with sides a1 b1 a1^-1 b1^-1 ...; one puncture
    static std::shared_ptr<const TriSurface> fan(int genus);
    // dual of a trivalent ribbon graph: triangle per vertex, sides in rotation order
    static std::shared_ptr<const TriSurface> from_ribbon(std::string id, const RibbonGraph& g);
    // the triangulation with edge e replaced by the other diagonal of its quadrilateral;
    // nullopt when both sides of e lie on one triangle
    std::optional<std::shared_ptr<const TriSurface>> flip(int e, std::string id) const;
    // a new puncture inside triangle t, coned off to its three corners
    std::shared_ptr<const TriSurface> add_puncture(int t, std::string id) const;

    const std::string& id() const { return id_; }
    int triangles() const { return static_cast<int>(glue_.size()); }
    int edges() const { return static_cast<int>(edge_sides_.size()); }
    SideRef glued(int t, int k) const { return glue_[t][k]; }
    int edge_of(int t, int k) const { return edge_[t][k]; }
    // the two sides of edge e; the first is the reference side
    const std::array<SideRef, 2>& edge_sides(int e) const { return edge_sides_[e]; }
    int dart(int t, int k) const;
    SideRef side_of_dart(int d) const;
    const RibbonGraph& dual() const { return dual_; }

    int punctures() const { return static_cast<int>(dual_.faces().size()); }
    long euler() const { return -static_cast<long>(triangles()) / 2; }
    int genus() const { return static_cast<int>((2 - euler() - punctures()) / 2); }
    const std::vector<std::array<SideRef, 3>>& gluing() const { return glue_; }

private:
    std::string id_;
    std::vector<std::array<SideRef, 3>> glue_;
    std::vector<std::array<int, 3>> edge_;
    std::vector<std::array<SideRef, 2>> edge_sides_;
    RibbonGraph dual_;
};

using SurfacePtr = std::shared_ptr<const TriSurface>;

// Corner weights: weights[t][k] counts arcs of triangle t joining sides k and k+1.
class NormalCurve {
public:
    NormalCurve() = default;
    NormalCurve(SurfacePtr s, std::vector<std::array<long, 3>> weights);

    static NormalCurve from_word(SurfacePtr s, const Word& w);
    // throws CurveError when some triangle has odd perimeter or fails the triangle inequality
    static NormalCurve from_edge_weights(SurfacePtr s, const std::vector<long>& w);

    const SurfacePtr& surface() const { return s_; }
    const std::vector<std::array<long, 3>>& weights() const { return w_; }
    long side_weight(int t, int k) const;
    std::vector<long> edge_weights() const;  // requires matching
    long total_weight() const;               // sum of edge weights
    bool is_empty() const;
    // first violated matching equation, if any
    std::optional<std::string> matching_violation() const;

    // components as cyclic dart words in the dual ribbon graph
    std::vector<Word> components() const;
    Word word() const;  // the single component; throws unless connected

    NormalCurve operator+(const NormalCurve& o) const;  // normal (Haken) sum

    friend bool operator==(const NormalCurve& a, const NormalCurve& b) { return a.w_ == b.w_; }
    friend bool operator<(const NormalCurve& a, const NormalCurve& b) { return a.w_ < b.w_; }

private:
    SurfacePtr s_;
    std::vector<std::array<long, 3>> w_;
};

struct Validity {
    bool ok = false;
    std::string diagnostic;  // empty when ok
};

Validity normal_is_valid(const NormalCurve& c);
bool is_peripheral(const NormalCurve& c);

std::uint64_t normal_intersection(const NormalCurve& a, const NormalCurve& b,
                                  std::uint64_t budget = kDefaultBudget);
// minimum crossing count over all interleavings of the two curves along every
// edge; nullopt when the number of interleavings exceeds the budget
std::optional<std::uint64_t> brute_force_intersection(const NormalCurve& a, const NormalCurve& b,
                                                      std::uint64_t budget = 2'000'000);

// normal coordinates of a slope on the standard triangulations
NormalCurve slope_to_normal(const Slope& s, Sporadic kind);
SurfacePtr sporadic_surface(Sporadic kind);

// ---------------------------------------------------------------- curve graph slices

struct CurveGraphSlice {
    std::string surface;     // tri-surface id or sporadic name
    long bound = 0;          // max total edge weight, or max slope height
    std::string relation;    // "disjoint", "i=1" or "i=2"
    std::vector<std::string> labels;
    std::vector<NormalCurve> curves;  // empty for slope slices
    std::vector<Slope> slopes;        // empty for triangulated slices
    std::vector<std::vector<int>> adjacency;  // sorted

    int index_of(const NormalCurve& c) const;
    int index_of(const Slope& s) const;
    std::vector<int> distances(int src, int radius) const;
    // edge-list text
    std::string to_edge_list() const;
};

// sporadic surfaces are recognized from their topology and get the i = 1 / i = 2 relation
std::optional<Sporadic> sporadic_type(const TriSurface& s);

CurveGraphSlice enumerate_curve_graph(const SurfacePtr& s, long bound,
                                      std::uint64_t max_vertices = 20000);
CurveGraphSlice enumerate_curve_graph(Sporadic kind, long bound);

// ---------------------------------------------------------------- exchange format

// "surface <id>; weights t0:(a,b,c) t1:(a,b,c) ..."
std::string format_curve(const NormalCurve& c);
NormalCurve parse_curve(const std::string& line, const SurfacePtr& s);
// "triangulation <id>; t0:(t1.1,t1.2,t1.0) ..."
std::string format_triangulation(const TriSurface& s);
SurfacePtr parse_triangulation(const std::string& line);

} // namespace effcurves
