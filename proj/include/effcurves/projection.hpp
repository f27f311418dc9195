#pragma once

#include <optional>
#include <string>
#include <vector>

#include "effcurves/curves.hpp"

namespace effcurves {

struct NoEssentialIntersection : CurveError {
    using CurveError::CurveError;
};

struct DegenerateSurgery : CurveError {
    using CurveError::CurveError;
};

// A subsurface Y of an ideally triangulated S, given by a set K of ambient
// edges. Y is a regular neighbourhood of the dual subgraph on K; its boundary
// circles are the faces of that subgraph which are not faces of the ambient
// dual graph. The sub-triangulation is dual to the subgraph with its
// degree 2 vertices smoothed, so its triangles are the ambient triangles
// having all three sides in K.
class SubsurfaceEmbedding {
public:
    SubsurfaceEmbedding(SurfacePtr ambient, std::vector<int> edges, std::string sub_id);

    // fixture text: ambient triangulation, sub triangulation, embedding stanza
    static SubsurfaceEmbedding parse(const std::string& text);
    static SubsurfaceEmbedding load(const std::string& path);
    std::string format() const;

    const SurfacePtr& ambient() const { return ambient_; }
    const SurfacePtr& sub() const { return sub_; }
    const std::vector<int>& edges() const { return edges_; }
    bool in_sub(int ambient_dart) const { return in_k_[ambient_dart / 2] != 0; }

    // faces of the subgraph, as ambient words; peripheral ones are punctures of S
    const std::vector<Word>& faces() const { return faces_; }
    bool face_is_boundary(int f) const { return boundary_[f] != 0; }
    // boundary circles of Y as ambient curves
    std::vector<NormalCurve> boundary_curves() const;
    // sub puncture (dual face index) of each subgraph face
    int sub_puncture_of_face(int f) const { return face_to_sub_[f]; }

    // the subgraph face and the position of the corner an outside dart at
    // a degree 2 vertex opens into
    struct Gap {
        int face = -1;
        int corner = -1;  // index into faces()[face] of the dart leaving the corner
    };
    Gap gap_of(int outside_dart) const;

    // a reduced closed ambient word inside K as a sub dual word (or the reverse)
    Word to_sub(const Word& ambient_word) const;
    Word to_ambient(const Word& sub_word) const;
    // sub edges fully traversed by an open ambient path, counted per sub edge
    std::vector<long> sub_edge_crossings(const Word& ambient_path) const;
    // sub triangle to ambient triangle
    const std::vector<int>& triangle_map() const { return tri_map_; }

    std::optional<Sporadic> sporadic() const { return sporadic_type(*sub_); }

private:
    SurfacePtr ambient_, sub_;
    std::vector<int> edges_;
    std::vector<char> in_k_;
    std::vector<Word> faces_;
    std::vector<char> boundary_;
    std::vector<int> face_of_dart_, pos_in_face_;
    std::vector<int> face_to_sub_;
    std::vector<int> tri_map_;       // sub triangle -> ambient triangle
    std::vector<int> sub_vertex_;    // ambient triangle -> sub triangle or -1
    // chain of each ambient K-dart leaving a branch vertex: sub dart and chain length
    std::vector<int> chain_start_sub_;  // ambient dart -> sub dart, -1 unless it leaves a branch vertex
    std::vector<Word> chain_of_sub_;    // sub dart -> ambient darts
};

struct Arc {
    Word path;  // ambient darts in K
    int start_face = -1, start_corner = -1;
    int end_face = -1, end_corner = -1;
    // when both ends open into the same corner: does the arc leave after it entered, along the face
    bool exit_follows_entry = false;

    friend bool operator==(const Arc& a, const Arc& b) {
        return a.path == b.path && a.start_face == b.start_face && a.start_corner == b.start_corner &&
               a.end_face == b.end_face && a.end_corner == b.end_corner &&
               a.exit_follows_entry == b.exit_follows_entry;
    }
    friend bool operator<(const Arc& a, const Arc& b);
};

Arc reverse_arc(const Arc& a);
// slides both ends along their boundary faces until the path turns into Y;
// the result crosses each sub edge minimally, its end order flag is cleared
Arc tighten_arc(const SubsurfaceEmbedding& emb, const Arc& a);

struct ArcSystem {
    std::vector<Arc> arcs;              // essential arc classes, deduplicated
    std::vector<NormalCurve> contained;  // components lying in Y, as sub curves
    long endpoints = 0;                 // 2 x essential arcs, counted with multiplicity
    long inessential_runs = 0;          // boundary-parallel runs removed
    bool pairwise_disjoint = true;      // arcs of an embedded multicurve
};

// errors: NoEssentialIntersection
ArcSystem split_into_arcs(const SubsurfaceEmbedding& emb, const NormalCurve& alpha);
ArcSystem split_into_arcs(const SubsurfaceEmbedding& emb, const std::vector<Word>& components);

// errors: DegenerateSurgery
std::vector<NormalCurve> project_arc(const SubsurfaceEmbedding& emb, const Arc& tau);

struct ProjectionSet {
    std::vector<NormalCurve> curves;  // sorted, distinct, on emb.sub()
    std::string source;
    std::vector<std::vector<int>> per_arc;  // indices into curves for each arc of the arc system
};

ProjectionSet project_curve(const SubsurfaceEmbedding& emb, const NormalCurve& alpha);
// any closed ambient words, reduced or not
ProjectionSet project_words(const SubsurfaceEmbedding& emb, const std::vector<Word>& components,
                            std::string source);

// curve-graph distance oracle for the sub surface
struct DistanceBounds {
    int lo = 0;
    int hi = 0;          // best certified upper bound
    int bfs_hi = -1;     // upper bound from a path in the slice, -1 if none found
    bool resolved() const { return lo == hi; }
};

class CurveGraphOracle {
public:
    // slice_bound: total edge weight of the slice used for non-sporadic sub surfaces
    CurveGraphOracle(SurfacePtr sub, long slice_bound);

    const CurveGraphSlice* slice() const { return slice_ ? &*slice_ : nullptr; }
    std::optional<Sporadic> sporadic() const { return kind_; }
    // slope of a curve on a sporadic sub surface, through three mutually adjacent reference curves
    Slope slope_of(const NormalCurve& c) const;
    DistanceBounds distance(const NormalCurve& a, const NormalCurve& b) const;

private:
    SurfacePtr sub_;
    std::optional<Sporadic> kind_;
    std::optional<CurveGraphSlice> slice_;
    mutable std::vector<std::vector<int>> dist_;  // BFS rows, filled on demand
    std::array<NormalCurve, 3> ref_;
};

DistanceBounds projection_diameter(const ProjectionSet& ps, const CurveGraphOracle& oracle);
DistanceBounds projection_distance(const ProjectionSet& a, const ProjectionSet& b, const CurveGraphOracle& oracle);

// topological type of a candidate subsurface
struct SubsurfaceType {
    int genus = 0;
    int ends = 0;  // boundary circles plus punctures
};

// edge sets of the ambient triangulation giving a valid essential subsurface of the
// requested type, smallest first; stops after max_results
std::vector<std::vector<int>> search_subsurfaces(const SurfacePtr& ambient, SubsurfaceType type,
                                                 std::size_t max_results = 1);

// the shipped fixtures: "s11_in_g2", "s04_in_g2", "s12_in_g3"; rebuilt by search
SubsurfaceEmbedding standard_fixture(const std::string& name);
const std::vector<std::string>& standard_fixture_names();

} // namespace effcurves
