#pragma once

// Overlays of several segment collections: lower envelopes, the face of a
// point computed by balanced pairwise merging, the refinement that bounds
// the splitting number, marked-face complexity, and intersection-graph
// coloring.

#include "facelab/arrangement.h"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace facelab {

/// t pairwise disjoint segment collections plus k marking points.
struct MarkedInstance {
    std::vector<std::vector<Segment>> collections;
    std::vector<Point> points;

    std::vector<Segment> all_segments() const;
    std::size_t segment_count() const;
    /// Throws InputError on a repeated segment id or a point on a segment.
    void validate() const;
};

// ---------------------------------------------------------------------------
// Lower envelopes of segments viewed as partial functions of x.

struct Envelope {
    /// Increasing abscissae; piece i spans (breakpoints[i], breakpoints[i+1]).
    std::vector<Rat> breakpoints;
    /// Lowest segment over each interval, or nullopt over a gap.
    std::vector<std::optional<Segment>> pieces;

    std::size_t complexity() const { return pieces.size() + breakpoints.size(); }
    /// Number of breakpoints strictly between the first and last one.
    std::size_t interior_breakpoints() const {
        return breakpoints.size() < 2 ? 0 : breakpoints.size() - 2;
    }
};

/// Divide and conquer over the input. Vertical segments are rejected; ties
/// between overlapping collinear segments go to the smaller id.
Envelope lower_envelope(std::span<const Segment> segments);
Envelope merge_envelopes(const Envelope& a, const Envelope& b);
/// Balanced pairwise merging of t envelopes.
Envelope envelope_overlay(const std::vector<Envelope>& envelopes);

// ---------------------------------------------------------------------------
// The face containing a point.

struct FaceData {
    FaceComplexity complexity;
    std::vector<Point> vertices;       ///< distinct boundary vertices, sorted
    std::vector<SegmentId> segments;   ///< owners of boundary edges, sorted
};

FaceData face_data(const Arrangement& arr, FaceId f);

struct SingleFaceResult {
    FaceData face;
    /// Sum of face complexities (edge sides + vertices) per merge level,
    /// leaves first; the last entry is the final face.
    std::vector<long> level_complexity;
    /// Segments touching the closure of the face; the arrangement of these
    /// alone has the same face around p.
    std::vector<Segment> segments;
};

/// Faces of p in every A(Gamma_i), merged two at a time up a balanced tree.
/// Each merge keeps only segments touching the closure of the current face,
/// builds their arrangement and re-extracts the face of p.
SingleFaceResult single_face_overlay(const MarkedInstance& inst, const Point& p);

/// Builds the whole union arrangement and locates p.
FaceData single_face_oracle(const MarkedInstance& inst, const Point& p);

/// Segments touching the closure of face f.
std::vector<Segment> closure_segments(const Arrangement& arr, FaceId f);

// ---------------------------------------------------------------------------
// Refinement and splitting number.

struct SubArc {
    SegmentId owner = -1;
    Point from;
    Point to;
};

struct CollectionRefinement {
    std::vector<SubArc> arcs;          ///< G_i
    std::vector<Point> split_points;   ///< distinct, sorted
    int L = 0;                         ///< |split_points|
    long C = 0;                        ///< complexity of the marked faces of A(Gamma_i)
};

struct Refinement {
    std::vector<CollectionRefinement> collections;
    long L = 0;
    long C = 0;
    int k = 0;
    int t = 0;

    long splitting_bound() const { return 2 * static_cast<long>(k) * t + 2 * C; }
};

/// Walks every boundary component of every marked face of each A(Gamma_i)
/// counterclockwise (face on the left) and splits at vertices where two
/// distinct segments of Gamma_i meet and wherever the walk starts bordering
/// a marked face of the overlay other than the last one bordered.
Refinement refine(const MarkedInstance& inst);

// ---------------------------------------------------------------------------
// Marked-face complexity.

struct MarkedComplexity {
    std::vector<FaceComplexity> per_point;   ///< face of each point in the union
    long union_total = 0;                    ///< over distinct marked faces of the union
    std::vector<long> per_collection;        ///< C_i over distinct marked faces of A(Gamma_i)
    long C = 0;
    int distinct_faces = 0;
};

MarkedComplexity marked_faces_complexity(const MarkedInstance& inst);

// ---------------------------------------------------------------------------
// Coloring of the intersection graph.

struct Coloring {
    std::map<SegmentId, int> color;
    int colors = 0;
    int degeneracy = 0;
    long intersecting_pairs = 0;   ///< w', edges of the intersection graph
};

/// Greedy coloring in reverse smallest-last order.
Coloring smallest_last_coloring(std::span<const Segment> segments);

/// Smallest c with c >= (1 + sqrt(1 + 8 w)) / 2.
int coloring_bound(long intersecting_pairs);

/// Color classes as collections, with the given marking points.
MarkedInstance instance_from_coloring(std::span<const Segment> segments, const Coloring& coloring,
                                      std::vector<Point> points);

}  // namespace facelab
