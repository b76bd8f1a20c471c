#pragma once

// Planar arrangement of line segments as a doubly-connected edge list.
//
// Vertices are all endpoints and intersection points; collinear overlaps are
// merged into shared edges that remember every owning segment. Faces carry an
// optional outer boundary cycle (absent for the unbounded face, which is
// always face 0) and any number of inner cycles. Every cycle is oriented so
// that its face lies to the left.

#include "facelab/exact_geom.h"

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace facelab {

using VertexId = int;
using HalfEdgeId = int;
using EdgeId = int;
using FaceId = int;

inline constexpr FaceId kUnboundedFace = 0;

struct Vertex {
    Point point;
    /// Outgoing half-edges in counterclockwise angular order starting at +x.
    std::vector<HalfEdgeId> outgoing;
};

struct HalfEdge {
    VertexId origin = -1;
    HalfEdgeId twin = -1;
    HalfEdgeId next = -1;
    HalfEdgeId prev = -1;
    EdgeId edge = -1;
    /// Representative owner (smallest id among the edge's owners).
    SegmentId owner = -1;
    /// True when this half-edge runs source -> target along its owner.
    bool forward = true;
    int cycle = -1;
};

struct Edge {
    HalfEdgeId half = -1;  ///< half-edge from the lexicographically smaller vertex
    std::vector<SegmentId> owners;
};

struct Face {
    FaceId id = -1;
    std::optional<HalfEdgeId> outer_component;
    std::vector<HalfEdgeId> inner_components;
    bool is_unbounded = false;
};

struct FaceComplexity {
    int edge_sides = 0;  ///< half-edges along all boundary cycles
    int vertices = 0;    ///< distinct boundary vertices
    int components = 0;  ///< boundary cycles

    int total() const { return edge_sides + vertices; }
    bool operator==(const FaceComplexity&) const = default;
};

struct Location {
    enum class Kind { face, edge, vertex };
    Kind kind = Kind::face;
    int id = kUnboundedFace;

    static Location face(FaceId f) { return {Kind::face, f}; }
    static Location edge(EdgeId e) { return {Kind::edge, e}; }
    static Location vertex(VertexId v) { return {Kind::vertex, v}; }
    bool operator==(const Location&) const = default;
};

enum class BuildMethod { sweep, brute_force };

/// All points lying on each input segment (endpoints, crossings, overlap
/// ends), sorted lexicographically and deduplicated. Index-aligned with input.
std::vector<std::vector<Point>> split_points(std::span<const Segment> segments,
                                             BuildMethod method = BuildMethod::sweep);

/// Index pairs (i < j) of intersecting input segments, sorted.
std::vector<std::pair<int, int>> intersecting_pairs(std::span<const Segment> segments,
                                                    BuildMethod method = BuildMethod::sweep);

class Arrangement {
public:
    static Arrangement build(std::span<const Segment> segments,
                             BuildMethod method = BuildMethod::sweep);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<HalfEdge>& half_edges() const { return half_edges_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const Segment& segment(SegmentId id) const;

    const Point& origin(HalfEdgeId h) const { return vertices_[half_edges_[h].origin].point; }
    const Point& target(HalfEdgeId h) const { return origin(half_edges_[h].twin); }
    FaceId face_of(HalfEdgeId h) const { return cycle_face_[half_edges_[h].cycle]; }

    /// Forward half-edges of a segment, in order from source to target.
    const std::vector<HalfEdgeId>& segment_chain(SegmentId id) const;

    std::optional<VertexId> find_vertex(const Point& p) const;
    Location locate(const Point& p) const;
    /// Face containing a point known to be off every segment.
    FaceId face_containing(const Point& p) const;

    /// One cycle per boundary component, outer first; face on the left.
    std::vector<std::vector<HalfEdgeId>> boundary_cycles(FaceId f) const;
    FaceComplexity face_complexity(FaceId f) const;

    /// Vertices + edges + faces.
    long total_complexity() const;
    /// Connected components of the union of the segments.
    int connected_components() const;

private:
    std::vector<Vertex> vertices_;
    std::vector<HalfEdge> half_edges_;
    std::vector<Edge> edges_;
    std::vector<Face> faces_;
    std::vector<Segment> segments_;
    std::map<SegmentId, int> segment_slot_;
    std::vector<std::vector<HalfEdgeId>> chains_;
    std::map<Point, VertexId, PointLess> vertex_index_;
    std::vector<FaceId> cycle_face_;
    std::vector<HalfEdgeId> cycle_start_;

    void assemble(const std::vector<std::vector<Point>>& points);
    void link_vertices();
    void build_faces();
    std::optional<HalfEdgeId> shoot_left(const Point& p) const;
};

/// Pseudo-trapezoid of a vertical decomposition. Absent sides are infinite.
struct Trapezoid {
    std::optional<SegmentId> top;
    std::optional<SegmentId> bottom;
    std::optional<Rat> left;
    std::optional<Rat> right;
    FaceId containing_face = kUnboundedFace;
    EdgeId top_edge = -1;
    EdgeId bottom_edge = -1;
};

/// Walls go up and down from every vertex; vertical segments lie on walls.
std::vector<Trapezoid> vertical_decomposition(const Arrangement& arr);

/// Index of the trapezoid containing p after perturbing it to
/// (x + eps, y + eps^2); every point lands in exactly one trapezoid.
int locate_trapezoid(const Arrangement& arr, std::span<const Trapezoid> traps, const Point& p);

/// True iff a segment meets the open interior of a trapezoid.
bool segment_meets_interior(const Arrangement& arr, const Trapezoid& t, const Segment& s);

/// A point strictly inside the trapezoid.
Point interior_point(const Arrangement& arr, const Trapezoid& t);

/// Height of the bottom/top boundary at x (nullopt = infinite).
std::optional<Rat> bottom_at(const Arrangement& arr, const Trapezoid& t, const Rat& x);
std::optional<Rat> top_at(const Arrangement& arr, const Trapezoid& t, const Rat& x);

}  // namespace facelab
