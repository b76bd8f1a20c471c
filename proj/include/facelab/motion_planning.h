#pragma once

// Translating a simple polygon among point obstacles. The free placements
// of the reference point form the complement of the reflected robot copies
// centred on the obstacles; s and e are connected iff they share a face of
// that arrangement.

#include "facelab/generators.h"

#include <optional>
#include <vector>

namespace facelab {

struct PlanProblem {
    std::vector<Point> robot;       ///< simple polygon, vertex order
    std::vector<Point> obstacles;
    Point start;
    Point goal;
    std::optional<Point> reference; ///< defaults to the first robot vertex
};

struct PlanResult {
    bool reachable = false;
    std::vector<Point> path;        ///< empty when unreachable
    FaceData face;                  ///< face of the goal
    std::vector<Segment> forbidden; ///< every forbidden-region segment
};

/// Throws InputError when s or e is not a free placement.
PlanResult plan(const PlanProblem& prob);

/// Polyline from s to e through the trapezoids of face f of arr, routed
/// via trapezoid interiors and openings of shared walls.
std::vector<Point> extract_path(const Arrangement& arr, FaceId f, const Point& s, const Point& e);

/// Strictly inside the polygon (winding number nonzero, not on the boundary).
bool strictly_inside(const std::vector<Point>& poly, const Point& p);

}  // namespace facelab
