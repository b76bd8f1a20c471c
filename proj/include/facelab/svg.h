#pragma once

// Deterministic SVG rendering of an arrangement with optional highlights.

#include "facelab/arrangement.h"

#include <string>
#include <vector>

namespace facelab {

struct SvgOptions {
    std::vector<FaceId> faces;     ///< shaded; the unbounded face is skipped
    std::vector<Point> points;     ///< drawn as dots
    std::vector<Point> path;       ///< drawn as a polyline
    double size = 512;             ///< longer side of the canvas in pixels
};

/// y grows upward in the output. Numbers use three fixed decimals, so equal
/// inputs give byte-identical documents.
std::string render_svg(const Arrangement& arr, const SvgOptions& opts = {});

}  // namespace facelab
