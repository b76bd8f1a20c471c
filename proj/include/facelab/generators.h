#pragma once

// Seeded instance families. Every kind produces a MarkedInstance whose
// content depends only on (kind, parameters, seed).

#include "facelab/overlay.h"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace facelab {

/// mt19937_64 with an explicit rejection-sampled range reduction, so the
/// same seed yields the same stream on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi);
    /// Seed for an independent child stream.
    std::uint64_t derive(std::uint64_t salt);

private:
    std::mt19937_64 engine_;
};

enum class ScenarioKind { shifted_copies, grid, random, polygons, stabber, chords_long, minkowski };

std::string kind_name(ScenarioKind kind);
ScenarioKind parse_kind(const std::string& name);

struct Scenario {
    ScenarioKind kind = ScenarioKind::random;
    std::uint64_t seed = 1;

    int n = 20;          ///< segments (random, stabber, chords_long), robot vertices (minkowski)
    int t = 2;           ///< collections; base arcs for shifted_copies
    int m = 3;           ///< copies per collection (shifted_copies), marked cells (grid)
    int k = 1;           ///< marking points (random, stabber, chords_long), obstacles (minkowski), polygons
    int h = 3;           ///< grid horizontals
    int v = 3;           ///< grid verticals
    long box = 40;       ///< coordinate range [0, box] for lattice endpoints
    long max_length = 0; ///< random: cap on |dx| and |dy|, 0 means no cap
    Rat c = 1;           ///< chords_long: minimum chord length over radius
    bool distinct_faces = false;  ///< random: marking points lie in pairwise distinct faces
    std::vector<Segment> base;    ///< shifted_copies: custom base arcs (tangent family if empty)
};

/// Throws InputError on parameters outside their documented ranges.
MarkedInstance generate(const Scenario& sc);

/// Base arcs of the shifted-copies family: t segments tangent to y = -x^2
/// at x = 0..t-1, each spanning one unit to either side.
std::vector<Segment> tangent_family(int t);

/// Strip width used by shifted_copies: base x-extent plus one.
Rat strip_width(const std::vector<Segment>& base);

/// Vertex list of a closed segment loop (each target is the next source).
std::vector<Point> polygon_from_loop(const std::vector<Segment>& loop);
std::vector<Segment> loop_from_polygon(const std::vector<Point>& poly, SegmentId first_id = 0);
bool is_simple_polygon(const std::vector<Point>& poly);

/// Forbidden regions of a robot translated by its reference point c: for
/// each obstacle q the copy v -> q + c - v. Family i holds the copies of
/// robot edge i, one per obstacle, with id i * |obstacles| + j.
std::vector<std::vector<Segment>> reflect_translate(const std::vector<Point>& robot,
                                                    const std::vector<Point>& obstacles,
                                                    const Point& c);

}  // namespace facelab
