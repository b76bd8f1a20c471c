#pragma once

// Symbol sequences of oriented arcs along face boundaries.

#include "facelab/arrangement.h"
#include "facelab/ds_seq.h"

#include <compare>
#include <string>
#include <vector>

namespace facelab {

enum class Direction { forward, backward };
enum class SplitTag { none, first_part, second_part };

struct OrientedSymbol {
    SegmentId segment = -1;
    Direction direction = Direction::forward;
    SplitTag tag = SplitTag::none;

    auto operator<=>(const OrientedSymbol&) const = default;

    /// `id+`, `id-`, with `:1` / `:2` appended for split symbols.
    std::string token() const;
};

/// One maximal portion of an oriented arc along a boundary component.
struct BoundaryOccurrence {
    OrientedSymbol symbol;
    std::vector<HalfEdgeId> half_edges;
};

/// Circular sequence for one boundary component, rotated to start at the
/// run whose first half-edge has the smallest (origin, owner, target).
struct BoundaryComponent {
    std::vector<BoundaryOccurrence> occurrences;
    int edge_sides = 0;
    int merges = 0;  ///< adjacent half-edges folded into a preceding occurrence

    std::vector<OrientedSymbol> symbols() const;
};

/// Walks every boundary cycle of f (face on the left). Consecutive
/// half-edges carried by the same oriented segment form one occurrence,
/// including across the wrap of the cycle.
std::vector<BoundaryComponent> boundary_symbol_sequence(const Arrangement& arr, FaceId f);

/// Cuts the circular sequence at its stored start and splits every oriented
/// symbol whose portions wrap past the cut into `:1` (earlier along the arc)
/// and `:2`. Throws InvariantError if some arc's portions are not in a
/// rotation of their order along the arc.
std::vector<OrientedSymbol> linearize(const Arrangement& arr, const BoundaryComponent& comp);

/// Dense integer alphabet for ds_seq; equal symbols map to equal integers.
SymbolSequence intern(const std::vector<OrientedSymbol>& symbols, bool circular = false);

std::string format_sequence(const std::vector<OrientedSymbol>& symbols);

}  // namespace facelab
