#include "facelab/face_boundary.h"

#include <algorithm>
#include <map>
#include <tuple>

namespace facelab {

std::string OrientedSymbol::token() const {
    std::string out = std::to_string(segment) + (direction == Direction::forward ? "+" : "-");
    if (tag == SplitTag::first_part) out += ":1";
    if (tag == SplitTag::second_part) out += ":2";
    return out;
}

std::vector<OrientedSymbol> BoundaryComponent::symbols() const {
    std::vector<OrientedSymbol> out;
    out.reserve(occurrences.size());
    for (const auto& o : occurrences) out.push_back(o.symbol);
    return out;
}

namespace {

OrientedSymbol symbol_of(const Arrangement& arr, HalfEdgeId h) {
    const HalfEdge& he = arr.half_edges()[h];
    return {he.owner, he.forward ? Direction::forward : Direction::backward, SplitTag::none};
}

}  // namespace

std::vector<BoundaryComponent> boundary_symbol_sequence(const Arrangement& arr, FaceId f) {
    std::vector<BoundaryComponent> out;
    for (const auto& cycle : arr.boundary_cycles(f)) {
        BoundaryComponent comp;
        comp.edge_sides = static_cast<int>(cycle.size());
        for (HalfEdgeId h : cycle) {
            OrientedSymbol sym = symbol_of(arr, h);
            if (!comp.occurrences.empty() && comp.occurrences.back().symbol == sym) {
                comp.occurrences.back().half_edges.push_back(h);
                ++comp.merges;
            } else {
                comp.occurrences.push_back({sym, {h}});
            }
        }
        auto& occ = comp.occurrences;
        if (occ.size() > 1 && occ.front().symbol == occ.back().symbol) {
            auto& tail = occ.back().half_edges;
            tail.insert(tail.end(), occ.front().half_edges.begin(), occ.front().half_edges.end());
            occ.front() = std::move(occ.back());
            occ.pop_back();
            ++comp.merges;
        }

        auto key = [&](const BoundaryOccurrence& o) {
            HalfEdgeId h = o.half_edges.front();
            return std::make_tuple(arr.origin(h), arr.half_edges()[h].owner, arr.target(h));
        };
        auto start = std::min_element(occ.begin(), occ.end(),
                                      [&](const auto& a, const auto& b) { return key(a) < key(b); });
        std::rotate(occ.begin(), start, occ.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<OrientedSymbol> linearize(const Arrangement& arr, const BoundaryComponent& comp) {
    const auto& occ = comp.occurrences;
    std::vector<OrientedSymbol> out = comp.symbols();

    // Position of each portion along its oriented arc, as a projection that
    // increases monotonically in the direction of travel.
    std::map<OrientedSymbol, std::vector<std::pair<std::size_t, Rat>>> portions;
    for (std::size_t i = 0; i < occ.size(); ++i) {
        const OrientedSymbol& sym = occ[i].symbol;
        const Segment& seg = arr.segment(sym.segment);
        const Point& from = sym.direction == Direction::forward ? seg.source() : seg.target();
        const Point& to = sym.direction == Direction::forward ? seg.target() : seg.source();
        const Point& at = arr.origin(occ[i].half_edges.front());
        Rat along = (at.x - from.x) * (to.x - from.x) + (at.y - from.y) * (to.y - from.y);
        portions[sym].emplace_back(i, std::move(along));
    }

    for (const auto& [sym, list] : portions) {
        if (list.size() < 2) continue;
        std::size_t descents = 0;
        std::size_t alpha = 0, beta = 0;
        for (std::size_t j = 0; j < list.size(); ++j) {
            const auto& cur = list[j];
            const auto& nxt = list[(j + 1) % list.size()];
            if (nxt.second < cur.second) ++descents;
            if (cur.second < list[alpha].second) alpha = j;
            if (list[beta].second < cur.second) beta = j;
        }
        if (descents > 1)
            throw InvariantError("portions of " + sym.token() +
                                 " are not circularly consistent with the arc order");
        if (alpha <= beta) continue;
        for (std::size_t j = 0; j < list.size(); ++j)
            out[list[j].first].tag = j >= alpha ? SplitTag::first_part : SplitTag::second_part;
    }
    return out;
}

SymbolSequence intern(const std::vector<OrientedSymbol>& symbols, bool circular) {
    std::map<OrientedSymbol, Symbol> ids;
    for (const auto& s : symbols) ids.emplace(s, 0);
    Symbol next = 0;
    for (auto& [s, id] : ids) id = next++;
    SymbolSequence seq;
    seq.circular = circular;
    for (const auto& s : symbols) seq.elements.push_back(ids[s]);
    return seq;
}

std::string format_sequence(const std::vector<OrientedSymbol>& symbols) {
    std::string out;
    for (const auto& s : symbols) {
        if (!out.empty()) out += ' ';
        out += s.token();
    }
    return out;
}

}  // namespace facelab
