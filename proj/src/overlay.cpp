#include "facelab/overlay.h"

#include <algorithm>
#include <set>
#include <sstream>

namespace facelab {

std::vector<Segment> MarkedInstance::all_segments() const {
    std::vector<Segment> out;
    for (const auto& c : collections) out.insert(out.end(), c.begin(), c.end());
    return out;
}

std::size_t MarkedInstance::segment_count() const {
    std::size_t n = 0;
    for (const auto& c : collections) n += c.size();
    return n;
}

void MarkedInstance::validate() const {
    std::set<SegmentId> ids;
    for (const auto& c : collections)
        for (const auto& s : c)
            if (!ids.insert(s.id()).second)
                throw InputError("segment id " + std::to_string(s.id()) + " appears twice");
    for (const auto& p : points)
        for (const auto& c : collections)
            for (const auto& s : c)
                if (point_on_segment(p, s)) {
                    std::ostringstream os;
                    os << "marking point " << p << " lies on segment " << s.id();
                    throw InputError(os.str());
                }
}

// ---------------------------------------------------------------------------
// Envelopes

namespace {

bool same_piece(const std::optional<Segment>& a, const std::optional<Segment>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || a->id() == b->id();
}

// Appends the interval (from, to) carrying piece, coalescing equal neighbours.
void append(Envelope& env, const Rat& from, const Rat& to, const std::optional<Segment>& piece) {
    if (env.breakpoints.empty()) {
        env.breakpoints = {from, to};
        env.pieces = {piece};
        return;
    }
    if (same_piece(env.pieces.back(), piece)) {
        env.breakpoints.back() = to;
        return;
    }
    env.breakpoints.push_back(to);
    env.pieces.push_back(piece);
}

void trim_gaps(Envelope& env) {
    while (!env.pieces.empty() && !env.pieces.front()) {
        env.pieces.erase(env.pieces.begin());
        env.breakpoints.erase(env.breakpoints.begin());
    }
    while (!env.pieces.empty() && !env.pieces.back()) {
        env.pieces.pop_back();
        env.breakpoints.pop_back();
    }
    if (env.pieces.empty()) env.breakpoints.clear();
}

// Piece of env over the open interval starting at x; idx advances monotonically.
std::optional<Segment> piece_at(const Envelope& env, std::size_t& idx, const Rat& x) {
    const auto& bp = env.breakpoints;
    if (bp.empty() || x < bp.front() || !(x < bp.back())) return std::nullopt;
    while (idx + 1 < bp.size() && !(x < bp[idx + 1])) ++idx;
    return env.pieces[idx];
}

const Segment& lower_of(const Segment& a, const Segment& b, const Rat& x) {
    Rat ya = y_at(a, x), yb = y_at(b, x);
    if (ya < yb) return a;
    if (yb < ya) return b;
    return a.id() < b.id() ? a : b;
}

}  // namespace

Envelope merge_envelopes(const Envelope& a, const Envelope& b) {
    std::vector<Rat> xs;
    std::merge(a.breakpoints.begin(), a.breakpoints.end(), b.breakpoints.begin(),
               b.breakpoints.end(), std::back_inserter(xs));
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    Envelope out;
    std::size_t ia = 0, ib = 0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const Rat& l = xs[i];
        const Rat& r = xs[i + 1];
        auto fa = piece_at(a, ia, l);
        auto fb = piece_at(b, ib, l);
        if (!fa || !fb) {
            append(out, l, r, fa ? fa : fb);
            continue;
        }
        Rat dl = y_at(*fa, l) - y_at(*fb, l);
        Rat dr = y_at(*fa, r) - y_at(*fb, r);
        if (sgn(dl) * sgn(dr) < 0) {
            Rat x = l + (r - l) * dl / (dl - dr);
            append(out, l, x, lower_of(*fa, *fb, (l + x) / 2));
            append(out, x, r, lower_of(*fa, *fb, (x + r) / 2));
        } else {
            append(out, l, r, lower_of(*fa, *fb, (l + r) / 2));
        }
    }
    trim_gaps(out);
    return out;
}

Envelope lower_envelope(std::span<const Segment> segments) {
    if (segments.empty()) return {};
    if (segments.size() == 1) {
        const Segment& s = segments.front();
        if (s.is_vertical())
            throw InputError("vertical segment " + std::to_string(s.id()) + " has no envelope");
        Envelope e;
        e.breakpoints = {s.left().x, s.right().x};
        e.pieces = {s};
        return e;
    }
    std::size_t mid = segments.size() / 2;
    return merge_envelopes(lower_envelope(segments.first(mid)), lower_envelope(segments.subspan(mid)));
}

Envelope envelope_overlay(const std::vector<Envelope>& envelopes) {
    if (envelopes.empty()) return {};
    std::vector<Envelope> level = envelopes;
    while (level.size() > 1) {
        std::vector<Envelope> next;
        for (std::size_t i = 0; i + 1 < level.size(); i += 2)
            next.push_back(merge_envelopes(level[i], level[i + 1]));
        if (level.size() % 2) next.push_back(std::move(level.back()));
        level = std::move(next);
    }
    return level.front();
}

// ---------------------------------------------------------------------------
// Single face

FaceData face_data(const Arrangement& arr, FaceId f) {
    FaceData out;
    out.complexity = arr.face_complexity(f);
    std::set<Point, PointLess> verts;
    std::set<SegmentId> owners;
    for (const auto& cycle : arr.boundary_cycles(f))
        for (HalfEdgeId h : cycle) {
            verts.insert(arr.origin(h));
            const auto& e = arr.edges()[arr.half_edges()[h].edge];
            owners.insert(e.owners.begin(), e.owners.end());
        }
    out.vertices.assign(verts.begin(), verts.end());
    out.segments.assign(owners.begin(), owners.end());
    return out;
}

std::vector<Segment> closure_segments(const Arrangement& arr, FaceId f) {
    std::set<SegmentId> ids;
    for (const auto& cycle : arr.boundary_cycles(f))
        for (HalfEdgeId h : cycle) {
            const Vertex& v = arr.vertices()[arr.half_edges()[h].origin];
            for (HalfEdgeId g : v.outgoing) {
                const auto& e = arr.edges()[arr.half_edges()[g].edge];
                ids.insert(e.owners.begin(), e.owners.end());
            }
        }
    std::vector<Segment> out;
    out.reserve(ids.size());
    for (SegmentId id : ids) out.push_back(arr.segment(id));
    return out;
}

namespace {

void require_off_segments(const MarkedInstance& inst, const Point& p) {
    for (const auto& c : inst.collections)
        for (const auto& s : c)
            if (point_on_segment(p, s)) {
                std::ostringstream os;
                os << "point " << p << " lies on segment " << s.id();
                throw InputError(os.str());
            }
}

}  // namespace

SingleFaceResult single_face_overlay(const MarkedInstance& inst, const Point& p) {
    require_off_segments(inst, p);
    SingleFaceResult result;
    std::vector<std::vector<Segment>> level;
    long total = 0;
    for (const auto& coll : inst.collections) {
        auto arr = Arrangement::build(coll);
        FaceId f = arr.face_containing(p);
        total += arr.face_complexity(f).total();
        level.push_back(closure_segments(arr, f));
    }
    if (level.empty()) level.emplace_back();
    result.level_complexity.push_back(total);

    while (level.size() > 1) {
        std::vector<std::vector<Segment>> next;
        total = 0;
        for (std::size_t i = 0; i < level.size(); i += 2) {
            if (i + 1 == level.size()) {
                auto arr = Arrangement::build(level[i]);
                total += arr.face_complexity(arr.face_containing(p)).total();
                next.push_back(std::move(level[i]));
                continue;
            }
            std::vector<Segment> merged = std::move(level[i]);
            merged.insert(merged.end(), level[i + 1].begin(), level[i + 1].end());
            auto arr = Arrangement::build(merged);
            FaceId f = arr.face_containing(p);
            total += arr.face_complexity(f).total();
            next.push_back(closure_segments(arr, f));
        }
        level = std::move(next);
        result.level_complexity.push_back(total);
    }

    auto arr = Arrangement::build(level.front());
    result.face = face_data(arr, arr.face_containing(p));
    result.segments = std::move(level.front());
    return result;
}

FaceData single_face_oracle(const MarkedInstance& inst, const Point& p) {
    require_off_segments(inst, p);
    auto segs = inst.all_segments();
    auto arr = Arrangement::build(segs);
    return face_data(arr, arr.face_containing(p));
}

// ---------------------------------------------------------------------------
// Refinement

namespace {

// Overlay half-edges covering the sub-arrangement half-edge h, in walk order.
std::vector<HalfEdgeId> overlay_pieces(const Arrangement& sub, HalfEdgeId h, const Arrangement& all) {
    const auto& he = sub.half_edges()[h];
    const Point& u = sub.origin(h);
    const Point& v = sub.target(h);
    const auto& chain = all.segment_chain(he.owner);
    auto index_of = [&](const Point& q) -> std::size_t {
        for (std::size_t j = 0; j < chain.size(); ++j)
            if (all.origin(chain[j]) == q) return j;
        if (all.target(chain.back()) == q) return chain.size();
        throw InvariantError("sub-arrangement vertex missing from the overlay chain");
    };
    std::size_t iu = index_of(u), iv = index_of(v);
    std::vector<HalfEdgeId> out;
    if (iu < iv) {
        for (std::size_t j = iu; j < iv; ++j) out.push_back(chain[j]);
    } else {
        for (std::size_t j = iu; j > iv; --j) out.push_back(all.half_edges()[chain[j - 1]].twin);
    }
    return out;
}

struct Step {
    Point start;
    EdgeId edge;
    bool interior;
    std::optional<FaceId> label;
};

}  // namespace

Refinement refine(const MarkedInstance& inst) {
    inst.validate();
    Refinement out;
    out.k = static_cast<int>(inst.points.size());
    out.t = static_cast<int>(inst.collections.size());

    auto all_segs = inst.all_segments();
    auto all = Arrangement::build(all_segs);
    std::set<FaceId> marked_all;
    for (const auto& p : inst.points) marked_all.insert(all.face_containing(p));

    for (const auto& coll : inst.collections) {
        CollectionRefinement cr;
        auto sub = Arrangement::build(coll);
        std::set<FaceId> marked;
        for (const auto& p : inst.points) marked.insert(sub.face_containing(p));
        for (FaceId f : marked) cr.C += sub.face_complexity(f).total();

        std::set<Point, PointLess> splits;
        std::set<EdgeId> edges;
        std::map<EdgeId, std::set<Point, PointLess>> cuts;

        for (FaceId f : marked)
            for (const auto& cycle : sub.boundary_cycles(f)) {
                std::vector<Step> steps;
                for (HalfEdgeId h : cycle) {
                    const auto& he = sub.half_edges()[h];
                    edges.insert(he.edge);
                    const Vertex& v = sub.vertices()[he.origin];
                    std::set<SegmentId> through;
                    for (HalfEdgeId g : v.outgoing) {
                        const auto& owners = sub.edges()[sub.half_edges()[g].edge].owners;
                        through.insert(owners.begin(), owners.end());
                    }
                    if (through.size() >= 2) splits.insert(v.point);

                    for (HalfEdgeId g : overlay_pieces(sub, h, all)) {
                        FaceId lf = all.face_of(g);
                        std::optional<FaceId> label;
                        if (marked_all.count(lf)) label = lf;
                        steps.push_back({all.origin(g), he.edge, all.origin(g) != v.point, label});
                    }
                }
                std::optional<FaceId> last;
                for (auto it = steps.rbegin(); it != steps.rend() && !last; ++it) last = it->label;
                if (!last) continue;
                for (const auto& s : steps) {
                    if (!s.label) continue;
                    if (*s.label != *last) {
                        splits.insert(s.start);
                        if (s.interior) cuts[s.edge].insert(s.start);
                    }
                    last = s.label;
                }
            }

        for (EdgeId e : edges) {
            HalfEdgeId h = sub.edges()[e].half;
            SegmentId owner = sub.half_edges()[h].owner;
            std::vector<Point> pts{sub.origin(h)};
            if (auto it = cuts.find(e); it != cuts.end())
                pts.insert(pts.end(), it->second.begin(), it->second.end());
            pts.push_back(sub.target(h));
            for (std::size_t j = 0; j + 1 < pts.size(); ++j) cr.arcs.push_back({owner, pts[j], pts[j + 1]});
        }
        cr.split_points.assign(splits.begin(), splits.end());
        cr.L = static_cast<int>(cr.split_points.size());
        out.L += cr.L;
        out.C += cr.C;
        out.collections.push_back(std::move(cr));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Marked-face complexity

MarkedComplexity marked_faces_complexity(const MarkedInstance& inst) {
    inst.validate();
    MarkedComplexity out;
    auto all_segs = inst.all_segments();
    auto all = Arrangement::build(all_segs);
    std::set<FaceId> distinct;
    for (const auto& p : inst.points) {
        FaceId f = all.face_containing(p);
        out.per_point.push_back(all.face_complexity(f));
        if (distinct.insert(f).second) out.union_total += out.per_point.back().total();
    }
    out.distinct_faces = static_cast<int>(distinct.size());
    for (const auto& coll : inst.collections) {
        auto sub = Arrangement::build(coll);
        std::set<FaceId> marked;
        for (const auto& p : inst.points) marked.insert(sub.face_containing(p));
        long c = 0;
        for (FaceId f : marked) c += sub.face_complexity(f).total();
        out.per_collection.push_back(c);
        out.C += c;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coloring

Coloring smallest_last_coloring(std::span<const Segment> segments) {
    Coloring out;
    const int n = static_cast<int>(segments.size());
    std::vector<std::vector<int>> adj(n);
    for (auto [i, j] : intersecting_pairs(segments)) {
        adj[i].push_back(j);
        adj[j].push_back(i);
        ++out.intersecting_pairs;
    }

    std::vector<int> degree(n);
    std::set<std::pair<int, int>> queue;
    for (int i = 0; i < n; ++i) {
        degree[i] = static_cast<int>(adj[i].size());
        queue.insert({degree[i], i});
    }
    std::vector<bool> removed(n, false);
    std::vector<int> order;
    while (!queue.empty()) {
        auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        out.degeneracy = std::max(out.degeneracy, d);
        removed[v] = true;
        order.push_back(v);
        for (int w : adj[v]) {
            if (removed[w]) continue;
            queue.erase({degree[w], w});
            queue.insert({--degree[w], w});
        }
    }

    std::vector<int> color(n, -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::set<int> used;
        for (int w : adj[*it])
            if (color[w] >= 0) used.insert(color[w]);
        int c = 0;
        while (used.count(c)) ++c;
        color[*it] = c;
        out.colors = std::max(out.colors, c + 1);
    }
    for (int i = 0; i < n; ++i) out.color[segments[i].id()] = color[i];
    return out;
}

int coloring_bound(long intersecting_pairs) {
    int c = 1;
    while ((2L * c - 1) * (2L * c - 1) < 1 + 8 * intersecting_pairs) ++c;
    return c;
}

MarkedInstance instance_from_coloring(std::span<const Segment> segments, const Coloring& coloring,
                                      std::vector<Point> points) {
    MarkedInstance inst;
    inst.collections.resize(coloring.colors);
    for (const auto& s : segments) {
        auto it = coloring.color.find(s.id());
        if (it == coloring.color.end())
            throw InputError("segment " + std::to_string(s.id()) + " has no color");
        inst.collections[it->second].push_back(s);
    }
    inst.points = std::move(points);
    return inst;
}

}  // namespace facelab
