#include "facelab/arrangement.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace facelab {

namespace {

// Supporting line y = slope * x + offset of a non-vertical segment.
struct Line {
    bool vertical = false;
    Rat slope;
    Rat offset;

    static Line of(const Point& a, const Point& b) {
        Line l;
        if (a.x == b.x) {
            l.vertical = true;
            return l;
        }
        l.slope = (b.y - a.y) / (b.x - a.x);
        l.offset = a.y - l.slope * a.x;
        return l;
    }
    Rat at(const Rat& x) const { return slope * x + offset; }
};

struct SweepEvent {
    Point point;
    std::vector<int> through;  // every input index containing the point
};

// Bentley-Ottmann sweep, left to right, events in lexicographic order.
// The status is a vector ordered by height just right of the current event;
// vertical segments sort above everything through the event point, so their
// upper neighbour is the next thing they can hit.
std::vector<SweepEvent> sweep(std::span<const Segment> segs) {
    std::vector<Line> lines;
    lines.reserve(segs.size());
    for (const auto& s : segs) lines.push_back(Line::of(s.source(), s.target()));

    std::map<Point, std::vector<int>, PointLess> queue;
    for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
        queue[segs[i].left()].push_back(i);
        queue[segs[i].right()];
    }

    std::vector<int> status;
    std::vector<SweepEvent> events;

    auto height = [&](int s, const Point& p) -> Rat {
        return lines[s].vertical ? p.y : lines[s].at(p.x);
    };
    // Order of segments through a common point, just right of it.
    auto fan_less = [&](int a, int b) {
        const Line& la = lines[a];
        const Line& lb = lines[b];
        if (la.vertical != lb.vertical) return lb.vertical;
        if (!la.vertical) {
            int c = cmp(la.slope, lb.slope);
            if (c != 0) return c < 0;
        }
        return a < b;
    };
    auto check = [&](int a, int b, const Point& p) {
        auto hit = intersect(segs[a], segs[b]);
        if (const Point* x = std::get_if<Point>(&hit); x && p < *x) queue[*x];
    };

    while (!queue.empty()) {
        auto node = queue.extract(queue.begin());
        Point p = std::move(node.key());
        std::vector<int> upper = std::move(node.mapped());

        auto lo = std::partition_point(status.begin(), status.end(),
                                       [&](int s) { return height(s, p) < p.y; });
        auto hi = std::partition_point(lo, status.end(),
                                       [&](int s) { return height(s, p) == p.y; });
        std::size_t pos = static_cast<std::size_t>(lo - status.begin());

        SweepEvent ev{p, {}};
        std::vector<int> reinsert;
        for (auto it = lo; it != hi; ++it) {
            ev.through.push_back(*it);
            if (segs[*it].right() != p) reinsert.push_back(*it);
        }
        for (int s : upper) {
            ev.through.push_back(s);
            reinsert.push_back(s);
        }
        std::sort(ev.through.begin(), ev.through.end());
        events.push_back(std::move(ev));

        status.erase(lo, hi);
        std::sort(reinsert.begin(), reinsert.end(), fan_less);
        status.insert(status.begin() + static_cast<std::ptrdiff_t>(pos), reinsert.begin(),
                      reinsert.end());

        if (reinsert.empty()) {
            if (pos > 0 && pos < status.size()) check(status[pos - 1], status[pos], p);
        } else {
            std::size_t last = pos + reinsert.size() - 1;
            if (pos > 0) check(status[pos - 1], status[pos], p);
            if (last + 1 < status.size()) check(status[last], status[last + 1], p);
        }
    }
    return events;
}

bool on_closed(const Point& a, const Point& b, const Point& p) {
    if ((p.x < a.x && p.x < b.x) || (a.x < p.x && b.x < p.x)) return false;
    if ((p.y < a.y && p.y < b.y) || (a.y < p.y && b.y < p.y)) return false;
    if (sgn(cross(a, b, p)) != 0) return false;
    const Point& lo = a < b ? a : b;
    const Point& hi = a < b ? b : a;
    return lo <= p && p <= hi;
}

// Counterclockwise angular order of direction vectors starting at +x.
bool angle_less(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by) {
    auto half = [](const Rat& x, const Rat& y) {
        int sy = sgn(y);
        return (sy > 0 || (sy == 0 && sgn(x) > 0)) ? 0 : 1;
    };
    int ha = half(ax, ay), hb = half(bx, by);
    if (ha != hb) return ha < hb;
    return sgn(ax * by - ay * bx) > 0;
}

}  // namespace

std::vector<std::vector<Point>> split_points(std::span<const Segment> segments,
                                             BuildMethod method) {
    std::vector<std::vector<Point>> out(segments.size());
    if (method == BuildMethod::sweep) {
        for (auto& ev : sweep(segments))
            for (int s : ev.through) out[s].push_back(ev.point);
        return out;
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
        auto& pts = out[i];
        pts.push_back(segments[i].source());
        pts.push_back(segments[i].target());
        for (std::size_t j = 0; j < segments.size(); ++j) {
            if (i == j) continue;
            auto hit = intersect(segments[i], segments[j]);
            if (const Point* p = std::get_if<Point>(&hit)) {
                pts.push_back(*p);
            } else if (const Overlap* o = std::get_if<Overlap>(&hit)) {
                pts.push_back(o->from);
                pts.push_back(o->to);
            }
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    }
    return out;
}

std::vector<std::pair<int, int>> intersecting_pairs(std::span<const Segment> segments,
                                                    BuildMethod method) {
    std::set<std::pair<int, int>> pairs;
    if (method == BuildMethod::sweep) {
        for (const auto& ev : sweep(segments))
            for (std::size_t a = 0; a < ev.through.size(); ++a)
                for (std::size_t b = a + 1; b < ev.through.size(); ++b)
                    pairs.emplace(ev.through[a], ev.through[b]);
    } else {
        for (int i = 0; i < static_cast<int>(segments.size()); ++i)
            for (int j = i + 1; j < static_cast<int>(segments.size()); ++j)
                if (segments_intersect(segments[i], segments[j])) pairs.emplace(i, j);
    }
    return {pairs.begin(), pairs.end()};
}

Arrangement Arrangement::build(std::span<const Segment> segments, BuildMethod method) {
    Arrangement arr;
    arr.segments_.assign(segments.begin(), segments.end());
    for (int i = 0; i < static_cast<int>(segments.size()); ++i) {
        if (!arr.segment_slot_.emplace(segments[i].id(), i).second)
            throw InputError("duplicate segment id " + std::to_string(segments[i].id()));
    }
    arr.assemble(split_points(segments, method));
    arr.link_vertices();
    arr.build_faces();
    return arr;
}

const Segment& Arrangement::segment(SegmentId id) const {
    auto it = segment_slot_.find(id);
    if (it == segment_slot_.end()) throw InputError("unknown segment id " + std::to_string(id));
    return segments_[it->second];
}

const std::vector<HalfEdgeId>& Arrangement::segment_chain(SegmentId id) const {
    auto it = segment_slot_.find(id);
    if (it == segment_slot_.end()) throw InputError("unknown segment id " + std::to_string(id));
    return chains_[it->second];
}

void Arrangement::assemble(const std::vector<std::vector<Point>>& points) {
    for (const auto& pts : points)
        for (const auto& p : pts) vertex_index_.emplace(p, 0);
    for (auto& [p, id] : vertex_index_) {
        id = static_cast<VertexId>(vertices_.size());
        vertices_.push_back(Vertex{p, {}});
    }

    std::map<std::pair<VertexId, VertexId>, EdgeId> edge_index;
    std::vector<std::vector<std::pair<VertexId, VertexId>>> pieces(segments_.size());
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& pts = points[i];
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            VertexId a = vertex_index_.at(pts[k]);
            VertexId b = vertex_index_.at(pts[k + 1]);
            pieces[i].emplace_back(a, b);
            auto [it, fresh] = edge_index.emplace(std::make_pair(a, b), 0);
            if (fresh) {
                it->second = static_cast<EdgeId>(edges_.size());
                edges_.push_back(Edge{});
            }
            edges_[it->second].owners.push_back(segments_[i].id());
        }
    }

    half_edges_.resize(2 * edges_.size());
    for (const auto& [key, e] : edge_index) {
        auto& owners = edges_[e].owners;
        std::sort(owners.begin(), owners.end());
        owners.erase(std::unique(owners.begin(), owners.end()), owners.end());
        const Segment& rep = segment(owners.front());
        bool rep_increasing = rep.source() < rep.target();
        HalfEdgeId h0 = 2 * e, h1 = 2 * e + 1;
        half_edges_[h0] = HalfEdge{key.first, h1, -1, -1, e, owners.front(), rep_increasing, -1};
        half_edges_[h1] = HalfEdge{key.second, h0, -1, -1, e, owners.front(), !rep_increasing, -1};
        edges_[e].half = h0;
    }

    chains_.resize(segments_.size());
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        auto& chain = chains_[i];
        for (auto [a, b] : pieces[i]) chain.push_back(2 * edge_index.at({a, b}));
        if (segments_[i].target() < segments_[i].source()) {
            std::reverse(chain.begin(), chain.end());
            for (auto& h : chain) h = half_edges_[h].twin;
        }
    }
}

void Arrangement::link_vertices() {
    for (HalfEdgeId h = 0; h < static_cast<HalfEdgeId>(half_edges_.size()); ++h)
        vertices_[half_edges_[h].origin].outgoing.push_back(h);
    for (auto& v : vertices_) {
        std::sort(v.outgoing.begin(), v.outgoing.end(), [&](HalfEdgeId a, HalfEdgeId b) {
            const Point& ta = target(a);
            const Point& tb = target(b);
            return angle_less(ta.x - v.point.x, ta.y - v.point.y, tb.x - v.point.x,
                              tb.y - v.point.y);
        });
    }
    for (HalfEdgeId e = 0; e < static_cast<HalfEdgeId>(half_edges_.size()); ++e) {
        HalfEdgeId t = half_edges_[e].twin;
        const auto& out = vertices_[half_edges_[t].origin].outgoing;
        auto idx = std::find(out.begin(), out.end(), t) - out.begin();
        auto deg = static_cast<std::ptrdiff_t>(out.size());
        HalfEdgeId nxt = out[(idx - 1 + deg) % deg];
        half_edges_[e].next = nxt;
        half_edges_[nxt].prev = e;
    }
}

void Arrangement::build_faces() {
    faces_.push_back(Face{kUnboundedFace, std::nullopt, {}, true});
    std::vector<int> positive;
    std::vector<VertexId> leftmost;
    for (HalfEdgeId h = 0; h < static_cast<HalfEdgeId>(half_edges_.size()); ++h) {
        if (half_edges_[h].cycle != -1) continue;
        int c = static_cast<int>(cycle_start_.size());
        cycle_start_.push_back(h);
        Rat area2 = 0;
        VertexId lo = half_edges_[h].origin;
        HalfEdgeId cur = h;
        do {
            half_edges_[cur].cycle = c;
            const Point& a = origin(cur);
            const Point& b = target(cur);
            area2 += a.x * b.y - b.x * a.y;
            if (a < vertices_[lo].point) lo = half_edges_[cur].origin;
            cur = half_edges_[cur].next;
        } while (cur != h);
        positive.push_back(sgn(area2) > 0);
        leftmost.push_back(lo);
    }

    cycle_face_.assign(cycle_start_.size(), -1);
    for (std::size_t c = 0; c < cycle_start_.size(); ++c) {
        if (!positive[c]) continue;
        FaceId f = static_cast<FaceId>(faces_.size());
        faces_.push_back(Face{f, cycle_start_[c], {}, false});
        cycle_face_[c] = f;
    }

    // A hole's face is whatever lies just left of its leftmost vertex; the
    // hit cycle is strictly further left, so the recursion terminates.
    auto resolve = [&](auto&& self, int c) -> FaceId {
        if (cycle_face_[c] != -1) return cycle_face_[c];
        auto hit = shoot_left(vertices_[leftmost[c]].point);
        FaceId f = hit ? self(self, half_edges_[*hit].cycle) : kUnboundedFace;
        cycle_face_[c] = f;
        return f;
    };
    for (std::size_t c = 0; c < cycle_start_.size(); ++c) {
        if (positive[c]) continue;
        FaceId f = resolve(resolve, static_cast<int>(c));
        faces_[f].inner_components.push_back(cycle_start_[c]);
    }
}

// Half-edge whose left side contains the open horizontal gap just left of p,
// or nullopt when the leftward ray escapes to infinity.
std::optional<HalfEdgeId> Arrangement::shoot_left(const Point& p) const {
    std::optional<Rat> best_x;
    bool best_is_vertex = false;
    int best = -1;
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
        HalfEdgeId h = edges_[e].half;
        VertexId ua = half_edges_[h].origin;
        VertexId ub = half_edges_[half_edges_[h].twin].origin;
        const Point& a = vertices_[ua].point;
        const Point& b = vertices_[ub].point;
        // a is the lexicographically smaller end, so a.x <= b.x.
        if (!(a.x < p.x)) continue;
        if (best_x && !(*best_x < b.x)) continue;
        Rat x;
        bool at_vertex = true;
        VertexId vid = -1;
        if (a.y == b.y) {
            if (a.y != p.y) continue;
            x = b.x;
            vid = ub;
        } else {
            const Point& lo = a.y < b.y ? a : b;
            const Point& hi = a.y < b.y ? b : a;
            if (p.y < lo.y || hi.y < p.y) continue;
            if (p.y == a.y) {
                x = a.x;
                vid = ua;
            } else if (p.y == b.y) {
                x = b.x;
                vid = ub;
            } else {
                x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                at_vertex = false;
            }
        }
        if (!(x < p.x)) continue;
        if (!best_x || *best_x < x) {
            best_x = x;
            best_is_vertex = at_vertex;
            best = at_vertex ? vid : e;
        }
    }
    if (!best_x) return std::nullopt;
    if (best_is_vertex) return vertices_[best].outgoing.back();
    HalfEdgeId h = edges_[best].half;
    return target(h).y < origin(h).y ? h : half_edges_[h].twin;
}

std::optional<VertexId> Arrangement::find_vertex(const Point& p) const {
    auto it = vertex_index_.find(p);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

Location Arrangement::locate(const Point& p) const {
    if (auto v = find_vertex(p)) return Location::vertex(*v);
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
        HalfEdgeId h = edges_[e].half;
        if (on_closed(origin(h), target(h), p)) return Location::edge(e);
    }
    return Location::face(face_containing(p));
}

FaceId Arrangement::face_containing(const Point& p) const {
    auto h = shoot_left(p);
    return h ? face_of(*h) : kUnboundedFace;
}

std::vector<std::vector<HalfEdgeId>> Arrangement::boundary_cycles(FaceId f) const {
    if (f < 0 || f >= static_cast<FaceId>(faces_.size()))
        throw InputError("invalid face id " + std::to_string(f));
    std::vector<HalfEdgeId> starts;
    if (faces_[f].outer_component) starts.push_back(*faces_[f].outer_component);
    starts.insert(starts.end(), faces_[f].inner_components.begin(),
                  faces_[f].inner_components.end());
    std::vector<std::vector<HalfEdgeId>> cycles;
    for (HalfEdgeId s : starts) {
        std::vector<HalfEdgeId> cyc;
        HalfEdgeId cur = s;
        do {
            cyc.push_back(cur);
            cur = half_edges_[cur].next;
        } while (cur != s);
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

FaceComplexity Arrangement::face_complexity(FaceId f) const {
    FaceComplexity fc;
    std::set<VertexId> verts;
    for (const auto& cyc : boundary_cycles(f)) {
        ++fc.components;
        fc.edge_sides += static_cast<int>(cyc.size());
        for (HalfEdgeId h : cyc) verts.insert(half_edges_[h].origin);
    }
    fc.vertices = static_cast<int>(verts.size());
    return fc;
}

long Arrangement::total_complexity() const {
    return static_cast<long>(vertices_.size() + edges_.size() + faces_.size());
}

int Arrangement::connected_components() const {
    std::vector<int> parent(vertices_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int count = static_cast<int>(vertices_.size());
    for (const auto& e : edges_) {
        int a = find(half_edges_[e.half].origin);
        int b = find(half_edges_[half_edges_[e.half].twin].origin);
        if (a != b) {
            parent[a] = b;
            --count;
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// Vertical decomposition

namespace {

Line edge_line(const Arrangement& arr, EdgeId e) {
    HalfEdgeId h = arr.edges()[e].half;
    return Line::of(arr.origin(h), arr.target(h));
}

// Position of p + (eps, eps^2) relative to the line of a non-vertical edge.
bool perturbed_above(const Line& l, const Point& p) {
    int c = cmp(p.y, l.at(p.x));
    if (c != 0) return c > 0;
    return sgn(l.slope) <= 0;
}

}  // namespace

std::optional<Rat> bottom_at(const Arrangement& arr, const Trapezoid& t, const Rat& x) {
    if (t.bottom_edge < 0) return std::nullopt;
    return edge_line(arr, t.bottom_edge).at(x);
}

std::optional<Rat> top_at(const Arrangement& arr, const Trapezoid& t, const Rat& x) {
    if (t.top_edge < 0) return std::nullopt;
    return edge_line(arr, t.top_edge).at(x);
}

std::vector<Trapezoid> vertical_decomposition(const Arrangement& arr) {
    // Distinct vertex abscissae with the vertex heights found there (vertices
    // are stored lexicographically, so both lists come out sorted).
    std::vector<Rat> xs;
    std::vector<std::vector<Rat>> ys_at;
    for (const auto& v : arr.vertices()) {
        if (xs.empty() || xs.back() != v.point.x) {
            xs.push_back(v.point.x);
            ys_at.emplace_back();
        }
        ys_at.back().push_back(v.point.y);
    }
    const std::size_t k = xs.size();
    auto x_index = [&](const Rat& x) {
        return static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
    };

    // Slab j lies between xs[j-1] and xs[j]; slabs 0 and k are unbounded.
    std::vector<std::vector<EdgeId>> active(k + 1);
    std::vector<Line> lines(arr.edges().size());
    for (EdgeId e = 0; e < static_cast<EdgeId>(arr.edges().size()); ++e) {
        HalfEdgeId h = arr.edges()[e].half;
        const Point& a = arr.origin(h);
        const Point& b = arr.target(h);
        if (a.x == b.x) continue;
        lines[e] = Line::of(a, b);
        std::size_t ia = x_index(a.x), ib = x_index(b.x);
        for (std::size_t j = ia + 1; j <= ib; ++j) active[j].push_back(e);
    }

    std::vector<Trapezoid> traps;
    auto owner = [&](EdgeId e) -> std::optional<SegmentId> {
        if (e < 0) return std::nullopt;
        return arr.edges()[e].owners.front();
    };
    std::map<std::pair<EdgeId, EdgeId>, int> open;
    for (std::size_t j = 0; j <= k; ++j) {
        auto& act = active[j];
        if (!act.empty()) {
            Rat mid = (xs[j - 1] + xs[j]) / 2;
            std::vector<std::pair<Rat, EdgeId>> keyed;
            keyed.reserve(act.size());
            for (EdgeId e : act) keyed.emplace_back(lines[e].at(mid), e);
            std::sort(keyed.begin(), keyed.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            for (std::size_t i = 0; i < act.size(); ++i) act[i] = keyed[i].second;
        }
        std::vector<std::pair<EdgeId, EdgeId>> cells;
        EdgeId below = -1;
        for (EdgeId e : act) {
            cells.emplace_back(below, e);
            below = e;
        }
        cells.emplace_back(below, -1);

        std::map<std::pair<EdgeId, EdgeId>, int> next_open;
        for (const auto& cell : cells) {
            int idx = -1;
            if (j > 0) {
                auto it = open.find(cell);
                if (it != open.end()) {
                    const Rat& wx = xs[j - 1];
                    const auto& ys = ys_at[j - 1];
                    auto from = ys.begin();
                    if (cell.first >= 0)
                        from = std::upper_bound(ys.begin(), ys.end(), lines[cell.first].at(wx));
                    bool walled = from != ys.end() &&
                                  (cell.second < 0 || *from < lines[cell.second].at(wx));
                    if (!walled) {
                        idx = it->second;
                        open.erase(it);
                    }
                }
            }
            if (idx < 0) {
                idx = static_cast<int>(traps.size());
                Trapezoid t;
                t.bottom_edge = cell.first;
                t.top_edge = cell.second;
                t.bottom = owner(cell.first);
                t.top = owner(cell.second);
                if (j > 0) t.left = xs[j - 1];
                t.containing_face = cell.first >= 0 ? arr.face_of(arr.edges()[cell.first].half)
                                                    : kUnboundedFace;
                traps.push_back(std::move(t));
            }
            next_open.emplace(cell, idx);
        }
        for (const auto& [cell, idx] : open) traps[idx].right = xs[j - 1];
        open = std::move(next_open);
    }
    return traps;
}

int locate_trapezoid(const Arrangement& arr, std::span<const Trapezoid> traps, const Point& p) {
    for (int i = 0; i < static_cast<int>(traps.size()); ++i) {
        const Trapezoid& t = traps[i];
        if (t.left && p.x < *t.left) continue;
        if (t.right && !(p.x < *t.right)) continue;
        if (t.bottom_edge >= 0 && !perturbed_above(edge_line(arr, t.bottom_edge), p)) continue;
        if (t.top_edge >= 0 && perturbed_above(edge_line(arr, t.top_edge), p)) continue;
        return i;
    }
    throw InvariantError("point not covered by the vertical decomposition");
}

bool segment_meets_interior(const Arrangement& arr, const Trapezoid& t, const Segment& s) {
    const Point& a = s.source();
    Rat dx = s.target().x - a.x;
    Rat dy = s.target().y - a.y;
    Rat lo = 0, hi = 1;
    // Each open side is alpha + beta * t > 0 along the segment.
    auto constrain = [&](const Rat& alpha, const Rat& beta) {
        int sb = sgn(beta);
        if (sb == 0) {
            if (sgn(alpha) <= 0) hi = -1;
            return;
        }
        Rat bound = -alpha / beta;
        if (sb > 0) {
            if (lo < bound) lo = bound;
        } else if (bound < hi) {
            hi = bound;
        }
    };
    if (t.left) constrain(a.x - *t.left, dx);
    if (t.right) constrain(*t.right - a.x, -dx);
    if (t.bottom_edge >= 0) {
        Line l = edge_line(arr, t.bottom_edge);
        constrain(a.y - l.slope * a.x - l.offset, dy - l.slope * dx);
    }
    if (t.top_edge >= 0) {
        Line l = edge_line(arr, t.top_edge);
        constrain(l.slope * a.x + l.offset - a.y, l.slope * dx - dy);
    }
    return lo < hi;
}

Point interior_point(const Arrangement& arr, const Trapezoid& t) {
    Rat x;
    if (t.left && t.right) x = (*t.left + *t.right) / 2;
    else if (t.left) x = *t.left + 1;
    else if (t.right) x = *t.right - 1;
    else x = 0;
    auto b = bottom_at(arr, t, x);
    auto u = top_at(arr, t, x);
    Rat y;
    if (b && u) y = (*b + *u) / 2;
    else if (b) y = *b + 1;
    else if (u) y = *u - 1;
    else y = 0;
    return Point(x, y);
}

}  // namespace facelab
