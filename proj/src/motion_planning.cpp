#include "facelab/motion_planning.h"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace facelab {

bool strictly_inside(const std::vector<Point>& poly, const Point& p) {
    int winding = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % n];
        if (a != b && point_on_segment(p, Segment(0, a, b))) return false;
        if (a.y <= p.y) {
            if (b.y > p.y && orientation(a, b, p) == Orientation::counterclockwise) ++winding;
        } else if (b.y <= p.y && orientation(a, b, p) == Orientation::clockwise) {
            --winding;
        }
    }
    return winding != 0;
}

namespace {

std::string describe(const Point& p) {
    std::ostringstream os;
    os << p;
    return os.str();
}

void require_free(const std::vector<std::vector<Point>>& copies, const std::vector<Segment>& forbidden,
                  const Point& p, const char* role) {
    for (std::size_t j = 0; j < copies.size(); ++j)
        if (strictly_inside(copies[j], p))
            throw InputError(std::string(role) + " placement " + describe(p) + " collides with obstacle " +
                             std::to_string(j));
    for (const auto& s : forbidden)
        if (point_on_segment(p, s))
            throw InputError(std::string(role) + " placement " + describe(p) +
                             " touches the forbidden region boundary (segment " + std::to_string(s.id()) + ")");
}

// What blocks passage through the vertical line x = const.
struct Wall {
    std::vector<Rat> points;
    std::vector<std::pair<Rat, Rat>> spans;

    bool blocked(const Rat& y) const {
        if (std::binary_search(points.begin(), points.end(), y)) return true;
        return std::any_of(spans.begin(), spans.end(),
                           [&](const auto& s) { return s.first <= y && y <= s.second; });
    }
};

// A free height strictly between lo and hi (nullopt = infinite) on the wall.
std::optional<Rat> opening(const Wall& wall, const std::optional<Rat>& lo, const std::optional<Rat>& hi) {
    if (lo && hi && !(*lo < *hi)) return std::nullopt;
    std::vector<Rat> cuts;
    auto inside = [&](const Rat& y) { return (!lo || *lo < y) && (!hi || y < *hi); };
    for (const auto& y : wall.points)
        if (inside(y)) cuts.push_back(y);
    for (const auto& [a, b] : wall.spans) {
        if (inside(a)) cuts.push_back(a);
        if (inside(b)) cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<std::optional<Rat>> ends{lo};
    for (const auto& c : cuts) ends.push_back(c);
    ends.push_back(hi);
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
        const auto& a = ends[i];
        const auto& b = ends[i + 1];
        Rat y = a && b ? (*a + *b) / 2 : a ? *a + 1 : b ? *b - 1 : Rat(0);
        if (!wall.blocked(y)) return y;
    }
    return std::nullopt;
}

std::optional<Rat> max_opt(const std::optional<Rat>& a, const std::optional<Rat>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::max(*a, *b);
}

std::optional<Rat> min_opt(const std::optional<Rat>& a, const std::optional<Rat>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

}  // namespace

std::vector<Point> extract_path(const Arrangement& arr, FaceId f, const Point& s, const Point& e) {
    if (s == e) return {s};
    auto traps = vertical_decomposition(arr);
    const int ts = locate_trapezoid(arr, traps, s);
    const int te = locate_trapezoid(arr, traps, e);
    if (traps[ts].containing_face != f || traps[te].containing_face != f)
        throw InvariantError("path endpoints are not in the requested face");

    std::map<Rat, Wall> walls;
    for (const auto& v : arr.vertices()) walls[v.point.x].points.push_back(v.point.y);
    for (const auto& ed : arr.edges()) {
        const Point& a = arr.origin(ed.half);
        const Point& b = arr.target(ed.half);
        if (a.x == b.x) walls[a.x].spans.emplace_back(std::min(a.y, b.y), std::max(a.y, b.y));
    }
    for (auto& [x, w] : walls) std::sort(w.points.begin(), w.points.end());

    std::map<Rat, std::vector<int>> ending, starting;
    for (int i = 0; i < static_cast<int>(traps.size()); ++i) {
        if (traps[i].containing_face != f) continue;
        if (traps[i].right) ending[*traps[i].right].push_back(i);
        if (traps[i].left) starting[*traps[i].left].push_back(i);
    }

    struct Link {
        int to;
        Point via;
    };
    std::vector<std::vector<Link>> adj(traps.size());
    for (const auto& [x, left] : ending) {
        auto it = starting.find(x);
        if (it == starting.end()) continue;
        const Wall& wall = walls[x];
        for (int a : left)
            for (int b : it->second) {
                auto lo = max_opt(bottom_at(arr, traps[a], x), bottom_at(arr, traps[b], x));
                auto hi = min_opt(top_at(arr, traps[a], x), top_at(arr, traps[b], x));
                if (lo && hi && !(*lo < *hi)) continue;
                if (auto y = opening(wall, lo, hi)) {
                    adj[a].push_back({b, Point(x, *y)});
                    adj[b].push_back({a, Point(x, *y)});
                }
            }
    }

    std::vector<int> parent(traps.size(), -2);
    std::vector<Point> via(traps.size());
    std::deque<int> queue{ts};
    parent[ts] = -1;
    while (!queue.empty() && parent[te] == -2) {
        int u = queue.front();
        queue.pop_front();
        for (const auto& l : adj[u])
            if (parent[l.to] == -2) {
                parent[l.to] = u;
                via[l.to] = l.via;
                queue.push_back(l.to);
            }
    }
    if (parent[te] == -2) throw InvariantError("trapezoids of one face are not connected");

    std::vector<Point> rev{e};
    for (int u = te; u != -1; u = parent[u]) {
        rev.push_back(interior_point(arr, traps[u]));
        if (parent[u] >= 0) rev.push_back(via[u]);
    }
    rev.push_back(s);
    std::vector<Point> path;
    for (auto it = rev.rbegin(); it != rev.rend(); ++it)
        if (path.empty() || path.back() != *it) path.push_back(*it);
    return path;
}

PlanResult plan(const PlanProblem& prob) {
    const Point c = prob.reference ? *prob.reference : (prob.robot.empty() ? Point() : prob.robot.front());
    auto families = reflect_translate(prob.robot, prob.obstacles, c);

    PlanResult out;
    for (const auto& f : families) out.forbidden.insert(out.forbidden.end(), f.begin(), f.end());
    std::vector<std::vector<Point>> copies;
    for (const auto& q : prob.obstacles) {
        std::vector<Point> poly;
        for (const auto& v : prob.robot) poly.push_back(Point(q.x + c.x - v.x, q.y + c.y - v.y));
        copies.push_back(std::move(poly));
    }
    require_free(copies, out.forbidden, prob.start, "start");
    require_free(copies, out.forbidden, prob.goal, "goal");

    MarkedInstance inst{families, {prob.goal}};
    auto face = single_face_overlay(inst, prob.goal);
    out.face = face.face;
    auto arr = Arrangement::build(face.segments);
    FaceId fe = arr.face_containing(prob.goal);
    if (arr.face_containing(prob.start) != fe) return out;
    out.reachable = true;
    out.path = extract_path(arr, fe, prob.start, prob.goal);
    return out;
}

}  // namespace facelab
