#include "facelab/generators.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace facelab {

long Rng::uniform(long lo, long hi) {
    if (hi < lo) throw InputError("empty sampling range");
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<long>(next());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return lo + static_cast<long>(x % range);
}

std::uint64_t Rng::derive(std::uint64_t salt) {
    // splitmix64 finalizer over the next draw mixed with the salt.
    std::uint64_t z = next() ^ (salt * 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

const std::pair<ScenarioKind, const char*> kKindNames[] = {
    {ScenarioKind::shifted_copies, "shifted_copies"},
    {ScenarioKind::grid, "grid"},
    {ScenarioKind::random, "random"},
    {ScenarioKind::polygons, "polygons"},
    {ScenarioKind::stabber, "stabber"},
    {ScenarioKind::chords_long, "chords_long"},
    {ScenarioKind::minkowski, "minkowski"},
};

void require(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}

bool off_all(const Point& p, const std::vector<Segment>& segs) {
    return std::none_of(segs.begin(), segs.end(), [&](const Segment& s) { return point_on_segment(p, s); });
}

bool overlaps_any(const Segment& s, const std::vector<Segment>& segs) {
    return std::any_of(segs.begin(), segs.end(), [&](const Segment& o) {
        return std::holds_alternative<Overlap>(intersect(s, o));
    });
}

// Marking points on a 1/8 lattice offset by 1/3, off every segment.
std::vector<Point> free_points(Rng& rng, const std::vector<Segment>& segs, int k, long lo, long hi) {
    std::vector<Point> out;
    while (static_cast<int>(out.size()) < k) {
        Rat x(8 * rng.uniform(lo, hi) + rng.uniform(0, 7), 8);
        Rat y(8 * rng.uniform(lo, hi) + rng.uniform(0, 7), 8);
        x.canonicalize();
        y.canonicalize();
        Point p(x + Rat(1, 3), y + Rat(1, 3));
        if (off_all(p, segs)) out.push_back(p);
    }
    return out;
}

std::vector<std::vector<Segment>> round_robin(const std::vector<Segment>& segs, int t) {
    std::vector<std::vector<Segment>> out(t);
    for (std::size_t i = 0; i < segs.size(); ++i) out[i % t].push_back(segs[i]);
    return out;
}

// Rational point on the circle of radius r from the tangent half-angle u.
Point circle_point(const Rat& u, long r) {
    Rat d = 1 + u * u;
    return Point(r * (1 - u * u) / d, r * 2 * u / d);
}

Rat squared_distance(const Point& a, const Point& b) {
    return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
}

Rat random_u(Rng& rng) {
    long num;
    do num = rng.uniform(-64, 64);
    while (num == 0);
    Rat u(num, 16);
    u.canonicalize();
    return u;
}

MarkedInstance shifted_copies(const Scenario& sc) {
    auto base = sc.base.empty() ? tangent_family(sc.t) : sc.base;
    require(sc.m >= 1, "shifted_copies needs m >= 1");
    require(!base.empty(), "shifted_copies needs a nonempty base");
    Rat a = strip_width(base);
    const int t = static_cast<int>(base.size());
    MarkedInstance inst;
    inst.collections.resize(t);
    Rat min_x = base[0].left().x, min_y = base[0].source().y;
    for (const auto& s : base) {
        min_x = std::min(min_x, s.left().x);
        min_y = std::min({min_y, s.source().y, s.target().y});
    }
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < sc.m; ++j)
            inst.collections[i].push_back(base[i].translated(a * j, 0, i * sc.m + j));
    inst.points.push_back(Point(min_x + Rat(1, 2), min_y - 1));
    return inst;
}

MarkedInstance grid(const Scenario& sc) {
    require(sc.h >= 2 && sc.v >= 2, "grid needs h >= 2 and v >= 2");
    MarkedInstance inst;
    inst.collections.resize(2);
    for (int i = 0; i < sc.h; ++i) inst.collections[0].emplace_back(i, Point(-1, i), Point(sc.v, i));
    for (int j = 0; j < sc.v; ++j) inst.collections[1].emplace_back(sc.h + j, Point(j, -1), Point(j, sc.h));
    std::vector<Point> cells;
    for (int i = 0; i + 1 < sc.h; ++i)
        for (int j = 0; j + 1 < sc.v; ++j) cells.push_back(Point(Rat(2 * j + 1, 2), Rat(2 * i + 1, 2)));
    int m = sc.m <= 0 ? static_cast<int>(cells.size()) : std::min<int>(sc.m, cells.size());
    if (m < static_cast<int>(cells.size())) {
        Rng rng(sc.seed);
        for (int i = 0; i < m; ++i) std::swap(cells[i], cells[rng.uniform(i, cells.size() - 1)]);
        cells.resize(m);
        std::sort(cells.begin(), cells.end());
    }
    inst.points = std::move(cells);
    return inst;
}

MarkedInstance random_instance(const Scenario& sc) {
    require(sc.n >= 1 && sc.t >= 1 && sc.k >= 0 && sc.box >= 2, "random needs n, t >= 1, k >= 0, box >= 2");
    Rng rng(sc.seed);
    const long reach = sc.max_length > 0 ? sc.max_length : sc.box;
    std::vector<Segment> segs;
    while (static_cast<int>(segs.size()) < sc.n) {
        Point a(rng.uniform(0, sc.box), rng.uniform(0, sc.box));
        Point b(a.x + rng.uniform(-reach, reach), a.y + rng.uniform(-reach, reach));
        if (b.x == a.x || b.x < 0 || b.y < 0 || b.x > sc.box || b.y > sc.box) continue;
        Segment s(static_cast<SegmentId>(segs.size()), a, b);
        if (!overlaps_any(s, segs)) segs.push_back(s);
    }
    MarkedInstance inst;
    inst.collections = round_robin(segs, sc.t);
    if (!sc.distinct_faces) {
        inst.points = free_points(rng, segs, sc.k, 0, sc.box - 1);
        return inst;
    }
    // One interior point per face, then k faces drawn without replacement.
    auto arr = Arrangement::build(segs);
    std::map<FaceId, Point> rep;
    for (const auto& t : vertical_decomposition(arr)) rep.try_emplace(t.containing_face, interior_point(arr, t));
    require(static_cast<int>(rep.size()) >= sc.k,
            "cannot place the marking points in distinct faces: only " + std::to_string(rep.size()) + " faces");
    std::vector<Point> reps;
    for (const auto& [f, p] : rep) reps.push_back(p);
    for (int i = 0; i < sc.k; ++i) std::swap(reps[i], reps[rng.uniform(i, reps.size() - 1)]);
    reps.resize(sc.k);
    inst.points = std::move(reps);
    return inst;
}

MarkedInstance polygons(const Scenario& sc) {
    require(sc.k >= 1, "polygons needs k >= 1");
    MarkedInstance inst;
    for (int i = 0; i < sc.k; ++i) {
        std::vector<Point> sq{{i, i}, {i + 2, i}, {i + 2, i + 2}, {i, i + 2}};
        inst.collections.push_back(loop_from_polygon(sq, 4 * i));
    }
    inst.points.push_back(Point(-1, -1));
    return inst;
}

MarkedInstance stabber(const Scenario& sc) {
    require(sc.n >= 2 && sc.t >= 1 && sc.k >= 0 && sc.box >= 2, "stabber needs n >= 2, t >= 1, box >= 2");
    Rng rng(sc.seed);
    std::vector<Segment> segs{Segment(0, Point(0, 0), Point(sc.box, 0))};
    while (static_cast<int>(segs.size()) < sc.n) {
        Point a(rng.uniform(0, sc.box), rng.uniform(1, sc.box));
        Point b(rng.uniform(0, sc.box), -rng.uniform(1, sc.box));
        Segment s(static_cast<SegmentId>(segs.size()), a, b);
        if (!overlaps_any(s, segs)) segs.push_back(s);
    }
    MarkedInstance inst;
    inst.collections = round_robin(segs, sc.t);
    // The first point sits below everything, in the unbounded face.
    if (sc.k > 0) inst.points.push_back(Point(-1, -sc.box - 1));
    auto rest = free_points(rng, segs, std::max(0, sc.k - 1), 0, sc.box - 1);
    inst.points.insert(inst.points.end(), rest.begin(), rest.end());
    return inst;
}

MarkedInstance chords_long(const Scenario& sc) {
    require(sc.c >= 0, "chord length ratio must be nonnegative");
    require(sc.c <= 2, "chord length ratio above 2 exceeds the diameter");
    require(sc.n >= 1 && sc.t >= 1 && sc.k >= 0 && sc.box >= 1, "chords_long needs n, t, box >= 1");
    Rng rng(sc.seed);
    const long r = sc.box;
    const Rat need = sc.c * sc.c * r * r;
    std::set<std::pair<Point, Point>, std::less<>> seen;
    std::vector<Segment> segs;
    while (static_cast<int>(segs.size()) < sc.n) {
        Point a = circle_point(random_u(rng), r);
        std::optional<Point> b;
        for (int tries = 0; tries < 64 && !b; ++tries) {
            Point q = circle_point(random_u(rng), r);
            if (q != a && squared_distance(a, q) >= need) b = q;
        }
        if (!b) b = Point(-a.x, -a.y);
        auto key = a < *b ? std::make_pair(a, *b) : std::make_pair(*b, a);
        if (!seen.insert(key).second) continue;
        segs.emplace_back(static_cast<SegmentId>(segs.size()), a, *b);
    }
    MarkedInstance inst;
    inst.collections = round_robin(segs, sc.t);
    // The first point sits near the centre, where long chords crowd.
    Point centre(Rat(1, 3), Rat(1, 7));
    if (sc.k > 0) inst.points.push_back(off_all(centre, segs) ? centre : free_points(rng, segs, 1, -1, 0)[0]);
    auto rest = free_points(rng, segs, std::max(0, sc.k - 1), -r, r - 1);
    inst.points.insert(inst.points.end(), rest.begin(), rest.end());
    return inst;
}

MarkedInstance minkowski(const Scenario& sc) {
    require(sc.n >= 3 && sc.k >= 1 && sc.box >= 1, "minkowski needs n >= 3 robot vertices and k >= 1 obstacles");
    require(sc.n <= 64, "minkowski supports at most 64 robot vertices");
    Rng rng(sc.seed);
    std::set<Rat> us;
    while (static_cast<int>(us.size()) < sc.n) {
        Rat u(rng.uniform(-32, 32), 8);
        u.canonicalize();
        us.insert(u);
    }
    std::vector<Point> robot;
    for (const auto& u : us) robot.push_back(circle_point(u, 2));
    std::set<Point, PointLess> obstacles;
    while (static_cast<int>(obstacles.size()) < sc.k)
        obstacles.insert(Point(rng.uniform(0, sc.box), rng.uniform(0, sc.box)));
    MarkedInstance inst;
    inst.collections =
        reflect_translate(robot, std::vector<Point>(obstacles.begin(), obstacles.end()), robot.front());
    inst.points.push_back(Point(-10, -10));
    return inst;
}

}  // namespace

std::string kind_name(ScenarioKind kind) {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    throw InvariantError("unnamed scenario kind");
}

ScenarioKind parse_kind(const std::string& name) {
    for (const auto& [k, n] : kKindNames)
        if (name == n) return k;
    throw InputError("unknown scenario kind '" + name + "'");
}

std::vector<Segment> tangent_family(int t) {
    require(t >= 1, "tangent family needs t >= 1");
    std::vector<Segment> out;
    for (int i = 0; i < t; ++i) {
        // y = -2 i x + i^2, tangent to y = -x^2 at x = i.
        auto y = [i](long x) { return -2L * i * x + static_cast<long>(i) * i; };
        out.emplace_back(i, Point(i - 1, y(i - 1)), Point(i + 1, y(i + 1)));
    }
    return out;
}

Rat strip_width(const std::vector<Segment>& base) {
    if (base.empty()) return 1;
    Rat lo = base[0].left().x, hi = base[0].right().x;
    for (const auto& s : base) {
        lo = std::min(lo, s.left().x);
        hi = std::max(hi, s.right().x);
    }
    return hi - lo + 1;
}

std::vector<Point> polygon_from_loop(const std::vector<Segment>& loop) {
    require(loop.size() >= 3, "a polygon needs at least three edges");
    std::vector<Point> out;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        require(loop[i].target() == loop[(i + 1) % loop.size()].source(),
                "segments do not form a closed loop at edge " + std::to_string(i));
        out.push_back(loop[i].source());
    }
    return out;
}

std::vector<Segment> loop_from_polygon(const std::vector<Point>& poly, SegmentId first_id) {
    std::vector<Segment> out;
    for (std::size_t i = 0; i < poly.size(); ++i)
        out.emplace_back(first_id + static_cast<SegmentId>(i), poly[i], poly[(i + 1) % poly.size()]);
    return out;
}

bool is_simple_polygon(const std::vector<Point>& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    std::set<Point, PointLess> distinct(poly.begin(), poly.end());
    if (distinct.size() != n) return false;
    auto edges = loop_from_polygon(poly);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto x = intersect(edges[i], edges[j]);
            bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (!adjacent) {
                if (!is_empty(x)) return false;
                continue;
            }
            const Point& shared = j == i + 1 ? poly[j] : poly[0];
            auto p = std::get_if<Point>(&x);
            if (!p || *p != shared) return false;
        }
    return true;
}

std::vector<std::vector<Segment>> reflect_translate(const std::vector<Point>& robot,
                                                    const std::vector<Point>& obstacles,
                                                    const Point& c) {
    if (!is_simple_polygon(robot)) throw InputError("robot polygon is not simple");
    const int n = static_cast<int>(robot.size());
    const int k = static_cast<int>(obstacles.size());
    std::vector<std::vector<Segment>> families(n);
    for (int i = 0; i < n; ++i) {
        const Point& a = robot[i];
        const Point& b = robot[(i + 1) % n];
        for (int j = 0; j < k; ++j) {
            const Point& q = obstacles[j];
            families[i].emplace_back(i * k + j, Point(q.x + c.x - a.x, q.y + c.y - a.y),
                                     Point(q.x + c.x - b.x, q.y + c.y - b.y));
        }
    }
    return families;
}

MarkedInstance generate(const Scenario& sc) {
    switch (sc.kind) {
        case ScenarioKind::shifted_copies: return shifted_copies(sc);
        case ScenarioKind::grid: return grid(sc);
        case ScenarioKind::random: return random_instance(sc);
        case ScenarioKind::polygons: return polygons(sc);
        case ScenarioKind::stabber: return stabber(sc);
        case ScenarioKind::chords_long: return chords_long(sc);
        case ScenarioKind::minkowski: return minkowski(sc);
    }
    throw InvariantError("unhandled scenario kind");
}

}  // namespace facelab
