#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "facelab/generators.h"
#include "oracles.h"

#include <sstream>

using namespace facelab;

namespace {

std::string dump(const MarkedInstance& inst) {
    std::ostringstream os;
    for (const auto& c : inst.collections) {
        os << "collection\n";
        for (const auto& s : c) os << s.id() << ' ' << s.source() << ' ' << s.target() << '\n';
    }
    for (const auto& p : inst.points) os << p << '\n';
    return os.str();
}

std::set<std::pair<Point, Point>, std::less<>> undirected(const std::vector<Segment>& segs) {
    std::set<std::pair<Point, Point>, std::less<>> out;
    for (const auto& s : segs) out.insert({s.left(), s.right()});
    return out;
}

}  // namespace

TEST_CASE("rng is reproducible and in range") {
    Rng a(99), b(99);
    for (int i = 0; i < 1000; ++i) {
        long x = a.uniform(-3, 5);
        CHECK(x == b.uniform(-3, 5));
        CHECK(x >= -3);
        CHECK(x <= 5);
    }
    CHECK_THROWS_AS(a.uniform(2, 1), InputError);
    // First draws of the standard engine are fixed by the C++ standard.
    Rng c(5489);
    CHECK(c.next() == 14514284786278117030ULL);
}

TEST_CASE("every kind is deterministic under its seed") {
    for (auto kind : {ScenarioKind::shifted_copies, ScenarioKind::grid, ScenarioKind::random,
                      ScenarioKind::polygons, ScenarioKind::stabber, ScenarioKind::chords_long,
                      ScenarioKind::minkowski}) {
        Scenario sc;
        sc.kind = kind;
        sc.seed = 7;
        sc.m = 2;
        sc.k = 3;
        sc.n = kind == ScenarioKind::minkowski ? 5 : 15;
        CHECK(dump(generate(sc)) == dump(generate(sc)));
        CHECK(parse_kind(kind_name(kind)) == kind);
        CHECK_NOTHROW(generate(sc).validate());
    }
    Scenario a, b;
    a.seed = 1;
    b.seed = 2;
    CHECK(dump(generate(a)) != dump(generate(b)));
    CHECK_THROWS_AS(parse_kind("spiral"), InputError);
}

TEST_CASE("shifted copies of two crossing segments") {
    Scenario sc;
    sc.kind = ScenarioKind::shifted_copies;
    sc.m = 3;
    sc.base = {Segment(0, {0, 0}, {2, 2}), Segment(1, {0, 2}, {2, 0})};
    auto inst = generate(sc);
    REQUIRE(inst.collections.size() == 2);
    CHECK(strip_width(sc.base) == 3);
    for (const auto& c : inst.collections) {
        CHECK(c.size() == 3);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j) CHECK_FALSE(oracle::intersects(c[i], c[j]));
    }
    CHECK(inst.collections[0][2].source() == Point(6, 0));
    REQUIRE(inst.points.size() == 1);
    for (const auto& s : inst.all_segments()) {
        CHECK(inst.points[0].y < s.source().y);
        CHECK(inst.points[0].y < s.target().y);
    }
}

TEST_CASE("tangent family envelope uses every arc") {
    for (int t = 1; t <= 9; ++t) {
        auto base = tangent_family(t);
        auto env = lower_envelope(base);
        CHECK(env.pieces.size() == static_cast<std::size_t>(t));
        CHECK(env.breakpoints.size() == static_cast<std::size_t>(t + 1));
        for (int i = 0; i < t; ++i) CHECK(env.pieces[i]->id() == i);

        Scenario sc;
        sc.kind = ScenarioKind::shifted_copies;
        sc.t = t;
        sc.m = 4;
        auto inst = generate(sc);
        for (const auto& c : inst.collections)
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = i + 1; j < c.size(); ++j) CHECK_FALSE(oracle::intersects(c[i], c[j]));
    }
}

TEST_CASE("grid cells are quadrilaterals") {
    Scenario sc;
    sc.kind = ScenarioKind::grid;
    sc.m = 0;
    auto inst = generate(sc);
    CHECK(inst.points.size() == 4);
    auto mc = marked_faces_complexity(inst);
    CHECK(mc.distinct_faces == 4);
    for (const auto& fc : mc.per_point) CHECK(fc == FaceComplexity{4, 4, 1});

    sc.h = 5;
    sc.v = 6;
    sc.m = 7;
    auto some = generate(sc);
    CHECK(some.points.size() == 7);
    CHECK(std::set<Point, PointLess>(some.points.begin(), some.points.end()).size() == 7);
    sc.h = 1;
    CHECK_THROWS_AS(generate(sc), InputError);
}

TEST_CASE("random segments: lattice, no verticals, no overlaps, distinct faces") {
    Scenario sc;
    sc.kind = ScenarioKind::random;
    sc.n = 40;
    sc.t = 3;
    sc.k = 6;
    sc.box = 12;
    sc.max_length = 5;
    sc.distinct_faces = true;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        sc.seed = seed;
        auto inst = generate(sc);
        auto segs = inst.all_segments();
        CHECK(segs.size() == 40);
        CHECK(inst.collections.size() == 3);
        for (const auto& s : segs) {
            CHECK_FALSE(s.is_vertical());
            CHECK(abs(s.source().x - s.target().x) <= 5);
            CHECK(abs(s.source().y - s.target().y) <= 5);
        }
        for (std::size_t i = 0; i < segs.size(); ++i)
            for (std::size_t j = i + 1; j < segs.size(); ++j)
                CHECK_FALSE(std::holds_alternative<Overlap>(intersect(segs[i], segs[j])));
        CHECK(marked_faces_complexity(inst).distinct_faces == 6);
    }
}

TEST_CASE("two overlapping squares: hand count of the outer face") {
    Scenario sc;
    sc.kind = ScenarioKind::polygons;
    sc.k = 2;
    auto inst = generate(sc);
    REQUIRE(inst.collections.size() == 2);
    CHECK(inst.segment_count() == 8);
    // Outer boundary is an octagon: 8 sides and 8 vertices.
    CHECK(single_face_oracle(inst, inst.points[0]).complexity == FaceComplexity{8, 8, 1});
    CHECK(single_face_overlay(inst, inst.points[0]).face.complexity.total() == 16);
}

TEST_CASE("stabber segments all cross the distinguished one") {
    Scenario sc;
    sc.kind = ScenarioKind::stabber;
    sc.n = 30;
    sc.t = 1;
    auto inst = generate(sc);
    auto segs = inst.all_segments();
    REQUIRE(segs.size() == 30);
    const Segment& s0 = *std::find_if(segs.begin(), segs.end(), [](const Segment& s) { return s.id() == 0; });
    for (const auto& s : segs) CHECK(oracle::intersects(s, s0));
}

TEST_CASE("long chords lie on the circle and meet the length ratio") {
    Scenario sc;
    sc.kind = ScenarioKind::chords_long;
    sc.n = 25;
    sc.box = 10;
    for (Rat c : {Rat(0), Rat(1), Rat(3, 2), Rat(2)}) {
        sc.c = c;
        auto segs = generate(sc).all_segments();
        CHECK(segs.size() == 25);
        for (const auto& s : segs) {
            for (const Point* p : {&s.source(), &s.target()}) CHECK(p->x * p->x + p->y * p->y == 100);
            Rat len2 = (s.source().x - s.target().x) * (s.source().x - s.target().x) +
                       (s.source().y - s.target().y) * (s.source().y - s.target().y);
            CHECK(len2 >= c * c * 100);
        }
    }
    sc.c = Rat(201, 100);
    CHECK_THROWS_AS(generate(sc), InputError);
}

TEST_CASE("reflect_translate: square about one obstacle") {
    std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    auto fam = reflect_translate(square, {{0, 0}}, Point(Rat(1, 2), Rat(1, 2)));
    REQUIRE(fam.size() == 4);
    std::vector<Segment> all;
    for (const auto& f : fam) {
        CHECK(f.size() == 1);
        all.insert(all.end(), f.begin(), f.end());
    }
    std::set<Point, PointLess> corners;
    for (const auto& s : all) corners.insert(s.source());
    Rat h(1, 2);
    CHECK(corners == std::set<Point, PointLess>{{-h, -h}, {h, -h}, {h, h}, {-h, h}});
}

TEST_CASE("reflect_translate: triangle, two obstacles, rotation oracle") {
    std::vector<Point> tri{{0, 0}, {3, 0}, {1, 2}};
    std::vector<Point> pins{{10, 0}, {0, 10}};
    Point c(1, 1);
    auto fam = reflect_translate(tri, pins, c);
    REQUIRE(fam.size() == 3);
    for (const auto& f : fam) CHECK(f.size() == 2);

    // Rotate each vertex by 180 degrees about c with the rotation matrix,
    // then move c onto the pin.
    const long cos_pi = -1, sin_pi = 0;
    for (std::size_t j = 0; j < pins.size(); ++j)
        for (std::size_t i = 0; i < tri.size(); ++i) {
            Rat dx = tri[i].x - c.x, dy = tri[i].y - c.y;
            Point want(pins[j].x + cos_pi * dx - sin_pi * dy, pins[j].y + sin_pi * dx + cos_pi * dy);
            CHECK(fam[i][j].source() == want);
        }
    CHECK_THROWS_AS(reflect_translate({{0, 0}, {2, 2}, {2, 0}, {0, 2}}, pins, c), InputError);
    CHECK_THROWS_AS(reflect_translate({{0, 0}, {1, 1}, {2, 2}}, pins, c), InputError);
}

TEST_CASE("minkowski families equal the reflected robots") {
    Scenario sc;
    sc.kind = ScenarioKind::minkowski;
    sc.n = 6;
    sc.k = 4;
    sc.box = 30;
    auto inst = generate(sc);
    REQUIRE(inst.collections.size() == 6);
    std::vector<Segment> all;
    for (const auto& f : inst.collections) {
        CHECK(f.size() == 4);
        all.insert(all.end(), f.begin(), f.end());
        // Copies of one edge: every member is a translate of the first.
        for (const auto& s : f) {
            CHECK(s.target().x - s.source().x == f[0].target().x - f[0].source().x);
            CHECK(s.target().y - s.source().y == f[0].target().y - f[0].source().y);
        }
        // A family of disjoint translates has a linear-size arrangement.
        auto arr = Arrangement::build(f);
        CHECK(arr.total_complexity() <= 3L * static_cast<long>(f.size()) + 1);
    }
    // The j-th member of every family, in family order, closes up into the
    // j-th reflected robot, and each robot is a translate of the first.
    std::vector<Segment> direct;
    for (std::size_t j = 0; j < inst.collections[0].size(); ++j) {
        std::vector<Point> poly;
        for (std::size_t i = 0; i < inst.collections.size(); ++i) {
            const auto& s = inst.collections[i][j];
            CHECK(s.target() == inst.collections[(i + 1) % inst.collections.size()][j].source());
            poly.push_back(s.source());
        }
        CHECK(is_simple_polygon(poly));
        auto loop = loop_from_polygon(poly);
        direct.insert(direct.end(), loop.begin(), loop.end());
    }
    CHECK(undirected(direct) == undirected(all));
}

TEST_CASE("loops and simplicity") {
    std::vector<Point> sq{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    auto loop = loop_from_polygon(sq, 5);
    CHECK(loop[0].id() == 5);
    CHECK(polygon_from_loop(loop) == sq);
    std::swap(loop[1], loop[2]);
    CHECK_THROWS_AS(polygon_from_loop(loop), InputError);
    CHECK(is_simple_polygon(sq));
    CHECK_FALSE(is_simple_polygon({{0, 0}, {2, 2}, {2, 0}, {0, 2}}));
    CHECK_FALSE(is_simple_polygon({{0, 0}, {1, 0}}));
    CHECK_FALSE(is_simple_polygon({{0, 0}, {4, 0}, {4, 4}, {2, 0}}));
}
