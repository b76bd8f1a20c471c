#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "facelab/motion_planning.h"
#include "oracles.h"

using namespace facelab;

namespace {

const std::vector<Point> kUnitSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};

// Every polyline edge avoids every forbidden segment, and sampled points
// along it lie in the goal's face of the full union.
void check_path(const PlanResult& r, const Point& s, const Point& e) {
    REQUIRE(r.reachable);
    REQUIRE(!r.path.empty());
    CHECK(r.path.front() == s);
    CHECK(r.path.back() == e);
    auto arr = Arrangement::build(r.forbidden);
    oracle::WindingLocator where(arr);
    auto goal_faces = where.faces(e);
    REQUIRE(goal_faces.size() == 1);
    for (std::size_t i = 0; i + 1 < r.path.size(); ++i) {
        const Point& a = r.path[i];
        const Point& b = r.path[i + 1];
        REQUIRE(a != b);
        Segment leg(-1, a, b);
        for (const auto& f : r.forbidden) CHECK_FALSE(oracle::intersects(leg, f));
        for (int j = 0; j <= 8; ++j) {
            Point q(a.x + (b.x - a.x) * Rat(j, 8), a.y + (b.y - a.y) * Rat(j, 8));
            CHECK(where.faces(q) == goal_faces);
        }
    }
}

// Pins along the boundary of [0, side]^2 at the given spacing.
std::vector<Point> fence(long side, const Rat& step) {
    std::vector<Point> pins;
    for (Rat t = 0; t < side; t += step) {
        pins.push_back({t, 0});
        pins.push_back({side, t});
        pins.push_back({side - t, Rat(side)});
        pins.push_back({0, side - t});
    }
    return pins;
}

}  // namespace

TEST_CASE("strictly_inside") {
    CHECK(strictly_inside(kUnitSquare, {Rat(1, 2), Rat(1, 2)}));
    CHECK_FALSE(strictly_inside(kUnitSquare, {1, Rat(1, 2)}));
    CHECK_FALSE(strictly_inside(kUnitSquare, {0, 0}));
    CHECK_FALSE(strictly_inside(kUnitSquare, {2, Rat(1, 2)}));
    std::vector<Point> cw(kUnitSquare.rbegin(), kUnitSquare.rend());
    CHECK(strictly_inside(cw, {Rat(1, 2), Rat(1, 2)}));
}

TEST_CASE("single pin: the complement of one square is connected") {
    PlanProblem prob{kUnitSquare, {{0, 0}}, {5, 5}, {-5, -5}, std::nullopt};
    auto r = plan(prob);
    CHECK(r.forbidden.size() == 4);
    check_path(r, prob.start, prob.goal);
    CHECK(r.face.complexity == FaceComplexity{4, 4, 1});
}

TEST_CASE("a closed fence of pins separates inside from outside") {
    PlanProblem prob{kUnitSquare, fence(10, Rat(1, 2)), {-5, 5}, {5, 5}, Point(Rat(1, 2), Rat(1, 2))};
    auto r = plan(prob);
    CHECK_FALSE(r.reachable);
    CHECK(r.path.empty());
    // The full union agrees.
    auto arr = Arrangement::build(r.forbidden);
    CHECK(arr.face_containing(prob.start) != arr.face_containing(prob.goal));

    // Opening a gate wider than the robot reconnects the two sides.
    std::vector<Point> gated;
    for (const auto& q : prob.obstacles)
        if (!(q.x == 0 && q.y >= 4 && q.y <= 6)) gated.push_back(q);
    prob.obstacles = gated;
    auto open = plan(prob);
    check_path(open, prob.start, prob.goal);
}

TEST_CASE("s equal to e gives a single-point path") {
    PlanProblem prob{kUnitSquare, {{0, 0}}, {3, 3}, {3, 3}, std::nullopt};
    auto r = plan(prob);
    CHECK(r.reachable);
    CHECK(r.path == std::vector<Point>{{3, 3}});
}

TEST_CASE("blocked placements are rejected") {
    PlanProblem inside{kUnitSquare, {{0, 0}}, {Rat(-1, 2), Rat(-1, 2)}, {5, 5}, std::nullopt};
    CHECK_THROWS_AS(plan(inside), InputError);
    PlanProblem boundary{kUnitSquare, {{0, 0}}, {5, 5}, {0, Rat(-1, 2)}, std::nullopt};
    CHECK_THROWS_AS(plan(boundary), InputError);
    PlanProblem bowtie{{{0, 0}, {2, 2}, {2, 0}, {0, 2}}, {{0, 0}}, {5, 5}, {6, 6}, std::nullopt};
    CHECK_THROWS_AS(plan(bowtie), InputError);
}

TEST_CASE("convex face: at most three path vertices") {
    std::vector<Segment> sq{Segment(0, {0, 0}, {4, 0}), Segment(1, {4, 0}, {4, 4}), Segment(2, {4, 4}, {0, 4}),
                            Segment(3, {0, 4}, {0, 0})};
    auto arr = Arrangement::build(sq);
    FaceId f = arr.face_containing({1, 1});
    auto path = extract_path(arr, f, {1, 1}, {3, 3});
    CHECK(path.size() >= 2);
    CHECK(path.size() <= 3);
}

TEST_CASE("L-shaped face: the path turns and stays inside") {
    // Outline of an L with a vertical obstacle segment hanging into it.
    std::vector<Point> ell{{0, 0}, {6, 0}, {6, 2}, {2, 2}, {2, 6}, {0, 6}};
    auto segs = loop_from_polygon(ell);
    segs.emplace_back(6, Point(1, 6), Point(1, 3));
    auto arr = Arrangement::build(segs);
    Point s(5, 1), e(Rat(3, 2), 5);
    FaceId f = arr.face_containing(s);
    REQUIRE(arr.face_containing(e) == f);
    auto path = extract_path(arr, f, s, e);
    CHECK(path.size() > 3);
    oracle::WindingLocator where(arr);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        Segment leg(-1, path[i], path[i + 1]);
        for (const auto& sg : segs) CHECK_FALSE(oracle::intersects(leg, sg));
        for (int j = 0; j <= 16; ++j) {
            Point q(path[i].x + (path[i + 1].x - path[i].x) * Rat(j, 16),
                    path[i].y + (path[i + 1].y - path[i].y) * Rat(j, 16));
            CHECK(where.faces(q) == std::vector<FaceId>{f});
        }
    }
}

TEST_CASE("random pins: verdict matches the union and paths are free") {
    std::mt19937_64 rng(21);
    std::vector<Point> tri{{0, 0}, {2, 0}, {1, 3}};
    int reachable = 0, unreachable = 0;
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<Point> pins;
        for (int i = 0; i < 12; ++i) pins.push_back({oracle::rand_rat(rng, 0, 12), oracle::rand_rat(rng, 0, 12)});
        auto families = reflect_translate(tri, pins, Point(1, 1));
        std::vector<Segment> all;
        for (const auto& f : families) all.insert(all.end(), f.begin(), f.end());
        // Free placements: off every segment and inside no copy.
        auto free_point = [&] {
            for (;;) {
                Point p = oracle::random_free_point(rng, all, 14);
                bool blocked = false;
                for (const auto& q : pins) {
                    std::vector<Point> copy;
                    for (const auto& v : tri) copy.push_back({q.x + 1 - v.x, q.y + 1 - v.y});
                    if (strictly_inside(copy, p)) blocked = true;
                }
                if (!blocked) return p;
            }
        };
        Point s = free_point(), e = free_point();
        auto r = plan(PlanProblem{tri, pins, s, e, Point(1, 1)});
        auto arr = Arrangement::build(all);
        bool same = arr.face_containing(s) == arr.face_containing(e);
        CHECK(r.reachable == same);
        if (r.reachable) {
            ++reachable;
            check_path(r, s, e);
        } else {
            ++unreachable;
        }
    }
    CHECK(reachable > 0);
}
