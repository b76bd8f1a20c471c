#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "facelab/bench.h"
#include "facelab/svg.h"
#include "oracles.h"

#include <json.hpp>

#include <cmath>

using namespace facelab;

TEST_CASE("trial: two parallel segments, every trapezoid counted by hand") {
    std::vector<Segment> segs{Segment(0, {0, 0}, {4, 0}), Segment(1, {1, 1}, {3, 1})};
    std::vector<Point> pts{{2, Rat(1, 2)}, {2, 5}, {-3, 0}};
    auto rec = sample_trial(segs, pts, 2, 7);
    // Walls from (1, 1) and (3, 1) stop on the lower segment, so the region
    // below it is a single trapezoid. Only the strip between sees both.
    CHECK(rec.tau == 7);
    CHECK(rec.sum_n == 6);
    CHECK(rec.sum_binom_n == 1);
    CHECK(rec.sum_m == 3);
    CHECK(rec.sampled_intersections == 0);
    CHECK(rec.sum_sqrt_m_n == doctest::Approx(2.0 + 1.0));
}

TEST_CASE("trial: full and singleton samples") {
    std::mt19937_64 rng(4);
    for (int iter = 0; iter < 10; ++iter) {
        auto segs = oracle::random_segments(rng, 12, 20);
        std::vector<Point> pts;
        for (int i = 0; i < 6; ++i) pts.push_back(oracle::random_free_point(rng, segs, 20));
        auto full = sample_trial(segs, pts, 12, iter);
        CHECK(full.sampled_intersections == static_cast<long>(intersecting_pairs(segs).size()));
        CHECK(full.tau == static_cast<long>(oracle::trapezoid_count(segs)));
        CHECK(full.sum_m == 6);
        // Nothing crosses a trapezoid of the full decomposition.
        CHECK(full.sum_binom_n <= full.tau);
        auto one = sample_trial(segs, pts, 1, iter);
        // Four pieces around a slanted segment, two beside a vertical one.
        CHECK((one.tau == 4 || one.tau == 2));
        CHECK(one.sum_m == 6);
        CHECK(one.sampled_intersections == 0);
    }
    std::vector<Segment> segs{Segment(0, {0, 0}, {1, 1})};
    CHECK_THROWS_AS(sample_trial(segs, {}, 2, 1), InputError);
    CHECK_THROWS_AS(sample_trial(segs, {}, 0, 1), InputError);
}

TEST_CASE("sampling experiment matches the expected count within 20%") {
    Scenario sc;
    sc.kind = ScenarioKind::random;
    sc.n = 40;
    sc.box = 40;
    sc.max_length = 20;
    sc.k = 10;
    sc.seed = 17;
    auto inst = generate(sc);
    auto segs = inst.all_segments();
    auto s = sampling_experiment(segs, inst.points, 100, 3);
    REQUIRE(s.intersecting_pairs > 0);
    REQUIRE(s.r < s.n);
    CHECK(s.r == std::min<long>(40, (1600 + s.intersecting_pairs - 1) / s.intersecting_pairs));
    CHECK(s.points_conserved);
    CHECK(s.relative_error <= 0.20);
}

TEST_CASE("trial seeds are distinct and reproducible") {
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) seen.insert(trial_seed(9, i, j));
    CHECK(seen.size() == 400);
    CHECK(trial_seed(9, 3, 4) == trial_seed(9, 3, 4));
    CHECK(trial_seed(9, 3, 4) != trial_seed(10, 3, 4));
}

TEST_CASE("measure: every quick scenario runs clean with finite margins") {
    auto scs = suite_scenarios("quick");
    for (int i = 0; i < static_cast<int>(scs.size()); ++i) {
        auto r = measure(scs[i], i, 0, 11);
        INFO(kind_name(scs[i].kind) << ": " << r.error);
        CHECK(r.error.empty());
        CHECK_FALSE(r.invariant_violation);
        CHECK(r.margins.at("splitting") <= 1.0);
        CHECK(r.margins.at("coloring") <= 1.0);
        CHECK(r.measured.at("sum_n") >= 0);
        CHECK(static_cast<long>(r.face_complexities.size()) == static_cast<long>(r.measured.at("k")));
        for (const auto& [name, v] : r.margins) CHECK(std::isfinite(v));
    }
    CHECK_THROWS_AS(suite_scenarios("nope"), InputError);
}

TEST_CASE("an empty scenario list gives no reports") { CHECK(run({}, 3, 1).empty()); }

TEST_CASE("measure reports generator failures without an invariant flag") {
    Scenario sc;
    sc.kind = ScenarioKind::chords_long;
    sc.c = 3;
    auto r = measure(sc, 0, 0, 1);
    CHECK_FALSE(r.error.empty());
    CHECK_FALSE(r.invariant_violation);
}

TEST_CASE("frozen regressions: calibration sits at half the constant") {
    for (const auto& g : frozen_constant_regressions(5)) {
        INFO(g.name);
        REQUIRE(!g.calibration.empty());
        REQUIRE(!g.evaluation.empty());
        double worst = 0;
        for (const auto& p : g.calibration) worst = std::max(worst, p.margin);
        CHECK(worst == doctest::Approx(1.0 / g.headroom));
        CHECK(g.c > 0);
    }
}

TEST_CASE("bench JSON: schema and byte-identical reruns") {
    auto a = to_json(run_suite("quick", 1, 42));
    auto b = to_json(run_suite("quick", 1, 42));
    CHECK(a == b);
    auto doc = nlohmann::json::parse(a);
    CHECK(doc["schema"] == 1);
    CHECK(doc["reports"].size() == suite_scenarios("quick").size());
    CHECK(doc["regressions"].size() == 4);
    CHECK(doc["sampling"]["points_conserved"] == true);
    auto c = to_json(run_suite("quick", 1, 43));
    CHECK(a != c);
}

TEST_CASE("svg: deterministic, one line per segment, y flipped") {
    std::vector<Segment> sq{Segment(0, {0, 0}, {4, 0}), Segment(1, {4, 0}, {4, 4}), Segment(2, {4, 4}, {0, 4}),
                            Segment(3, {0, 4}, {0, 0})};
    auto arr = Arrangement::build(sq);
    FaceId inside = arr.face_containing({1, 1});
    SvgOptions opts;
    opts.faces = {inside, kUnboundedFace};
    opts.points = {{1, 1}};
    opts.path = {{1, 1}, {3, 3}};
    auto svg = render_svg(arr, opts);
    CHECK(svg == render_svg(arr, opts));
    auto count = [&](const std::string& needle) {
        std::size_t n = 0;
        for (auto p = svg.find(needle); p != std::string::npos; p = svg.find(needle, p + 1)) ++n;
        return n;
    };
    CHECK(count("<line ") == 4);
    CHECK(count("<polygon ") == 1);
    CHECK(count("<circle ") == 1);
    CHECK(count("<polyline ") == 1);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
    // Canvas is 4.4 units tall; (1, 1) sits 1.2 units above the bottom edge.
    double scale = 512 / 4.4;
    char expect[64];
    std::snprintf(expect, sizeof expect, "cy=\"%.3f\"", 512 - 1.2 * scale);
    CHECK(svg.find(expect) != std::string::npos);
}

TEST_CASE("svg: a face with a hole uses an even-odd path") {
    std::vector<Segment> segs{Segment(0, {0, 0}, {6, 0}), Segment(1, {6, 0}, {6, 6}), Segment(2, {6, 6}, {0, 6}),
                              Segment(3, {0, 6}, {0, 0}), Segment(4, {2, 3}, {4, 3})};
    auto arr = Arrangement::build(segs);
    SvgOptions opts;
    opts.faces = {arr.face_containing({1, 1})};
    auto svg = render_svg(arr, opts);
    CHECK(svg.find("fill-rule=\"evenodd\"") != std::string::npos);
    CHECK(svg.find(" Z M") != std::string::npos);
    auto empty = render_svg(Arrangement::build(std::vector<Segment>{}));
    CHECK(empty.find("<svg") == 0);
    CHECK(empty.find("<line") == std::string::npos);
}
