#include "facelab/bench.h"

#include "facelab/ds_seq.h"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

namespace facelab {

namespace {

using json = nlohmann::json;

double ratio(double measured, double bound) { return bound > 0 ? measured / bound : 0.0; }

double alpha(long n) { return static_cast<double>(inverse_ackermann(static_cast<std::uint64_t>(std::max(1L, n)))); }

int sample_size(int n, long pairs) {
    if (pairs <= 0) return n;
    long r = (static_cast<long>(n) * n + pairs - 1) / pairs;
    return static_cast<int>(std::clamp<long>(r, 1, n));
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, int index, int trial) {
    Rng rng(seed);
    return rng.derive((static_cast<std::uint64_t>(index) << 32) ^ static_cast<std::uint64_t>(trial));
}

SamplingRecord sample_trial(std::span<const Segment> segments, std::span<const Point> points, int r,
                                   std::uint64_t seed) {
    const int n = static_cast<int>(segments.size());
    if (r < 1 || r > n) throw InputError("sample size must lie in [1, n]");
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    Rng rng(seed);
    for (int i = 0; i < r; ++i) std::swap(idx[i], idx[rng.uniform(i, n - 1)]);
    std::vector<Segment> sample;
    for (int i = 0; i < r; ++i) sample.push_back(segments[idx[i]]);

    SamplingRecord rec;
    rec.r = r;
    rec.sampled_intersections = static_cast<long>(intersecting_pairs(sample).size());
    auto arr = Arrangement::build(sample);
    auto traps = vertical_decomposition(arr);
    rec.tau = static_cast<long>(traps.size());

    std::vector<long> m_i(traps.size(), 0);
    for (const auto& p : points) ++m_i[locate_trapezoid(arr, traps, p)];
    for (std::size_t i = 0; i < traps.size(); ++i) {
        const auto& t = traps[i];
        long ni = 0;
        for (const auto& s : segments) {
            bool bounds = (t.top && *t.top == s.id()) || (t.bottom && *t.bottom == s.id());
            if (bounds || segment_meets_interior(arr, t, s)) ++ni;
        }
        rec.sum_n += ni;
        rec.sum_binom_n += ni * (ni - 1) / 2;
        rec.sum_m += m_i[i];
        rec.sum_sqrt_m_n += std::sqrt(static_cast<double>(m_i[i])) * static_cast<double>(ni);
    }
    return rec;
}

SamplingSummary sampling_experiment(std::span<const Segment> segments, std::span<const Point> points, int trials,
                                    std::uint64_t seed) {
    SamplingSummary out;
    out.n = static_cast<int>(segments.size());
    out.trials = trials;
    if (out.n == 0 || trials <= 0) return out;
    out.intersecting_pairs = static_cast<long>(intersecting_pairs(segments).size());
    out.r = sample_size(out.n, out.intersecting_pairs);
    double total = 0;
    for (int i = 0; i < trials; ++i) {
        auto rec = sample_trial(segments, points, out.r, trial_seed(seed, 0, i));
        total += static_cast<double>(rec.sampled_intersections);
        if (rec.sum_m != static_cast<long>(points.size())) out.points_conserved = false;
    }
    out.mean_sampled = total / trials;
    if (out.n > 1)
        out.expected_sampled = static_cast<double>(out.intersecting_pairs) * out.r * (out.r - 1) /
                               (static_cast<double>(out.n) * (out.n - 1));
    out.relative_error = out.expected_sampled > 0
                             ? std::abs(out.mean_sampled - out.expected_sampled) / out.expected_sampled
                             : std::abs(out.mean_sampled);
    return out;
}

Report measure(const Scenario& sc, int index, int trial, std::uint64_t seed) {
    Report rep;
    rep.index = index;
    rep.trial = trial;
    rep.seed = trial_seed(seed, index, trial);
    rep.scenario = sc;
    rep.scenario.seed = rep.seed;
    try {
        auto inst = generate(rep.scenario);
        auto segs = inst.all_segments();
        const long n = static_cast<long>(segs.size());
        const long t = static_cast<long>(inst.collections.size());
        const long k = static_cast<long>(inst.points.size());
        auto arr = Arrangement::build(segs);
        auto pairs = intersecting_pairs(segs);
        const long w_pairs = static_cast<long>(pairs.size());

        auto mc = marked_faces_complexity(inst);
        for (const auto& fc : mc.per_point) rep.face_complexities.push_back(fc.total());
        const long m = mc.distinct_faces;

        auto ref = refine(inst);
        if (ref.L > ref.splitting_bound()) throw InvariantError("splitting number exceeds 2kt + 2C");
        for (const auto& cr : ref.collections)
            if (static_cast<long>(cr.arcs.size()) > 2L * cr.L + 2 * cr.C)
                throw InvariantError("refinement larger than 2 L_i + 2 C_i");

        long single = 0, c_point = 0;
        if (k > 0) {
            auto sf = single_face_overlay(inst, inst.points.front());
            auto oracle = single_face_oracle(inst, inst.points.front());
            if (!(sf.face.complexity == oracle.complexity) || sf.face.vertices != oracle.vertices)
                throw InvariantError("merged face differs from the union face");
            single = sf.face.complexity.total();
            c_point = sf.level_complexity.front();
        }

        auto col = smallest_last_coloring(segs);
        for (auto [i, j] : pairs)
            if (col.color.at(segs[i].id()) == col.color.at(segs[j].id()))
                throw InvariantError("coloring assigns one color to intersecting segments");

        SamplingRecord rec;
        if (n > 0) {
            rec = sample_trial(segs, inst.points, sample_size(static_cast<int>(n), w_pairs),
                                      Rng(rep.seed).derive(1));
            if (rec.sum_m != k) throw InvariantError("trapezoid point counts do not sum to m");
        }

        auto& me = rep.measured;
        me["n"] = n;
        me["t"] = t;
        me["k"] = k;
        me["m"] = m;
        me["C"] = mc.C;
        me["L"] = ref.L;
        me["w"] = arr.total_complexity();
        me["w_pairs"] = w_pairs;
        me["marked_total"] = mc.union_total;
        me["single_face"] = single;
        me["C_point"] = c_point;
        me["colors"] = col.colors;
        me["degeneracy"] = col.degeneracy;
        me["r"] = rec.r;
        me["tau"] = rec.tau;
        me["sum_n"] = rec.sum_n;
        me["sum_sqrt_m_n"] = rec.sum_sqrt_m_n;
        me["sampled_intersections"] = rec.sampled_intersections;

        const double at = alpha(t), an = alpha(n);
        auto& b = rep.bounds;
        b["splitting"] = 2.0 * k * t + 2.0 * mc.C;
        b["single_face"] = c_point * at;
        b["combination"] = at * mc.C + k * t * at;
        b["many_faces"] = std::sqrt(static_cast<double>(m)) * n * an;
        b["sparse"] = (n + std::sqrt(static_cast<double>(m) * static_cast<double>(me["w"]))) * an;
        b["lines_many_faces"] = (n + std::pow(static_cast<double>(n), 2.0 / 3) * std::pow(static_cast<double>(m), 2.0 / 3)) * an;
        b["coloring"] = coloring_bound(w_pairs);

        auto& mg = rep.margins;
        mg["splitting"] = ratio(ref.L, b["splitting"]);
        mg["single_face"] = ratio(single, b["single_face"]);
        mg["combination"] = ratio(mc.union_total, b["combination"]);
        mg["many_faces"] = ratio(mc.union_total, b["many_faces"]);
        mg["sparse"] = ratio(mc.union_total, b["sparse"]);
        mg["lines_many_faces"] = ratio(mc.union_total, b["lines_many_faces"]);
        mg["coloring"] = ratio(col.colors, b["coloring"]);
    } catch (const InvariantError& e) {
        rep.error = e.what();
        rep.invariant_violation = true;
    } catch (const std::exception& e) {
        rep.error = e.what();
    }
    return rep;
}

std::vector<Report> run(const std::vector<Scenario>& scenarios, int trials, std::uint64_t seed) {
    std::vector<Report> out;
    for (int i = 0; i < static_cast<int>(scenarios.size()); ++i)
        for (int j = 0; j < trials; ++j) out.push_back(measure(scenarios[i], i, j, seed));
    return out;
}

double Regression::max_margin() const {
    double worst = 0;
    for (const auto& p : evaluation) worst = std::max(worst, p.margin);
    return worst;
}

namespace {

struct Sample {
    std::string label;
    double measured;
    double formula;
};

Regression fit(std::string name, std::string formula, const std::vector<Sample>& calib,
               const std::vector<Sample>& eval) {
    Regression reg;
    reg.name = std::move(name);
    reg.formula = std::move(formula);
    double worst = 0;
    for (const auto& s : calib) {
        double r = ratio(s.measured, s.formula);
        worst = std::max(worst, r);
        reg.calibration.push_back({s.label, s.measured, s.formula, r});
    }
    reg.c = reg.headroom * worst;
    for (const auto& s : eval)
        reg.evaluation.push_back({s.label, s.measured, s.formula, ratio(s.measured, reg.c * s.formula)});
    for (auto& p : reg.calibration) p.margin = ratio(p.measured, reg.c * p.formula);
    return reg;
}

Sample shifted_sample(int t, int m) {
    Scenario sc;
    sc.kind = ScenarioKind::shifted_copies;
    sc.t = t;
    sc.m = m;
    auto inst = generate(sc);
    auto sf = single_face_overlay(inst, inst.points.front());
    return {"t=" + std::to_string(t) + " m=" + std::to_string(m),
            static_cast<double>(sf.face.complexity.total()),
            static_cast<double>(sf.level_complexity.front()) * alpha(t)};
}

Sample many_faces_sample(int n, int m, std::uint64_t seed) {
    Scenario sc;
    sc.kind = ScenarioKind::random;
    sc.n = n;
    sc.t = 1;
    sc.k = m;
    sc.box = 30;
    sc.distinct_faces = true;
    // Sparse draws can have fewer than m faces; those seeds are skipped.
    MarkedInstance inst;
    for (int attempt = 0;; ++attempt) {
        sc.seed = Rng(seed).derive(attempt);
        try {
            inst = generate(sc);
            break;
        } catch (const InputError&) {
            if (attempt == 50) throw;
        }
    }
    auto mc = marked_faces_complexity(inst);
    return {"n=" + std::to_string(n) + " m=" + std::to_string(m), static_cast<double>(mc.union_total),
            std::sqrt(static_cast<double>(m)) * lambda3_hat(static_cast<std::uint64_t>(n))};
}

Sample linear_face_sample(ScenarioKind kind, int n, std::uint64_t seed) {
    Scenario sc;
    sc.kind = kind;
    sc.n = n;
    sc.t = 1;
    sc.k = 1;
    sc.box = 40;
    sc.seed = seed;
    auto inst = generate(sc);
    auto face = single_face_oracle(inst, inst.points.front());
    return {"n=" + std::to_string(n) + " seed=" + std::to_string(seed % 1000),
            static_cast<double>(face.complexity.total()), static_cast<double>(n)};
}

}  // namespace

std::vector<Regression> frozen_constant_regressions(std::uint64_t seed) {
    std::vector<Regression> out;
    {
        std::vector<Sample> calib, eval;
        for (int t : {2, 3})
            for (int m : {2, 3}) calib.push_back(shifted_sample(t, m));
        for (int t : {2, 4, 8})
            for (int m : {4, 8, 16}) eval.push_back(shifted_sample(t, m));
        out.push_back(fit("shifted_copies", "C * lambda3(t) / t", calib, eval));
    }
    Rng rng(seed);
    {
        std::vector<Sample> calib, eval;
        for (int n : {10, 15})
            for (int m : {1, 2, 4})
                for (int rep = 0; rep < 2; ++rep) calib.push_back(many_faces_sample(n, m, rng.derive(1)));
        for (int n : {20, 30, 40})
            for (int m : {1, 4, 9, 16}) eval.push_back(many_faces_sample(n, m, rng.derive(2)));
        out.push_back(fit("many_faces", "sqrt(m) * lambda3(n)", calib, eval));
    }
    for (auto [kind, name] : {std::pair{ScenarioKind::stabber, "stabber"}, std::pair{ScenarioKind::chords_long, "chords_long"}}) {
        std::vector<Sample> calib, eval;
        for (int n : {6, 8, 10})
            for (int rep = 0; rep < 3; ++rep) calib.push_back(linear_face_sample(kind, n, rng.derive(3)));
        for (int n : {20, 40, 60})
            for (int rep = 0; rep < 2; ++rep) eval.push_back(linear_face_sample(kind, n, rng.derive(4)));
        out.push_back(fit(name, "n", calib, eval));
    }
    return out;
}

std::vector<Scenario> suite_scenarios(const std::string& suite) {
    std::vector<Scenario> out;
    auto add = [&](ScenarioKind kind, std::function<void(Scenario&)> set) {
        Scenario sc;
        sc.kind = kind;
        set(sc);
        out.push_back(sc);
    };
    if (suite == "quick") {
        add(ScenarioKind::shifted_copies, [](Scenario& s) { s.t = 3; s.m = 3; });
        add(ScenarioKind::grid, [](Scenario& s) { s.h = 4; s.v = 4; s.m = 0; });
        add(ScenarioKind::random, [](Scenario& s) { s.n = 15; s.t = 2; s.k = 3; s.box = 20; s.distinct_faces = true; });
        add(ScenarioKind::polygons, [](Scenario& s) { s.k = 3; });
        add(ScenarioKind::stabber, [](Scenario& s) { s.n = 12; });
        add(ScenarioKind::chords_long, [](Scenario& s) { s.n = 12; s.box = 20; });
        add(ScenarioKind::minkowski, [](Scenario& s) { s.n = 4; s.k = 3; s.box = 20; });
        return out;
    }
    if (suite != "default") throw InputError("unknown suite '" + suite + "'");
    for (int t : {2, 4, 8})
        for (int m : {4, 8, 16}) add(ScenarioKind::shifted_copies, [&](Scenario& s) { s.t = t; s.m = m; });
    for (int g : {4, 6, 8}) add(ScenarioKind::grid, [&](Scenario& s) { s.h = g; s.v = g; s.m = 0; });
    for (int n : {20, 40})
        for (int t : {1, 3})
            add(ScenarioKind::random, [&](Scenario& s) { s.n = n; s.t = t; s.k = 4; s.box = 30; s.distinct_faces = true; });
    for (int k : {2, 4, 8}) add(ScenarioKind::polygons, [&](Scenario& s) { s.k = k; });
    for (int n : {20, 40}) add(ScenarioKind::stabber, [&](Scenario& s) { s.n = n; });
    for (int n : {20, 40}) add(ScenarioKind::chords_long, [&](Scenario& s) { s.n = n; s.box = 40; });
    add(ScenarioKind::minkowski, [](Scenario& s) { s.n = 5; s.k = 4; s.box = 30; });
    add(ScenarioKind::minkowski, [](Scenario& s) { s.n = 6; s.k = 8; s.box = 30; });
    return out;
}

BenchRun run_suite(const std::string& suite, int trials, std::uint64_t seed) {
    BenchRun br;
    br.suite = suite;
    br.trials = trials;
    br.seed = seed;
    br.reports = run(suite_scenarios(suite), trials, seed);
    br.regressions = frozen_constant_regressions(seed);

    // Moderately sparse, so that r = ceil(n^2 / w') stays well below n.
    Scenario sc;
    sc.kind = ScenarioKind::random;
    sc.n = suite == "quick" ? 30 : 40;
    sc.box = 40;
    sc.max_length = 20;
    sc.k = 10;
    sc.t = 1;
    sc.seed = Rng(seed).derive(5);
    auto inst = generate(sc);
    auto segs = inst.all_segments();
    br.sampling = sampling_experiment(segs, inst.points, suite == "quick" ? 30 : 100, seed);
    return br;
}

std::string scenario_json(const Scenario& sc) {
    json j;
    j["kind"] = kind_name(sc.kind);
    j["seed"] = sc.seed;
    j["n"] = sc.n;
    j["t"] = sc.t;
    j["m"] = sc.m;
    j["k"] = sc.k;
    j["h"] = sc.h;
    j["v"] = sc.v;
    j["box"] = sc.box;
    j["max_length"] = sc.max_length;
    j["c"] = to_string(sc.c);
    j["distinct_faces"] = sc.distinct_faces;
    j["base_arcs"] = sc.base.size();
    return j.dump();
}

std::string to_json(const BenchRun& run) {
    json doc;
    doc["schema"] = 1;
    doc["suite"] = run.suite;
    doc["trials"] = run.trials;
    doc["seed"] = run.seed;

    json reports = json::array();
    for (const auto& r : run.reports) {
        json jr;
        jr["scenario"] = json::parse(scenario_json(r.scenario));
        jr["index"] = r.index;
        jr["trial"] = r.trial;
        jr["seed"] = r.seed;
        jr["measured"] = r.measured;
        jr["face_complexities"] = r.face_complexities;
        jr["bounds"] = r.bounds;
        jr["margins"] = r.margins;
        if (!r.error.empty()) jr["error"] = r.error;
        jr["invariant_violation"] = r.invariant_violation;
        reports.push_back(jr);
    }
    doc["reports"] = reports;

    json regs = json::array();
    for (const auto& g : run.regressions) {
        json jg;
        jg["name"] = g.name;
        jg["formula"] = g.formula;
        jg["headroom"] = g.headroom;
        jg["c"] = g.c;
        jg["max_margin"] = g.max_margin();
        jg["pass"] = g.pass();
        for (const auto* set : {&g.calibration, &g.evaluation}) {
            json pts = json::array();
            for (const auto& p : *set)
                pts.push_back({{"label", p.label}, {"measured", p.measured}, {"formula", p.formula}, {"margin", p.margin}});
            jg[set == &g.calibration ? "calibration" : "evaluation"] = pts;
        }
        regs.push_back(jg);
    }
    doc["regressions"] = regs;

    const auto& s = run.sampling;
    doc["sampling"] = {{"n", s.n},
                       {"intersecting_pairs", s.intersecting_pairs},
                       {"r", s.r},
                       {"trials", s.trials},
                       {"mean_sampled", s.mean_sampled},
                       {"expected_sampled", s.expected_sampled},
                       {"relative_error", s.relative_error},
                       {"points_conserved", s.points_conserved}};
    return doc.dump(2) + "\n";
}

}  // namespace facelab
