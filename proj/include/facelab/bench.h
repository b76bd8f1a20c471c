#pragma once

// Scenario runner: measures the quantities that appear in the combination
// bounds, evaluates the bound formulas on those measurements, fits frozen
// constants, and runs the random-sampling experiment on vertical
// decompositions.

#include "facelab/generators.h"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace facelab {

struct SamplingRecord {
    int r = 0;
    long tau = 0;                 ///< trapezoids of the sample's decomposition
    long sum_n = 0;               ///< sum of conflict counts n_i
    long sum_binom_n = 0;         ///< sum of n_i choose 2
    long sum_m = 0;               ///< sum of point counts m_i
    double sum_sqrt_m_n = 0;      ///< sum of sqrt(m_i) * n_i
    long sampled_intersections = 0;
};

/// Uniform sample of r segments without replacement, its vertical
/// decomposition, and per-trapezoid counts. n_i counts the segments of the
/// full set meeting the trapezoid's interior or bounding it from above or
/// below; m_i counts points assigned by the perturbed location rule.
SamplingRecord sample_trial(std::span<const Segment> segments, std::span<const Point> points, int r,
                                   std::uint64_t seed);

struct SamplingSummary {
    int n = 0;
    long intersecting_pairs = 0;
    int r = 0;
    int trials = 0;
    double mean_sampled = 0;
    double expected_sampled = 0;  ///< w' r (r - 1) / (n (n - 1))
    double relative_error = 0;
    bool points_conserved = true; ///< sum m_i == m in every trial
};

/// Repeated trials at r = ceil(n^2 / w') on one instance.
SamplingSummary sampling_experiment(std::span<const Segment> segments, std::span<const Point> points, int trials,
                                    std::uint64_t seed);

struct Report {
    Scenario scenario;
    int index = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::map<std::string, double> measured;
    std::vector<long> face_complexities;
    std::map<std::string, double> bounds;
    std::map<std::string, double> margins;
    std::string error;
    bool invariant_violation = false;
};

/// One trial of one scenario; all module invariants are re-checked inline.
Report measure(const Scenario& sc, int index, int trial, std::uint64_t seed);

/// One Report per (scenario, trial), in that order.
std::vector<Report> run(const std::vector<Scenario>& scenarios, int trials, std::uint64_t seed);

/// Seed of trial `trial` of scenario `index` derived from the run seed.
std::uint64_t trial_seed(std::uint64_t seed, int index, int trial);

struct RegressionPoint {
    std::string label;
    double measured = 0;
    double formula = 0;
    double margin = 0;  ///< measured / (c * formula)
};

/// Constant fixed on a calibration set, then asserted on an evaluation set.
struct Regression {
    std::string name;
    std::string formula;
    double headroom = 2;
    double c = 0;
    std::vector<RegressionPoint> calibration;
    std::vector<RegressionPoint> evaluation;

    double max_margin() const;
    bool pass() const { return max_margin() <= 1; }
};

/// The four frozen-constant checks: shifted copies against C a(t), random
/// many faces against sqrt(m) n a(n), stabbed segments against n, and long
/// chords against n.
std::vector<Regression> frozen_constant_regressions(std::uint64_t seed);

struct BenchRun {
    std::string suite;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<Report> reports;
    std::vector<Regression> regressions;
    SamplingSummary sampling;
};

/// Named scenario lists: "default" and the smaller "quick".
std::vector<Scenario> suite_scenarios(const std::string& suite);
BenchRun run_suite(const std::string& suite, int trials, std::uint64_t seed);

/// Deterministic JSON document with a `schema` field.
std::string to_json(const BenchRun& run);
std::string scenario_json(const Scenario& sc);

}  // namespace facelab
