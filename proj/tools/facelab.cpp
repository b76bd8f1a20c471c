#include "facelab/bench.h"
#include "facelab/face_boundary.h"
#include "facelab/motion_planning.h"
#include "facelab/svg.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>

using namespace facelab;
using json = nlohmann::json;

namespace {

enum Exit { ok = 0, input_error = 2, unreachable = 3, invariant = 4 };

Point parse_point(const std::vector<std::string>& xy) {
    if (xy.size() != 2) throw InputError("a point needs two coordinates");
    return Point(parse_rat(xy[0]), parse_rat(xy[1]));
}

json point_json(const Point& p) { return json::array({to_string(p.x), to_string(p.y)}); }

json complexity_json(const FaceComplexity& c) {
    return {{"edge_sides", c.edge_sides}, {"vertices", c.vertices}, {"components", c.components},
            {"total", c.total()}};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

// Vertices of a closed chain of segments, each ending where the next begins.
std::vector<Point> polygon_from_file(const std::string& path) {
    auto segs = read_segments_file(path);
    if (segs.size() < 3) throw InputError(path + ": a polygon needs at least three edges");
    std::vector<Point> poly;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (segs[i].target() != segs[(i + 1) % segs.size()].source())
            throw InputError(path + ": edge " + std::to_string(i) + " does not end where the next begins");
        poly.push_back(segs[i].source());
    }
    return poly;
}

struct Options {
    // gen
    Scenario sc;
    std::string kind = "random";
    std::string c = "1";
    std::string out;
    // shared inputs
    std::string file;
    std::vector<std::string> point;
    std::vector<std::string> collections;
    bool sequence = false;
    // plan
    std::string robot, pins, svg;
    std::vector<std::string> from, to, reference;
    // ds
    int order = 3;
    bool circular = false;
    // bench
    std::string suite = "default";
    int trials = 3;
    std::uint64_t seed = 1;
    // render
    std::vector<std::string> marks;
};

int cmd_gen(const Options& o) {
    Scenario sc = o.sc;
    sc.kind = parse_kind(o.kind);
    sc.c = parse_rat(o.c);
    auto inst = generate(sc);
    std::ofstream seg(o.out);
    if (!seg) throw InputError("cannot write " + o.out);
    write_segments(seg, inst.all_segments());
    json side;
    side["schema"] = 1;
    side["scenario"] = json::parse(scenario_json(sc));
    json cols = json::array();
    for (const auto& col : inst.collections) {
        json ids = json::array();
        for (const auto& s : col) ids.push_back(s.id());
        cols.push_back(ids);
    }
    side["collections"] = cols;
    side["points"] = json::array();
    for (const auto& p : inst.points) side["points"].push_back(point_json(p));
    write_file(o.out + ".json", side.dump(2) + "\n");
    return ok;
}

int cmd_arrange(const Options& o) {
    auto arr = Arrangement::build(read_segments_file(o.file));
    json j;
    j["schema"] = 1;
    j["segments"] = arr.segments().size();
    j["vertices"] = arr.vertices().size();
    j["edges"] = arr.edges().size();
    j["total_complexity"] = arr.total_complexity();
    j["components"] = arr.connected_components();
    j["faces"] = json::array();
    for (const auto& f : arr.faces()) {
        auto c = complexity_json(arr.face_complexity(f.id));
        c["id"] = f.id;
        c["unbounded"] = f.is_unbounded;
        j["faces"].push_back(c);
    }
    print(j);
    return ok;
}

int cmd_face(const Options& o) {
    auto segs = read_segments_file(o.file);
    Point p = parse_point(o.point);
    for (const auto& s : segs)
        if (point_on_segment(p, s)) throw InputError("point lies on segment " + std::to_string(s.id()));
    auto arr = Arrangement::build(segs);
    FaceId f = arr.face_containing(p);
    auto data = face_data(arr, f);
    json j;
    j["schema"] = 1;
    j["face"] = f;
    j["complexity"] = complexity_json(data.complexity);
    j["segments"] = data.segments;
    j["vertices"] = json::array();
    for (const auto& v : data.vertices) j["vertices"].push_back(point_json(v));
    if (o.sequence) {
        j["sequence"] = json::array();
        for (const auto& comp : boundary_symbol_sequence(arr, f)) {
            auto lin = linearize(arr, comp);
            auto check = is_ds(intern(lin), 3);
            j["sequence"].push_back({{"symbols", format_sequence(lin)},
                                     {"length", lin.size()},
                                     {"ds_order_3", check.valid},
                                     {"violation", check.violation}});
            if (!check.valid) throw InvariantError("boundary sequence is not DS of order 3");
        }
    }
    print(j);
    return ok;
}

int cmd_overlay(const Options& o) {
    MarkedInstance inst;
    SegmentId next = 0;
    for (const auto& path : o.collections) {
        inst.collections.push_back(read_segments_file(path, next));
        next += static_cast<SegmentId>(inst.collections.back().size());
    }
    Point p = parse_point(o.point);
    inst.points = {p};
    inst.validate();
    auto sf = single_face_overlay(inst, p);
    auto ref = refine(inst);
    json j;
    j["schema"] = 1;
    j["complexity"] = complexity_json(sf.face.complexity);
    j["level_complexity"] = sf.level_complexity;
    j["L"] = ref.L;
    j["C"] = ref.C;
    j["k"] = ref.k;
    j["t"] = ref.t;
    j["splitting_bound"] = ref.splitting_bound();
    j["splitting_margin"] = ref.splitting_bound() > 0 ? double(ref.L) / double(ref.splitting_bound()) : 0.0;
    print(j);
    return ok;
}

int cmd_plan(const Options& o) {
    PlanProblem prob;
    prob.robot = polygon_from_file(o.robot);
    prob.obstacles = read_points_file(o.pins);
    prob.start = parse_point(o.from);
    prob.goal = parse_point(o.to);
    if (!o.reference.empty()) prob.reference = parse_point(o.reference);
    auto r = plan(prob);
    if (!o.svg.empty()) {
        auto arr = Arrangement::build(r.forbidden);
        SvgOptions opts;
        opts.points = {prob.start, prob.goal};
        opts.path = r.path;
        opts.faces = {arr.face_containing(prob.goal)};
        write_file(o.svg, render_svg(arr, opts));
    }
    json j;
    j["schema"] = 1;
    j["reachable"] = r.reachable;
    j["forbidden_segments"] = r.forbidden.size();
    j["face"] = complexity_json(r.face.complexity);
    j["path"] = json::array();
    for (const auto& p : r.path) j["path"].push_back(point_json(p));
    print(j);
    return r.reachable ? ok : unreachable;
}

int cmd_ds(const Options& o) {
    std::map<std::string, Symbol> alphabet;
    SymbolSequence seq;
    seq.circular = o.circular;
    for (std::string tok; std::cin >> tok;) {
        auto [it, fresh] = alphabet.try_emplace(tok, static_cast<Symbol>(alphabet.size()));
        seq.elements.push_back(it->second);
    }
    if (o.order < 1) throw InputError("order must be at least 1");
    auto check = is_ds(seq, o.order);
    json j;
    j["schema"] = 1;
    j["length"] = seq.size();
    j["symbols"] = alphabet.size();
    j["valid"] = check.valid;
    j["violation"] = check.violation;
    j["profile"] = active_profile(seq);
    // Exact maximum length for this alphabet and order, when enumeration fits.
    try {
        j["lambda"] = lambda_brute(static_cast<int>(alphabet.size()), o.order, 2'000'000);
    } catch (const InputError&) {
        j["lambda"] = nullptr;
    }
    print(j);
    return ok;
}

int cmd_bench(const Options& o) {
    if (o.trials < 1) throw InputError("trials must be at least 1");
    auto run = run_suite(o.suite, o.trials, o.seed);
    auto text = to_json(run);
    if (o.out.empty())
        std::cout << text;
    else
        write_file(o.out, text);
    bool violated = false;
    for (const auto& r : run.reports)
        if (r.invariant_violation) {
            std::cerr << "invariant violation in scenario " << r.index << " trial " << r.trial << ": " << r.error
                      << '\n';
            violated = true;
        }
    return violated ? invariant : ok;
}

int cmd_render(const Options& o) {
    auto segs = read_segments_file(o.file);
    auto arr = Arrangement::build(segs);
    SvgOptions opts;
    if (o.marks.size() % 2) throw InputError("--mark takes x y pairs");
    for (std::size_t i = 0; i < o.marks.size(); i += 2) {
        Point p = parse_point({o.marks[i], o.marks[i + 1]});
        for (const auto& s : segs)
            if (point_on_segment(p, s)) throw InputError("marked point lies on segment " + std::to_string(s.id()));
        opts.points.push_back(p);
        opts.faces.push_back(arr.face_containing(p));
    }
    auto svg = render_svg(arr, opts);
    if (o.out.empty())
        std::cout << svg;
    else
        write_file(o.out, svg);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Faces in arrangements of segment collections"};
    app.require_subcommand(1);
    Options o;

    auto* gen = app.add_subcommand("gen", "generate a scenario: segments plus a sidecar JSON");
    gen->set_help_flag("--help", "print this help message and exit");
    gen->add_option("--kind", o.kind, "shifted_copies, grid, random, polygons, stabber, chords_long, minkowski");
    gen->add_option("--seed", o.sc.seed);
    gen->add_option("--n", o.sc.n);
    gen->add_option("--t", o.sc.t);
    gen->add_option("--m", o.sc.m);
    gen->add_option("--k", o.sc.k);
    gen->add_option("--h", o.sc.h);
    gen->add_option("--v", o.sc.v);
    gen->add_option("--box", o.sc.box);
    gen->add_option("--max-length", o.sc.max_length);
    gen->add_option("--c", o.c, "chord length ratio");
    gen->add_flag("--distinct-faces", o.sc.distinct_faces);
    gen->add_option("--out", o.out, "segment file; the sidecar is written next to it with .json appended")
        ->required();

    auto* arrange = app.add_subcommand("arrange", "arrangement summary");
    arrange->add_option("file", o.file)->required();

    auto* face = app.add_subcommand("face", "face containing a point");
    face->add_option("file", o.file)->required();
    face->add_option("--point", o.point)->expected(2)->required();
    face->add_flag("--sequence", o.sequence, "include the linearized boundary sequences");

    auto* overlay = app.add_subcommand("overlay", "face of a point in the overlay of collections");
    overlay->add_option("--collections", o.collections)->required();
    overlay->add_option("--point", o.point)->expected(2)->required();

    auto* plan_cmd = app.add_subcommand("plan", "translate a polygon among point obstacles");
    plan_cmd->add_option("--robot", o.robot, "closed chain of segments")->required();
    plan_cmd->add_option("--pins", o.pins, "obstacle points")->required();
    plan_cmd->add_option("--from", o.from)->expected(2)->required();
    plan_cmd->add_option("--to", o.to)->expected(2)->required();
    plan_cmd->add_option("--reference", o.reference)->expected(2);
    plan_cmd->add_option("--svg", o.svg);

    auto* ds = app.add_subcommand("ds", "check a token sequence read from stdin");
    ds->add_option("--order", o.order);
    ds->add_flag("--circular", o.circular);

    auto* bench = app.add_subcommand("bench", "run a scenario suite");
    bench->add_option("--suite", o.suite);
    bench->add_option("--trials", o.trials);
    bench->add_option("--seed", o.seed);
    bench->add_option("--out", o.out);

    auto* render = app.add_subcommand("render", "SVG of an arrangement");
    render->add_option("file", o.file)->required();
    render->add_option("--mark", o.marks, "x y; the face of each mark is shaded")->expected(2)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    render->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    try {
        if (*gen) return cmd_gen(o);
        if (*arrange) return cmd_arrange(o);
        if (*face) return cmd_face(o);
        if (*overlay) return cmd_overlay(o);
        if (*plan_cmd) return cmd_plan(o);
        if (*ds) return cmd_ds(o);
        if (*bench) return cmd_bench(o);
        if (*render) return cmd_render(o);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return invariant;
    }
    return ok;
}
