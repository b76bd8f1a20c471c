#include "facelab/svg.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace facelab {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    return s == "-0.000" ? "0.000" : s;
}

struct Frame {
    double x0 = 0, y0 = 0, scale = 1, width = 1, height = 1;

    std::string x(const Point& p) const { return num((p.x.get_d() - x0) * scale); }
    std::string y(const Point& p) const { return num(height - (p.y.get_d() - y0) * scale); }
    std::string xy(const Point& p) const { return x(p) + "," + y(p); }
};

Frame frame(const Arrangement& arr, const SvgOptions& opts) {
    std::vector<Point> pts;
    for (const auto& v : arr.vertices()) pts.push_back(v.point);
    pts.insert(pts.end(), opts.points.begin(), opts.points.end());
    pts.insert(pts.end(), opts.path.begin(), opts.path.end());
    Frame f;
    if (pts.empty()) {
        f.width = f.height = opts.size;
        return f;
    }
    double lx = pts[0].x.get_d(), hx = lx, ly = pts[0].y.get_d(), hy = ly;
    for (const auto& p : pts) {
        lx = std::min(lx, p.x.get_d());
        hx = std::max(hx, p.x.get_d());
        ly = std::min(ly, p.y.get_d());
        hy = std::max(hy, p.y.get_d());
    }
    // 5% margin, and a unit box for degenerate extents.
    double span = std::max({hx - lx, hy - ly, 1.0});
    double pad = span * 0.05;
    f.x0 = lx - pad;
    f.y0 = ly - pad;
    f.scale = opts.size / (span + 2 * pad);
    f.width = (hx - lx + 2 * pad) * f.scale;
    f.height = (hy - ly + 2 * pad) * f.scale;
    return f;
}

}  // namespace

std::string render_svg(const Arrangement& arr, const SvgOptions& opts) {
    const Frame fr = frame(arr, opts);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(fr.width) << "\" height=\""
       << num(fr.height) << "\" viewBox=\"0 0 " << num(fr.width) << ' ' << num(fr.height) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (FaceId f : opts.faces) {
        if (f == kUnboundedFace) continue;
        auto cycles = arr.boundary_cycles(f);
        if (cycles.size() == 1) {
            os << "<polygon class=\"face\" fill=\"#9ecae1\" stroke=\"none\" points=\"";
            for (std::size_t i = 0; i < cycles[0].size(); ++i)
                os << (i ? " " : "") << fr.xy(arr.origin(cycles[0][i]));
            os << "\"/>\n";
            continue;
        }
        os << "<path class=\"face\" fill=\"#9ecae1\" stroke=\"none\" fill-rule=\"evenodd\" d=\"";
        for (std::size_t c = 0; c < cycles.size(); ++c) {
            for (std::size_t i = 0; i < cycles[c].size(); ++i)
                os << (c || i ? " " : "") << (i ? "L" : "M") << fr.xy(arr.origin(cycles[c][i]));
            os << " Z";
        }
        os << "\"/>\n";
    }

    for (const auto& s : arr.segments())
        os << "<line class=\"segment\" data-id=\"" << s.id() << "\" x1=\"" << fr.x(s.source()) << "\" y1=\""
           << fr.y(s.source()) << "\" x2=\"" << fr.x(s.target()) << "\" y2=\"" << fr.y(s.target())
           << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    if (!opts.path.empty()) {
        os << "<polyline class=\"path\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < opts.path.size(); ++i) os << (i ? " " : "") << fr.xy(opts.path[i]);
        os << "\"/>\n";
    }
    for (const auto& p : opts.points)
        os << "<circle class=\"point\" cx=\"" << fr.x(p) << "\" cy=\"" << fr.y(p) << "\" r=\"3\" fill=\"#d62728\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace facelab
