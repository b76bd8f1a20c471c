#include "facelab/exact_geom.h"

#include <fstream>
#include <iostream>
#include <sstream>

namespace facelab {

Rat make_rat(long num, long den) {
    if (den == 0) throw InputError("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat parse_rat(std::string_view text) {
    if (text.empty()) throw InputError("empty rational");
    auto valid_int = [](std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    std::string num(text.substr(0, slash));
    std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw InputError("malformed rational '" + std::string(text) + "'");
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

double to_double(const Rat& r) { return r.get_d(); }

bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

bool operator<(const Point& a, const Point& b) {
    int c = cmp(a.x, b.x);
    if (c != 0) return c < 0;
    return a.y < b.y;
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
    return os << '(' << p.x.get_str() << ", " << p.y.get_str() << ')';
}

Segment::Segment(SegmentId id, Point source, Point target)
    : id_(id), source_(std::move(source)), target_(std::move(target)) {
    if (source_ == target_) throw InputError("degenerate segment " + std::to_string(id));
}

const Point& Segment::left() const { return source_ < target_ ? source_ : target_; }
const Point& Segment::right() const { return source_ < target_ ? target_ : source_; }

Segment Segment::translated(const Rat& dx, const Rat& dy, SegmentId new_id) const {
    return Segment(new_id, Point(source_.x + dx, source_.y + dy),
                   Point(target_.x + dx, target_.y + dy));
}

Rat cross(const Point& p, const Point& q, const Point& r) {
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

Orientation orientation(const Point& p, const Point& q, const Point& r) {
    int s = sgn(cross(p, q, r));
    if (s > 0) return Orientation::counterclockwise;
    if (s < 0) return Orientation::clockwise;
    return Orientation::collinear;
}

bool point_on_segment(const Point& p, const Segment& s) {
    if (orientation(s.source(), s.target(), p) != Orientation::collinear) return false;
    return s.left() <= p && p <= s.right();
}

Intersection intersect(const Segment& a, const Segment& b) {
    const Point& p = a.source();
    const Point& q = b.source();
    Rat d1x = a.target().x - p.x, d1y = a.target().y - p.y;
    Rat d2x = b.target().x - q.x, d2y = b.target().y - q.y;
    Rat denom = d1x * d2y - d1y * d2x;
    Rat ex = q.x - p.x, ey = q.y - p.y;
    if (sgn(denom) == 0) {
        if (sgn(ex * d1y - ey * d1x) != 0) return std::monostate{};
        const Point& lo = a.left() < b.left() ? b.left() : a.left();
        const Point& hi = a.right() < b.right() ? a.right() : b.right();
        if (hi < lo) return std::monostate{};
        if (lo == hi) return lo;
        return Overlap{lo, hi};
    }
    Rat t = (ex * d2y - ey * d2x) / denom;
    Rat u = (ex * d1y - ey * d1x) / denom;
    if (sgn(t) < 0 || t > 1 || sgn(u) < 0 || u > 1) return std::monostate{};
    return Point(p.x + t * d1x, p.y + t * d1y);
}

bool segments_intersect(const Segment& a, const Segment& b) {
    auto o1 = orientation(a.source(), a.target(), b.source());
    auto o2 = orientation(a.source(), a.target(), b.target());
    auto o3 = orientation(b.source(), b.target(), a.source());
    auto o4 = orientation(b.source(), b.target(), a.target());
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == Orientation::collinear && point_on_segment(b.source(), a)) return true;
    if (o2 == Orientation::collinear && point_on_segment(b.target(), a)) return true;
    if (o3 == Orientation::collinear && point_on_segment(a.source(), b)) return true;
    if (o4 == Orientation::collinear && point_on_segment(a.target(), b)) return true;
    return false;
}

Rat slope(const Segment& s) {
    if (s.is_vertical()) throw InputError("slope of vertical segment");
    return (s.target().y - s.source().y) / (s.target().x - s.source().x);
}

Rat y_at(const Segment& s, const Rat& x) {
    const Point& a = s.source();
    return a.y + slope(s) * (x - a.x);
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream ls(line);
    std::vector<std::string> out;
    std::string tok;
    while (ls >> tok) out.push_back(tok);
    return out;
}

bool skip_line(const std::string& line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

std::vector<Segment> read_segments(std::istream& in, SegmentId first_id) {
    std::vector<Segment> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skip_line(line)) continue;
        auto tok = tokens_of(line);
        if (tok.size() != 4)
            throw InputError("line " + std::to_string(lineno) + ": expected 4 rationals");
        try {
            out.emplace_back(first_id + static_cast<SegmentId>(out.size()),
                             Point(parse_rat(tok[0]), parse_rat(tok[1])),
                             Point(parse_rat(tok[2]), parse_rat(tok[3])));
        } catch (const InputError& e) {
            throw InputError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<Segment> read_segments_file(const std::string& path, SegmentId first_id) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_segments(in, first_id);
}

void write_segments(std::ostream& out, const std::vector<Segment>& segments) {
    for (const auto& s : segments) {
        out << s.source().x.get_str() << ' ' << s.source().y.get_str() << ' '
            << s.target().x.get_str() << ' ' << s.target().y.get_str() << '\n';
    }
}

std::vector<Point> read_points(std::istream& in) {
    std::vector<Point> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skip_line(line)) continue;
        auto tok = tokens_of(line);
        if (tok.size() != 2)
            throw InputError("line " + std::to_string(lineno) + ": expected 2 rationals");
        out.emplace_back(parse_rat(tok[0]), parse_rat(tok[1]));
    }
    return out;
}

std::vector<Point> read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_points(in);
}

}  // namespace facelab
