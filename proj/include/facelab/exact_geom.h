#pragma once

// Exact rational geometry: points, oriented segments, orientation and
// intersection predicates. Every predicate is decided with GMP rationals;
// there is no floating point anywhere in this layer.

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace facelab {

using Rat = mpq_class;
using SegmentId = int;

/// Malformed or infeasible input (bad file, duplicate id, point on a segment).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural invariant failed. Always a bug in this library.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

Rat make_rat(long num, long den = 1);

/// Parses `p/q` or an integer. Throws InputError on anything else.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);
double to_double(const Rat& r);

struct Point {
    Rat x;
    Rat y;

    Point() = default;
    Point(Rat x_, Rat y_) : x(std::move(x_)), y(std::move(y_)) {}
    Point(long x_, long y_) : x(x_), y(y_) {}
};

bool operator==(const Point& a, const Point& b);
inline bool operator!=(const Point& a, const Point& b) { return !(a == b); }
/// Lexicographic (x, then y).
bool operator<(const Point& a, const Point& b);
inline bool operator>(const Point& a, const Point& b) { return b < a; }
inline bool operator<=(const Point& a, const Point& b) { return !(b < a); }
std::ostream& operator<<(std::ostream& os, const Point& p);

struct PointLess {
    bool operator()(const Point& a, const Point& b) const { return a < b; }
};

/// Oriented segment source -> target carrying a symbol identity.
class Segment {
public:
    Segment() = default;
    Segment(SegmentId id, Point source, Point target);

    SegmentId id() const { return id_; }
    const Point& source() const { return source_; }
    const Point& target() const { return target_; }
    /// Lexicographically smaller / larger endpoint.
    const Point& left() const;
    const Point& right() const;
    bool is_vertical() const { return source_.x == target_.x; }
    Segment translated(const Rat& dx, const Rat& dy, SegmentId new_id) const;

private:
    SegmentId id_ = -1;
    Point source_;
    Point target_;
};

enum class Orientation { clockwise = -1, collinear = 0, counterclockwise = 1 };

Orientation orientation(const Point& p, const Point& q, const Point& r);
/// (q - p) x (r - p), exactly.
Rat cross(const Point& p, const Point& q, const Point& r);

/// Collinear overlap of two closed segments; from < to lexicographically.
struct Overlap {
    Point from;
    Point to;
};

using Intersection = std::variant<std::monostate, Point, Overlap>;

inline bool is_empty(const Intersection& i) { return std::holds_alternative<std::monostate>(i); }

Intersection intersect(const Segment& a, const Segment& b);
bool point_on_segment(const Point& p, const Segment& s);
bool segments_intersect(const Segment& a, const Segment& b);

/// y-coordinate of the supporting line of a non-vertical segment at x.
Rat y_at(const Segment& s, const Rat& x);
/// dy/dx of a non-vertical segment.
Rat slope(const Segment& s);

// Segment text format: one segment per line, `x1 y1 x2 y2`, rationals as
// `p/q` or integers, `#` starts a comment. Ids are assigned in file order
// starting at first_id.
std::vector<Segment> read_segments(std::istream& in, SegmentId first_id = 0);
std::vector<Segment> read_segments_file(const std::string& path, SegmentId first_id = 0);
void write_segments(std::ostream& out, const std::vector<Segment>& segments);

/// Whitespace-separated `x y` pairs, one point per line, `#` comments.
std::vector<Point> read_points(std::istream& in);
std::vector<Point> read_points_file(const std::string& path);

}  // namespace facelab
