#pragma once

#include <vector>

#include "sss/geom3.hpp"

namespace sss {

// Euclidean separation between an embedded circle and simple sets.
double sep_circle_point(const EmbeddedCircle& c, const Vec3& p);
double sep_circle_plane(const EmbeddedCircle& c, const Vec3& p0, const Vec3& n);
double sep_circle_line(const EmbeddedCircle& c, const Vec3& o, const Vec3& u);
double sep_circle_segment(const EmbeddedCircle& c, const Vec3& a, const Vec3& b);
double sep_circle_triangle(const EmbeddedCircle& c, const Vec3& a, const Vec3& b, const Vec3& d);
double sep_circle_piece(const EmbeddedCircle& c, const Piece& q);
// Same as sep_circle_piece(c, q) > thr, skipping edges that cheap bounds settle.
bool circle_piece_clear(const EmbeddedCircle& c, const Piece& q, double thr);
double sep_circle_feature(const EmbeddedCircle& c, const Feature& f);

// Cheap estimate from projecting the segment into the circle plane. Never below
// the true separation, but can reorder features.
double sep_upper_bound_line(const EmbeddedCircle& c, const Vec3& a, const Vec3& b);

// Circle points that are critical for the distance to the line o + t u.
std::vector<Vec3> circle_line_critical_points(const EmbeddedCircle& c, const Vec3& o, const Vec3& u);

struct CircleFrame {
    Vec3 e1, e2;
};
CircleFrame circle_frame(const EmbeddedCircle& c);
Vec3 circle_point(const EmbeddedCircle& c, const CircleFrame& f, double phi);

} // namespace sss
