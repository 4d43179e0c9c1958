#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "sss/vec3.hpp"

namespace sss {

// Boundary element of an obstacle: a corner, an open edge or an open triangle.
struct Feature {
    enum Kind { Corner = 0, Edge = 1, Wall = 2 };
    Kind kind = Corner;
    std::array<Vec3, 3> v{};
    int owner = -1;
    int local = -1;  // index inside the owner's own feature list
    Vec3 normal{};   // outward, walls only

    int num_vertices() const { return int(kind) + 1; }
};

Feature make_corner(Vec3 a, int owner = -1);
Feature make_edge(Vec3 a, Vec3 b, int owner = -1);
Feature make_wall(Vec3 a, Vec3 b, Vec3 c, int owner = -1);

struct Segment {
    Vec3 a, b;
};

struct EmbeddedCircle {
    Vec3 center;
    Vec3 normal;  // unit
    double radius = 0;
};

// {x : n.x >= d}
struct HalfSpace {
    Vec3 n;
    double d = 0;
};
struct Ball {
    Vec3 c;
    double r = 0;
};
// {x : |x - c| >= r}
struct BallComplement {
    Vec3 c;
    double r = 0;
};
// Points whose angle with axis, seen from apex, is at most half (half in (0, pi/2]).
struct RoundCone {
    Vec3 apex, axis;
    double half = 0;
};
// Closure of the complement of a RoundCone.
struct RoundConeComplement {
    Vec3 apex, axis;
    double half = 0;
};
struct Cylinder {
    Vec3 p, axis;
    double r = 0;
};
struct ThickRing {
    EmbeddedCircle circle;
    double t = 0;
};

using ElementarySet =
    std::variant<HalfSpace, Ball, BallComplement, RoundCone, RoundConeComplement, Cylinder, ThickRing>;

// Intersection of elementary sets; an empty list is all of space.
// refine > 0 lets the feature test subdivide pieces down to that size before
// answering conservatively.
struct Pi1Set {
    std::vector<ElementarySet> terms;
    double refine = 0;
};

// Union of Pi1 sets; an empty list is the empty set.
struct Sigma2Set {
    std::vector<Pi1Set> terms;
};

// Convex planar piece with up to 16 vertices (1 = point, 2 = segment).
struct Piece {
    int n = 0;
    std::array<Vec3, 16> v{};
    void push(const Vec3& p) { v[n++] = p; }
};

Piece piece_of(const Feature& f);

bool contains(const ElementarySet& e, const Vec3& x, double tol = 0);
bool contains(const Pi1Set& s, const Vec3& x, double tol = 0);
bool contains(const Sigma2Set& s, const Vec3& x, double tol = 0);

ElementarySet expand_tau(const ElementarySet& e, double tau);
Pi1Set expand_tau(const Pi1Set& s, double tau);
Sigma2Set expand_tau(const Sigma2Set& s, double tau);

std::optional<Segment> clip_segment_halfspace(const Segment& s, const HalfSpace& h);
Piece clip_piece_halfspace(const Piece& p, const HalfSpace& h, double tol = 0);

// One-sided: false only when the set provably misses the feature.
bool intersects_feature_conservative(const Pi1Set& s, const Feature& f, double tol = 0);
bool intersects_feature_conservative(const Sigma2Set& s, const Feature& f, double tol = 0);

// Distances.
Vec3 closest_point_segment(const Vec3& p, const Vec3& a, const Vec3& b, double* t = nullptr);
// region: 0,1,2 = vertex a,b,c; 3 = edge ab, 4 = bc, 5 = ca; 6 = interior
Vec3 closest_point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c, int* region = nullptr);
Vec3 closest_point_piece(const Vec3& p, const Piece& q);
double dist_point_segment(const Vec3& p, const Vec3& a, const Vec3& b);
double dist_point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);
double dist_segment_segment(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1);
double dist_segment_triangle(const Vec3& p0, const Vec3& p1, const Vec3& a, const Vec3& b, const Vec3& c);
double dist_line_segment(const Vec3& o, const Vec3& u, const Vec3& a, const Vec3& b);
double dist_line_piece(const Vec3& o, const Vec3& u, const Piece& q);
bool segment_hits_triangle(const Vec3& p0, const Vec3& p1, const Vec3& a, const Vec3& b, const Vec3& c);

double sep_point_feature(const Vec3& p, const Feature& f);
double sep_segment_feature(const Vec3& p0, const Vec3& p1, const Feature& f);
double dist_point_circle(const Vec3& p, const EmbeddedCircle& c);

} // namespace sss
