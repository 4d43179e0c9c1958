#include "sss/rod.hpp"

namespace sss {

Segment rod_footprint(const Robot& r, const Config& c) { return Segment{c.p, c.p + c.unit_dir() * r.r0}; }

namespace {

// Side planes of the square cone over the box's face square, through the origin.
void cone_sides(const RotBox& b, Vec3 n[4]) {
    int k = face_axis(b.face);
    double s = face_sign(b.face);
    Vec3 eu = chart_point(b.face, 1, 0) - chart_point(b.face, 0, 0);
    Vec3 ev = chart_point(b.face, 0, 1) - chart_point(b.face, 0, 0);
    Vec3 ek = unit_axis(k, s);
    double u1 = b.u0 + b.w, v1 = b.v0 + b.w;
    n[0] = normalized(eu - ek * b.u0);
    n[1] = normalized(ek * u1 - eu);
    n[2] = normalized(ev - ek * b.v0);
    n[3] = normalized(ek * v1 - ev);
}

} // namespace

Pi1Set rod_inner_footprint(const Robot& r, const BoxShape& b) {
    Pi1Set s;
    s.terms.push_back(Ball{b.center, r.r0});
    if (b.rot.whole) return s;
    Vec3 n[4];
    cone_sides(b.rot, n);
    for (const auto& ni : n) s.terms.push_back(HalfSpace{ni, dot(ni, b.center)});
    return s;
}

Sigma2Set rod_approx_footprint(const Robot& r, const BoxShape& b) {
    const double grow = b.radius() + r.tau;
    Pi1Set s;
    s.terms.push_back(Ball{b.center, r.r0 + grow});
    if (!b.rot.whole) {
        Vec3 n[4];
        cone_sides(b.rot, n);
        for (const auto& ni : n) s.terms.push_back(HalfSpace{ni, dot(ni, b.center) - grow});
        Vec3 ek = unit_axis(face_axis(b.rot.face), face_sign(b.rot.face));
        s.terms.push_back(HalfSpace{ek, dot(ek, b.center) - b.half - r.tau});
    }
    return Sigma2Set{{s}};
}

bool rod_box_feature_test(const Robot& r, const BoxShape& b, const Feature& f, double tol) {
    return intersects_feature_conservative(rod_approx_footprint(r, b), f, tol);
}

} // namespace sss
