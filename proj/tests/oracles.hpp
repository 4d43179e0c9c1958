#pragma once

// Brute-force reference computations shared by the unit and acceptance tests.
// None of them call the geometric routines they are used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "sss/planner.hpp"
#include "sss/scene.hpp"

namespace oracle {

using sss::Vec3;

constexpr double kPi = 3.14159265358979323846;

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed) : gen(seed) {}
    double uni(double a = 0, double b = 1) { return std::uniform_real_distribution<double>(a, b)(gen); }
    int index(int n) { return int(std::uniform_int_distribution<int>(0, n - 1)(gen)); }
    Vec3 in_box(const Vec3& lo, const Vec3& hi) { return {uni(lo.x, hi.x), uni(lo.y, hi.y), uni(lo.z, hi.z)}; }
    Vec3 unit() {
        std::normal_distribution<double> n(0, 1);
        for (;;) {
            Vec3 v{n(gen), n(gen), n(gen)};
            double l = sss::norm(v);
            if (l > 1e-6) return v / l;
        }
    }
};

inline double seg_point(const Vec3& p, const Vec3& a, const Vec3& b) {
    Vec3 ab = b - a;
    double l2 = sss::dot(ab, ab);
    double t = l2 > 0 ? sss::dot(p - a, ab) / l2 : 0;
    t = std::clamp(t, 0.0, 1.0);
    return sss::norm(p - (a + ab * t));
}

// Plane projection when it falls inside, else the nearest edge.
inline double tri_point(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 n = sss::cross(b - a, c - a);
    double nn = sss::dot(n, n);
    double s = sss::dot(p - a, n) / nn;
    Vec3 q = p - n * s;
    double w0 = sss::dot(sss::cross(b - q, c - q), n);
    double w1 = sss::dot(sss::cross(c - q, a - q), n);
    double w2 = sss::dot(sss::cross(a - q, b - q), n);
    if (w0 >= 0 && w1 >= 0 && w2 >= 0) return std::fabs(s) * std::sqrt(nn);
    return std::min({seg_point(p, a, b), seg_point(p, b, c), seg_point(p, c, a)});
}

inline double feature_point(const sss::Feature& f, const Vec3& p) {
    switch (f.kind) {
    case sss::Feature::Corner: return sss::norm(p - f.v[0]);
    case sss::Feature::Edge: return seg_point(p, f.v[0], f.v[1]);
    default: return tri_point(p, f.v[0], f.v[1], f.v[2]);
    }
}

// Exhaustive nearest feature of one polyhedron.
inline double poly_distance(const sss::Scene& s, int poly, const Vec3& q, int* which = nullptr) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < s.num_features(); ++i) {
        if (s.features[i].owner != poly) continue;
        double d = feature_point(s.features[i], q);
        if (d < best) {
            best = d;
            if (which) *which = i;
        }
    }
    return best;
}

// Signed ray/triangle crossing; returns 0 when the ray grazes an edge or vertex.
inline int ray_hit(const Vec3& o, const Vec3& d, const Vec3& a, const Vec3& b, const Vec3& c, bool& grazing) {
    Vec3 e1 = b - a, e2 = c - a;
    Vec3 p = sss::cross(d, e2);
    double det = sss::dot(e1, p);
    if (std::fabs(det) < 1e-14) return 0;
    Vec3 t = o - a;
    double u = sss::dot(t, p) / det;
    Vec3 q = sss::cross(t, e1);
    double v = sss::dot(d, q) / det;
    double s = sss::dot(e2, q) / det;
    const double g = 1e-9;
    if (u < -g || v < -g || u + v > 1 + g || s < -g) return 0;
    if (u < g || v < g || u + v > 1 - g || s < g) {
        grazing = true;
        return 0;
    }
    return 1;
}

// Crossing parity along random rays, retried whenever a ray grazes.
inline bool ray_cast_inside(const sss::Polyhedron& p, const Vec3& q, uint64_t seed = 7) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vec3 d = rng.unit();
        bool grazing = false;
        int count = 0;
        for (auto& t : p.tris) count += ray_hit(q, d, p.verts[t[0]], p.verts[t[1]], p.verts[t[2]], grazing);
        if (!grazing) return count % 2 == 1;
    }
    return false;
}

inline bool ray_cast_inside_union(const sss::Scene& s, const Vec3& q) {
    for (auto& p : s.polys)
        if (ray_cast_inside(p, q)) return true;
    return false;
}

// Circle point at angle phi in a frame built from scratch.
struct CircleSampler {
    Vec3 c, e1, e2;
    double r;
    CircleSampler(const Vec3& center, const Vec3& normal, double radius) : c(center), r(radius) {
        Vec3 n = normal / sss::norm(normal);
        Vec3 t = std::fabs(n.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
        e1 = sss::cross(n, t);
        e1 = e1 / sss::norm(e1);
        e2 = sss::cross(n, e1);
    }
    Vec3 at(double phi) const { return c + (e1 * std::cos(phi) + e2 * std::sin(phi)) * r; }
};

// Minimum of f over n equally spaced circle points. The true minimum of a
// 1-Lipschitz distance lies within discretization(r, n) below it.
template <class F>
double circle_sampled_min(const CircleSampler& cs, int n, F f) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) best = std::min(best, f(cs.at(2 * kPi * i / n)));
    return best;
}
inline double discretization(double r, int n) { return r * kPi / n; }

inline double line_point(const Vec3& p, const Vec3& o, const Vec3& u) {
    Vec3 w = p - o;
    return sss::norm(w - u * (sss::dot(w, u) / sss::dot(u, u)));
}

// Signed-distance sweep: zero once the samples straddle the plane.
inline double circle_plane_sampled(const CircleSampler& cs, int n, const Vec3& p0, const Vec3& nrm) {
    Vec3 un = nrm / sss::norm(nrm);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < n; ++i) {
        double s = sss::dot(cs.at(2 * kPi * i / n) - p0, un);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    if (lo <= 0 && hi >= 0) return 0;
    return lo > 0 ? lo : -hi;
}

// Shortest path on the cube surface found by optimizing edge-crossing points
// over every face sequence with at most two intermediate faces. Each leg is a
// straight segment inside one face, so every candidate is a genuine surface path.
inline Vec3 cube_point(int face, double u, double v) {
    int ax = face / 2;
    double sg = face % 2 == 0 ? 1 : -1;
    Vec3 p;
    p[ax] = sg;
    int iu = ax == 0 ? 1 : 0, iv = ax == 2 ? 1 : 2;  // remaining axes, ascending
    p[iu] = u;
    p[iv] = v;
    return p;
}

inline Vec3 edge_point(int f, int g, double s) {
    Vec3 p;
    int a = f / 2, b = g / 2, c = 3 - a - b;
    p[a] = f % 2 == 0 ? 1 : -1;
    p[b] = g % 2 == 0 ? 1 : -1;
    p[c] = s;
    return p;
}

inline double polyline_cost(const Vec3& a, const Vec3& b, const std::vector<int>& seq, const double* s) {
    Vec3 prev = a;
    double len = 0;
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
        Vec3 e = edge_point(seq[i], seq[i + 1], s[i]);
        len += sss::norm(e - prev);
        prev = e;
    }
    return len + sss::norm(b - prev);
}

inline double cube_geodesic(int fa, const Vec3& a, int fb, const Vec3& b) {
    if (fa == fb) return sss::norm(a - b);
    auto adjacent = [](int f, int g) { return f / 2 != g / 2; };
    std::vector<std::vector<int>> seqs;
    for (int m1 = -1; m1 < 6; ++m1)
        for (int m2 = -1; m2 < 6; ++m2) {
            if (m1 < 0 && m2 >= 0) continue;
            std::vector<int> s{fa};
            if (m1 >= 0) s.push_back(m1);
            if (m2 >= 0) s.push_back(m2);
            s.push_back(fb);
            bool ok = true;
            for (size_t i = 0; i + 1 < s.size(); ++i) ok = ok && adjacent(s[i], s[i + 1]);
            for (size_t i = 0; i < s.size(); ++i)
                for (size_t j = i + 1; j < s.size(); ++j) ok = ok && s[i] != s[j];
            if (ok) seqs.push_back(s);
        }
    double best = std::numeric_limits<double>::infinity();
    for (auto& seq : seqs) {
        int k = int(seq.size()) - 1;
        double s[3] = {0, 0, 0}, bs[3] = {0, 0, 0};
        double bc = std::numeric_limits<double>::infinity();
        int grid = k == 1 ? 201 : (k == 2 ? 41 : 13);
        int total = 1;
        for (int i = 0; i < k; ++i) total *= grid;
        for (int idx = 0; idx < total; ++idx) {
            int r = idx;
            for (int i = 0; i < k; ++i) {
                s[i] = -1 + 2.0 * (r % grid) / (grid - 1);
                r /= grid;
            }
            double c = polyline_cost(a, b, seq, s);
            if (c < bc) {
                bc = c;
                std::copy(s, s + 3, bs);
            }
        }
        // The cost is convex in each crossing; cyclic golden-section sweeps.
        for (int sweep = 0; sweep < 60; ++sweep)
            for (int i = 0; i < k; ++i) {
                double lo = -1, hi = 1;
                for (int it = 0; it < 80; ++it) {
                    double m1 = lo + (hi - lo) * 0.381966, m2 = hi - (hi - lo) * 0.381966;
                    bs[i] = m1;
                    double c1 = polyline_cost(a, b, seq, bs);
                    bs[i] = m2;
                    double c2 = polyline_cost(a, b, seq, bs);
                    if (c1 < c2) hi = m2;
                    else lo = m1;
                }
                bs[i] = 0.5 * (lo + hi);
            }
        best = std::min(best, polyline_cost(a, b, seq, bs));
    }
    return best;
}

// Uniform configuration of a product box: position in the cube, direction
// uniform in the chart square.
inline sss::Config sample_config(Rng& rng, const sss::BoxShape& b) {
    Vec3 h{b.half, b.half, b.half};
    sss::Config c;
    c.p = rng.in_box(b.center - h, b.center + h);
    const sss::RotBox& r = b.rot;
    if (r.whole) {
        c.dir = sss::project_to_cube(rng.unit());
    } else {
        double u = rng.uni(r.u0, r.u0 + r.w), v = rng.uni(r.v0, r.v0 + r.w);
        c.dir = sss::project_to_cube(cube_point(r.face, u, v));
    }
    return c;
}

inline Vec3 unit_dir(const sss::Config& c) {
    Vec3 q = cube_point(c.dir.face, c.dir.u, c.dir.v);
    return q / sss::norm(q);
}

// Points of the robot body at configuration c (n samples).
inline std::vector<Vec3> footprint_samples(const sss::Robot& r, const sss::Config& c, int n) {
    std::vector<Vec3> out;
    Vec3 d = unit_dir(c);
    if (r.kind == sss::RobotKind::Rod) {
        for (int i = 0; i < n; ++i) out.push_back(c.p + d * (r.r0 * i / (n - 1)));
    } else {
        CircleSampler cs(c.p, d, r.r0);
        for (int i = 0; i < n; ++i) out.push_back(cs.at(2 * kPi * i / n));
    }
    return out;
}

// Distance from the sampled body to the obstacle surfaces, zero if any sample
// is inside an obstacle. Exact up to the sample spacing.
inline double sampled_clearance(const sss::Robot& r, const sss::Config& c, const sss::Scene& s, int n) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& p : footprint_samples(r, c, n)) {
        for (auto& f : s.features) best = std::min(best, feature_point(f, p));
        if (ray_cast_inside_union(s, p)) return 0;
    }
    return best;
}

inline double sample_spacing(const sss::Robot& r, int n) {
    return r.kind == sss::RobotKind::Rod ? r.r0 / (n - 1) : 2 * kPi * r.r0 / n;
}

} // namespace oracle
