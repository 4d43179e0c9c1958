#include "sss/s2atlas.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace sss {

const char* face_name(int face) {
    static const char* names[6] = {"+x", "-x", "+y", "-y", "+z", "-z"};
    return names[face];
}

namespace {

// The two chart axes of a face, in (u, v) order.
void chart_axes(int face, int& iu, int& iv) {
    int k = face_axis(face);
    iu = k == 0 ? 1 : 0;
    iv = k == 2 ? 1 : 2;
}

struct Affine {
    double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    Vec3 t;

    Vec3 operator()(const Vec3& x) const {
        Vec3 r;
        for (int i = 0; i < 3; ++i) r[i] = m[i][0] * x.x + m[i][1] * x.y + m[i][2] * x.z + t[i];
        return r;
    }
    Affine then_inner(const Affine& b) const {  // this o b
        Affine c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                c.m[i][j] = 0;
                for (int k = 0; k < 3; ++k) c.m[i][j] += m[i][k] * b.m[k][j];
            }
        Vec3 bt = b.t;
        c.t = (*this)(bt);
        return c;
    }
};

// Rotation about the shared edge of faces f and g carrying g into the plane of f.
Affine unfold(int f, int g, Vec3& e0, Vec3& e1) {
    int kf = face_axis(f), kg = face_axis(g);
    int j = 3 - kf - kg;
    Vec3 nf = unit_axis(kf, face_sign(f)), ng = unit_axis(kg, face_sign(g)), d = unit_axis(j);
    e0 = nf + ng - d;
    e1 = nf + ng + d;
    Affine a;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) a.m[r][c] = -ng[r] * nf[c] + nf[r] * ng[c] + d[r] * d[c];
    Vec3 me;
    for (int r = 0; r < 3; ++r) me[r] = a.m[r][0] * e0.x + a.m[r][1] * e0.y + a.m[r][2] * e0.z;
    a.t = e0 - me;
    return a;
}

bool faces_adjacent(int f, int g) { return face_axis(f) != face_axis(g); }

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

} // namespace

Vec3 chart_point(int face, double u, double v) {
    int iu, iv;
    chart_axes(face, iu, iv);
    Vec3 p;
    p[face_axis(face)] = face_sign(face);
    p[iu] = u;
    p[iv] = v;
    return p;
}

Vec3 cube_coords(const CubePoint& p) { return chart_point(p.face, p.u, p.v); }

CubePoint project_to_cube(const Vec3& q) {
    double m = norm_inf(q);
    if (!(m > 0) || !std::isfinite(m)) throw AtlasError("project_to_cube: undefined direction (zero or non-finite vector)");
    int face;
    if (q.x == m) face = PX;
    else if (-q.x == m) face = NX;
    else if (q.y == m) face = PY;
    else if (-q.y == m) face = NY;
    else if (q.z == m) face = PZ;
    else face = NZ;
    int iu, iv;
    chart_axes(face, iu, iv);
    return CubePoint{face, q[iu] / m, q[iv] / m};
}

Vec3 lift_to_sphere(const CubePoint& p) { return normalized(cube_coords(p)); }

double geodesic_dist_sphere(const Vec3& a, const Vec3& b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

double geodesic_dist_cube(const CubePoint& a, const CubePoint& b) {
    Vec3 pa = cube_coords(a), pb = cube_coords(b);
    if (a.face == b.face) return dist(pa, pb);
    int iu, iv;
    chart_axes(a.face, iu, iv);
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> seq{a.face};
    std::function<void(const Affine&, std::vector<std::pair<Vec3, Vec3>>&)> rec;
    rec = [&](const Affine& tf, std::vector<std::pair<Vec3, Vec3>>& edges) {
        int cur = seq.back();
        for (int g = 0; g < 6; ++g) {
            if (!faces_adjacent(cur, g)) continue;
            if (std::find(seq.begin(), seq.end(), g) != seq.end()) continue;
            Vec3 e0, e1;
            Affine r = unfold(cur, g, e0, e1);
            Affine tg = tf.then_inner(r);
            edges.emplace_back(tf(e0), tf(e1));
            seq.push_back(g);
            if (g == b.face) {
                Vec3 q = tg(pb);
                double ax = pa[iu], ay = pa[iv], dx = q[iu] - ax, dy = q[iv] - ay;
                bool ok = true;
                double last = -1e-12;
                for (auto& [s0, s1] : edges) {
                    double ex = s1[iu] - s0[iu], ey = s1[iv] - s0[iv];
                    double den = cross2(dx, dy, ex, ey);
                    if (std::fabs(den) < 1e-15) { ok = false; break; }
                    double wx = s0[iu] - ax, wy = s0[iv] - ay;
                    double t = cross2(wx, wy, ex, ey) / den;
                    double s = cross2(wx, wy, dx, dy) / den;
                    if (t < last - 1e-12 || t > 1 + 1e-12 || s < -1e-12 || s > 1 + 1e-12) { ok = false; break; }
                    last = t;
                }
                if (ok) best = std::fmin(best, std::hypot(dx, dy));
            } else if (seq.size() < 4) {
                rec(tg, edges);
            }
            seq.pop_back();
            edges.pop_back();
        }
    };
    std::vector<std::pair<Vec3, Vec3>> edges;
    rec(Affine{}, edges);
    return best;
}

std::vector<RotBox> split_rotbox(const RotBox& b) {
    std::vector<RotBox> out;
    if (b.whole) {
        for (int f = 0; f < 6; ++f) out.push_back(RotBox::full_face(f));
        return out;
    }
    double h = b.w / 2;
    for (int dv = 0; dv < 2; ++dv)
        for (int du = 0; du < 2; ++du) out.push_back(RotBox{false, b.face, b.u0 + du * h, b.v0 + dv * h, h});
    return out;
}

int rotbox_child_index(const RotBox& b, const CubePoint& p) {
    if (b.whole) return p.face;
    double h = b.w / 2;
    int du = p.u >= b.u0 + h ? 1 : 0;
    int dv = p.v >= b.v0 + h ? 1 : 0;
    return du + 2 * dv;
}

bool rotbox_contains(const RotBox& b, const CubePoint& p) {
    if (b.whole) return true;
    return p.face == b.face && p.u >= b.u0 && p.u <= b.u0 + b.w && p.v >= b.v0 && p.v <= b.v0 + b.w;
}

CubePoint rotbox_center(const RotBox& b) {
    if (b.whole) return CubePoint{PZ, 0, 0};
    return CubePoint{b.face, b.u0 + b.w / 2, b.v0 + b.w / 2};
}

double rotbox_area(const RotBox& b) { return b.whole ? 24.0 : b.w * b.w; }

void rotbox_bounds(const RotBox& b, Vec3& lo, Vec3& hi) {
    if (b.whole) {
        lo = {-1, -1, -1};
        hi = {1, 1, 1};
        return;
    }
    lo = chart_point(b.face, b.u0, b.v0);
    hi = chart_point(b.face, b.u0 + b.w, b.v0 + b.w);
}

int rotbox_contact_dim(const RotBox& a, const RotBox& b) {
    if (a.whole || b.whole) return 2;
    Vec3 la, ha, lb, hb;
    rotbox_bounds(a, la, ha);
    rotbox_bounds(b, lb, hb);
    int dim = 0;
    for (int i = 0; i < 3; ++i) {
        double lo = std::fmax(la[i], lb[i]), hi = std::fmin(ha[i], hb[i]);
        if (hi < lo) return -1;
        if (hi > lo) ++dim;
    }
    return dim;
}

bool rotbox_adjacent(const RotBox& a, const RotBox& b) { return rotbox_contact_dim(a, b) == 1; }

CubePoint rotbox_contact_point(const RotBox& a, const RotBox& b) {
    if (a.whole) return rotbox_center(b);
    if (b.whole) return rotbox_center(a);
    Vec3 la, ha, lb, hb;
    rotbox_bounds(a, la, ha);
    rotbox_bounds(b, lb, hb);
    Vec3 m;
    for (int i = 0; i < 3; ++i) m[i] = 0.5 * (std::fmax(la[i], lb[i]) + std::fmin(ha[i], hb[i]));
    return project_to_cube(m);
}

Cone3 rotbox_cone(const RotBox& b) {
    if (b.whole) throw AtlasError("rotbox_cone: whole sphere has no cone");
    Vec3 c = cube_coords(rotbox_center(b));
    double r = b.w / std::sqrt(2.0);
    double h = norm(c);
    Cone3 k;
    k.axis = c / h;
    k.capped = r >= h;
    k.half = std::asin(std::fmin(1.0, r / h));
    return k;
}

RotBox rotbox_scaled(const RotBox& b, double factor) {
    if (b.whole) return b;
    RotBox o = b;
    o.w = b.w * factor;
    o.u0 = b.u0 + (b.w - o.w) / 2;
    o.v0 = b.v0 + (b.w - o.w) / 2;
    return o;
}

} // namespace sss
