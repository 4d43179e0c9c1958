#include "sss/geom3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

#include "sss/circle_sep.hpp"

namespace sss {

Feature make_corner(Vec3 a, int owner) {
    Feature f;
    f.kind = Feature::Corner;
    f.v = {a, a, a};
    f.owner = owner;
    return f;
}

Feature make_edge(Vec3 a, Vec3 b, int owner) {
    Feature f;
    f.kind = Feature::Edge;
    f.v = {a, b, b};
    f.owner = owner;
    return f;
}

Feature make_wall(Vec3 a, Vec3 b, Vec3 c, int owner) {
    Feature f;
    f.kind = Feature::Wall;
    f.v = {a, b, c};
    f.owner = owner;
    Vec3 n = cross(b - a, c - a);
    double l = norm(n);
    f.normal = l > 0 ? n / l : Vec3{};
    return f;
}

Piece piece_of(const Feature& f) {
    Piece p;
    for (int i = 0; i < f.num_vertices(); ++i) p.push(f.v[i]);
    return p;
}

// ---------------------------------------------------------------- distances

Vec3 closest_point_segment(const Vec3& p, const Vec3& a, const Vec3& b, double* tout) {
    Vec3 ab = b - a;
    double l2 = norm2(ab);
    double t = l2 > 0 ? std::clamp(dot(p - a, ab) / l2, 0.0, 1.0) : 0.0;
    if (tout) *tout = t;
    return a + ab * t;
}

Vec3 closest_point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c, int* region) {
    auto set = [&](int r) {
        if (region) *region = r;
    };
    Vec3 ab = b - a, ac = c - a, ap = p - a;
    double d1 = dot(ab, ap), d2 = dot(ac, ap);
    if (d1 <= 0 && d2 <= 0) { set(0); return a; }
    Vec3 bp = p - b;
    double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0 && d4 <= d3) { set(1); return b; }
    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) {
        set(3);
        return a + ab * (d1 / (d1 - d3));
    }
    Vec3 cp = p - c;
    double d5 = dot(ab, cp), d6 = dot(ac, cp);
    if (d6 >= 0 && d5 <= d6) { set(2); return c; }
    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) {
        set(5);
        return a + ac * (d2 / (d2 - d6));
    }
    double va = d3 * d6 - d5 * d4;
    if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
        set(4);
        return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
    }
    double den = 1 / (va + vb + vc);
    set(6);
    return a + ab * (vb * den) + ac * (vc * den);
}

Vec3 closest_point_piece(const Vec3& p, const Piece& q) {
    if (q.n == 1) return q.v[0];
    if (q.n == 2) return closest_point_segment(p, q.v[0], q.v[1]);
    Vec3 best = q.v[0];
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 1; i + 1 < q.n; ++i) {
        Vec3 c = closest_point_triangle(p, q.v[0], q.v[i], q.v[i + 1]);
        double d = norm2(c - p);
        if (d < bd) { bd = d; best = c; }
    }
    return best;
}

double dist_point_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
    return dist(p, closest_point_segment(p, a, b));
}

double dist_point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    return dist(p, closest_point_triangle(p, a, b, c));
}

double dist_segment_segment(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
    Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
    double a = dot(d1, d1), e = dot(d2, d2), f = dot(d2, r);
    double s, t;
    const double eps = 1e-300;
    if (a <= eps && e <= eps) return dist(p1, p2);
    if (a <= eps) {
        s = 0;
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        double c = dot(d1, r);
        if (e <= eps) {
            t = 0;
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            double b = dot(d1, d2);
            double den = a * e - b * b;
            s = den > 0 ? std::clamp((b * f - c * e) / den, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0) {
                t = 0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1) {
                t = 1;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return dist(p1 + d1 * s, p2 + d2 * t);
}

bool segment_hits_triangle(const Vec3& p0, const Vec3& p1, const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 d = p1 - p0;
    Vec3 e1 = b - a, e2 = c - a;
    Vec3 h = cross(d, e2);
    double det = dot(e1, h);
    double scale = norm(d) * norm(e1) * norm(e2);
    if (std::fabs(det) <= 1e-14 * scale) return false;
    double inv = 1 / det;
    Vec3 s = p0 - a;
    double u = dot(s, h) * inv;
    if (u < 0 || u > 1) return false;
    Vec3 q = cross(s, e1);
    double v = dot(d, q) * inv;
    if (v < 0 || u + v > 1) return false;
    double t = dot(e2, q) * inv;
    return t >= 0 && t <= 1;
}

double dist_segment_triangle(const Vec3& p0, const Vec3& p1, const Vec3& a, const Vec3& b, const Vec3& c) {
    if (segment_hits_triangle(p0, p1, a, b, c)) return 0;
    double d = std::fmin(dist_point_triangle(p0, a, b, c), dist_point_triangle(p1, a, b, c));
    d = std::fmin(d, dist_segment_segment(p0, p1, a, b));
    d = std::fmin(d, dist_segment_segment(p0, p1, b, c));
    d = std::fmin(d, dist_segment_segment(p0, p1, c, a));
    return d;
}

double dist_line_segment(const Vec3& o, const Vec3& uin, const Vec3& a, const Vec3& b) {
    Vec3 u = normalized(uin);
    Vec3 w0 = a - o;
    Vec3 ab = b - a;
    Vec3 w0p = w0 - u * dot(w0, u);
    Vec3 abp = ab - u * dot(ab, u);
    double l2 = norm2(abp);
    double t = l2 > 0 ? std::clamp(-dot(w0p, abp) / l2, 0.0, 1.0) : 0.0;
    return norm(w0p + abp * t);
}

double dist_line_piece(const Vec3& o, const Vec3& uin, const Piece& q) {
    Vec3 u = normalized(uin);
    if (q.n == 1) {
        Vec3 w = q.v[0] - o;
        return norm(w - u * dot(w, u));
    }
    if (q.n == 2) return dist_line_segment(o, u, q.v[0], q.v[1]);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < q.n; ++i) best = std::fmin(best, dist_line_segment(o, u, q.v[i], q.v[(i + 1) % q.n]));
    // piercing test
    Vec3 m;
    for (int i = 1; i + 1 < q.n; ++i) m += cross(q.v[i] - q.v[0], q.v[i + 1] - q.v[0]);
    double den = dot(m, u);
    if (den != 0) {
        double t = dot(m, q.v[0] - o) / den;
        Vec3 x = o + u * t;
        bool in = true;
        for (int i = 0; i < q.n && in; ++i)
            if (dot(cross(q.v[(i + 1) % q.n] - q.v[i], x - q.v[i]), m) < 0) in = false;
        if (in) return 0;
    }
    return best;
}

double dist_point_circle(const Vec3& p, const EmbeddedCircle& c) {
    Vec3 w = p - c.center;
    double h = dot(w, c.normal);
    double rho = norm(w - c.normal * h);
    return std::hypot(rho - c.radius, h);
}

double sep_point_feature(const Vec3& p, const Feature& f) {
    switch (f.kind) {
    case Feature::Corner: return dist(p, f.v[0]);
    case Feature::Edge: return dist_point_segment(p, f.v[0], f.v[1]);
    default: return dist_point_triangle(p, f.v[0], f.v[1], f.v[2]);
    }
}

double sep_segment_feature(const Vec3& p0, const Vec3& p1, const Feature& f) {
    switch (f.kind) {
    case Feature::Corner: return dist_point_segment(f.v[0], p0, p1);
    case Feature::Edge: return dist_segment_segment(p0, p1, f.v[0], f.v[1]);
    default: return dist_segment_triangle(p0, p1, f.v[0], f.v[1], f.v[2]);
    }
}

// ---------------------------------------------------------------- membership

namespace {

// h sin(a) - rho cos(a): nonnegative exactly inside the cone
double cone_g(const Vec3& apex, const Vec3& axis, double half, const Vec3& x) {
    Vec3 w = x - apex;
    double h = dot(w, axis);
    double rho = norm(w - axis * h);
    return h * std::sin(half) - rho * std::cos(half);
}

} // namespace

bool contains(const ElementarySet& e, const Vec3& x, double tol) {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, HalfSpace>) {
                return dot(s.n, x) >= s.d - tol;
            } else if constexpr (std::is_same_v<T, Ball>) {
                return dist(x, s.c) <= s.r + tol;
            } else if constexpr (std::is_same_v<T, BallComplement>) {
                return dist(x, s.c) >= s.r - tol;
            } else if constexpr (std::is_same_v<T, RoundCone>) {
                return cone_g(s.apex, s.axis, s.half, x) >= -tol;
            } else if constexpr (std::is_same_v<T, RoundConeComplement>) {
                return cone_g(s.apex, s.axis, s.half, x) <= tol;
            } else if constexpr (std::is_same_v<T, Cylinder>) {
                Vec3 w = x - s.p;
                return norm(w - s.axis * dot(w, s.axis)) <= s.r + tol;
            } else {
                return dist_point_circle(x, s.circle) <= s.t + tol;
            }
        },
        e);
}

bool contains(const Pi1Set& s, const Vec3& x, double tol) {
    for (const auto& e : s.terms)
        if (!contains(e, x, tol)) return false;
    return true;
}

bool contains(const Sigma2Set& s, const Vec3& x, double tol) {
    for (const auto& t : s.terms)
        if (contains(t, x, tol)) return true;
    return false;
}

ElementarySet expand_tau(const ElementarySet& e, double tau) {
    return std::visit(
        [&](const auto& s) -> ElementarySet {
            using T = std::decay_t<decltype(s)>;
            T o = s;
            if constexpr (std::is_same_v<T, HalfSpace>) {
                o.d = s.d - tau * norm(s.n);
            } else if constexpr (std::is_same_v<T, Ball>) {
                o.r = s.r + tau;
            } else if constexpr (std::is_same_v<T, BallComplement>) {
                o.r = std::fmax(0.0, s.r - tau);
            } else if constexpr (std::is_same_v<T, RoundCone>) {
                o.apex = s.apex - s.axis * (tau / std::sin(s.half));
            } else if constexpr (std::is_same_v<T, RoundConeComplement>) {
                o.apex = s.apex + s.axis * (tau / std::sin(s.half));
            } else if constexpr (std::is_same_v<T, Cylinder>) {
                o.r = s.r + tau;
            } else {
                o.t = s.t + tau;
            }
            return o;
        },
        e);
}

Pi1Set expand_tau(const Pi1Set& s, double tau) {
    Pi1Set o;
    o.refine = s.refine;
    for (const auto& e : s.terms) o.terms.push_back(expand_tau(e, tau));
    return o;
}

Sigma2Set expand_tau(const Sigma2Set& s, double tau) {
    Sigma2Set o;
    for (const auto& t : s.terms) o.terms.push_back(expand_tau(t, tau));
    return o;
}

// ---------------------------------------------------------------- clipping

std::optional<Segment> clip_segment_halfspace(const Segment& s, const HalfSpace& h) {
    double da = dot(h.n, s.a) - h.d, db = dot(h.n, s.b) - h.d;
    if (da < 0 && db < 0) return std::nullopt;
    if (da >= 0 && db >= 0) return s;
    Vec3 x = s.a + (s.b - s.a) * (da / (da - db));
    if (da >= 0) return Segment{s.a, x};
    return Segment{x, s.b};
}

Piece clip_piece_halfspace(const Piece& p, const HalfSpace& h, double tol) {
    Piece out;
    if (p.n == 0) return out;
    if (p.n == 1) {
        if (dot(h.n, p.v[0]) - h.d >= -tol) out = p;
        return out;
    }
    if (p.n == 2) {
        auto s = clip_segment_halfspace({p.v[0], p.v[1]}, HalfSpace{h.n, h.d - tol});
        if (s) {
            out.push(s->a);
            out.push(s->b);
        }
        return out;
    }
    double d[16];
    bool all_in = true, all_out = true;
    for (int i = 0; i < p.n; ++i) {
        d[i] = dot(h.n, p.v[i]) - h.d + tol;
        if (d[i] < 0) all_in = false; else all_out = false;
    }
    if (all_in) return p;
    if (all_out) return out;
    for (int i = 0; i < p.n; ++i) {
        int j = (i + 1) % p.n;
        if (d[i] >= 0) out.push(p.v[i]);
        if ((d[i] >= 0) != (d[j] >= 0)) out.push(p.v[i] + (p.v[j] - p.v[i]) * (d[i] / (d[i] - d[j])));
    }
    return out;
}

// ---------------------------------------------------------------- feature test

namespace {

bool certify_empty(const ElementarySet& e, const Piece& q, double tol) {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, HalfSpace>) {
                for (int i = 0; i < q.n; ++i)
                    if (dot(s.n, q.v[i]) >= s.d - tol) return false;
                return true;
            } else if constexpr (std::is_same_v<T, Ball>) {
                return dist(closest_point_piece(s.c, q), s.c) > s.r + tol;
            } else if constexpr (std::is_same_v<T, BallComplement>) {
                for (int i = 0; i < q.n; ++i)
                    if (dist(q.v[i], s.c) >= s.r - tol) return false;
                return true;
            } else if constexpr (std::is_same_v<T, RoundCone>) {
                double hmax = -std::numeric_limits<double>::infinity();
                for (int i = 0; i < q.n; ++i) hmax = std::fmax(hmax, dot(q.v[i] - s.apex, s.axis));
                double rmin = dist_line_piece(s.apex, s.axis, q);
                return hmax * std::sin(s.half) - rmin * std::cos(s.half) < -tol;
            } else if constexpr (std::is_same_v<T, RoundConeComplement>) {
                for (int i = 0; i < q.n; ++i)
                    if (cone_g(s.apex, s.axis, s.half, q.v[i]) <= tol) return false;
                return true;
            } else if constexpr (std::is_same_v<T, Cylinder>) {
                return dist_line_piece(s.p, s.axis, q) > s.r + tol;
            } else {
                // dist(x, circle) >= | |x-c| - r | and >= |n.(x-c)|; try those
                // and a vertex witness before the exact separation.
                const EmbeddedCircle& C = s.circle;
                double lo = std::numeric_limits<double>::infinity(), hi = -lo, rmax = 0;
                for (int i = 0; i < q.n; ++i) {
                    if (dist_point_circle(q.v[i], C) <= s.t + tol) return false;
                    double h = dot(C.normal, q.v[i] - C.center);
                    lo = std::fmin(lo, h);
                    hi = std::fmax(hi, h);
                    rmax = std::fmax(rmax, dist(q.v[i], C.center));
                }
                if (lo > s.t + tol || hi < -s.t - tol) return true;
                if (rmax < C.radius - s.t - tol) return true;
                if (dist(closest_point_piece(C.center, q), C.center) > C.radius + s.t + tol) return true;
                return circle_piece_clear(s.circle, q, s.t + tol);
            }
        },
        e);
}

bool exact_certificate(const ElementarySet& e) {
    return !std::holds_alternative<RoundCone>(e) && !std::holds_alternative<HalfSpace>(e);
}

bool has_witness(const std::vector<const ElementarySet*>& rest, const Piece& q, double tol) {
    Vec3 c;
    for (int i = 0; i < q.n; ++i) c += q.v[i];
    c = c / double(q.n);
    auto all_in = [&](const Vec3& x) {
        for (const auto* e : rest)
            if (!contains(*e, x, tol)) return false;
        return true;
    };
    if (all_in(c)) return true;
    for (int i = 0; i < q.n; ++i)
        if (all_in(q.v[i])) return true;
    return false;
}

// Balls and ball complements sharing a center: the distance to the center is
// continuous on a convex piece, so the individual certificates are exact.
bool concentric_shell(const std::vector<const ElementarySet*>& rest) {
    const Vec3* c = nullptr;
    for (const auto* e : rest) {
        const Vec3* ec = nullptr;
        if (const auto* b = std::get_if<Ball>(e)) ec = &b->c;
        else if (const auto* bc = std::get_if<BallComplement>(e)) ec = &bc->c;
        else return false;
        if (c && *c != *ec) return false;
        c = ec;
    }
    return true;
}

double piece_diameter(const Piece& q) {
    double d = 0;
    for (int i = 0; i < q.n; ++i)
        for (int j = i + 1; j < q.n; ++j) d = std::fmax(d, dist(q.v[i], q.v[j]));
    return d;
}

} // namespace

bool intersects_feature_conservative(const Pi1Set& s, const Feature& f, double tol) {
    Piece p = piece_of(f);
    for (const auto& e : s.terms)
        if (std::holds_alternative<Ball>(e) && certify_empty(e, p, tol)) return false;
    std::vector<const ElementarySet*> rest;
    for (const auto& e : s.terms) {
        if (const auto* h = std::get_if<HalfSpace>(&e)) {
            p = clip_piece_halfspace(p, *h, tol);
            if (p.n == 0) return false;
        } else {
            rest.push_back(&e);
        }
    }
    if (rest.empty()) return true;
    if (p.n == 1) return has_witness(rest, p, tol);
    for (const auto* e : rest)
        if (certify_empty(*e, p, tol)) return false;
    if (rest.size() == 1 && exact_certificate(*rest[0])) return true;
    if (concentric_shell(rest)) return true;
    if (has_witness(rest, p, tol)) return true;
    if (s.refine <= 0) return true;

    std::vector<Piece> stack;
    if (p.n <= 3) {
        stack.push_back(p);
    } else {
        for (int i = 1; i + 1 < p.n; ++i) {
            Piece t;
            t.push(p.v[0]);
            t.push(p.v[i]);
            t.push(p.v[i + 1]);
            stack.push_back(t);
        }
    }
    int budget = 20000;
    while (!stack.empty()) {
        Piece q = stack.back();
        stack.pop_back();
        bool empty = false;
        for (const auto* e : rest)
            if (certify_empty(*e, q, tol)) { empty = true; break; }
        if (empty) continue;
        if (has_witness(rest, q, tol)) return true;
        if (piece_diameter(q) <= s.refine || --budget <= 0) return true;
        if (q.n == 2) {
            Vec3 m = (q.v[0] + q.v[1]) * 0.5;
            Piece a, b;
            a.push(q.v[0]); a.push(m);
            b.push(m); b.push(q.v[1]);
            stack.push_back(a);
            stack.push_back(b);
        } else {
            Vec3 m01 = (q.v[0] + q.v[1]) * 0.5, m12 = (q.v[1] + q.v[2]) * 0.5, m20 = (q.v[2] + q.v[0]) * 0.5;
            const Vec3 tri[4][3] = {{q.v[0], m01, m20}, {m01, q.v[1], m12}, {m20, m12, q.v[2]}, {m01, m12, m20}};
            for (const auto& t : tri) {
                Piece c;
                c.push(t[0]); c.push(t[1]); c.push(t[2]);
                stack.push_back(c);
            }
        }
    }
    return false;
}

bool intersects_feature_conservative(const Sigma2Set& s, const Feature& f, double tol) {
    for (const auto& t : s.terms)
        if (intersects_feature_conservative(t, f, tol)) return true;
    return false;
}

} // namespace sss
