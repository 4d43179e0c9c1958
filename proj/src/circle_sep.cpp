#include "sss/circle_sep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sss/quartic.hpp"

namespace sss {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct LineDist {
    const EmbeddedCircle& c;
    CircleFrame f;
    Vec3 o, u;

    double d2(double phi) const {
        Vec3 w = circle_point(c, f, phi) - o;
        double t = dot(w, u);
        return std::fmax(0.0, norm2(w) - t * t);
    }
    // first and second derivative of d2
    void derivs(double phi, double& g, double& h) const {
        Vec3 p = circle_point(c, f, phi);
        Vec3 w = p - o;
        Vec3 dp = (f.e2 * std::cos(phi) - f.e1 * std::sin(phi)) * c.radius;
        Vec3 ddp = c.center - p;
        double wu = dot(w, u), du = dot(dp, u);
        g = 2 * dot(w, dp) - 2 * wu * du;
        h = 2 * norm2(dp) + 2 * dot(w, ddp) - 2 * du * du - 2 * wu * dot(ddp, u);
    }
    double angle_of(const Vec3& p) const {
        Vec3 w = p - c.center;
        return std::atan2(dot(w, f.e2), dot(w, f.e1));
    }
    double polish(double phi) const {
        double best = d2(phi);
        for (int it = 0; it < 8; ++it) {
            double g, h;
            derivs(phi, g, h);
            if (!(h > 0)) break;
            double step = std::clamp(-g / h, -0.1, 0.1);
            double np = phi + step;
            double v = d2(np);
            if (!(v < best)) break;
            best = v;
            phi = np;
        }
        return phi;
    }
    // Dense scan with golden refinement of every sampled local minimum.
    std::vector<double> scan() const {
        const int n = 256;
        std::vector<double> val(n);
        for (int i = 0; i < n; ++i) val[i] = d2(2 * kPi * i / n);
        std::vector<double> out;
        for (int i = 0; i < n; ++i) {
            double a = val[(i + n - 1) % n], b = val[i], cc = val[(i + 1) % n];
            if (b > a || b > cc) continue;
            double lo = 2 * kPi * (i - 1) / n, hi = 2 * kPi * (i + 1) / n;
            const double gr = 0.6180339887498949;
            double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
            double f1 = d2(x1), f2 = d2(x2);
            for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
                if (f1 < f2) {
                    hi = x2; x2 = x1; f2 = f1; x1 = hi - gr * (hi - lo); f1 = d2(x1);
                } else {
                    lo = x1; x1 = x2; f1 = f2; x2 = lo + gr * (hi - lo); f2 = d2(x2);
                }
            }
            out.push_back(polish(0.5 * (lo + hi)));
        }
        return out;
    }
};

double dist_point_line(const Vec3& p, const Vec3& o, const Vec3& u) {
    Vec3 w = p - o;
    double t = dot(w, u);
    return std::sqrt(std::fmax(0.0, norm2(w) - t * t));
}

bool inside_convex(const Piece& q, const Vec3& m, const Vec3& x, double tol) {
    for (int i = 0; i < q.n; ++i) {
        const Vec3& a = q.v[i];
        const Vec3& b = q.v[(i + 1) % q.n];
        if (dot(cross(b - a, x - a), m) < -tol * norm(b - a)) return false;
    }
    return true;
}

Vec3 piece_normal(const Piece& q) {
    Vec3 m;
    for (int i = 1; i + 1 < q.n; ++i) m += cross(q.v[i] - q.v[0], q.v[i + 1] - q.v[0]);
    return m;
}

} // namespace

CircleFrame circle_frame(const EmbeddedCircle& c) {
    CircleFrame f;
    f.e1 = any_orthogonal(c.normal);
    f.e2 = cross(c.normal, f.e1);
    return f;
}

Vec3 circle_point(const EmbeddedCircle& c, const CircleFrame& f, double phi) {
    return c.center + (f.e1 * std::cos(phi) + f.e2 * std::sin(phi)) * c.radius;
}

double sep_circle_point(const EmbeddedCircle& c, const Vec3& p) {
    return dist_point_circle(p, c);
}

double sep_circle_plane(const EmbeddedCircle& c, const Vec3& p0, const Vec3& n) {
    Vec3 m = normalized(n);
    double s0 = dot(m, c.center - p0);
    double par = dot(m, c.normal);
    double amp = c.radius * std::sqrt(std::fmax(0.0, 1 - par * par));
    return std::fmax(0.0, std::fabs(s0) - amp);
}

std::vector<Vec3> circle_line_critical_points(const EmbeddedCircle& c, const Vec3& o, const Vec3& uin) {
    Vec3 u = normalized(uin);
    const Vec3& n = c.normal;
    const double r = c.radius;
    Vec3 up = u - n * dot(n, u);
    double lu = norm(up);
    std::vector<Vec3> pts;
    LineDist ld{c, circle_frame(c), o, u};
    if (lu < 1e-6) {
        for (double phi : ld.scan()) pts.push_back(circle_point(c, ld.f, phi));
        return pts;
    }
    // Frame in which the in-plane direction of the line is (1,1)/sqrt2, so the
    // quadratic pair stays well conditioned.
    Vec3 d = up / lu;
    Vec3 w = cross(n, d);
    Vec3 e1 = (d + w) / std::sqrt(2.0);
    Vec3 e2 = (d - w) / std::sqrt(2.0);
    Vec3 q = (o - c.center) / r;
    double qx = dot(q, e1), qy = dot(q, e2), qz = dot(q, n);
    double s = lu / std::sqrt(2.0);
    double k = qx * s + qy * s + qz * dot(u, n);
    double beta = qy - k * s;
    double delta = k * s - qx;
    double s2 = s * s, s4 = s2 * s2;
    std::vector<double> ys =
        solve_quartic_in(4 * s4, -4 * s2 * delta, delta * delta - 4 * s4 + beta * beta, 2 * delta * s2, s4 - beta * beta,
                         -1 - 1e-7, 1 + 1e-7);
    for (double y : ys) {
        if (std::fabs(y) > 1 + 1e-7) continue;
        y = std::clamp(y, -1.0, 1.0);
        double x = std::sqrt(std::fmax(0.0, 1 - y * y));
        for (double sx : {x, -x}) {
            Vec3 p = c.center + (e1 * sx + e2 * y) * r;
            pts.push_back(circle_point(c, ld.f, ld.polish(ld.angle_of(p))));
        }
    }
    if (pts.empty())
        for (double phi : ld.scan()) pts.push_back(circle_point(c, ld.f, phi));
    return pts;
}

double sep_circle_line(const EmbeddedCircle& c, const Vec3& o, const Vec3& uin) {
    Vec3 u = normalized(uin);
    const Vec3& n = c.normal;
    Vec3 up = u - n * dot(n, u);
    if (norm(up) < 1e-12) {
        Vec3 q = o - c.center;
        Vec3 perp = q - n * dot(n, q);
        return std::fabs(norm(perp) - c.radius);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& p : circle_line_critical_points(c, o, u)) best = std::fmin(best, dist_point_line(p, o, u));
    return best;
}

double sep_circle_segment(const EmbeddedCircle& c, const Vec3& a, const Vec3& b) {
    double best = std::fmin(sep_circle_point(c, a), sep_circle_point(c, b));
    Vec3 ab = b - a;
    double l2 = norm2(ab);
    if (l2 <= 1e-24 * std::fmax(1.0, c.radius * c.radius)) return best;
    Vec3 u = ab / std::sqrt(l2);
    Vec3 up = u - c.normal * dot(c.normal, u);
    if (norm(up) < 1e-12) {
        // parallel to the axis: the closest line point sits at the circle height
        double t = dot(c.center - a, ab) / l2;
        if (t > 0 && t < 1) best = std::fmin(best, sep_circle_line(c, a, u));
        return best;
    }
    for (const Vec3& p : circle_line_critical_points(c, a, u)) {
        double t = dot(p - a, ab) / l2;
        if (t <= 0 || t >= 1) continue;
        best = std::fmin(best, dist(p, a + ab * t));
    }
    return best;
}

namespace {

// Separation between the circle and the relative interior of a planar piece;
// infinity when the nearest point of the piece is not interior.
double interior_sep(const EmbeddedCircle& c, const Piece& q) {
    const double inf = std::numeric_limits<double>::infinity();
    Vec3 m = piece_normal(q);
    double ml = norm(m);
    if (ml == 0) return inf;
    m = m / ml;
    double tol = 1e-12 * std::fmax(c.radius, norm(q.v[0] - c.center));
    double s0 = dot(m, c.center - q.v[0]);
    CircleFrame f = circle_frame(c);
    double a = dot(m, f.e1), b = dot(m, f.e2);
    double amp = c.radius * std::sqrt(a * a + b * b);
    if (amp < 1e-12 * c.radius) {
        // circle parallel to the piece: in-plane gap between circle and polygon
        Vec3 cp = c.center - m * s0;
        if (inside_convex(q, m, cp, tol)) {
            double dmax = 0;
            for (int i = 0; i < q.n; ++i) dmax = std::fmax(dmax, dist(cp, q.v[i]));
            if (dmax < c.radius) return std::hypot(s0, c.radius - dmax);
            return std::fabs(s0);
        }
        return inf;
    }
    double phi0 = std::atan2(b, a);
    if (std::fabs(s0) <= amp) {
        double ac = std::acos(std::clamp(-s0 / amp, -1.0, 1.0));
        for (double phi : {phi0 + ac, phi0 - ac}) {
            Vec3 p = circle_point(c, f, phi);
            Vec3 pp = p - m * dot(m, p - q.v[0]);
            if (inside_convex(q, m, pp, tol)) return 0.0;
        }
        return inf;
    }
    double phi = s0 > 0 ? phi0 + kPi : phi0;
    Vec3 p = circle_point(c, f, phi);
    Vec3 pp = p - m * dot(m, p - q.v[0]);
    if (inside_convex(q, m, pp, tol)) return std::fabs(s0) - amp;
    return inf;
}

// Lower bound on the circle-segment separation from the distance to the
// centre and the height over the circle's plane.
double segment_lower_bound(const EmbeddedCircle& c, const Vec3& a, const Vec3& b) {
    double dmin = dist(closest_point_segment(c.center, a, b), c.center);
    double dmax = std::fmax(dist(a, c.center), dist(b, c.center));
    double ha = dot(c.normal, a - c.center), hb = dot(c.normal, b - c.center);
    double h = (ha > 0) == (hb > 0) ? std::fmin(std::fabs(ha), std::fabs(hb)) : 0.0;
    return std::max({dmin - c.radius, c.radius - dmax, h});
}

} // namespace

double sep_circle_piece(const EmbeddedCircle& c, const Piece& q) {
    if (q.n == 1) return sep_circle_point(c, q.v[0]);
    if (q.n == 2) return sep_circle_segment(c, q.v[0], q.v[1]);
    double best = interior_sep(c, q);
    for (int i = 0; i < q.n; ++i) best = std::fmin(best, sep_circle_segment(c, q.v[i], q.v[(i + 1) % q.n]));
    return best;
}

bool circle_piece_clear(const EmbeddedCircle& c, const Piece& q, double thr) {
    for (int i = 0; i < q.n; ++i)
        if (sep_circle_point(c, q.v[i]) <= thr) return false;
    if (q.n == 1) return true;
    if (q.n >= 3 && interior_sep(c, q) <= thr) return false;
    int ne = q.n == 2 ? 1 : q.n;
    for (int i = 0; i < ne; ++i) {
        const Vec3& a = q.v[i];
        const Vec3& b = q.v[(i + 1) % q.n];
        if (segment_lower_bound(c, a, b) > thr) continue;
        if (sep_circle_segment(c, a, b) <= thr) return false;
    }
    return true;
}

double sep_circle_triangle(const EmbeddedCircle& c, const Vec3& a, const Vec3& b, const Vec3& d) {
    Piece q;
    q.push(a);
    q.push(b);
    q.push(d);
    return sep_circle_piece(c, q);
}

double sep_circle_feature(const EmbeddedCircle& c, const Feature& f) {
    return sep_circle_piece(c, piece_of(f));
}

double sep_upper_bound_line(const EmbeddedCircle& c, const Vec3& a, const Vec3& b) {
    const Vec3& n = c.normal;
    Vec3 ap = a - n * dot(n, a - c.center);
    Vec3 bp = b - n * dot(n, b - c.center);
    double t = 0;
    closest_point_segment(c.center, ap, bp, &t);
    Vec3 q = lerp(a, b, t);
    Vec3 qp = lerp(ap, bp, t);
    double h = dot(n, q - c.center);
    double rho = dist(qp, c.center);
    return std::hypot(rho - c.radius, h);
}

} // namespace sss
