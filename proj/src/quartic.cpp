#include "sss/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sss {

double eval_poly(const std::vector<double>& c, double x) {
    double r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

namespace {

constexpr int kMaxDeg = 8;

// Fixed-size buffers: this runs in the innermost loop of the ring classifier.
struct Poly {
    int deg = -1;
    double c[kMaxDeg + 1] = {};

    double operator()(double x) const {
        double r = 0;
        for (int i = deg; i >= 0; --i) r = r * x + c[i];
        return r;
    }
    double abs_scale(double x) const {
        double r = 0, ax = std::fabs(x), p = 1;
        for (int i = 0; i <= deg; ++i) {
            r += std::fabs(c[i]) * p;
            p *= ax;
        }
        return r;
    }
    Poly derivative() const {
        Poly d;
        d.deg = deg - 1;
        for (int i = 1; i <= deg; ++i) d.c[i - 1] = c[i] * double(i);
        return d;
    }
};

struct Roots {
    int n = 0;
    double r[kMaxDeg + 2] = {};
    void push(double x) { r[n++] = x; }
};

// Root of a polynomial on [lo, hi] given a sign change; bisection guarded Newton.
double refine(const Poly& p, const Poly& dp, double lo, double hi) {
    const double eps = std::numeric_limits<double>::epsilon();
    double flo = p(lo);
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double fx = p(x);
        if (fx == 0) return x;
        if ((fx < 0) == (flo < 0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        double d = dp(x);
        double nx = d != 0 ? x - fx / d : 0.5 * (lo + hi);
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        double tol = 4 * eps * std::fmax(1.0, std::fabs(x));
        if (std::fabs(nx - x) <= tol || hi - lo <= tol) return nx;
        x = nx;
    }
    return x;
}

// Real roots on [a, b] by isolating between consecutive critical points that
// lie inside the interval.
Roots roots_rec(const Poly& p, double a, double b) {
    Roots out;
    if (p.deg <= 0) return out;
    if (p.deg == 1) {
        double x = -p.c[0] / p.c[1];
        if (x >= a && x <= b) out.push(x);
        return out;
    }
    Poly dp = p.derivative();
    Roots crit = roots_rec(dp, a, b);
    double pts[kMaxDeg + 2];
    int np = 0;
    pts[np++] = a;
    for (int i = 0; i < crit.n; ++i)
        if (crit.r[i] > a && crit.r[i] < b) pts[np++] = crit.r[i];
    pts[np++] = b;
    Roots raw;
    double fx = p(pts[0]);
    if (fx == 0) raw.push(a);
    for (int i = 0; i < np; ++i) {
        bool is_crit = i > 0 && i + 1 < np;
        if (is_crit && std::fabs(fx) <= 1e-12 * p.abs_scale(pts[i])) raw.push(pts[i]);
        if (i + 1 < np) {
            double fy = p(pts[i + 1]);
            if ((fx < 0 && fy > 0) || (fx > 0 && fy < 0)) raw.push(refine(p, dp, pts[i], pts[i + 1]));
            else if (fy == 0 && i + 2 == np) raw.push(b);
            fx = fy;
        }
    }
    std::sort(raw.r, raw.r + raw.n);
    for (int i = 0; i < raw.n; ++i) {
        double r = raw.r[i];
        if (out.n > 0 && std::fabs(r - out.r[out.n - 1]) <= 1e-12 * std::fmax(1.0, std::fabs(r))) continue;
        out.push(r);
    }
    return out;
}

std::vector<double> solve(const double* coeffs, int n, const double* lo, const double* hi) {
    if (n > kMaxDeg + 1) throw std::invalid_argument("solve_poly: degree above 8");
    double mx = 0;
    for (int i = 0; i < n; ++i) mx = std::fmax(mx, std::fabs(coeffs[i]));
    if (mx == 0) return {};
    Poly p;
    p.deg = n - 1;
    while (p.deg > 0 && std::fabs(coeffs[p.deg]) <= 1e-14 * mx) --p.deg;
    if (p.deg <= 0) return {};
    // Normalize so the leading coefficient is one to keep magnitudes tame.
    for (int i = 0; i <= p.deg; ++i) p.c[i] = coeffs[i] / coeffs[p.deg];
    // Cauchy bound: every root lies strictly inside (-bound, bound).
    double bound = 0;
    for (int i = 0; i < p.deg; ++i) bound = std::fmax(bound, std::fabs(p.c[i]));
    bound += 1;
    double a = lo ? std::fmax(*lo, -bound) : -bound;
    double b = hi ? std::fmin(*hi, bound) : bound;
    if (a > b) return {};
    Roots r = roots_rec(p, a, b);
    return std::vector<double>(r.r, r.r + r.n);
}

} // namespace

std::vector<double> solve_poly(const std::vector<double>& coeffs) {
    return solve(coeffs.data(), int(coeffs.size()), nullptr, nullptr);
}

std::vector<double> solve_quartic(double c4, double c3, double c2, double c1, double c0) {
    const double c[5] = {c0, c1, c2, c3, c4};
    return solve(c, 5, nullptr, nullptr);
}

std::vector<double> solve_quartic_in(double c4, double c3, double c2, double c1, double c0, double lo, double hi) {
    const double c[5] = {c0, c1, c2, c3, c4};
    return solve(c, 5, &lo, &hi);
}

} // namespace sss
