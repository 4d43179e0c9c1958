#include "sss/ring.hpp"

#include <cmath>

namespace sss {

EmbeddedCircle ring_footprint(const Robot& r, const Config& c) { return EmbeddedCircle{c.p, c.unit_dir(), r.r0}; }

Sigma2Set ring_approx_footprint(const Robot& r, const BoxShape& b) {
    const double grow = b.radius() + r.tau;
    const double rin = std::fmax(0.0, r.r0 - grow);
    Sigma2Set out;
    if (!b.rot.proper()) {
        Pi1Set shell;
        shell.terms.push_back(Ball{b.center, r.r0 + grow});
        shell.terms.push_back(BallComplement{b.center, rin});
        out.terms.push_back(shell);
        return out;
    }
    Cone3 k = rotbox_cone(b.rot);
    const double th = k.half;
    const Vec3 a = k.axis;
    const double h = r.r0 * std::sin(th), rc = r.r0 * std::cos(th);
    for (double sg : {1.0, -1.0}) {
        Pi1Set t;
        t.terms.push_back(ThickRing{EmbeddedCircle{b.center + a * (sg * h), a, rc}, grow});
        out.terms.push_back(t);
    }
    const double pi = 3.14159265358979323846;
    Pi1Set ann;
    ann.terms.push_back(Ball{b.center, r.r0 + grow});
    ann.terms.push_back(BallComplement{b.center, rin});
    ann.terms.push_back(RoundConeComplement{b.center, a, pi / 2 - th});
    ann.terms.push_back(RoundConeComplement{b.center, -a, pi / 2 - th});
    ann.refine = grow / 8;
    out.terms.push_back(ann);
    return out;
}

bool ring_box_feature_test(const Robot& r, const BoxShape& b, const Feature& f, double tol) {
    return intersects_feature_conservative(ring_approx_footprint(r, b), f, tol);
}

} // namespace sss
