#include <doctest.h>

#include "../oracles.hpp"
#include "sss/rod.hpp"

using namespace sss;

namespace {

BoxShape random_box(oracle::Rng& rng, bool allow_full) {
    int level = rng.index(5) + (allow_full ? 0 : 1);
    double w = std::ldexp(2.0, -level);
    int f = rng.index(6), cells = int(2 / w);
    RotBox r = level == 0 ? RotBox::full_face(f)
                          : RotBox{false, f, -1 + w * rng.index(cells), -1 + w * rng.index(cells), w};
    return BoxShape{rng.in_box({0, 0, 0}, {100, 100, 100}), rng.uni(0.1, 8), r};
}

} // namespace

TEST_CASE("rod footprint") {
    Robot rod{RobotKind::Rod, 1, 0};
    Segment s = rod_footprint(rod, make_config({0, 0, 0}, {1, 0, 0}));
    CHECK(s.a == Vec3{0, 0, 0});
    CHECK(norm(s.b - Vec3{1, 0, 0}) < 1e-15);
    Segment d = rod_footprint(rod, make_config({0, 0, 0}, {1, 1, 1}));
    CHECK(norm(d.b - Vec3{1, 1, 1} / std::sqrt(3.0)) < 1e-15);
    oracle::Rng rng(41);
    Robot r7{RobotKind::Rod, 7, 0};
    for (int i = 0; i < 1000; ++i) {
        Segment g = rod_footprint(r7, make_config(rng.in_box({0, 0, 0}, {9, 9, 9}), rng.unit()));
        CHECK(norm(g.b - g.a) == doctest::Approx(7).epsilon(1e-14));
    }
}

TEST_CASE("inner footprint holds the rods of its directions only") {
    oracle::Rng rng(42);
    for (int t = 0; t < 200; ++t) {
        Robot rod{RobotKind::Rod, rng.uni(5, 60), 0};
        BoxShape b = random_box(rng, false);
        b.half = 0;
        Pi1Set in = rod_inner_footprint(rod, b);
        for (int k = 0; k < 50; ++k) {
            Config c = oracle::sample_config(rng, b);
            for (const Vec3& p : oracle::footprint_samples(rod, c, 20)) CHECK(contains(in, p, 1e-9 * rod.r0));
        }
        // A direction outside the chart square puts the far end outside the square cone.
        CubePoint ctr = rotbox_center(b.rot);
        int axis = face_axis(b.rot.face) == 0 ? 1 : 0;
        Vec3 out = oracle::cube_point(b.rot.face, ctr.u, ctr.v);
        out[axis] = b.rot.u0 + b.rot.w + 0.05;
        if (out[axis] <= 1) {
            Vec3 tip = b.center + normalized(out) * rod.r0;
            CHECK_FALSE(contains(in, tip));
        }
    }
}

TEST_CASE("rod approximate footprint contains sampled footprints") {
    oracle::Rng rng(43);
    int violations = 0;
    for (int t = 0; t < 300; ++t) {
        Robot rod{RobotKind::Rod, rng.uni(5, 60), t % 3 == 0 ? rng.uni(0, 2) : 0};
        BoxShape b = random_box(rng, true);
        Sigma2Set s = rod_approx_footprint(rod, b);
        for (int k = 0; k < 100; ++k) {
            Config c = oracle::sample_config(rng, b);
            for (const Vec3& p : oracle::footprint_samples(rod, c, 32)) violations += !contains(s, p, 1e-9 * rod.r0);
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("rod approximate footprint without expansion") {
    Robot rod{RobotKind::Rod, 10, 0};
    BoxShape b{{0, 0, 0}, 0, RotBox{false, PZ, -0.25, -0.25, 0.5}};
    Sigma2Set s = rod_approx_footprint(rod, b);
    Pi1Set in = rod_inner_footprint(rod, b);
    oracle::Rng rng(44);
    for (int i = 0; i < 5000; ++i) {
        Vec3 p = rng.in_box({-12, -12, -12}, {12, 12, 12});
        CHECK(contains(s, p) == contains(in, p));
    }
}

TEST_CASE("rod box feature test") {
    Robot rod{RobotKind::Rod, 10, 0};
    BoxShape b{{0, 0, 0}, 1, RotBox{false, PZ, -0.25, -0.25, 0.5}};
    double reach = rod.r0 + b.radius();
    CHECK_FALSE(rod_box_feature_test(rod, b, make_wall({-50, -50, reach + 1}, {50, -50, reach + 1}, {0, 50, reach + 1})));
    CHECK(rod_box_feature_test(rod, b, make_corner({0, 0, 5})));
}
