#pragma once

#include <string>

#include "sss/s2atlas.hpp"

namespace sss {

enum class RobotKind { Rod, Ring };

struct Robot {
    RobotKind kind = RobotKind::Rod;
    double r0 = 1;   // rod length or ring radius
    double tau = 0;  // thickness
};

// Position plus direction on the cube model of S^2.
struct Config {
    Vec3 p;
    CubePoint dir;

    Vec3 unit_dir() const { return lift_to_sphere(dir); }
};

// Product box: cube of half-width half around center, times a rotational box.
struct BoxShape {
    Vec3 center;
    double half = 1;
    RotBox rot;

    double radius() const { return half * std::sqrt(3.0); }
    BoxShape scaled(double factor) const { return BoxShape{center, half * factor, rotbox_scaled(rot, factor)}; }
};

inline Config make_config(const Vec3& p, const Vec3& d) { return Config{p, project_to_cube(d)}; }

const char* robot_name(RobotKind k);
RobotKind parse_robot(const std::string& s);

} // namespace sss
