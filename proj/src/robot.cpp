#include "sss/robot.hpp"

#include <stdexcept>

namespace sss {

const char* robot_name(RobotKind k) { return k == RobotKind::Rod ? "rod" : "ring"; }

RobotKind parse_robot(const std::string& s) {
    if (s == "rod") return RobotKind::Rod;
    if (s == "ring") return RobotKind::Ring;
    throw std::invalid_argument("unknown robot '" + s + "' (expected rod or ring)");
}

} // namespace sss
