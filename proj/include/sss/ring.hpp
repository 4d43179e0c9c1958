#pragma once

#include "sss/geom3.hpp"
#include "sss/robot.hpp"

namespace sss {

EmbeddedCircle ring_footprint(const Robot& r, const Config& c);
Sigma2Set ring_approx_footprint(const Robot& r, const BoxShape& b);
bool ring_box_feature_test(const Robot& r, const BoxShape& b, const Feature& f, double tol = 0);

} // namespace sss
