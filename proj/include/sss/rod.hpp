#pragma once

#include "sss/geom3.hpp"
#include "sss/robot.hpp"

namespace sss {

Segment rod_footprint(const Robot& r, const Config& c);
// Footprint of the rotational part alone, anchored at the box center.
Pi1Set rod_inner_footprint(const Robot& r, const BoxShape& b);
Sigma2Set rod_approx_footprint(const Robot& r, const BoxShape& b);
bool rod_box_feature_test(const Robot& r, const BoxShape& b, const Feature& f, double tol = 0);

} // namespace sss
