#pragma once
#include "sss/scene.hpp"

#include <string>
#include <vector>

namespace sss {

// Hand-built test worlds, all in a 512^3 box at the origin.

// Six slabs closing a cube shell; the cavity is [208,304]^3.
Scene hollow_cube_scene();

// A wall across x in [240,272] made of two slabs that leave a gap of the
// given width along y, centred at y = 256. Slabs overhang the world by 128.
Scene two_slab_scene(double gap);

// 3x3 grid of square pillars spanning the height of the world.
Scene posts_scene();

// L-shaped posts in a staggered grid.
Scene posts2_scene();

std::vector<std::string> scenario_names();
// Also accepts "rand40" (40 random tetrahedra, seed 1) and "empty".
Scene scenario_by_name(const std::string& name);

} // namespace sss
