#include "sss/scenarios.hpp"

#include "sss/io.hpp"

namespace sss {

namespace {

const WorldBox kWorld{{0, 0, 0}, 512};

} // namespace

Scene hollow_cube_scene() {
    const double a = 192, b = 320, t = 16;
    std::vector<Polyhedron> p;
    p.push_back(make_box_polyhedron({a, a, a}, {a + t, b, b}, "wall-x0"));
    p.push_back(make_box_polyhedron({b - t, a, a}, {b, b, b}, "wall-x1"));
    p.push_back(make_box_polyhedron({a, a, a}, {b, a + t, b}, "wall-y0"));
    p.push_back(make_box_polyhedron({a, b - t, a}, {b, b, b}, "wall-y1"));
    p.push_back(make_box_polyhedron({a, a, a}, {b, b, a + t}, "wall-z0"));
    p.push_back(make_box_polyhedron({a, a, b - t}, {b, b, b}, "wall-z1"));
    return build_scene(kWorld, std::move(p), "hollow-cube");
}

Scene two_slab_scene(double gap) {
    const double lo = -128, hi = 640, x0 = 240, x1 = 272;
    std::vector<Polyhedron> p;
    p.push_back(make_box_polyhedron({x0, lo, lo}, {x1, 256 - gap / 2, hi}, "slab-a"));
    p.push_back(make_box_polyhedron({x0, 256 + gap / 2, lo}, {x1, hi, hi}, "slab-b"));
    return build_scene(kWorld, std::move(p), "two-slab-gap-" + std::to_string(int(gap)));
}

Scene posts_scene() {
    std::vector<Polyhedron> p;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double x = 128 + 128 * i, y = 128 + 128 * j;
            p.push_back(make_box_polyhedron({x - 20, y - 20, -64}, {x + 20, y + 20, 576},
                                            "post-" + std::to_string(3 * i + j)));
        }
    return build_scene(kWorld, std::move(p), "posts");
}

Scene posts2_scene() {
    std::vector<Polyhedron> p;
    int n = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double x = 112 + 128 * i + (j % 2) * 32, y = 128 + 128 * j;
            double z0 = 64 * ((i + j) % 3), z1 = z0 + 384;
            std::string tag = "lpost-" + std::to_string(n++);
            p.push_back(make_box_polyhedron({x - 16, y - 16, z0}, {x + 16, y + 16, z1}, tag + "-stem"));
            p.push_back(make_box_polyhedron({x + 16, y - 16, z1 - 32}, {x + 80, y + 16, z1}, tag + "-arm"));
        }
    return build_scene(kWorld, std::move(p), "posts2");
}

std::vector<std::string> scenario_names() {
    return {"empty", "hollow-cube", "two-slab-gap", "two-slab-closed", "posts", "posts2", "rand40"};
}

Scene scenario_by_name(const std::string& name) {
    if (name == "empty") return empty_scene();
    if (name == "hollow-cube") return hollow_cube_scene();
    if (name == "two-slab-gap") return two_slab_scene(256);
    if (name == "two-slab-closed") return two_slab_scene(0);
    if (name == "posts") return posts_scene();
    if (name == "posts2") return posts2_scene();
    if (name == "rand40") {
        Scene s = gen_random_tetrahedra(40, 1, kWorld, 32, 128);
        s.metadata = R"({"count":40,"generator":"random-tetrahedra","seed":1,"size_max":128.0,"size_min":32.0})";
        return s;
    }
    throw InputError("unknown scenario '" + name + "'");
}

} // namespace sss
