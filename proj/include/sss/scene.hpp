#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sss/geom3.hpp"
#include "sss/robot.hpp"

namespace sss {

struct SceneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Polyhedron {
    std::string name;
    std::vector<Vec3> verts;
    std::vector<std::array<int, 3>> tris;  // outward, counter-clockwise seen from outside
};

// Axis-aligned cube bounding all configurations' positions.
struct WorldBox {
    Vec3 lo{0, 0, 0};
    double size = 512;

    Vec3 hi() const { return lo + Vec3{size, size, size}; }
    Vec3 center() const { return lo + Vec3{size, size, size} * 0.5; }
    double diameter() const { return size * std::sqrt(3.0); }
    bool contains(const Vec3& p) const;
};

struct PolyInfo {
    int first = 0;  // index of its first feature in Scene::features
    int num_corners = 0, num_edges = 0, num_walls = 0;
    Vec3 bcenter;
    double bradius = 0;
};

struct Scene {
    WorldBox world;
    std::string name;
    std::string metadata = "{}";  // free-form JSON object carried through files
    std::vector<Polyhedron> polys;
    std::vector<PolyInfo> info;
    std::vector<Feature> features;
    std::vector<Vec3> pseudo_normal;  // per feature
    std::vector<Vec3> fcenter;        // bounding sphere per feature
    std::vector<double> fradius;
    std::vector<int> tri_corner;      // per polyhedron triangle vertex -> feature (flattened)
    std::vector<std::vector<std::array<int, 3>>> tri_edge;  // per polyhedron: tri -> edge features ab, bc, ca

    int num_features() const { return int(features.size()); }
    double tolerance() const { return 1e-12 * world.diameter(); }
};

// Throws SceneError naming the polyhedron and the defect.
void validate_polyhedron(const Polyhedron& p, int index);
Scene build_scene(const WorldBox& world, std::vector<Polyhedron> polys, const std::string& name = "");

Polyhedron make_box_polyhedron(const Vec3& lo, const Vec3& hi, const std::string& name = "box");
Polyhedron make_tetrahedron(const std::array<Vec3, 4>& v, const std::string& name = "tet");

struct ClosestFeature {
    int feature = -1;  // global feature index
    double distance = 0;
    Vec3 point;
};

ClosestFeature closest_feature(const Scene& s, int poly, const Vec3& q);

enum class CornerClass { PseudoConvex, PseudoConcave };
// q must have the corner as its closest boundary point.
CornerClass classify_corner(const Scene& s, int corner_feature, const Vec3& q);

bool point_inside_polyhedron(const Scene& s, int poly, const Vec3& q);
bool point_inside_union(const Scene& s, const Vec3& q);

// Distance from the robot placed at c to the obstacles, zero when touching or inside.
double clearance(const Robot& r, const Config& c, const Scene& s);

Scene gen_random_tetrahedra(int n, uint64_t seed, const WorldBox& world, double size_min, double size_max);

} // namespace sss
