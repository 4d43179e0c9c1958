#pragma once

#include <stdexcept>
#include <vector>

#include "sss/geom3.hpp"
#include "sss/vec3.hpp"

namespace sss {

// Faces of the cube [-1,1]^3 in tie priority order.
enum Face { PX = 0, NX = 1, PY = 2, NY = 3, PZ = 4, NZ = 5 };

inline int face_axis(int face) { return face / 2; }
inline double face_sign(int face) { return face % 2 == 0 ? 1.0 : -1.0; }
const char* face_name(int face);

// Point of the cube surface: face plus chart coordinates in [-1,1]^2.
struct CubePoint {
    int face = PZ;
    double u = 0, v = 0;
};

// Either the whole sphere or the square [u0,u0+w] x [v0,v0+w] of one face.
struct RotBox {
    bool whole = true;
    int face = 0;
    double u0 = -1, v0 = -1, w = 2;

    static RotBox whole_sphere() { return RotBox{}; }
    static RotBox full_face(int f) { return RotBox{false, f, -1, -1, 2}; }
    bool is_full_face() const { return !whole && w >= 2; }
    bool proper() const { return !whole && w < 2; }
};

struct Cone3 {
    Vec3 apex, axis;
    double half = 0;
    bool capped = false;
};

struct AtlasError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Vec3 chart_point(int face, double u, double v);
Vec3 cube_coords(const CubePoint& p);
CubePoint project_to_cube(const Vec3& q);
Vec3 lift_to_sphere(const CubePoint& p);
double geodesic_dist_sphere(const Vec3& a, const Vec3& b);
double geodesic_dist_cube(const CubePoint& a, const CubePoint& b);

std::vector<RotBox> split_rotbox(const RotBox& b);
int rotbox_child_index(const RotBox& b, const CubePoint& p);
bool rotbox_contains(const RotBox& b, const CubePoint& p);
CubePoint rotbox_center(const RotBox& b);
double rotbox_area(const RotBox& b);
// Dimension of the intersection of the closures (-1 when disjoint).
int rotbox_contact_dim(const RotBox& a, const RotBox& b);
bool rotbox_adjacent(const RotBox& a, const RotBox& b);
// A representative point of the closure intersection (valid when contact_dim >= 0).
CubePoint rotbox_contact_point(const RotBox& a, const RotBox& b);
Cone3 rotbox_cone(const RotBox& b);
RotBox rotbox_scaled(const RotBox& b, double factor);

// Closed axis-aligned bounds of the box on the cube surface.
void rotbox_bounds(const RotBox& b, Vec3& lo, Vec3& hi);

} // namespace sss
