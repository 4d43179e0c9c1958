#include "sss/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "sss/circle_sep.hpp"

namespace sss {

bool WorldBox::contains(const Vec3& p) const {
    Vec3 h = hi();
    return p.x >= lo.x && p.y >= lo.y && p.z >= lo.z && p.x <= h.x && p.y <= h.y && p.z <= h.z;
}

namespace {

std::string label(const Polyhedron& p, int index) {
    std::ostringstream os;
    os << "polyhedron #" << index;
    if (!p.name.empty()) os << " '" << p.name << "'";
    return os.str();
}

double signed_volume(const Polyhedron& p) {
    double v = 0;
    for (const auto& t : p.tris) v += dot(p.verts[t[0]], cross(p.verts[t[1]], p.verts[t[2]]));
    return v / 6;
}

} // namespace

void validate_polyhedron(const Polyhedron& p, int index) {
    auto fail = [&](const std::string& what) { throw SceneError(label(p, index) + ": " + what); };
    const int nv = int(p.verts.size());
    if (nv < 4) fail("needs at least 4 vertices");
    if (p.tris.size() < 4) fail("needs at least 4 triangles");
    for (const auto& v : p.verts)
        if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) fail("non-finite vertex coordinate");
    std::vector<int> used(nv, 0);
    std::map<std::pair<int, int>, std::vector<int>> edges;  // undirected -> signed uses
    double scale = 0;
    for (const auto& v : p.verts) scale = std::fmax(scale, norm_inf(v));
    for (size_t t = 0; t < p.tris.size(); ++t) {
        const auto& tr = p.tris[t];
        for (int k = 0; k < 3; ++k)
            if (tr[k] < 0 || tr[k] >= nv) fail("triangle " + std::to_string(t) + " references missing vertex " + std::to_string(tr[k]));
        if (tr[0] == tr[1] || tr[1] == tr[2] || tr[0] == tr[2]) fail("triangle " + std::to_string(t) + " repeats a vertex");
        Vec3 n = cross(p.verts[tr[1]] - p.verts[tr[0]], p.verts[tr[2]] - p.verts[tr[0]]);
        if (norm(n) <= 1e-14 * std::fmax(1.0, scale * scale)) fail("triangle " + std::to_string(t) + " has zero area");
        for (int k = 0; k < 3; ++k) {
            int a = tr[k], b = tr[(k + 1) % 3];
            used[a] = 1;
            edges[{std::min(a, b), std::max(a, b)}].push_back(a < b ? 1 : -1);
        }
    }
    for (int i = 0; i < nv; ++i)
        if (!used[i]) fail("vertex " + std::to_string(i) + " is not used by any triangle");
    for (const auto& [e, uses] : edges) {
        std::string en = "edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
        if (uses.size() != 2) fail(en + " is shared by " + std::to_string(uses.size()) + " triangles, expected 2");
        if (uses[0] == uses[1]) fail(en + " is traversed twice in the same direction (inconsistent orientation)");
    }
    // each vertex link must be a single cycle
    for (int v = 0; v < nv; ++v) {
        std::map<int, int> next;  // around v: for triangle (v,a,b) map a -> b
        for (const auto& tr : p.tris)
            for (int k = 0; k < 3; ++k)
                if (tr[k] == v) next[tr[(k + 1) % 3]] = tr[(k + 2) % 3];
        int start = next.begin()->first, cur = start, steps = 0;
        do {
            auto it = next.find(cur);
            if (it == next.end()) break;
            cur = it->second;
            ++steps;
        } while (cur != start && steps <= int(next.size()));
        if (cur != start || steps != int(next.size())) fail("vertex " + std::to_string(v) + " is not a manifold vertex");
    }
    if (!(signed_volume(p) > 0)) fail("is oriented inward or has no volume");
}

Scene build_scene(const WorldBox& world, std::vector<Polyhedron> polys, const std::string& name) {
    if (!(world.size > 0)) throw SceneError("world box must have positive size");
    Scene s;
    s.world = world;
    s.name = name;
    s.polys = std::move(polys);
    for (size_t i = 0; i < s.polys.size(); ++i) validate_polyhedron(s.polys[i], int(i));
    for (size_t pi = 0; pi < s.polys.size(); ++pi) {
        const Polyhedron& p = s.polys[pi];
        const int owner = int(pi);
        PolyInfo inf;
        inf.first = int(s.features.size());
        std::vector<Vec3> tnormal;
        for (const auto& t : p.tris) tnormal.push_back(normalized(cross(p.verts[t[1]] - p.verts[t[0]], p.verts[t[2]] - p.verts[t[0]])));
        // corners
        std::vector<Vec3> cn(p.verts.size());
        for (size_t t = 0; t < p.tris.size(); ++t)
            for (int k = 0; k < 3; ++k) {
                const Vec3& a = p.verts[p.tris[t][k]];
                Vec3 e1 = normalized(p.verts[p.tris[t][(k + 1) % 3]] - a);
                Vec3 e2 = normalized(p.verts[p.tris[t][(k + 2) % 3]] - a);
                cn[p.tris[t][k]] += tnormal[t] * std::acos(std::clamp(dot(e1, e2), -1.0, 1.0));
            }
        for (size_t v = 0; v < p.verts.size(); ++v) {
            Feature f = make_corner(p.verts[v], owner);
            f.local = int(v);
            s.features.push_back(f);
            s.pseudo_normal.push_back(cn[v]);
        }
        inf.num_corners = int(p.verts.size());
        // edges
        std::map<std::pair<int, int>, int> emap;
        std::vector<std::array<int, 3>> te(p.tris.size());
        std::vector<Vec3> en;
        for (size_t t = 0; t < p.tris.size(); ++t)
            for (int k = 0; k < 3; ++k) {
                int a = p.tris[t][k], b = p.tris[t][(k + 1) % 3];
                auto key = std::make_pair(std::min(a, b), std::max(a, b));
                auto it = emap.find(key);
                int id;
                if (it == emap.end()) {
                    id = int(s.features.size());
                    emap[key] = id;
                    Feature f = make_edge(p.verts[key.first], p.verts[key.second], owner);
                    f.local = int(s.features.size()) - inf.first;
                    s.features.push_back(f);
                    s.pseudo_normal.push_back(Vec3{});
                } else {
                    id = it->second;
                }
                s.pseudo_normal[id] += tnormal[t];
                te[t][k] = id;
            }
        inf.num_edges = int(emap.size());
        // walls
        for (size_t t = 0; t < p.tris.size(); ++t) {
            const auto& tr = p.tris[t];
            Feature f = make_wall(p.verts[tr[0]], p.verts[tr[1]], p.verts[tr[2]], owner);
            f.local = int(s.features.size()) - inf.first;
            s.features.push_back(f);
            s.pseudo_normal.push_back(tnormal[t]);
        }
        inf.num_walls = int(p.tris.size());
        Vec3 lo = p.verts[0], hi = p.verts[0];
        for (const auto& v : p.verts)
            for (int k = 0; k < 3; ++k) {
                lo[k] = std::fmin(lo[k], v[k]);
                hi[k] = std::fmax(hi[k], v[k]);
            }
        inf.bcenter = (lo + hi) * 0.5;
        inf.bradius = norm(hi - lo) * 0.5;
        s.info.push_back(inf);
        s.tri_edge.push_back(std::move(te));
    }
    for (const auto& f : s.features) {
        Vec3 c;
        int n = f.num_vertices();
        for (int i = 0; i < n; ++i) c += f.v[i];
        c = c / double(n);
        double r = 0;
        for (int i = 0; i < n; ++i) r = std::fmax(r, dist(c, f.v[i]));
        s.fcenter.push_back(c);
        s.fradius.push_back(r);
    }
    return s;
}

Polyhedron make_box_polyhedron(const Vec3& lo, const Vec3& hi, const std::string& name) {
    Polyhedron p;
    p.name = name;
    for (int i = 0; i < 8; ++i)
        p.verts.push_back({(i & 1) ? hi.x : lo.x, (i & 2) ? hi.y : lo.y, (i & 4) ? hi.z : lo.z});
    // two triangles per face, outward
    const int quads[6][4] = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
    for (const auto& q : quads) {
        p.tris.push_back({q[0], q[1], q[2]});
        p.tris.push_back({q[0], q[2], q[3]});
    }
    return p;
}

Polyhedron make_tetrahedron(const std::array<Vec3, 4>& v, const std::string& name) {
    Polyhedron p;
    p.name = name;
    p.verts.assign(v.begin(), v.end());
    const int faces[4][4] = {{1, 2, 3, 0}, {0, 3, 2, 1}, {0, 1, 3, 2}, {0, 2, 1, 3}};
    for (const auto& f : faces) {
        std::array<int, 3> t{f[0], f[1], f[2]};
        Vec3 n = cross(v[t[1]] - v[t[0]], v[t[2]] - v[t[0]]);
        if (dot(n, v[f[3]] - v[t[0]]) > 0) std::swap(t[1], t[2]);
        p.tris.push_back(t);
    }
    return p;
}

ClosestFeature closest_feature(const Scene& s, int poly, const Vec3& q) {
    const Polyhedron& p = s.polys[poly];
    const PolyInfo& inf = s.info[poly];
    ClosestFeature best;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t t = 0; t < p.tris.size(); ++t) {
        const auto& tr = p.tris[t];
        int region = 6;
        Vec3 c = closest_point_triangle(q, p.verts[tr[0]], p.verts[tr[1]], p.verts[tr[2]], &region);
        double d = norm2(c - q);
        if (d < bd) {
            bd = d;
            best.point = c;
            if (region < 3) best.feature = inf.first + tr[region];
            else if (region < 6) best.feature = s.tri_edge[poly][t][region - 3];
            else best.feature = inf.first + inf.num_corners + inf.num_edges + int(t);
        }
    }
    best.distance = std::sqrt(bd);
    return best;
}

CornerClass classify_corner(const Scene& s, int corner, const Vec3& q) {
    // The tangent plane at the corner of the ball around q separates q from
    // the corner's neighbourhood; which side the solid occupies is read off the
    // angle-weighted normal.
    return dot(q - s.features[corner].v[0], s.pseudo_normal[corner]) < 0 ? CornerClass::PseudoConcave
                                                                          : CornerClass::PseudoConvex;
}

bool point_inside_polyhedron(const Scene& s, int poly, const Vec3& q) {
    const PolyInfo& inf = s.info[poly];
    if (dist(q, inf.bcenter) > inf.bradius) return false;
    ClosestFeature cf = closest_feature(s, poly, q);
    if (s.features[cf.feature].kind == Feature::Corner) return classify_corner(s, cf.feature, q) == CornerClass::PseudoConcave;
    return dot(q - cf.point, s.pseudo_normal[cf.feature]) < 0;
}

bool point_inside_union(const Scene& s, const Vec3& q) {
    for (size_t i = 0; i < s.polys.size(); ++i)
        if (point_inside_polyhedron(s, int(i), q)) return true;
    return false;
}

double clearance(const Robot& r, const Config& c, const Scene& s) {
    if (s.features.empty()) return s.world.diameter();
    Vec3 d = c.unit_dir();
    Vec3 bc;
    double br;
    EmbeddedCircle circ;
    Vec3 probe;
    if (r.kind == RobotKind::Rod) {
        bc = c.p + d * (r.r0 / 2);
        br = r.r0 / 2;
        probe = c.p;
    } else {
        circ = EmbeddedCircle{c.p, d, r.r0};
        bc = c.p;
        br = r.r0;
        probe = c.p + any_orthogonal(d) * r.r0;
    }
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < s.features.size(); ++i) {
        double lb = dist(bc, s.fcenter[i]) - br - s.fradius[i];
        if (lb >= best) continue;
        double v = r.kind == RobotKind::Rod ? sep_segment_feature(c.p, c.p + d * r.r0, s.features[i])
                                            : sep_circle_feature(circ, s.features[i]);
        best = std::fmin(best, v);
    }
    if (best <= 0) return 0;
    if (point_inside_union(s, probe)) return 0;
    return std::fmax(0.0, best - r.tau);
}

Scene gen_random_tetrahedra(int n, uint64_t seed, const WorldBox& world, double size_min, double size_max) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::normal_distribution<double> N(0.0, 1.0);
    std::vector<Polyhedron> polys;
    for (int i = 0; i < n; ++i) {
        for (;;) {
            double size = size_min + (size_max - size_min) * U(rng);
            Vec3 c = world.lo + Vec3{U(rng), U(rng), U(rng)} * world.size;
            std::array<Vec3, 4> v;
            for (auto& p : v) {
                Vec3 g{N(rng), N(rng), N(rng)};
                p = c + normalized(g) * (size / 2);
            }
            double vol = std::fabs(dot(v[1] - v[0], cross(v[2] - v[0], v[3] - v[0]))) / 6;
            if (vol < 1e-9 * size * size * size) continue;
            polys.push_back(make_tetrahedron(v, "tet" + std::to_string(i)));
            break;
        }
    }
    return build_scene(world, std::move(polys), "rand" + std::to_string(n) + "-seed" + std::to_string(seed));
}

} // namespace sss
