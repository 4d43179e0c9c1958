#include "sss/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "sss/ring.hpp"
#include "sss/rod.hpp"

namespace sss {

using nlohmann::json;

namespace {

std::string line_col(const std::string& text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(source + ": malformed document at " + line_col(text, e.byte) + ": " + e.what());
    }
}

struct Ctx {
    std::string source;
    [[noreturn]] void fail(const std::string& where, const std::string& what) const {
        throw InputError(source + ": " + where + ": " + what);
    }
    const json& field(const json& obj, const std::string& where, const char* key) const {
        if (!obj.is_object()) fail(where, "expected an object");
        auto it = obj.find(key);
        if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
        return *it;
    }
    double number(const json& v, const std::string& where) const {
        if (!v.is_number()) fail(where, "expected a number");
        double d = v.get<double>();
        if (!std::isfinite(d)) fail(where, "non-finite number");
        return d;
    }
    Vec3 vec3(const json& v, const std::string& where) const {
        if (!v.is_array() || v.size() != 3) fail(where, "expected [x, y, z]");
        return {number(v[0], where + "/0"), number(v[1], where + "/1"), number(v[2], where + "/2")};
    }
    std::string str(const json& v, const std::string& where) const {
        if (!v.is_string()) fail(where, "expected a string");
        return v.get<std::string>();
    }
};

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json config_json(const Config& c) {
    Vec3 d = c.unit_dir();
    return json::array({c.p.x, c.p.y, c.p.z, d.x, d.y, d.z});
}

Config config_from_json(const Ctx& cx, const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 6) cx.fail(where, "expected [x, y, z, dx, dy, dz]");
    double a[6];
    for (int i = 0; i < 6; ++i) a[i] = cx.number(v[i], where + "/" + std::to_string(i));
    Vec3 d{a[3], a[4], a[5]};
    if (norm_inf(d) == 0) cx.fail(where, "direction is the zero vector");
    return make_config({a[0], a[1], a[2]}, d);
}

json rotbox_json(const RotBox& r) {
    if (r.whole) return json{{"whole", true}};
    return json{{"face", face_name(r.face)}, {"u0", r.u0}, {"v0", r.v0}, {"w", r.w}};
}

RotBox rotbox_from_json(const Ctx& cx, const json& v, const std::string& where) {
    if (v.contains("whole") && v["whole"].is_boolean() && v["whole"].get<bool>()) return RotBox::whole_sphere();
    std::string f = cx.str(cx.field(v, where, "face"), where + "/face");
    int face = -1;
    for (int i = 0; i < 6; ++i)
        if (f == face_name(i)) face = i;
    if (face < 0) cx.fail(where + "/face", "unknown face '" + f + "'");
    return RotBox{false, face, cx.number(cx.field(v, where, "u0"), where + "/u0"),
                  cx.number(cx.field(v, where, "v0"), where + "/v0"), cx.number(cx.field(v, where, "w"), where + "/w")};
}

} // namespace

Scene parse_scene_text(const std::string& text, const std::string& source) {
    Ctx cx{source};
    json doc = parse_json(text, source);
    if (!doc.is_object()) cx.fail("/", "expected a JSON object");
    if (doc.contains("format") && doc["format"] != "sss-scene") cx.fail("/format", "expected \"sss-scene\"");
    std::string name = doc.contains("name") ? cx.str(doc["name"], "/name") : "";
    const json& wb = cx.field(doc, "/", "world_box");
    WorldBox world;
    world.lo = cx.vec3(cx.field(wb, "/world_box", "min"), "/world_box/min");
    world.size = cx.number(cx.field(wb, "/world_box", "size"), "/world_box/size");
    if (!(world.size > 0)) cx.fail("/world_box/size", "must be positive");
    std::vector<Polyhedron> polys;
    const json& ps = cx.field(doc, "/", "polyhedra");
    if (!ps.is_array()) cx.fail("/polyhedra", "expected an array");
    for (size_t i = 0; i < ps.size(); ++i) {
        std::string w = "/polyhedra/" + std::to_string(i);
        Polyhedron p;
        p.name = ps[i].contains("name") ? cx.str(ps[i]["name"], w + "/name") : "";
        const json& vs = cx.field(ps[i], w, "vertices");
        if (!vs.is_array()) cx.fail(w + "/vertices", "expected an array");
        for (size_t k = 0; k < vs.size(); ++k) p.verts.push_back(cx.vec3(vs[k], w + "/vertices/" + std::to_string(k)));
        const json& ts = cx.field(ps[i], w, "triangles");
        if (!ts.is_array()) cx.fail(w + "/triangles", "expected an array");
        for (size_t k = 0; k < ts.size(); ++k) {
            std::string tw = w + "/triangles/" + std::to_string(k);
            if (!ts[k].is_array() || ts[k].size() != 3) cx.fail(tw, "expected [i, j, k]");
            std::array<int, 3> t{};
            for (int j = 0; j < 3; ++j) {
                if (!ts[k][j].is_number_integer()) cx.fail(tw, "expected integer vertex indices");
                t[j] = ts[k][j].get<int>();
            }
            p.tris.push_back(t);
        }
        polys.push_back(std::move(p));
    }
    Scene s;
    try {
        s = build_scene(world, std::move(polys), name);
    } catch (const SceneError& e) {
        throw InputError(source + ": " + e.what());
    }
    if (doc.contains("metadata")) {
        if (!doc["metadata"].is_object()) cx.fail("/metadata", "expected an object");
        s.metadata = doc["metadata"].dump();
    }
    return s;
}

Scene load_scene_file(const std::string& path) { return parse_scene_text(read_file(path), path); }

std::string scene_to_text(const Scene& s) {
    json doc;
    doc["format"] = "sss-scene";
    doc["version"] = 1;
    doc["name"] = s.name;
    doc["metadata"] = json::parse(s.metadata);
    doc["world_box"] = {{"min", vec_json(s.world.lo)}, {"size", s.world.size}};
    json ps = json::array();
    for (const auto& p : s.polys) {
        json vs = json::array(), ts = json::array();
        for (const auto& v : p.verts) vs.push_back(vec_json(v));
        for (const auto& t : p.tris) ts.push_back(json::array({t[0], t[1], t[2]}));
        ps.push_back({{"name", p.name}, {"vertices", vs}, {"triangles", ts}});
    }
    doc["polyhedra"] = ps;
    return doc.dump(1) + "\n";
}

void save_scene_file(const Scene& s, const std::string& path) { write_file(path, scene_to_text(s)); }

Scene empty_scene(double size) { return build_scene(WorldBox{{0, 0, 0}, size}, {}, "empty"); }

Config parse_config(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InputError("configuration '" + text + "': '" + tok + "' is not a number");
        }
    }
    if (v.size() != 6) throw InputError("configuration '" + text + "': expected x,y,z,dx,dy,dz");
    Vec3 d{v[3], v[4], v[5]};
    if (norm_inf(d) == 0) throw InputError("configuration '" + text + "': direction is the zero vector");
    return make_config({v[0], v[1], v[2]}, d);
}

json result_to_json(const PlanRequest& req, const PlanResult& res, const Planner* planner) {
    json doc;
    doc["format"] = "sss-result";
    doc["version"] = 1;
    doc["outcome"] = outcome_name(res.outcome);
    doc["scene"] = req.scene_name;
    doc["robot"] = {{"kind", robot_name(req.cfg.robot.kind)}, {"size", req.cfg.robot.r0}, {"thickness", req.cfg.robot.tau}};
    doc["eps"] = req.cfg.eps;
    doc["strategy"] = strategy_name(req.cfg.strategy);
    doc["seed"] = req.cfg.seed;
    doc["max_boxes"] = req.cfg.max_boxes;
    doc["start"] = config_json(req.start);
    doc["goal"] = config_json(req.goal);
    json wp = json::array();
    for (const auto& c : res.path) wp.push_back(config_json(c));
    doc["waypoints"] = wp;
    json bx = json::array();
    if (planner)
        for (int id : res.path_boxes) {
            BoxShape s = planner->shape(id);
            bx.push_back({{"center", vec_json(s.center)}, {"half", s.half}, {"rot", rotbox_json(s.rot)}});
        }
    doc["path_boxes"] = bx;
    const PlanStats& st = res.stats;
    doc["stats"] = {{"boxes", st.boxes},          {"free_leaves", st.free},   {"stuck_leaves", st.stuck},
                    {"mixed_leaves", st.mixed},    {"splits", st.splits},      {"t_splits", st.t_splits},
                    {"r_splits", st.r_splits},     {"max_tlevel", st.max_tlevel}, {"max_rlevel", st.max_rlevel},
                    {"start_side_splits", st.start_side_splits}, {"goal_side_splits", st.goal_side_splits},
                    {"path_boxes", st.path_boxes}};
    return doc;
}

std::string result_to_text(const json& doc) { return doc.dump(1) + "\n"; }

LoadedResult parse_result_text(const std::string& text, const std::string& source) {
    Ctx cx{source};
    json doc = parse_json(text, source);
    if (!doc.is_object() || !doc.contains("format") || doc["format"] != "sss-result")
        cx.fail("/format", "expected \"sss-result\"");
    LoadedResult out;
    const json& rb = cx.field(doc, "/", "robot");
    try {
        out.req.cfg.robot.kind = parse_robot(cx.str(cx.field(rb, "/robot", "kind"), "/robot/kind"));
    } catch (const std::invalid_argument& e) {
        cx.fail("/robot/kind", e.what());
    }
    out.req.cfg.robot.r0 = cx.number(cx.field(rb, "/robot", "size"), "/robot/size");
    out.req.cfg.robot.tau = rb.contains("thickness") ? cx.number(rb["thickness"], "/robot/thickness") : 0.0;
    out.req.cfg.eps = cx.number(cx.field(doc, "/", "eps"), "/eps");
    std::string oc = cx.str(cx.field(doc, "/", "outcome"), "/outcome");
    if (oc == "PATH") out.outcome = Outcome::Path;
    else if (oc == "NO_PATH") out.outcome = Outcome::NoPath;
    else if (oc == "BUDGET_EXCEEDED") out.outcome = Outcome::Budget;
    else cx.fail("/outcome", "unknown outcome '" + oc + "'");
    out.req.start = config_from_json(cx, cx.field(doc, "/", "start"), "/start");
    out.req.goal = config_from_json(cx, cx.field(doc, "/", "goal"), "/goal");
    const json& wp = cx.field(doc, "/", "waypoints");
    if (!wp.is_array()) cx.fail("/waypoints", "expected an array");
    for (size_t i = 0; i < wp.size(); ++i) out.path.push_back(config_from_json(cx, wp[i], "/waypoints/" + std::to_string(i)));
    if (doc.contains("path_boxes") && doc["path_boxes"].is_array()) {
        const json& bx = doc["path_boxes"];
        for (size_t i = 0; i < bx.size(); ++i) {
            std::string w = "/path_boxes/" + std::to_string(i);
            BoxShape s;
            s.center = cx.vec3(cx.field(bx[i], w, "center"), w + "/center");
            s.half = cx.number(cx.field(bx[i], w, "half"), w + "/half");
            s.rot = rotbox_from_json(cx, cx.field(bx[i], w, "rot"), w + "/rot");
            out.boxes.push_back(s);
        }
    }
    return out;
}

void write_trace(std::ostream& os, const Robot& r, const std::vector<Config>& path, const std::vector<BoxShape>& boxes) {
    os << std::setprecision(17);
    auto seg = [&](const Vec3& a, const Vec3& b) {
        os << a.x << ' ' << a.y << ' ' << a.z << ' ' << b.x << ' ' << b.y << ' ' << b.z << '\n';
    };
    os << "# sss-trace 1\n# path\n";
    for (size_t i = 1; i < path.size(); ++i) seg(path[i - 1].p, path[i].p);
    os << "# footprints\n";
    for (const auto& c : path) {
        if (r.kind == RobotKind::Rod) {
            Segment s = rod_footprint(r, c);
            seg(s.a, s.b);
        } else {
            EmbeddedCircle e = ring_footprint(r, c);
            Vec3 e1 = any_orthogonal(e.normal), e2 = cross(e.normal, e1);
            const int n = 64;
            const double pi = 3.14159265358979323846;
            for (int i = 0; i < n; ++i) {
                double a0 = 2 * pi * i / n, a1 = 2 * pi * (i + 1) / n;
                seg(e.center + (e1 * std::cos(a0) + e2 * std::sin(a0)) * e.radius,
                    e.center + (e1 * std::cos(a1) + e2 * std::sin(a1)) * e.radius);
            }
        }
    }
    os << "# boxes\n";
    for (const auto& b : boxes) {
        Vec3 c[8];
        for (int i = 0; i < 8; ++i)
            c[i] = b.center + Vec3{(i & 1) ? b.half : -b.half, (i & 2) ? b.half : -b.half, (i & 4) ? b.half : -b.half};
        for (int i = 0; i < 8; ++i)
            for (int a = 0; a < 3; ++a)
                if (!(i & (1 << a))) seg(c[i], c[i | (1 << a)]);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

} // namespace sss
