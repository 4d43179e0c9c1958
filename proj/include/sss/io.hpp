#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sss/planner.hpp"
#include "sss/scene.hpp"

namespace sss {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Scene parse_scene_text(const std::string& text, const std::string& source = "<scene>");
Scene load_scene_file(const std::string& path);
std::string scene_to_text(const Scene& s);
void save_scene_file(const Scene& s, const std::string& path);
Scene empty_scene(double size = 512);

// "x,y,z,dx,dy,dz"
Config parse_config(const std::string& text);

struct PlanRequest {
    std::string scene_name;
    PlannerConfig cfg;
    Config start, goal;
};

nlohmann::json result_to_json(const PlanRequest& req, const PlanResult& res, const Planner* planner);
std::string result_to_text(const nlohmann::json& doc);

struct LoadedResult {
    PlanRequest req;
    Outcome outcome = Outcome::NoPath;
    std::vector<Config> path;
    std::vector<BoxShape> boxes;
};
LoadedResult parse_result_text(const std::string& text, const std::string& source = "<result>");

// Plain segment soup, one "x1 y1 z1 x2 y2 z2" per line, sections introduced by '#'.
void write_trace(std::ostream& os, const Robot& r, const std::vector<Config>& path, const std::vector<BoxShape>& boxes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

} // namespace sss
