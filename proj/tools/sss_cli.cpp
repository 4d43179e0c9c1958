#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sss/io.hpp"
#include "sss/planner.hpp"
#include "sss/scenarios.hpp"

using namespace sss;

namespace {

enum Exit { kPath = 0, kNoPath = 1, kBudget = 2, kInput = 3 };

int exit_code(Outcome o) {
    switch (o) {
    case Outcome::Path: return kPath;
    case Outcome::NoPath: return kNoPath;
    default: return kBudget;
    }
}

struct PlanArgs {
    std::string robot = "rod";
    double length = 64, radius = 32, thickness = 0;
    std::string start, goal;
    double eps = 8;
    std::string strategy = "greedy";
    uint64_t seed = 1;
    size_t max_boxes = 2000000;
    int threads = 1;
    std::string scene, out, trace;
};

Robot make_robot(const PlanArgs& a) {
    Robot r;
    r.kind = parse_robot(a.robot);
    r.r0 = r.kind == RobotKind::Rod ? a.length : a.radius;
    r.tau = a.thickness;
    return r;
}

int run_plan(const PlanArgs& a) {
    Scene scene = a.scene.empty() ? empty_scene() : load_scene_file(a.scene);
    PlanRequest req;
    req.scene_name = a.scene.empty() ? "empty" : a.scene;
    req.cfg.robot = make_robot(a);
    req.cfg.eps = a.eps;
    req.cfg.strategy = parse_strategy(a.strategy);
    req.cfg.seed = a.seed;
    req.cfg.max_boxes = a.max_boxes;
    req.cfg.threads = a.threads;
    req.start = parse_config(a.start);
    req.goal = parse_config(a.goal);
    for (const Config* c : {&req.start, &req.goal})
        if (!scene.world.contains(c->p)) throw InputError("start/goal position lies outside the world box");
    Planner planner(scene, req.cfg);
    PlanResult res = planner.find_path(req.start, req.goal);
    auto doc = result_to_json(req, res, &planner);
    if (!a.out.empty()) write_file(a.out, result_to_text(doc));
    if (!a.trace.empty()) {
        std::vector<BoxShape> boxes;
        for (int id : res.path_boxes) boxes.push_back(planner.shape(id));
        std::ofstream os(a.trace);
        if (!os) throw InputError("cannot write '" + a.trace + "'");
        write_trace(os, req.cfg.robot, res.path, boxes);
    }
    std::printf("%s boxes=%zu free=%zu stuck=%zu mixed=%zu waypoints=%zu time=%.3fs\n", outcome_name(res.outcome),
                res.stats.boxes, res.stats.free, res.stats.stuck, res.stats.mixed, res.path.size(), res.stats.seconds);
    return exit_code(res.outcome);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Soft subdivision path planner for rod and ring robots"};
    app.require_subcommand(1);

    PlanArgs pa;
    auto* plan = app.add_subcommand("plan", "plan a path and write the result document");
    plan->add_option("--robot", pa.robot, "rod or ring")->check(CLI::IsMember({"rod", "ring"}));
    plan->add_option("--length", pa.length, "rod length");
    plan->add_option("--radius", pa.radius, "ring radius");
    plan->add_option("--thickness", pa.thickness, "robot thickness");
    plan->add_option("--start", pa.start, "x,y,z,dx,dy,dz")->required();
    plan->add_option("--goal", pa.goal, "x,y,z,dx,dy,dz")->required();
    plan->add_option("--eps", pa.eps, "resolution");
    plan->add_option("--strategy", pa.strategy, "bfs, greedy, dist+size, voronoi or random");
    plan->add_option("--seed", pa.seed, "seed of the random strategy");
    plan->add_option("--max-boxes", pa.max_boxes, "box budget");
    plan->add_option("--threads", pa.threads, "threads for child classification");
    plan->add_option("--scene", pa.scene, "scene file (default: empty 512^3 world)");
    plan->add_option("--out", pa.out, "result document");
    plan->add_option("--trace", pa.trace, "segment soup for visualization");

    int gcount = 40;
    uint64_t gseed = 1;
    double gworld = 512, gmin = 32, gmax = 128;
    std::string gout;
    auto* gen = app.add_subcommand("generate", "write a random tetrahedra scene");
    gen->add_option("--count", gcount, "number of tetrahedra");
    gen->add_option("--seed", gseed, "generator seed");
    gen->add_option("--world", gworld, "world box size");
    gen->add_option("--size-min", gmin, "smallest tetrahedron size");
    gen->add_option("--size-max", gmax, "largest tetrahedron size");
    gen->add_option("--out", gout, "scene file")->required();

    std::string xscene, xresult, xout;
    auto* exp = app.add_subcommand("export-trace", "write the segment soup of a saved result");
    exp->add_option("--result", xresult, "result document")->required();
    exp->add_option("--out", xout, "trace file")->required();

    std::string rscene, rresult;
    double rstep = 0;
    auto* rep = app.add_subcommand("replay", "check a saved path against the clearance oracle");
    rep->add_option("--scene", rscene, "scene file (default: empty 512^3 world)");
    rep->add_option("--result", rresult, "result document")->required();
    rep->add_option("--step", rstep, "sampling step (default eps/4)");

    std::string sname, sout;
    auto* scn = app.add_subcommand("scenario", "write one of the built-in test worlds");
    scn->add_option("--name", sname, "scenario name")->required()->check(CLI::IsMember(scenario_names()));
    scn->add_option("--out", sout, "scene file")->required();

    std::string bscene;
    std::vector<std::string> bstrats{"bfs", "greedy", "dist+size", "voronoi", "random"};
    PlanArgs ba;
    ba.start = "32,32,32,1,0,0";
    ba.goal = "480,480,480,1,0,0";
    auto* bench = app.add_subcommand("bench", "run one query under several strategies and print a table");
    bench->add_option("--scene", bscene, "scene file (default: empty 512^3 world)");
    bench->add_option("--robot", ba.robot, "rod or ring")->check(CLI::IsMember({"rod", "ring"}));
    bench->add_option("--length", ba.length, "rod length");
    bench->add_option("--radius", ba.radius, "ring radius");
    bench->add_option("--start", ba.start, "x,y,z,dx,dy,dz");
    bench->add_option("--goal", ba.goal, "x,y,z,dx,dy,dz");
    bench->add_option("--eps", ba.eps, "resolution");
    bench->add_option("--max-boxes", ba.max_boxes, "box budget");
    bench->add_option("--strategies", bstrats, "strategies to run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kInput;
    }

    try {
        if (*plan) return run_plan(pa);
        if (*gen) {
            Scene s = gen_random_tetrahedra(gcount, gseed, WorldBox{{0, 0, 0}, gworld}, gmin, gmax);
            s.metadata = nlohmann::json{{"generator", "random-tetrahedra"}, {"count", gcount}, {"seed", gseed},
                                        {"size_min", gmin}, {"size_max", gmax}}
                             .dump();
            save_scene_file(s, gout);
            std::printf("wrote %s: %d polyhedra, %d features\n", gout.c_str(), int(s.polys.size()), s.num_features());
            return 0;
        }
        if (*scn) {
            save_scene_file(scenario_by_name(sname), sout);
            return 0;
        }
        if (*exp) {
            LoadedResult r = parse_result_text(read_file(xresult), xresult);
            std::ofstream os(xout);
            if (!os) throw InputError("cannot write '" + xout + "'");
            write_trace(os, r.req.cfg.robot, r.path, r.boxes);
            return 0;
        }
        if (*rep) {
            Scene s = rscene.empty() ? empty_scene() : load_scene_file(rscene);
            LoadedResult r = parse_result_text(read_file(rresult), rresult);
            if (r.outcome != Outcome::Path) {
                std::printf("no path to replay (%s)\n", outcome_name(r.outcome));
                return 1;
            }
            double step = rstep > 0 ? rstep : r.req.cfg.eps / 4;
            ReplayReport rr = replay_path(s, r.req.cfg.robot, r.path, step);
            std::printf("%s samples=%zu min_clearance=%.6g\n", rr.ok ? "VALID" : "INVALID", rr.samples, rr.min_clearance);
            if (!rr.ok) std::printf("first colliding segment: %d\n", rr.first_bad_segment);
            return rr.ok ? 0 : 1;
        }
        if (*bench) {
            Scene s = bscene.empty() ? empty_scene() : load_scene_file(bscene);
            PlannerConfig cfg;
            cfg.robot = make_robot(ba);
            cfg.eps = ba.eps;
            cfg.max_boxes = ba.max_boxes;
            Config a = parse_config(ba.start), b = parse_config(ba.goal);
            std::printf("%-10s %-16s %10s %10s %9s\n", "strategy", "outcome", "boxes", "waypoints", "seconds");
            for (const auto& st : bstrats) {
                cfg.strategy = parse_strategy(st);
                Planner p(s, cfg);
                PlanResult r = p.find_path(a, b);
                std::printf("%-10s %-16s %10zu %10zu %9.3f\n", st.c_str(), outcome_name(r.outcome), r.stats.boxes,
                            r.path.size(), r.stats.seconds);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInput;
    }
    return kInput;
}
