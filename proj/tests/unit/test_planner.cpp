#include <doctest.h>

#include <map>
#include <set>

#include "../oracles.hpp"
#include "sss/io.hpp"
#include "sss/planner.hpp"
#include "sss/scenarios.hpp"

using namespace sss;

namespace {

PlannerConfig rod_cfg(double r0, double eps, size_t budget = 2000000) {
    PlannerConfig c;
    c.robot = Robot{RobotKind::Rod, r0, 0};
    c.eps = eps;
    c.max_boxes = budget;
    return c;
}

// A planner whose root exists but nothing else: the budget stops the search at once.
struct Fresh {
    Scene scene;
    Planner planner;
    Fresh(Scene s, PlannerConfig cfg) : scene(std::move(s)), planner(scene, (cfg.max_boxes = 1, cfg)) {
        planner.find_path(make_config({100, 100, 100}, {1, 0, 0}), make_config({400, 400, 400}, {1, 0, 0}));
    }
};

double volume(const BoxShape& b) { return std::pow(2 * b.half, 3) * rotbox_area(b.rot); }

} // namespace

TEST_CASE("empty scene is one FREE box") {
    Scene s = empty_scene();
    Planner p(s, rod_cfg(64, 8));
    PlanResult r = p.find_path(make_config({64, 64, 64}, {1, 0, 0}), make_config({448, 64, 64}, {1, 0, 0}));
    CHECK(r.outcome == Outcome::Path);
    CHECK(r.stats.boxes == 1);
    CHECK(p.boxes()[0].status == BoxStatus::Free);
    CHECK(r.path.size() == 2);
}

TEST_CASE("configuration deep inside a block lands in a STUCK box") {
    Scene s = build_scene(WorldBox{{0, 0, 0}, 512}, {make_box_polyhedron({100, 100, 100}, {400, 400, 400})});
    Planner p(s, rod_cfg(16, 8));
    Config inside = make_config({250, 250, 250}, {0, 0, 1});
    PlanResult r = p.find_path(inside, make_config({30, 30, 30}, {1, 0, 0}));
    CHECK(r.outcome == Outcome::NoPath);
    CHECK(p.boxes()[p.locate(inside)].status == BoxStatus::Stuck);
}

TEST_CASE("splits and adjacency of the first levels") {
    Fresh f(posts_scene(), rod_cfg(64, 8));
    Planner& p = f.planner;
    REQUIRE(p.boxes().size() == 1);
    REQUIRE(p.boxes()[0].status == BoxStatus::Mixed);
    p.split(0);
    REQUIRE(p.boxes()[0].num_children == 6);
    int first = p.boxes()[0].first_child;
    BoxShape s0 = p.shape(first);
    CHECK(s0.half == p.shape(0).half);
    // Same translational box: faces sharing a cube edge touch along a 3+1 dimensional set.
    CHECK(p.boxes_adjacent(first + PX, first + PY));
    CHECK_FALSE(p.boxes_adjacent(first + PX, first + NX));
    int face = first + PZ;
    REQUIRE(p.boxes()[face].status == BoxStatus::Mixed);
    p.split(face);
    const CBox& fb = p.boxes()[face];
    if (fb.num_children == 8) {
        int c0 = fb.first_child;
        CHECK(p.shape(c0).half == doctest::Approx(p.shape(face).half / 2));
        // children 0 and 1 differ in x only: a shared square face
        CHECK(p.boxes_adjacent(c0, c0 + 1));
        // children 0 and 3 differ in x and y: a shared edge only
        CHECK_FALSE(p.boxes_adjacent(c0, c0 + 3));
        // 0 and 7 meet in a point
        CHECK_FALSE(p.boxes_adjacent(c0, c0 + 7));
    } else {
        CHECK(fb.num_children == 4);
    }
    // Force a rotational split on a mixed translational child.
    int mixed = -1;
    for (int c = fb.first_child; c < fb.first_child + fb.num_children; ++c)
        if (p.boxes()[c].status == BoxStatus::Mixed) mixed = c;
    REQUIRE(mixed >= 0);
    while (p.boxes()[mixed].status == BoxStatus::Mixed && p.boxes()[mixed].is_leaf()) {
        p.split(mixed);
        const CBox& m = p.boxes()[mixed];
        if (m.num_children == 4) {
            int r0 = m.first_child;
            CHECK(p.shape(r0).rot.w == doctest::Approx(p.shape(mixed).rot.w / 2));
            CHECK(p.boxes_adjacent(r0, r0 + 1));
            CHECK(p.boxes_adjacent(r0, r0 + 2));
            CHECK_FALSE(p.boxes_adjacent(r0, r0 + 3));
            break;
        }
        mixed = -1;
        for (int c = m.first_child; c < m.first_child + m.num_children; ++c)
            if (p.boxes()[c].status == BoxStatus::Mixed) mixed = c;
        if (mixed < 0) break;
    }
}

TEST_CASE("feature sets shrink along every split") {
    Scene s = scenario_by_name("rand40");
    Planner p(s, rod_cfg(64, 8, 200000));
    Fresh f(s, rod_cfg(64, 8));
    oracle::Rng rng(51);
    int checked = 0;
    std::vector<int> frontier{0};
    while (!frontier.empty() && checked < 3000) {
        int i = rng.index(int(frontier.size()));
        int id = frontier[i];
        frontier.erase(frontier.begin() + i);
        if (f.planner.boxes()[id].status != BoxStatus::Mixed || !f.planner.boxes()[id].candidate) continue;
        std::vector<uint32_t> parent = f.planner.features(id);
        f.planner.split(id);
        const CBox& b = f.planner.boxes()[id];
        for (int c = b.first_child; c < b.first_child + b.num_children; ++c) {
            const auto& kid = f.planner.features(c);
            CHECK(std::includes(parent.begin(), parent.end(), kid.begin(), kid.end()));
            if (f.planner.boxes()[c].status != BoxStatus::Mixed) CHECK(kid.empty());
            frontier.push_back(c);
            ++checked;
        }
    }
    CHECK(checked >= 3000);
    PlannerConfig cfg = rod_cfg(64, 8);
    cfg.check_invariants = true;
    Planner q(s, cfg);
    PlanResult r = q.find_path(make_config({32, 32, 32}, {1, 0, 0}), make_config({480, 480, 480}, {0, 0, 1}));
    CHECK(r.stats.inheritance_violations == 0);
}

TEST_CASE("leaves partition the configuration space") {
    Scene s = scenario_by_name("posts");
    Planner p(s, rod_cfg(64, 16, 6000));
    p.find_path(make_config({32, 32, 256}, {1, 0, 0}), make_config({480, 480, 256}, {0, 1, 0}));
    double total = 0;
    for (int id : p.leaves()) total += volume(p.shape(id));
    CHECK(total == doctest::Approx(std::pow(512.0, 3) * 24).epsilon(1e-12));
    oracle::Rng rng(52);
    auto leaves = p.leaves();
    for (int i = 0; i < 300; ++i) {
        Config c = make_config(rng.in_box({0, 0, 0}, {512, 512, 512}), rng.unit());
        int owner = 0;
        for (int id : leaves) {
            BoxShape b = p.shape(id);
            bool in = std::fabs(c.p.x - b.center.x) <= b.half && std::fabs(c.p.y - b.center.y) <= b.half &&
                      std::fabs(c.p.z - b.center.z) <= b.half && rotbox_contains(b.rot, c.dir);
            owner += in;
        }
        CHECK(owner == 1);
        CHECK(p.shape(p.locate(c)).half > 0);
    }
}

TEST_CASE("union-find components match a breadth-first search over FREE leaves") {
    for (const char* name : {"posts", "two-slab-gap", "rand40"}) {
        Scene s = scenario_by_name(name);
        Planner p(s, rod_cfg(64, 16, 10000));
        p.find_path(make_config({32, 256, 256}, {1, 0, 0}), make_config({480, 256, 256}, {0, 0, 1}));
        REQUIRE(p.boxes().size() <= 10000);
        std::vector<int> fl;
        for (int id : p.leaves())
            if (p.boxes()[id].status == BoxStatus::Free) fl.push_back(id);
        // adjacency by brute force over all pairs
        std::vector<std::vector<int>> adj(fl.size());
        for (size_t i = 0; i < fl.size(); ++i)
            for (size_t j = i + 1; j < fl.size(); ++j)
                if (p.boxes_adjacent(fl[i], fl[j])) {
                    adj[i].push_back(int(j));
                    adj[j].push_back(int(i));
                }
        std::vector<int> comp(fl.size(), -1);
        int nc = 0;
        for (size_t i = 0; i < fl.size(); ++i) {
            if (comp[i] >= 0) continue;
            std::vector<int> st{int(i)};
            comp[i] = nc;
            while (!st.empty()) {
                int n = st.back();
                st.pop_back();
                for (int m : adj[n])
                    if (comp[m] < 0) {
                        comp[m] = nc;
                        st.push_back(m);
                    }
            }
            ++nc;
        }
        std::map<int, int> uf_to_bfs;
        std::set<int> bfs_seen;
        for (size_t i = 0; i < fl.size(); ++i) {
            int root = p.component(fl[i]);
            auto it = uf_to_bfs.find(root);
            if (it == uf_to_bfs.end()) {
                CHECK(bfs_seen.insert(comp[i]).second);
                uf_to_bfs[root] = comp[i];
            } else {
                CHECK(it->second == comp[i]);
            }
        }
        CHECK(int(uf_to_bfs.size()) == nc);
    }
}

TEST_CASE("adjacent_leaves agrees with the pairwise test") {
    Scene s = scenario_by_name("posts2");
    Planner p(s, rod_cfg(64, 16, 4000));
    p.find_path(make_config({32, 32, 256}, {1, 0, 0}), make_config({480, 480, 256}, {0, 1, 0}));
    auto leaves = p.leaves();
    oracle::Rng rng(53);
    for (int t = 0; t < 100; ++t) {
        int id = leaves[rng.index(int(leaves.size()))];
        auto got = p.adjacent_leaves(id);
        std::set<int> g(got.begin(), got.end());
        std::set<int> want;
        for (int o : leaves)
            if (o != id && p.boxes_adjacent(id, o)) want.insert(o);
        CHECK(g == want);
    }
}

TEST_CASE("Voronoi feature sets and flags") {
    // Two walls, x <= 100 and x >= 156.
    Scene s = build_scene(WorldBox{{0, 0, 0}, 256}, {make_box_polyhedron({-50, -50, -50}, {100, 306, 306}),
                                                     make_box_polyhedron({156, -50, -50}, {306, 306, 306})});
    std::vector<uint32_t> all(s.features.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = uint32_t(i);
    double dmin = 0;
    auto mid = voronoi_feature_set(s, {128, 128, 128}, 4, all, &dmin);
    CHECK(dmin == doctest::Approx(28));
    std::set<int> owners;
    for (auto f : mid) owners.insert(s.features[f].owner);
    CHECK(owners.size() == 2);
    CHECK(near_voronoi(s, {128, 128, 128}, mid, dmin, 8));
    auto hug = voronoi_feature_set(s, {104, 128, 128}, 4, all, &dmin);
    CHECK_FALSE(near_voronoi(s, {104, 128, 128}, hug, dmin, 8));
    oracle::Rng rng(54);
    Scene r = scenario_by_name("rand40");
    std::vector<uint32_t> rall(r.features.size());
    for (size_t i = 0; i < rall.size(); ++i) rall[i] = uint32_t(i);
    for (int t = 0; t < 100; ++t) {
        Vec3 c = rng.in_box({0, 0, 0}, {512, 512, 512});
        double half = rng.uni(2, 64);
        auto kept = voronoi_feature_set(r, c, half * std::sqrt(3.0), rall);
        std::set<uint32_t> k(kept.begin(), kept.end());
        for (int i = 0; i < 1000; ++i) {
            Vec3 q = c + rng.in_box({-half, -half, -half}, {half, half, half});
            uint32_t arg = 0;
            double best = 1e300;
            for (uint32_t f : rall) {
                double d = oracle::feature_point(r.features[f], q);
                if (d < best) {
                    best = d;
                    arg = f;
                }
            }
            CHECK(k.count(arg) == 1);
        }
    }
}

TEST_CASE("strategies, determinism and path shape") {
    Scene s = scenario_by_name("posts");
    Config a = make_config({32, 32, 256}, {1, 0, 0}), b = make_config({480, 480, 256}, {0, 1, 0});
    for (Strategy st : {Strategy::BFS, Strategy::Greedy, Strategy::DistPlusSize, Strategy::Voronoi, Strategy::Random}) {
        PlannerConfig cfg = rod_cfg(64, 16, 300000);
        cfg.strategy = st;
        Planner p1(s, cfg), p2(s, cfg);
        PlanResult r1 = p1.find_path(a, b), r2 = p2.find_path(a, b);
        PlanRequest req{s.name, cfg, a, b};
        CHECK(result_to_json(req, r1, &p1).dump() == result_to_json(req, r2, &p2).dump());
        CHECK(r1.outcome == Outcome::Path);
        if (r1.outcome != Outcome::Path) continue;
        CHECK(r1.path.size() == 2 * r1.path_boxes.size() + 1);
        CHECK(r1.path.front().p == a.p);
        CHECK(r1.path.back().p == b.p);
        for (size_t i = 1; i < r1.path.size() - 1; ++i) CHECK(clearance(cfg.robot, r1.path[i], s) > 0);
        for (size_t i = 0; i + 1 < r1.path_boxes.size(); ++i)
            CHECK(p1.boxes_adjacent(r1.path_boxes[i], r1.path_boxes[i + 1]));
    }
    PlannerConfig c1 = rod_cfg(64, 16), c2 = rod_cfg(64, 16);
    c1.strategy = c2.strategy = Strategy::Random;
    c2.seed = 99;
    Planner p1(s, c1), p2(s, c2);
    PlanResult r1 = p1.find_path(a, b), r2 = p2.find_path(a, b);
    CHECK(r1.outcome == Outcome::Path);
    CHECK(r2.outcome == Outcome::Path);
}

TEST_CASE("priority keys") {
    PlannerConfig cfg = rod_cfg(64, 8);
    Vec3 goal{496, 496, 496};
    BoxShape parent{{256, 256, 256}, 128, RotBox{false, PZ, 0, 0, 1}};
    std::vector<BoxShape> kids;
    for (int c = 0; c < 8; ++c)
        kids.push_back(BoxShape{parent.center + Vec3{(c & 1) ? 64. : -64., (c & 2) ? 64. : -64., (c & 4) ? 64. : -64.}, 64,
                                parent.rot});
    cfg.strategy = Strategy::Greedy;
    int best = 0;
    for (int c = 1; c < 8; ++c)
        if (priority_key(cfg, kids[c], false, c, goal) < priority_key(cfg, kids[best], false, best, goal)) best = c;
    CHECK(best == 7);
    cfg.strategy = Strategy::Random;
    cfg.seed = 5;
    PriorityKey a = priority_key(cfg, kids[0], false, 17, goal), b = priority_key(cfg, kids[0], false, 17, goal);
    CHECK(a.k1 == b.k1);
    cfg.seed = 6;
    CHECK(priority_key(cfg, kids[0], false, 17, goal).k1 != a.k1);
    cfg.strategy = Strategy::BFS;
    CHECK_FALSE(priority_key(cfg, kids[0], false, 1, goal) < priority_key(cfg, kids[7], false, 2, goal));
    CHECK_FALSE(priority_key(cfg, kids[7], false, 2, goal) < priority_key(cfg, kids[0], false, 1, goal));
    // Voronoi: a box on the bisector of two walls beats one hugging a wall even when farther.
    cfg.strategy = Strategy::Voronoi;
    CHECK(priority_key(cfg, kids[0], true, 1, goal) < priority_key(cfg, kids[7], false, 2, goal));
    cfg.strategy = Strategy::DistPlusSize;
    BoxShape big{{300, 300, 300}, 100, parent.rot}, small{{300, 300, 300}, 10, parent.rot};
    CHECK(priority_key(cfg, big, false, 1, goal) < priority_key(cfg, small, false, 2, goal));
}

TEST_CASE("start and goal in one FREE box give a two point path") {
    Scene s = scenario_by_name("posts");
    Planner p(s, rod_cfg(16, 8));
    Config a = make_config({20, 20, 20}, {1, 0, 0}), b = make_config({21, 20, 20}, {1, 0, 0});
    PlanResult r = p.find_path(a, b);
    REQUIRE(r.outcome == Outcome::Path);
    if (p.locate(a) == p.locate(b)) CHECK(r.path.size() == 2);
}

TEST_CASE("serial and parallel classification agree") {
    Scene s = scenario_by_name("rand40");
    Robot rod{RobotKind::Rod, 64, 0};
    std::vector<uint32_t> all(s.features.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = uint32_t(i);
    oracle::Rng rng(55);
    std::vector<BoxShape> boxes;
    for (int i = 0; i < 64; ++i)
        boxes.push_back(BoxShape{rng.in_box({0, 0, 0}, {512, 512, 512}), 16, RotBox{false, rng.index(6), 0, 0, 0.5}});
    auto a = classify_batch_serial(s, rod, boxes, all);
    auto b = classify_batch_parallel(s, rod, boxes, all, 4);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].status == b[i].status);
        CHECK(a[i].feats == b[i].feats);
    }
}

TEST_CASE("bad planner input") {
    Scene s = empty_scene();
    PlannerConfig c = rod_cfg(64, 0);
    CHECK_THROWS_AS(Planner(s, c), PlannerError);
    Planner p(s, rod_cfg(64, 8));
    CHECK_THROWS_AS(p.find_path(make_config({-5, 0, 0}, {1, 0, 0}), make_config({5, 5, 5}, {1, 0, 0})), PlannerError);
}
