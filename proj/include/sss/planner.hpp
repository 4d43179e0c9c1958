#pragma once

#include <cstdint>
#include <deque>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "sss/robot.hpp"
#include "sss/scene.hpp"
#include "sss/union_find.hpp"

namespace sss {

enum class BoxStatus : uint8_t { Free, Stuck, Mixed };
enum class Strategy { BFS, Greedy, DistPlusSize, Voronoi, Random };
enum class Outcome { Path, NoPath, Budget };

const char* status_name(BoxStatus s);
const char* strategy_name(Strategy s);
Strategy parse_strategy(const std::string& s);
const char* outcome_name(Outcome o);

struct PlannerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PlannerConfig {
    Robot robot;
    double eps = 8;
    Strategy strategy = Strategy::Greedy;
    uint64_t seed = 1;
    size_t max_boxes = 2000000;
    int threads = 1;                // > 1 classifies split children in parallel
    bool check_invariants = false;  // verify feature-set inheritance on every split
    double lambda = 0.5;            // size weight of DistPlusSize
};

// Subdivision box with exact dyadic coordinates. Kept small: NO-PATH runs
// create tens of millions of these.
struct CBox {
    int32_t ti[3] = {0, 0, 0};
    int32_t rj[2] = {0, 0};
    int32_t parent = -1;
    int32_t first_child = -1;
    int32_t data = -1;  // feature lists while the box is a queued candidate
    uint8_t tlevel = 0;
    uint8_t rlevel = 0;
    uint8_t rface = 0;
    uint8_t num_children = 0;
    BoxStatus status = BoxStatus::Mixed;
    bool rwhole = true;
    bool candidate = false;
    bool near_voronoi = false;

    bool is_leaf() const { return num_children == 0; }
};

struct ClassifyResult {
    BoxStatus status = BoxStatus::Mixed;
    std::vector<uint32_t> feats;
};

// Filters the parent's features against the box's approximate footprint and
// decides FREE / STUCK when none survive.
ClassifyResult soft_classify(const Scene& s, const Robot& r, const BoxShape& b, const std::vector<uint32_t>& parent_feats);
std::vector<ClassifyResult> classify_batch_serial(const Scene& s, const Robot& r, const std::vector<BoxShape>& boxes,
                                                  const std::vector<uint32_t>& parent_feats);
std::vector<ClassifyResult> classify_batch_parallel(const Scene& s, const Robot& r, const std::vector<BoxShape>& boxes,
                                                    const std::vector<uint32_t>& parent_feats, int threads);

// Features that can be nearest to some point of the box's translational part.
std::vector<uint32_t> voronoi_feature_set(const Scene& s, const Vec3& center, double radius,
                                          const std::vector<uint32_t>& parent, double* dmin = nullptr);
// True when two features of the set come within dmin + delta of center at
// points that are far apart or on different obstacles.
bool near_voronoi(const Scene& s, const Vec3& center, const std::vector<uint32_t>& fs, double dmin, double delta);

// Queue ordering: smaller keys first, ties by insertion order (which is all BFS uses).
struct PriorityKey {
    double k1 = 0, k2 = 0;
    bool operator<(const PriorityKey& o) const { return k1 != o.k1 ? k1 < o.k1 : k2 < o.k2; }
};
PriorityKey priority_key(const PlannerConfig& cfg, const BoxShape& b, bool near_voronoi, int id, const Vec3& target);

struct PlanStats {
    size_t boxes = 0;
    size_t free = 0, stuck = 0, mixed = 0;
    size_t splits = 0, t_splits = 0, r_splits = 0;
    size_t start_side_splits = 0, goal_side_splits = 0;
    size_t max_tlevel = 0, max_rlevel = 0;
    size_t inheritance_violations = 0;
    size_t path_boxes = 0;
    double seconds = 0;
};

struct PlanResult {
    Outcome outcome = Outcome::NoPath;
    std::vector<Config> path;
    std::vector<int> path_boxes;
    PlanStats stats;
};

// Straight translation plus great-circle rotation between two configurations.
Config interpolate(const Config& a, const Config& b, double t);

struct ReplayReport {
    bool ok = true;
    double min_clearance = 0;
    size_t samples = 0;
    int first_bad_segment = -1;
};

// Samples every path segment so that consecutive samples move the footprint by
// at most step and checks the clearance oracle at each sample.
ReplayReport replay_path(const Scene& s, const Robot& r, const std::vector<Config>& path, double step);

class Planner {
public:
    Planner(const Scene& scene, const PlannerConfig& cfg);

    PlanResult find_path(const Config& alpha, const Config& beta);

    const std::deque<CBox>& boxes() const { return boxes_; }
    // Features surviving the box's filter; empty once the box is split or settled.
    const std::vector<uint32_t>& features(int id) const;
    const Scene& scene() const { return scene_; }
    const PlannerConfig& config() const { return cfg_; }
    BoxShape shape(int id) const;
    bool boxes_adjacent(int a, int b) const;
    int locate(const Config& c) const;
    std::vector<int> leaves() const;
    const std::vector<std::pair<int, int>>& free_edges() const { return edges_; }
    int component(int id) { return uf_.find(id); }
    // Splits a MIXED candidate leaf; exposed for tests.
    void split(int id);
    std::vector<int> adjacent_leaves(int id) const;
    Config box_center_config(int id) const;
    Config contact_config(int a, int b) const;

private:
    struct QItem {
        double k1, k2;
        uint64_t seq;
        int id;
        bool operator<(const QItem& o) const {  // max-heap: smallest key on top
            if (k1 != o.k1) return k1 > o.k1;
            if (k2 != o.k2) return k2 > o.k2;
            return seq > o.seq;
        }
    };

    const Scene& scene_;
    PlannerConfig cfg_;
    double tol_;
    struct CandData {
        std::vector<uint32_t> feats, vfeats;
        double dmin = 0;
    };

    std::deque<CBox> boxes_;
    std::vector<CandData> cand_;
    std::vector<int> cand_free_;
    UnionFind uf_;
    std::vector<std::pair<int, int>> edges_;
    // One queue per side: candidates next to the start (0) or goal (1) component.
    std::priority_queue<QItem> queue_[2];
    std::vector<uint8_t> reached_, active_;
    uint64_t seq_ = 0;
    Vec3 target_[2];
    PlanStats stats_;

    void reset();
    bool is_candidate(const CBox& b) const;
    bool shape_radius_ok(const CBox& b) const;
    bool choose_tsplit(const CBox& b) const;
    void push(int id, int side);
    void on_free(int id, const std::vector<int>& nbrs);
    void reach(int id, int side);
    void grow_arrays();
    int new_data();
    void drop_data(CBox& b);
    bool touches(const CBox& a, const CBox& b) const;
    int tcontact_dim(const CBox& a, const CBox& b) const;
    int rcontact_dim(const CBox& a, const CBox& b) const;
    RotBox rotbox(const CBox& b) const;
    double angular_width(const CBox& b) const;
    std::vector<int> extract_path(int from, int to) const;
};

} // namespace sss
