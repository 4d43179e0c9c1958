#include "sss/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>

#include <omp.h>

#include "sss/ring.hpp"
#include "sss/rod.hpp"

namespace sss {

namespace {

constexpr int kTDepth = 30;  // box indices fit in int32
constexpr int kRDepth = 30;
constexpr double kPi = 3.14159265358979323846;

void chart_axes_of(int face, int& iu, int& iv) {
    int k = face_axis(face);
    iu = k == 0 ? 1 : 0;
    iv = k == 2 ? 1 : 2;
}

uint64_t splitmix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Sigma2Set approx_footprint(const Robot& r, const BoxShape& b) {
    return r.kind == RobotKind::Rod ? rod_approx_footprint(r, b) : ring_approx_footprint(r, b);
}

} // namespace

const char* status_name(BoxStatus s) {
    switch (s) {
    case BoxStatus::Free: return "FREE";
    case BoxStatus::Stuck: return "STUCK";
    default: return "MIXED";
    }
}

const char* strategy_name(Strategy s) {
    switch (s) {
    case Strategy::BFS: return "bfs";
    case Strategy::Greedy: return "greedy";
    case Strategy::DistPlusSize: return "dist+size";
    case Strategy::Voronoi: return "voronoi";
    default: return "random";
    }
}

Strategy parse_strategy(const std::string& s) {
    if (s == "bfs") return Strategy::BFS;
    if (s == "greedy") return Strategy::Greedy;
    if (s == "dist+size" || s == "dist_plus_size") return Strategy::DistPlusSize;
    if (s == "voronoi") return Strategy::Voronoi;
    if (s == "random") return Strategy::Random;
    throw std::invalid_argument("unknown strategy '" + s + "'");
}

const char* outcome_name(Outcome o) {
    switch (o) {
    case Outcome::Path: return "PATH";
    case Outcome::NoPath: return "NO_PATH";
    default: return "BUDGET_EXCEEDED";
    }
}

ClassifyResult soft_classify(const Scene& s, const Robot& r, const BoxShape& b, const std::vector<uint32_t>& parent) {
    ClassifyResult out;
    const double tol = s.tolerance();
    Sigma2Set fp = approx_footprint(r, b);
    const double outer = r.r0 + b.radius() + r.tau;
    for (uint32_t f : parent) {
        if (dist(b.center, s.fcenter[f]) - s.fradius[f] > outer + tol) continue;
        if (intersects_feature_conservative(fp, s.features[f], tol)) out.feats.push_back(f);
    }
    if (!out.feats.empty()) {
        out.status = BoxStatus::Mixed;
        return out;
    }
    Vec3 probe = b.center;
    if (r.kind == RobotKind::Ring) probe = b.center + any_orthogonal(lift_to_sphere(rotbox_center(b.rot))) * r.r0;
    out.status = point_inside_union(s, probe) ? BoxStatus::Stuck : BoxStatus::Free;
    return out;
}

std::vector<ClassifyResult> classify_batch_serial(const Scene& s, const Robot& r, const std::vector<BoxShape>& boxes,
                                                  const std::vector<uint32_t>& parent) {
    std::vector<ClassifyResult> out(boxes.size());
    for (size_t i = 0; i < boxes.size(); ++i) out[i] = soft_classify(s, r, boxes[i], parent);
    return out;
}

std::vector<ClassifyResult> classify_batch_parallel(const Scene& s, const Robot& r, const std::vector<BoxShape>& boxes,
                                                    const std::vector<uint32_t>& parent, int threads) {
    std::vector<ClassifyResult> out(boxes.size());
    const int n = int(boxes.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int i = 0; i < n; ++i) out[i] = soft_classify(s, r, boxes[i], parent);
    return out;
}

std::vector<uint32_t> voronoi_feature_set(const Scene& s, const Vec3& center, double radius,
                                          const std::vector<uint32_t>& parent, double* dmin_out) {
    std::vector<double> d(parent.size());
    double dmin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < parent.size(); ++i) {
        d[i] = sep_point_feature(center, s.features[parent[i]]);
        dmin = std::fmin(dmin, d[i]);
    }
    std::vector<uint32_t> out;
    for (size_t i = 0; i < parent.size(); ++i)
        if (d[i] <= dmin + 2 * radius) out.push_back(parent[i]);
    if (dmin_out) *dmin_out = dmin;
    return out;
}

// ---------------------------------------------------------------- planner

Planner::Planner(const Scene& scene, const PlannerConfig& cfg) : scene_(scene), cfg_(cfg), tol_(scene.tolerance()) {
    if (!(cfg.eps > 0)) throw PlannerError("epsilon must be positive");
    if (!(cfg.robot.r0 > 0)) throw PlannerError("robot size must be positive");
    if (cfg.robot.tau < 0) throw PlannerError("thickness must be nonnegative");
}

BoxShape Planner::shape(int id) const {
    const CBox& b = boxes_[id];
    const WorldBox& w = scene_.world;
    double cell = w.size / std::ldexp(1.0, b.tlevel);
    BoxShape s;
    s.center = w.lo + Vec3{(double(b.ti[0]) + 0.5) * cell, (double(b.ti[1]) + 0.5) * cell, (double(b.ti[2]) + 0.5) * cell};
    s.half = cell / 2;
    s.rot = rotbox(b);
    return s;
}

RotBox Planner::rotbox(const CBox& b) const {
    if (b.rwhole) return RotBox::whole_sphere();
    double w = 2 / std::ldexp(1.0, b.rlevel);
    return RotBox{false, b.rface, -1 + double(b.rj[0]) * w, -1 + double(b.rj[1]) * w, w};
}

double Planner::angular_width(const CBox& b) const {
    if (b.rwhole) return kPi;
    return (2 / std::ldexp(1.0, b.rlevel)) * kPi / 4;
}

bool Planner::is_candidate(const CBox& b) const {
    if (b.status != BoxStatus::Mixed) return false;
    bool t_ok = shape_radius_ok(b);
    bool r_ok = b.rwhole || (angular_width(b) * cfg_.robot.r0 >= cfg_.eps && b.rlevel < kRDepth);
    return t_ok || r_ok;
}

bool Planner::shape_radius_ok(const CBox& b) const {
    double half = scene_.world.size / std::ldexp(1.0, b.tlevel + 1);
    return half * std::sqrt(3.0) >= cfg_.eps && b.tlevel < kTDepth;
}

bool Planner::choose_tsplit(const CBox& b) const {
    if (b.rwhole) return false;
    bool t_ok = shape_radius_ok(b);
    bool r_ok = angular_width(b) * cfg_.robot.r0 >= cfg_.eps && b.rlevel < kRDepth;
    if (!t_ok) return false;
    if (!r_ok) return true;
    double half = scene_.world.size / std::ldexp(1.0, b.tlevel + 1);
    return half >= angular_width(b) * cfg_.robot.r0;
}

int Planner::tcontact_dim(const CBox& a, const CBox& b) const {
    int dim = 0;
    for (int k = 0; k < 3; ++k) {
        int64_t la = int64_t(a.ti[k]) << (kTDepth - a.tlevel), ha = int64_t(a.ti[k] + 1) << (kTDepth - a.tlevel);
        int64_t lb = int64_t(b.ti[k]) << (kTDepth - b.tlevel), hb = int64_t(b.ti[k] + 1) << (kTDepth - b.tlevel);
        int64_t lo = std::max(la, lb), hi = std::min(ha, hb);
        if (hi < lo) return -1;
        if (hi > lo) ++dim;
    }
    return dim;
}

namespace {

void rbounds(const CBox& b, int64_t lo[3], int64_t hi[3]) {
    const int64_t one = int64_t(1) << kRDepth;
    int k = face_axis(b.rface), iu, iv;
    chart_axes_of(b.rface, iu, iv);
    int64_t step = int64_t(1) << (kRDepth + 1 - b.rlevel);
    lo[k] = hi[k] = face_sign(b.rface) > 0 ? one : -one;
    lo[iu] = -one + b.rj[0] * step;
    hi[iu] = lo[iu] + step;
    lo[iv] = -one + b.rj[1] * step;
    hi[iv] = lo[iv] + step;
}

} // namespace

int Planner::rcontact_dim(const CBox& a, const CBox& b) const {
    if (a.rwhole || b.rwhole) return 2;
    int64_t la[3], ha[3], lb[3], hb[3];
    rbounds(a, la, ha);
    rbounds(b, lb, hb);
    int dim = 0;
    for (int k = 0; k < 3; ++k) {
        int64_t lo = std::max(la[k], lb[k]), hi = std::min(ha[k], hb[k]);
        if (hi < lo) return -1;
        if (hi > lo) ++dim;
    }
    return dim;
}

bool Planner::touches(const CBox& a, const CBox& b) const { return tcontact_dim(a, b) >= 0 && rcontact_dim(a, b) >= 0; }

bool Planner::boxes_adjacent(int a, int b) const {
    if (a == b) return false;
    int t = tcontact_dim(boxes_[a], boxes_[b]);
    if (t < 0) return false;
    int r = rcontact_dim(boxes_[a], boxes_[b]);
    return r >= 0 && t + r == 4;
}

std::vector<int> Planner::adjacent_leaves(int id) const {
    const CBox& b = boxes_[id];
    int64_t blo[3] = {}, bhi[3] = {};
    if (!b.rwhole) rbounds(b, blo, bhi);
    auto rdim = [&](const CBox& c) {
        if (b.rwhole || c.rwhole) return 2;
        int64_t lo[3], hi[3];
        rbounds(c, lo, hi);
        int dim = 0;
        for (int k = 0; k < 3; ++k) {
            int64_t l = std::max(lo[k], blo[k]), h = std::min(hi[k], bhi[k]);
            if (h < l) return -1;
            if (h > l) ++dim;
        }
        return dim;
    };
    // A child shares one factor with its parent, so only the other factor's
    // contact needs recomputing on the way down.
    struct Item {
        int n, t, r;
    };
    std::vector<int> out;
    std::vector<Item> stack{{0, 3, 2}};
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        const CBox& c = boxes_[it.n];
        if (c.is_leaf()) {
            if (it.n != id && it.t + it.r == 4) out.push_back(it.n);
            continue;
        }
        bool tsplit = boxes_[c.first_child].tlevel > c.tlevel;
        for (int i = c.num_children - 1; i >= 0; --i) {
            int k = c.first_child + i;
            Item ci{k, it.t, it.r};
            if (tsplit) ci.t = tcontact_dim(boxes_[k], b);
            else ci.r = rdim(boxes_[k]);
            // contact dimensions only shrink further down
            if (ci.t >= 0 && ci.r >= 0 && ci.t + ci.r >= 4) stack.push_back(ci);
        }
    }
    return out;
}

int Planner::locate(const Config& c) const {
    if (!scene_.world.contains(c.p)) throw PlannerError("configuration position lies outside the world box");
    int n = 0;
    while (!boxes_[n].is_leaf()) {
        const CBox& b = boxes_[n];
        const CBox& k0 = boxes_[b.first_child];
        if (k0.tlevel > b.tlevel) {
            BoxShape s = shape(n);
            int idx = (c.p.x >= s.center.x ? 1 : 0) | (c.p.y >= s.center.y ? 2 : 0) | (c.p.z >= s.center.z ? 4 : 0);
            n = b.first_child + idx;
        } else {
            n = b.first_child + rotbox_child_index(rotbox(b), c.dir);
        }
    }
    return n;
}

std::vector<int> Planner::leaves() const {
    std::vector<int> out;
    for (size_t i = 0; i < boxes_.size(); ++i)
        if (boxes_[i].is_leaf()) out.push_back(int(i));
    return out;
}

PriorityKey priority_key(const PlannerConfig& cfg, const BoxShape& s, bool near, int id, const Vec3& target) {
    PriorityKey k;
    double d = dist(s.center, target);
    switch (cfg.strategy) {
    case Strategy::BFS: break;
    case Strategy::Greedy: k.k1 = d; break;
    case Strategy::DistPlusSize: k.k1 = d - cfg.lambda * 2 * s.half; break;
    case Strategy::Voronoi: k.k1 = near ? 0 : 1; k.k2 = d; break;
    case Strategy::Random: k.k1 = double(splitmix(cfg.seed ^ splitmix(uint64_t(id))) >> 11); break;
    }
    return k;
}

void Planner::push(int id, int side) {
    PriorityKey k = priority_key(cfg_, shape(id), boxes_[id].near_voronoi, id, target_[side]);
    QItem q{k.k1, k.k2, seq_++, id};
    active_[id] |= uint8_t(1 << side);
    queue_[side].push(q);
}

void Planner::on_free(int id, const std::vector<int>& nbrs) {
    for (int n : nbrs) {
        if (boxes_[n].status != BoxStatus::Free) continue;
        uf_.unite(id, n);
        edges_.emplace_back(std::min(id, n), std::max(id, n));
    }
}

// Marks the FREE component of id as reached from one side and queues every
// candidate leaf touching it.
void Planner::reach(int id, int side) {
    const uint8_t bit = uint8_t(1 << side);
    if (reached_[id] & bit) return;
    std::vector<int> stack{id};
    reached_[id] |= bit;
    while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        for (int m : adjacent_leaves(n)) {
            const CBox& b = boxes_[m];
            if (b.status == BoxStatus::Free) {
                if (!(reached_[m] & bit)) {
                    reached_[m] |= bit;
                    stack.push_back(m);
                }
            } else if (b.candidate && !(active_[m] & bit)) {
                push(m, side);
            }
        }
    }
}

void Planner::grow_arrays() {
    uf_.resize(boxes_.size());
    reached_.resize(boxes_.size(), 0);
    active_.resize(boxes_.size(), 0);
}

int Planner::new_data() {
    if (!cand_free_.empty()) {
        int d = cand_free_.back();
        cand_free_.pop_back();
        return d;
    }
    cand_.emplace_back();
    return int(cand_.size()) - 1;
}

void Planner::drop_data(CBox& b) {
    if (b.data < 0) return;
    CandData& d = cand_[b.data];
    std::vector<uint32_t>().swap(d.feats);
    std::vector<uint32_t>().swap(d.vfeats);
    cand_free_.push_back(b.data);
    b.data = -1;
}

const std::vector<uint32_t>& Planner::features(int id) const {
    static const std::vector<uint32_t> none;
    int d = boxes_[id].data;
    return d < 0 ? none : cand_[d].feats;
}

bool near_voronoi(const Scene& s, const Vec3& c, const std::vector<uint32_t>& fs, double dmin, double delta) {
    std::vector<std::pair<int, Vec3>> close;
    for (uint32_t f : fs) {
        const Feature& F = s.features[f];
        Vec3 p;
        if (F.kind == Feature::Corner) p = F.v[0];
        else if (F.kind == Feature::Edge) p = closest_point_segment(c, F.v[0], F.v[1]);
        else p = closest_point_triangle(c, F.v[0], F.v[1], F.v[2]);
        if (dist(p, c) > dmin + delta) continue;
        for (const auto& [o, q] : close)
            if (o != F.owner || dist(p, q) > 2 * delta) return true;
        close.emplace_back(F.owner, p);
    }
    return false;
}

void Planner::split(int id) {
    if (!boxes_[id].is_leaf() || boxes_[id].status != BoxStatus::Mixed) throw PlannerError("split: box is not a mixed leaf");
    const CBox parent = [&] {
        CBox c;
        const CBox& b = boxes_[id];
        c.tlevel = b.tlevel;
        std::copy(b.ti, b.ti + 3, c.ti);
        c.rwhole = b.rwhole;
        c.rface = b.rface;
        c.rlevel = b.rlevel;
        c.rj[0] = b.rj[0];
        c.rj[1] = b.rj[1];
        return c;
    }();
    std::vector<uint32_t> pf, pvf;
    double pdmin = 0;
    if (boxes_[id].data >= 0) {
        CandData& d = cand_[boxes_[id].data];
        pf = std::move(d.feats);
        pvf = std::move(d.vfeats);
        pdmin = d.dmin;
        drop_data(boxes_[id]);
    }
    const bool tsplit = choose_tsplit(parent);
    std::vector<CBox> kids;
    if (tsplit) {
        for (int c = 0; c < 8; ++c) {
            CBox k = parent;
            k.tlevel = parent.tlevel + 1;
            for (int a = 0; a < 3; ++a) k.ti[a] = 2 * parent.ti[a] + ((c >> a) & 1);
            kids.push_back(k);
        }
        ++stats_.t_splits;
    } else if (parent.rwhole) {
        for (int f = 0; f < 6; ++f) {
            CBox k = parent;
            k.rwhole = false;
            k.rface = f;
            k.rlevel = 0;
            k.rj[0] = k.rj[1] = 0;
            kids.push_back(k);
        }
        ++stats_.r_splits;
    } else {
        for (int c = 0; c < 4; ++c) {
            CBox k = parent;
            k.rlevel = parent.rlevel + 1;
            k.rj[0] = 2 * parent.rj[0] + (c & 1);
            k.rj[1] = 2 * parent.rj[1] + (c >> 1);
            kids.push_back(k);
        }
        ++stats_.r_splits;
    }
    ++stats_.splits;
    const int first = int(boxes_.size());
    for (auto& k : kids) {
        k.parent = id;
        boxes_.push_back(std::move(k));
    }
    boxes_[id].first_child = first;
    boxes_[id].num_children = uint8_t(kids.size());
    std::vector<BoxShape> shapes;
    for (size_t i = 0; i < kids.size(); ++i) shapes.push_back(shape(first + int(i)));
    std::vector<ClassifyResult> res = cfg_.threads > 1
                                          ? classify_batch_parallel(scene_, cfg_.robot, shapes, pf, cfg_.threads)
                                          : classify_batch_serial(scene_, cfg_.robot, shapes, pf);
    grow_arrays();
    for (size_t i = 0; i < kids.size(); ++i) {
        CBox& k = boxes_[first + i];
        k.status = res[i].status;
        if (cfg_.check_invariants && !std::includes(pf.begin(), pf.end(), res[i].feats.begin(), res[i].feats.end()))
            ++stats_.inheritance_violations;
        k.candidate = is_candidate(k);
        if (k.candidate) {
            k.data = new_data();
            CandData& d = cand_[k.data];
            d.feats = std::move(res[i].feats);
            if (cfg_.strategy == Strategy::Voronoi) {
                if (tsplit) d.vfeats = voronoi_feature_set(scene_, shapes[i].center, shapes[i].radius(), pvf, &d.dmin);
                else {
                    d.vfeats = pvf;
                    d.dmin = pdmin;
                }
                k.near_voronoi = near_voronoi(scene_, shapes[i].center, d.vfeats, d.dmin, 2 * shapes[i].radius());
            }
        }
        stats_.max_tlevel = std::max(stats_.max_tlevel, size_t(k.tlevel));
        stats_.max_rlevel = std::max(stats_.max_rlevel, size_t(k.rwhole ? 0 : k.rlevel + 1));
    }
    std::vector<std::vector<int>> nbrs(kids.size());
    for (size_t i = 0; i < kids.size(); ++i) {
        int k = first + int(i);
        if (boxes_[k].status == BoxStatus::Free || boxes_[k].candidate) nbrs[i] = adjacent_leaves(k);
        if (boxes_[k].status == BoxStatus::Free) on_free(k, nbrs[i]);
    }
    for (size_t i = 0; i < kids.size(); ++i) {
        int k = first + int(i);
        if (boxes_[k].status != BoxStatus::Free) continue;
        for (int side = 0; side < 2; ++side)
            for (int n : nbrs[i])
                if (boxes_[n].status == BoxStatus::Free && (reached_[n] & (1 << side))) {
                    reach(k, side);
                    break;
                }
    }
    for (size_t i = 0; i < kids.size(); ++i) {
        int k = first + int(i);
        if (!boxes_[k].candidate) continue;
        for (int side = 0; side < 2; ++side) {
            if (active_[k] & (1 << side)) continue;
            for (int n : nbrs[i])
                if (boxes_[n].status == BoxStatus::Free && (reached_[n] & (1 << side))) {
                    push(k, side);
                    break;
                }
        }
    }
}

void Planner::reset() {
    boxes_.clear();
    edges_.clear();
    queue_[0] = {};
    queue_[1] = {};
    reached_.clear();
    active_.clear();
    cand_.clear();
    cand_free_.clear();
    seq_ = 0;
    stats_ = {};
    uf_ = UnionFind();
    CBox root;
    std::vector<uint32_t> all(scene_.features.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = uint32_t(i);
    boxes_.push_back(root);
    ClassifyResult r = soft_classify(scene_, cfg_.robot, shape(0), all);
    CBox& b = boxes_[0];
    b.status = r.status;
    b.candidate = is_candidate(b);
    if (b.candidate) {
        b.data = new_data();
        CandData& d = cand_[b.data];
        d.feats = std::move(r.feats);
        if (cfg_.strategy == Strategy::Voronoi) {
            BoxShape s = shape(0);
            d.vfeats = voronoi_feature_set(scene_, s.center, s.radius(), all, &d.dmin);
            b.near_voronoi = near_voronoi(scene_, s.center, d.vfeats, d.dmin, 2 * s.radius());
        }
    }
    grow_arrays();
}

Config Planner::box_center_config(int id) const {
    BoxShape s = shape(id);
    return Config{s.center, rotbox_center(s.rot)};
}

Config Planner::contact_config(int a, int b) const {
    const CBox& A = boxes_[a];
    const CBox& B = boxes_[b];
    const WorldBox& w = scene_.world;
    Config c;
    for (int k = 0; k < 3; ++k) {
        int64_t la = int64_t(A.ti[k]) << (kTDepth - A.tlevel), ha = int64_t(A.ti[k] + 1) << (kTDepth - A.tlevel);
        int64_t lb = int64_t(B.ti[k]) << (kTDepth - B.tlevel), hb = int64_t(B.ti[k] + 1) << (kTDepth - B.tlevel);
        double lo = double(std::max(la, lb)), hi = double(std::min(ha, hb));
        c.p[k] = w.lo[k] + 0.5 * (lo + hi) * (w.size / std::ldexp(1.0, kTDepth));
    }
    RotBox ra = rotbox(A), rb = rotbox(B);
    c.dir = (ra.whole && rb.whole) ? rotbox_center(ra) : rotbox_contact_point(ra, rb);
    return c;
}

std::vector<int> Planner::extract_path(int from, int to) const {
    std::vector<std::vector<int>> adj(boxes_.size());
    for (const auto& [a, b] : edges_) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> prev(boxes_.size(), -2);
    std::deque<int> q{from};
    prev[from] = -1;
    while (!q.empty()) {
        int n = q.front();
        q.pop_front();
        if (n == to) break;
        for (int m : adj[n])
            if (prev[m] == -2) {
                prev[m] = n;
                q.push_back(m);
            }
    }
    std::vector<int> path;
    if (prev[to] == -2) return path;
    for (int n = to; n != -1; n = prev[n]) path.push_back(n);
    std::reverse(path.begin(), path.end());
    return path;
}

PlanResult Planner::find_path(const Config& alpha, const Config& beta) {
    auto t0 = std::chrono::steady_clock::now();
    target_[0] = beta.p;
    target_[1] = alpha.p;
    reset();
    PlanResult res;
    auto finish = [&](Outcome o) {
        res.outcome = o;
        stats_.boxes = boxes_.size();
        for (const auto& b : boxes_) {
            if (!b.is_leaf()) continue;
            if (b.status == BoxStatus::Free) ++stats_.free;
            else if (b.status == BoxStatus::Stuck) ++stats_.stuck;
            else ++stats_.mixed;
        }
        stats_.path_boxes = res.path_boxes.size();
        stats_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        res.stats = stats_;
        return res;
    };
    const size_t room = 8;
    auto settle = [&](const Config& c, int& out) -> int {
        for (;;) {
            int b = locate(c);
            const CBox& B = boxes_[b];
            if (B.status == BoxStatus::Free) {
                out = b;
                return 0;
            }
            if (B.status == BoxStatus::Stuck || !B.candidate) return 1;
            if (boxes_.size() + room > cfg_.max_boxes) return 2;
            split(b);
        }
    };
    int ba = -1, bb = -1;
    for (const Config* c : {&alpha, &beta}) {
        int& slot = c == &alpha ? ba : bb;
        int r = settle(*c, slot);
        if (r == 1) return finish(Outcome::NoPath);
        if (r == 2) return finish(Outcome::Budget);
    }
    // settling beta may have split alpha's box only if they shared it, in which
    // case alpha's box is still the FREE leaf that contains it
    ba = locate(alpha);
    reach(ba, 0);
    reach(bb, 1);
    // Only candidates touching the start or goal component are queued. A
    // component grows only when such a box is split, so once either side runs
    // dry its component is final and the two can never join. The sides take
    // turns, so the total work is at most twice that of the side that ends it.
    while (uf_.find(ba) != uf_.find(bb)) {
        if (boxes_.size() + room > cfg_.max_boxes) return finish(Outcome::Budget);
        int side = int(stats_.start_side_splits > stats_.goal_side_splits);
        auto& q = queue_[side];
        int next = -1;
        while (!q.empty() && next < 0) {
            int id = q.top().id;
            q.pop();
            if (boxes_[id].is_leaf() && boxes_[id].candidate) next = id;
        }
        if (next < 0) return finish(Outcome::NoPath);
        ++(side ? stats_.goal_side_splits : stats_.start_side_splits);
        split(next);
    }
    res.path_boxes = extract_path(ba, bb);
    if (res.path_boxes.size() <= 1) {
        res.path = {alpha, beta};
    } else {
        res.path.push_back(alpha);
        for (size_t i = 0; i < res.path_boxes.size(); ++i) {
            if (i > 0) res.path.push_back(contact_config(res.path_boxes[i - 1], res.path_boxes[i]));
            res.path.push_back(box_center_config(res.path_boxes[i]));
        }
        res.path.push_back(beta);
    }
    return finish(Outcome::Path);
}

} // namespace sss

namespace sss {

Config interpolate(const Config& a, const Config& b, double t) {
    Vec3 da = a.unit_dir(), db = b.unit_dir();
    double ang = geodesic_dist_sphere(da, db);
    Vec3 d;
    if (ang < 1e-12) {
        d = da;
    } else {
        Vec3 axis = cross(da, db);
        if (norm(axis) < 1e-12) axis = any_orthogonal(da);
        Vec3 k = normalized(axis);
        double phi = ang * t;
        d = da * std::cos(phi) + cross(k, da) * std::sin(phi) + k * (dot(k, da) * (1 - std::cos(phi)));
    }
    return Config{lerp(a.p, b.p, t), project_to_cube(d)};
}

ReplayReport replay_path(const Scene& s, const Robot& r, const std::vector<Config>& path, double step) {
    ReplayReport rep;
    rep.min_clearance = std::numeric_limits<double>::infinity();
    if (path.empty()) {
        rep.ok = false;
        return rep;
    }
    auto check = [&](const Config& c, int seg) {
        double cl = clearance(r, c, s);
        ++rep.samples;
        rep.min_clearance = std::fmin(rep.min_clearance, cl);
        if (!(cl > 0) && rep.ok) {
            rep.ok = false;
            rep.first_bad_segment = seg;
        }
    };
    check(path[0], 0);
    for (size_t i = 1; i < path.size(); ++i) {
        const Config& a = path[i - 1];
        const Config& b = path[i];
        double move = dist(a.p, b.p) + r.r0 * geodesic_dist_sphere(a.unit_dir(), b.unit_dir());
        int n = std::max(1, int(std::ceil(move / step)));
        for (int k = 1; k <= n; ++k) check(interpolate(a, b, double(k) / n), int(i - 1));
    }
    return rep;
}

} // namespace sss
