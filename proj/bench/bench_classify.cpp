// Serial versus OpenMP classification of split batches.

#include <benchmark/benchmark.h>

#include <random>

#include "sss/planner.hpp"
#include "sss/scenarios.hpp"

using namespace sss;

namespace {

struct Batch {
    Scene scene;
    std::vector<BoxShape> boxes;
    std::vector<uint32_t> feats;
};

const Batch& batch() {
    static Batch b = [] {
        Batch out;
        out.scene = scenario_by_name("rand40");
        std::mt19937_64 gen(11);
        std::uniform_real_distribution<double> pos(32, 480);
        std::uniform_int_distribution<int> face(0, 5), cell(0, 3);
        for (int i = 0; i < 4096; ++i) {
            RotBox rot{false, face(gen), -1 + 0.5 * cell(gen), -1 + 0.5 * cell(gen), 0.5};
            out.boxes.push_back(BoxShape{{pos(gen), pos(gen), pos(gen)}, 8, rot});
        }
        for (size_t i = 0; i < out.scene.features.size(); ++i) out.feats.push_back(uint32_t(i));
        return out;
    }();
    return b;
}

void BM_ClassifySerial(benchmark::State& st) {
    const Batch& b = batch();
    Robot r{RobotKind(st.range(0)), 64, 0};
    for (auto _ : st) benchmark::DoNotOptimize(classify_batch_serial(b.scene, r, b.boxes, b.feats));
    st.SetItemsProcessed(int64_t(st.iterations()) * int64_t(b.boxes.size()));
}

void BM_ClassifyParallel(benchmark::State& st) {
    const Batch& b = batch();
    Robot r{RobotKind(st.range(0)), 64, 0};
    for (auto _ : st) benchmark::DoNotOptimize(classify_batch_parallel(b.scene, r, b.boxes, b.feats, int(st.range(1))));
    st.SetItemsProcessed(int64_t(st.iterations()) * int64_t(b.boxes.size()));
}

} // namespace

BENCHMARK(BM_ClassifySerial)->Arg(int(RobotKind::Rod))->Arg(int(RobotKind::Ring))->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifyParallel)
    ->ArgsProduct({{int(RobotKind::Rod), int(RobotKind::Ring)}, {1, 2, 4, 8}})
    ->UseRealTime()
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
