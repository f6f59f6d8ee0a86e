#include <benchmark/benchmark.h>

#include <random>

#include "xdefect/border_following.hpp"
#include "xdefect/eval.hpp"
#include "xdefect/nms.hpp"
#include "xdefect/roi_align.hpp"

using namespace xdefect;

namespace {

std::vector<ScoredBox> random_boxes(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0, 700), len(8, 120), s(0, 1);
  std::vector<ScoredBox> out(n);
  for (auto& d : out) {
    const double x = pos(rng), y = pos(rng);
    d = {{x, y, x + len(rng), y + len(rng)}, s(rng)};
  }
  return out;
}

void BM_Iou(benchmark::State& state) {
  const auto boxes = random_boxes(1024, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(iou(boxes[i & 1023].box, boxes[(i + 1) & 1023].box));
    ++i;
  }
}
BENCHMARK(BM_Iou);

void BM_Nms(benchmark::State& state) {
  const auto boxes = random_boxes(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(nms_indices(boxes, 0.7));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Nms)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_RoiAlign(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  FeatureMap fm(48, 48, static_cast<int>(state.range(0)), 16.0);
  for (double& v : fm.data) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(roi_align(fm, {100.5, 220.25, 310.0, 400.75}));
}
BENCHMARK(BM_RoiAlign)->Arg(1)->Arg(64)->Arg(512);

void BM_TraceRegions(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  std::bernoulli_distribution on(0.3);
  BinaryMask m(side, side);
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) m.set(x, y, on(rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(trace_regions(m));
}
BENCHMARK(BM_TraceRegions)->Arg(64)->Arg(256)->Arg(1024);

void BM_Evaluate(benchmark::State& state) {
  const auto boxes = random_boxes(static_cast<std::size_t>(state.range(0)), 5);
  std::vector<GroundTruth> gt;
  std::vector<Detection> dets;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const std::string id = "img" + std::to_string(i % 50);
    gt.push_back({id, 1, boxes[i].box, {}});
    const Box b = boxes[i].box;
    dets.push_back({id, 1, boxes[i].score, {b.x1 + 2, b.y1 - 1, b.x2 + 1, b.y2 + 3}, {}});
  }
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(dets, gt));
}
BENCHMARK(BM_Evaluate)->Arg(500)->Arg(5000);

}  // namespace

BENCHMARK_MAIN();
