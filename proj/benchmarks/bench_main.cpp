#include <benchmark/benchmark.h>

#include <vector>

#include "noisyfb/harness.hpp"
#include "noisyfb/learners.hpp"
#include "noisyfb/noise.hpp"
#include "noisyfb/oracle.hpp"

namespace {

using namespace noisyfb;

void BM_SelectDistribution(benchmark::State& state) {
  const auto K = static_cast<std::size_t>(state.range(0));
  EwsState s(K, 0.01);
  std::vector<double> est(K);
  for (std::size_t i = 0; i < K; ++i) est[i] = static_cast<double>(i % 3);
  s.apply(est);
  std::vector<double> q(K);
  for (auto _ : state) {
    select_distribution(s, q);
    benchmark::DoNotOptimize(q.data());
  }
}
BENCHMARK(BM_SelectDistribution)->Arg(2)->Arg(10)->Arg(100);

void BM_Corrupt(benchmark::State& state) {
  RngStream rng(1);
  std::uint8_t acc = 0;
  for (auto _ : state) acc ^= corrupt(1, 0.5, rng);
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_Corrupt);

// Rounds per second of a full episode, per setting.
void BM_Episode(benchmark::State& state, Setting setting, NoiseModel noise, LearnerKind learner,
                AdversaryKind adversary) {
  ExperimentConfig c;
  c.setting = setting;
  c.actions = 10;
  c.horizon = 10'000;
  c.noise = noise;
  c.learner = learner;
  c.adversary = adversary;
  for (auto _ : state) benchmark::DoNotOptimize(run_episode(c, 0).final_regret());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.horizon));
}
BENCHMARK_CAPTURE(BM_Episode, full_constant, Setting{FeedbackModel::full_constant, true},
                  NoiseModel::constant(0.5), Ews{UnbiasedConstant{0.25}, 0.01},
                  StochasticGap{0.05});
BENCHMARK_CAPTURE(BM_Episode, full_variable, Setting{FeedbackModel::full_variable, true},
                  NoiseModel::shared_uniform(), Ews{ThresholdFull{0.1}, 0.001},
                  VariableNoiseFullInfo{0.1, 1.0 / 6.0});
BENCHMARK_CAPTURE(BM_Episode, bandit_constant, Setting{FeedbackModel::bandit_constant, true},
                  NoiseModel::constant(0.5), Ews{BanditImportance{}, 0.001}, BanditGap{0.1});

void BM_ExactTinyRegret(benchmark::State& state) {
  const LossMatrix losses = LossMatrix::from_rows({{0, 1}, {1, 0}, {0, 1}, {1, 1}, {0, 1}, {0, 0}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oracle::exact_expected_pseudo_regret({losses, 0.5}, Ews{UnbiasedConstant{0.25}, 0.3}));
  }
}
BENCHMARK(BM_ExactTinyRegret);

void BM_Quadrature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle::quadrature_g(TruncExp{1.0}, 0.05));
}
BENCHMARK(BM_Quadrature);

}  // namespace

BENCHMARK_MAIN();
