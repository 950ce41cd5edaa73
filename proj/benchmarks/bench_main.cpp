#include <benchmark/benchmark.h>

#include "mimogan/channel/mimo_channel.hpp"
#include "mimogan/common/allocator.hpp"
#include "mimogan/detectors/losses.hpp"
#include "mimogan/detectors/training.hpp"
#include "mimogan/link/precoder.hpp"
#include "mimogan/link/qpsk.hpp"
#include "mimogan/link/transmitter.hpp"

using namespace mimogan;

namespace {

detectors::NetworkShape shape_for(int full) {
  return full ? detectors::NetworkShape{} : detectors::NetworkShape::smoke(16);
}

detectors::DetectorEnsemble make_ensemble(detectors::DetectorKind kind, int full) {
  Rng rng(1);
  return detectors::DetectorEnsemble::create(kind, shape_for(full), {}, {}, {}, rng);
}

// Generator forward on a batch of 128 (arg: 0 smoke widths, 1 full widths).
void BM_GeneratorPredict(benchmark::State& state) {
  const auto ens = make_ensemble(detectors::DetectorKind::dnn, static_cast<int>(state.range(0)));
  const RealMatrix x = RealMatrix::Random(128, 16);
  for (auto _ : state) benchmark::DoNotOptimize(ens.g_y2s.predict(x));
  state.SetItemsProcessed(state.iterations() * 128);
}
BENCHMARK(BM_GeneratorPredict)->Arg(0)->Arg(1);

// Train-mode forward plus backward of one generator.
void BM_GeneratorForwardBackward(benchmark::State& state) {
  auto ens = make_ensemble(detectors::DetectorKind::dnn, static_cast<int>(state.range(0)));
  const RealMatrix x = RealMatrix::Random(128, 16);
  const RealMatrix up = RealMatrix::Random(128, 16);
  Rng rng(2);
  for (auto _ : state) {
    const auto trace = ens.g_y2s.forward_traced(x, rng);
    benchmark::DoNotOptimize(ens.g_y2s.backward(trace, up));
  }
  state.SetItemsProcessed(state.iterations() * 128);
}
BENCHMARK(BM_GeneratorForwardBackward)->Arg(0)->Arg(1);

// One full generator objective gradient (both directions, cycle and
// adversarial terms) for a batch of 128.
void BM_GeneratorObjective(benchmark::State& state) {
  auto ens = make_ensemble(detectors::DetectorKind::cyclegan, static_cast<int>(state.range(0)));
  const RealMatrix s = RealMatrix::Random(128, 16), y = RealMatrix::Random(128, 16);
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(detectors::accumulate_generator_gradients(ens, s, y, {}, rng));
}
BENCHMARK(BM_GeneratorObjective)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// One training epoch over 480 augmented pilot pairs, per detector kind.
void BM_TrainEpoch(benchmark::State& state) {
  const auto kind = static_cast<detectors::DetectorKind>(state.range(0));
  auto ens = make_ensemble(kind, 0);
  detectors::PairSet train{RealMatrix::Random(480, 16), RealMatrix::Random(480, 16)};
  Rng rng(4);
  for (auto _ : state) detectors::train_epoch(ens, train, {}, {}, rng);
  state.SetLabel(std::string(detectors::to_string(kind)));
}
BENCHMARK(BM_TrainEpoch)
    ->Arg(static_cast<int>(detectors::DetectorKind::dnn))
    ->Arg(static_cast<int>(detectors::DetectorKind::cyclednn))
    ->Arg(static_cast<int>(detectors::DetectorKind::cyclegan))
    ->Unit(benchmark::kMillisecond);

// Rayleigh sequence of 100 blocks for an 8x64 array, SVD included.
void BM_RayleighSequence(benchmark::State& state) {
  channel::FadingConfig cfg;
  cfg.blocks = 100;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(channel::gen_rayleigh_sequence(cfg, ++seed));
}
BENCHMARK(BM_RayleighSequence)->Unit(benchmark::kMillisecond);

// One K = 320 block through precoding, PA, channel and noise.
void BM_TransmitBlock(benchmark::State& state) {
  channel::FadingConfig cfg;
  const auto ch = channel::gen_rayleigh_sequence(cfg, 1)[0];
  const ComplexMatrix f = link::svd_precoder(ch, 8);
  Rng rng(5);
  const ComplexFrame s = link::qpsk_modulate(link::random_bits(2 * 8 * 320, rng), 8);
  const link::PaOptions pa;
  for (auto _ : state) benchmark::DoNotOptimize(link::transmit_block(s, ch, f, pa, 0.01, 64, rng));
}
BENCHMARK(BM_TransmitBlock);

}  // namespace

int main(int argc, char** argv) {
  tune_allocator();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
