// Runs every acceptance criterion and prints one PASS/FAIL line per
// criterion. Exit status is non-zero if any criterion fails.
//
//   acceptance [--seeds N] [--blocks B] [--only 1,2,...]
//
// Criteria 8-11 train the neural detectors on the smoke profile; their cost
// is dominated by --seeds x --blocks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mimogan/channel/mimo_channel.hpp"
#include "mimogan/common/allocator.hpp"
#include "mimogan/common/errors.hpp"
#include "mimogan/detectors/lmmse.hpp"
#include "mimogan/detectors/losses.hpp"
#include "mimogan/detectors/pipeline.hpp"
#include "mimogan/harness/csv.hpp"
#include "mimogan/harness/experiment.hpp"
#include "mimogan/link/precoder.hpp"
#include "mimogan/nn/adam.hpp"
#include "oracles.hpp"

using namespace mimogan;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ---------------------------------------------------------------- 1
Outcome gradient_suite() {
  Rng rng(1001);
  double worst = 0.0;
  std::size_t params = 0;
  int failed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Index in = 0;
    auto net = testing::random_small_net(rng, in);
    const Eigen::Index batch = 1 + static_cast<Eigen::Index>(rng() % 4);
    const RealMatrix x = RealMatrix::Random(batch, in);
    const RealMatrix w = RealMatrix::Random(batch, net.output_width());
    const Rng masks(rng());
    const auto r = testing::finite_difference_check(net, x, w, masks);
    const double e = std::max(r.max_param_error, r.max_input_error);
    worst = std::max(worst, e);
    params += r.checked;
    failed += e >= 1e-4;
  }
  return {failed == 0, std::to_string(params) + " parameters in 100 nets, max rel error " + fmt("%.2e", worst)};
}

// ---------------------------------------------------------------- 2
Outcome adam_oracle() {
  auto net = nn::NeuralNet::zeros(1, {nn::LayerSpec::dense(1)});
  nn::AdamConfig cfg;
  cfg.l2 = 0.0;
  auto state = nn::AdamState::for_net(net, cfg);
  net.params()[0].weight_grad(0, 0) = 1.0;
  nn::adam_step(net, state);
  const double one = net.params()[0].weight(0, 0);
  const double e1 = std::abs(one - (-0.0002 / (1.0 + 1e-8)));
  net.params()[0].weight_grad(0, 0) = 1.0;
  nn::adam_step(net, state);
  const double e2 = std::max({std::abs(net.params()[0].weight(0, 0) - (-0.0004 / (1.0 + 1e-8))),
                              std::abs(state.weight_m[0](0, 0) - 0.75), std::abs(state.weight_v[0](0, 0) - 0.0199)});
  const bool ok = e1 <= 1e-12 && e2 <= 1e-12 && state.step_count == 2;
  return {ok, "step 1 error " + fmt("%.1e", e1) + ", step 2 error " + fmt("%.1e", e2)};
}

// ---------------------------------------------------------------- 3
Outcome channel_statistics() {
  const double power = testing::mean_path_power(100000, 926.0, 0.0, 1);
  const double dev = testing::max_autocorrelation_deviation(0.05, 10000, 100, 7);
  const double rician = testing::mean_path_power(100000, 926.0, 10.0, 1);
  const bool ok = std::abs(power - 1.0) <= 0.02 && dev < 0.1 && std::abs(rician - 1.0) <= 0.02;
  return {ok, "Rayleigh power " + fmt("%.4f", power) + ", J0 deviation " + fmt("%.4f", dev) + ", Rician 10 dB power " +
                  fmt("%.4f", rician)};
}

// ---------------------------------------------------------------- 4
Outcome linear_chain() {
  double recon = 0.0, roundtrip = 0.0;
  Rng rng(44);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    channel::FadingConfig fc;
    const auto ch = channel::gen_rayleigh_sequence(fc, seed)[0];
    const ComplexMatrix f = link::svd_precoder(ch, 8);
    ComplexMatrix diag = ComplexMatrix::Zero(8, 8);
    for (Eigen::Index i = 0; i < 8; ++i) diag(i, i) = ch.singular_values(i);
    recon = std::max(recon, (ch.u.adjoint() * ch.h * f - diag).cwiseAbs().maxCoeff());
    const Bits bits = link::random_bits(2 * 8 * 320, rng);
    const ComplexFrame s = link::qpsk_modulate(bits, 8);
    const auto block = link::transmit_block(s, ch, f, std::nullopt, 0.0, 64, rng);
    ComplexFrame y(8, 320);
    y << block.y_pilot, block.y_payload;
    const ComplexFrame eq = ch.singular_values.cwiseInverse().asDiagonal() * (ch.u.adjoint() * y);
    roundtrip = std::max(roundtrip, (eq - s).cwiseAbs().maxCoeff());
  }
  std::string detail = "reconstruction " + fmt("%.1e", recon) + ", roundtrip " + fmt("%.1e", roundtrip);
  bool ok = recon <= 1e-10 && roundtrip <= 1e-9;
  for (double ebn0 : {0.0, 4.0, 8.0}) {
    const auto clean = testing::identity_block(8, 0, 6250, 900 + static_cast<std::uint64_t>(ebn0));
    const double var = link::ebn0_to_noise_variance(ebn0, 2);
    Rng noise(31 + static_cast<std::uint64_t>(ebn0));
    const auto noisy = link::transmit_block(clean.s_payload, clean.channel, ComplexMatrix::Identity(8, 8),
                                            std::nullopt, var, 0, noise);
    const auto est = detectors::lmmse_detect(noisy.y_payload, noisy.channel, var, 1.0, 8);
    const double p = harness::ber(link::qpsk_hard_bits(est), noisy.payload_bits);
    const double q = testing::qpsk_ber_awgn(ebn0);
    const double z = (p - q) / std::sqrt(q * (1 - q) / 1e5);
    ok = ok && std::abs(z) < 3.0;
    detail += ", " + fmt("%g", ebn0) + " dB BER " + fmt("%.5f", p) + " vs " + fmt("%.5f", q) + " (" + fmt("%+.2f", z) +
              " sd)";
  }
  return {ok, detail};
}

// ---------------------------------------------------------------- 5
Outcome loss_arithmetic() {
  using detectors::GeneratorOutputs;
  const RealMatrix ones = RealMatrix::Ones(4, 1);
  std::vector<std::pair<double, double>> checks{
      {detectors::d_loss_value(ones, -ones), 0.0},
      {detectors::d_loss_value(0 * ones, 0 * ones), 2.0},
      {detectors::d_loss_value(ones, -ones, true), 8.0},
  };
  RealMatrix s(1, 2), y(1, 2), ds(1, 2), dy(1, 2);
  s << 0.1, -0.2;
  y << 0.4, 0.3;
  dy << 0.1, -0.1;
  ds << 0.3, 0.0;
  const RealMatrix z = RealMatrix::Zero(1, 1);
  checks.emplace_back(detectors::g_loss_value(GeneratorOutputs{z, z, y, s, s, y}, s, y, {}), 0.0);
  checks.emplace_back(detectors::g_loss_value(GeneratorOutputs{z, z, y + dy, s + ds, {}, {}}, s, y, {1, 1, 0, 0}), 0.5);
  const double c = 0.7;
  const RealMatrix cc = RealMatrix::Constant(3, 1, c);
  checks.emplace_back(
      detectors::g_loss_value(GeneratorOutputs{cc, cc, {}, {}, {}, {}}, RealMatrix::Zero(3, 2), RealMatrix::Zero(3, 2),
                              {0, 0, 0, 0}),
      2 * c * c);
  double worst = 0.0;
  for (auto [got, want] : checks) worst = std::max(worst, std::abs(got - want));
  return {worst <= 1e-12, std::to_string(checks.size()) + " fixtures, max error " + fmt("%.1e", worst)};
}

// ---------------------------------------------------------------- 6
Outcome optimal_discriminator() {
  std::vector<double> means;
  bool ok = true;
  std::string detail = "mean D output";
  for (std::uint64_t seed : {5, 6, 7}) {
    const double m = testing::matched_discriminator_mean(seed);
    ok = ok && std::abs(m) <= 0.1;
    detail += " " + fmt("%+.4f", m);
  }
  return {ok, detail};
}

// ---------------------------------------------------------------- 7
Outcome smoke_training() {
  const auto block = testing::identity_block(8, 64, 64, 2024);
  Rng init(7);
  auto ens = detectors::DetectorEnsemble::create(detectors::DetectorKind::cyclegan, detectors::NetworkShape::smoke(16),
                                                 {}, {}, {}, init);
  detectors::TrainConfig cfg;
  cfg.max_epochs = 2000;
  Rng rng(11);
  detectors::fit_block_scales(ens, block, cfg.scale_mode);
  detectors::TrainingSession session;
  const auto report = detectors::train_supervised(ens, session, detectors::pilot_set(block), nullptr, cfg, rng);
  return {report.best_val_ber < 0.05 && report.epochs_run <= 2000,
          "CycleGAN validation BER " + fmt("%.4f", report.best_val_ber) + " after " +
              std::to_string(report.epochs_run) + " epochs"};
}

// ---------------------------------------------------------------- 8-11
struct SmokeStudy {
  int seeds = 10;
  std::size_t blocks = 3;
  // mean payload BER per seed, keyed by (Eb/N0, detector)
  std::map<std::pair<double, std::string>, std::vector<double>> ber;
  std::vector<double> cyclegan_supervised_20, cyclegan_final_20;
  std::map<std::string, std::vector<double>> overhead50;  // 20 dB, P = K/2
  std::string seed1_csv;
  double seconds = 0.0;
  bool ran = false;
};

harness::ExperimentConfig smoke_pa_config(std::uint64_t seed, std::size_t blocks) {
  auto cfg = harness::smoke_profile();
  cfg.pa_enabled = true;
  cfg.seed = seed;
  cfg.blocks_per_point = blocks;
  cfg.timing = false;
  return cfg;
}

std::string csv_of(const std::vector<harness::MetricsRecord>& records) {
  std::ostringstream out;
  harness::write_csv(records, out);
  return out.str();
}

void run_smoke_study(SmokeStudy& st) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int seed = 1; seed <= st.seeds; ++seed) {
    const auto cfg = smoke_pa_config(static_cast<std::uint64_t>(seed), st.blocks);
    double sup = 0.0, fin = 0.0;
    int n = 0;
    const auto records = harness::run_experiment(
        cfg, {}, [&](const harness::MetricsRecord& r, const link::TransmissionBlock& b, const detectors::BlockOutcome& o) {
          if (r.detector != "cyclegan" || r.ebn0_db != 20.0) return;
          sup += harness::ber(o.supervised_bits, b.payload_bits);
          fin += harness::ber(o.bits, b.payload_bits);
          ++n;
        });
    if (seed == 1) st.seed1_csv = csv_of(records);
    for (const auto& row : harness::aggregate(records)) st.ber[{row.ebn0_db, row.detector}].push_back(row.mean_ber);
    st.cyclegan_supervised_20.push_back(sup / n);
    st.cyclegan_final_20.push_back(fin / n);

    auto overhead = cfg;
    overhead.pilots = overhead.payload = overhead.block_length / 2;
    overhead.ebn0_db = {20.0};
    overhead.detectors = {harness::DetectorId::dnn, harness::DetectorId::cyclednn};
    for (const auto& row : harness::aggregate(harness::run_experiment(overhead)))
      st.overhead50[row.detector].push_back(row.mean_ber);
    std::fprintf(stderr, "  smoke study: seed %d/%d done (%.0f s)\n", seed, st.seeds,
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  st.ran = true;
}

Outcome semi_supervised_benefit(const SmokeStudy& st) {
  const double a1 = median(st.cyclegan_supervised_20);
  const double a2 = median(st.cyclegan_final_20);
  const double improvement = a1 > 0.0 ? (a1 - a2) / a1 : 0.0;
  return {a2 <= a1 && improvement >= 0.0,
          "CycleGAN 20 dB median BER after pilot phase " + fmt("%.4f", a1) + ", after data phase " + fmt("%.4f", a2) +
              ", relative improvement " + fmt("%.1f", 100.0 * improvement) + "%"};
}

Outcome detector_ordering(const SmokeStudy& st) {
  bool ok = true;
  std::string detail;
  for (double e : {15.0, 20.0, 25.0}) {
    const double cg = median(st.ber.at({e, "cyclegan"}));
    const double cd = median(st.ber.at({e, "cyclednn"}));
    const double dn = median(st.ber.at({e, "dnn"}));
    const double lm = median(st.ber.at({e, "lmmse"}));
    ok = ok && cg <= cd && cd <= dn;
    if (e >= 20.0) ok = ok && cg <= lm;
    detail += fmt("%g dB", e) + " [cyclegan " + fmt("%.4f", cg) + ", cyclednn " + fmt("%.4f", cd) + ", dnn " +
              fmt("%.4f", dn) + ", lmmse " + fmt("%.4f", lm) + "] ";
  }
  detail += "study time " + fmt("%.0f s", st.seconds);
  ok = ok && st.seconds <= 7200.0;
  return {ok, detail};
}

Outcome overhead_study(const SmokeStudy& st) {
  const double cg = median(st.ber.at({20.0, "cyclegan"}));
  const double dn = median(st.overhead50.at("dnn"));
  const double cd = median(st.overhead50.at("cyclednn"));
  return {dn >= cg && cd >= cg, "20 dB median BER: cyclegan at 20% overhead " + fmt("%.4f", cg) +
                                    ", dnn at 50% " + fmt("%.4f", dn) + ", cyclednn at 50% " + fmt("%.4f", cd)};
}

Outcome determinism(const SmokeStudy& st) {
  const auto again = csv_of(harness::run_experiment(smoke_pa_config(1, st.blocks)));
  const bool ok = !st.seed1_csv.empty() && again == st.seed1_csv;
  return {ok, "two seed-1 smoke runs (" + std::to_string(st.blocks) + " blocks per point, " +
                  std::to_string(std::count(again.begin(), again.end(), '\n') - 1) + " records) " +
                  (ok ? "byte-identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
  tune_allocator();
  SmokeStudy study;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--seeds" && i + 1 < argc) {
      study.seeds = std::atoi(argv[++i]);
    } else if (a == "--blocks" && i + 1 < argc) {
      study.blocks = static_cast<std::size_t>(std::atoi(argv[++i]));
    } else if (a == "--only" && i + 1 < argc) {
      std::istringstream in(argv[++i]);
      for (std::string tok; std::getline(in, tok, ',');) only.insert(std::stoi(tok));
    } else {
      std::fprintf(stderr, "usage: %s [--seeds N] [--blocks B] [--only 1,2,...]\n", argv[0]);
      return 2;
    }
  }

  const auto needs_study = [&] {
    if (!study.ran) run_smoke_study(study);
  };
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"gradient suite", gradient_suite},
      {"Adam oracle", adam_oracle},
      {"channel statistics", channel_statistics},
      {"linear-chain oracle", linear_chain},
      {"loss arithmetic", loss_arithmetic},
      {"optimal discriminator", optimal_discriminator},
      {"smoke training", smoke_training},
      {"semi-supervised benefit", [&] { needs_study(); return semi_supervised_benefit(study); }},
      {"detector ordering", [&] { needs_study(); return detector_ordering(study); }},
      {"overhead study", [&] { needs_study(); return overhead_study(study); }},
      {"determinism", [&] { needs_study(); return determinism(study); }},
  };
  // Wallclock limits per criterion; 8-11 share the smoke study and are
  // bounded inside criterion 9.
  const std::map<int, double> limits{{1, 30}, {3, 60}, {4, 60}, {6, 120}, {7, 300}};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (auto it = limits.find(id); it != limits.end() && secs > it->second) {
      out.pass = false;
      out.detail += " (over the " + fmt("%.0f s", it->second) + " budget)";
    }
    failures += !out.pass;
    std::printf("%s %2d %s: %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
