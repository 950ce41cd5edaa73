#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "mimogan/channel/dump.hpp"
#include "mimogan/channel/jakes.hpp"
#include "mimogan/channel/mimo_channel.hpp"
#include "mimogan/channel/noise.hpp"
#include "mimogan/common/errors.hpp"
#include "oracles.hpp"

using namespace mimogan;
using namespace mimogan::channel;

namespace {

JakesParams params(double power, int n0, double fd, std::vector<double> phases, double phi_n = 0.0) {
  JakesParams p;
  p.power = power;
  p.oscillators = n0;
  p.max_doppler_hz = fd;
  p.sample_period_s = 1e-3;
  p.phases = std::move(phases);
  p.doppler_phase = phi_n;
  return p;
}

void check_svd(const ChannelRealization& ch) {
  const Eigen::Index nr = ch.rx(), ns = ch.tx();
  CHECK((ch.u.adjoint() * ch.u - ComplexMatrix::Identity(nr, nr)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((ch.v.adjoint() * ch.v - ComplexMatrix::Identity(ns, ns)).cwiseAbs().maxCoeff() < 1e-10);
  const auto& s = ch.singular_values;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    CHECK(s(k) >= 0.0);
    if (k > 0) CHECK(s(k) <= s(k - 1));
  }
  ComplexMatrix sigma = ComplexMatrix::Zero(nr, ns);
  for (Eigen::Index k = 0; k < s.size(); ++k) sigma(k, k) = s(k);
  CHECK((ch.u * sigma * ch.v.adjoint() - ch.h).cwiseAbs().maxCoeff() < 1e-10);
}

}  // namespace

TEST_CASE("jakes with zero power is zero") {
  const auto p = params(0.0, 8, 50.0, std::vector<double>(8, 1.3), 0.4);
  for (int k = 0; k < 20; ++k) CHECK(jakes_sample(p, k) == cplx(0.0, 0.0));
}

TEST_CASE("jakes at t = 0 with zero phases") {
  for (int n0 : {1, 8, 16}) {
    const auto p = params(1.7, n0, 926.0, std::vector<double>(static_cast<std::size_t>(n0), 0.0));
    const cplx h = jakes_sample(p, 0);
    const double expected = 1.7 / std::sqrt(2.0 * n0 + 1.0) * (2.0 * n0 + std::sqrt(2.0));
    CHECK(h.real() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(h.imag() == 0.0);
  }
}

TEST_CASE("jakes without Doppler is constant") {
  const auto p = params(1.0, 16, 0.0, std::vector<double>(16, 0.7), 2.1);
  const cplx h0 = jakes_sample(p, 0);
  for (int k = 1; k < 50; ++k) CHECK(jakes_sample(p, k) == h0);
}

TEST_CASE("oscillator frequencies follow the classical arrangement") {
  const auto p = params(1.0, 4, 10.0, std::vector<double>(4, 0.0));
  for (int n = 1; n <= 4; ++n)
    CHECK(oscillator_frequency(p, n) ==
          doctest::Approx(2 * std::numbers::pi * 10.0 * std::cos(2 * std::numbers::pi * n / 18.0)));
}

TEST_CASE("jakes parameter validation") {
  auto p = params(1.0, 4, 10.0, std::vector<double>(3, 0.0));
  CHECK_THROWS_AS(jakes_sample(p, 0), DimensionError);
  p = params(1.0, 0, 10.0, {});
  CHECK_THROWS_AS(jakes_sample(p, 0), DomainError);
}

TEST_CASE("single scalar block without Doppler") {
  FadingConfig cfg;
  cfg.rx = cfg.tx = 1;
  cfg.blocks = 1;
  cfg.doppler_hz = 0.0;
  const auto seq = gen_rayleigh_sequence(cfg, 5);
  REQUIRE(seq.size() == 1);
  CHECK(seq[0].h.rows() == 1);
  cfg.blocks = 6;
  const auto frozen = gen_rayleigh_sequence(cfg, 5);
  for (const auto& ch : frozen) CHECK(ch.h(0, 0) == frozen[0].h(0, 0));
  CHECK(frozen[0].h(0, 0) == seq[0].h(0, 0));
}

TEST_CASE("unit mean path power") {
  CHECK(testing::mean_path_power(100000, 926.0, 0.0, 1) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(testing::mean_path_power(100000, 0.0, 0.0, 1) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("Rayleigh marginals of the real and imaginary parts") {
  FadingConfig cfg;
  cfg.rx = cfg.tx = 50;
  cfg.blocks = 1;
  std::vector<double> re, im;
  for (std::uint64_t s = 100; re.size() < 100000; ++s) {
    const auto h = gen_rayleigh_sequence(cfg, s)[0].h;
    for (Eigen::Index k = 0; k < h.size(); ++k) {
      re.push_back(h.data()[k].real());
      im.push_back(h.data()[k].imag());
    }
  }
  for (const auto* v : {&re, &im}) {
    double mean = 0.0, sq = 0.0;
    for (double x : *v) mean += x;
    mean /= static_cast<double>(v->size());
    for (double x : *v) sq += (x - mean) * (x - mean);
    const double var = sq / static_cast<double>(v->size() - 1);
    CHECK(std::abs(mean) < 3.0 * std::sqrt(var / static_cast<double>(v->size())));
    CHECK(var == doctest::Approx(0.5).epsilon(0.03));
  }
}

TEST_CASE("temporal autocorrelation follows J0") {
  // fd * Ts = 0.05, so lags up to 5 / fd are 100 samples.
  CHECK(testing::max_autocorrelation_deviation(0.05, 10000, 100, 7) < 0.1);
}

TEST_CASE("sequences are seed deterministic and carry metadata") {
  FadingConfig cfg;
  cfg.rx = 4;
  cfg.tx = 6;
  cfg.blocks = 3;
  const auto a = gen_rayleigh_sequence(cfg, 42);
  const auto b = gen_rayleigh_sequence(cfg, 42);
  const auto c = gen_rayleigh_sequence(cfg, 43);
  for (std::size_t l = 0; l < 3; ++l) {
    CHECK(a[l].h == b[l].h);
    CHECK(a[l].block_index == l);
    CHECK(a[l].meta.seed == 42);
    CHECK(a[l].meta.doppler_hz == 926.0);
  }
  CHECK(a[0].h != c[0].h);
  // Successive blocks differ but stay correlated at this Doppler.
  CHECK(a[0].h != a[1].h);
}

TEST_CASE("SVD invariants on generated channels") {
  for (auto [rx, tx] : {std::pair<Eigen::Index, Eigen::Index>{8, 64}, {8, 8}, {64, 8}, {3, 5}}) {
    FadingConfig cfg;
    cfg.rx = rx;
    cfg.tx = tx;
    cfg.blocks = 2;
    for (const auto& ch : gen_rayleigh_sequence(cfg, 9)) check_svd(ch);
    for (const auto& ch : gen_rician_sequence(cfg, 10.0, 9)) check_svd(ch);
  }
}

TEST_CASE("V columns are phase normalized") {
  FadingConfig cfg;
  cfg.rx = 4;
  cfg.tx = 4;
  const auto ch = gen_rayleigh_sequence(cfg, 3)[0];
  for (Eigen::Index k = 0; k < ch.v.cols(); ++k) {
    Eigen::Index first = 0;
    while (std::abs(ch.v(first, k)) < 1e-12) ++first;
    CHECK(ch.v(first, k).real() > 0.0);
    CHECK(ch.v(first, k).imag() == 0.0);
  }
}

TEST_CASE("Rician degenerate and limit cases") {
  FadingConfig cfg;
  cfg.rx = 3;
  cfg.tx = 5;
  cfg.blocks = 4;
  const auto ray = gen_rayleigh_sequence(cfg, 11);
  const auto k0 = gen_rician_sequence(cfg, 0.0, 11);
  for (std::size_t l = 0; l < ray.size(); ++l) CHECK(k0[l].h == ray[l].h);

  const ComplexMatrix los = los_matrix(3, 5, 11);
  CHECK((los.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
  Eigen::JacobiSVD<ComplexMatrix> svd(los);
  CHECK(svd.singularValues()(1) < 1e-10);
  for (const auto& ch : gen_rician_sequence(cfg, 1e9, 11)) {
    CHECK((ch.h - los).cwiseAbs().maxCoeff() < 1e-4);
    CHECK(ch.meta.rician_factor == 1e9);
  }
  CHECK_THROWS_AS(gen_rician_sequence(cfg, -1.0, 11), DomainError);
}

TEST_CASE("Rician 10 dB keeps unit power") {
  CHECK(testing::mean_path_power(100000, 926.0, 10.0, 1) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("awgn variance, zero case and determinism") {
  Rng rng(1);
  CHECK(awgn(3, 4, {0.0}, rng).isZero(0.0));
  const ComplexMatrix n = awgn(1000, 1000, {1.0}, rng);
  const double var = n.cwiseAbs2().mean() - std::norm(n.mean());
  CHECK(var == doctest::Approx(1.0).epsilon(0.01));
  CHECK(n.real().array().square().mean() == doctest::Approx(0.5).epsilon(0.01));
  Rng a(99), b(99);
  CHECK(awgn(5, 7, {0.3}, a) == awgn(5, 7, {0.3}, b));
  CHECK_THROWS_AS(awgn(1, 1, {-1.0}, a), DomainError);
}

TEST_CASE("channel CSV dump") {
  FadingConfig cfg;
  cfg.rx = 2;
  cfg.tx = 3;
  cfg.blocks = 2;
  const auto seq = gen_rayleigh_sequence(cfg, 1);
  std::ostringstream out;
  write_channel_csv(seq, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "block,rx,tx,re,im");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 12);
  CHECK(out.str().find("1,1,2,") != std::string::npos);
}
