#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mimogan/detectors/training.hpp"
#include "mimogan/link/pa.hpp"

namespace mimogan::harness {

enum class DetectorId { lmmse, dnn, cyclednn, cyclegan };
std::string_view to_string(DetectorId id) noexcept;
DetectorId parse_detector(std::string_view name);

enum class ChannelKind { rayleigh, rician };

struct ExperimentConfig {
  std::string profile = "paper";

  Eigen::Index tx_antennas = 64;  // N_s
  Eigen::Index rx_antennas = 8;   // N_r
  Eigen::Index streams = 8;
  Eigen::Index block_length = 320;  // K
  Eigen::Index pilots = 64;         // P
  Eigen::Index payload = 256;       // D

  std::vector<double> ebn0_db{5, 10, 15, 20, 25, 30};
  std::size_t blocks_per_point = 100;
  std::vector<DetectorId> detectors{DetectorId::lmmse, DetectorId::dnn, DetectorId::cyclednn, DetectorId::cyclegan};

  ChannelKind channel = ChannelKind::rayleigh;
  double rician_k_db = 10.0;
  double doppler_hz = 926.0;
  double symbol_rate_hz = 1e6;
  int oscillators = 16;

  bool pa_enabled = false;
  link::PACoeffs pa_coeffs = link::PACoeffs::paper_default();
  link::PaModel pa_model = link::PaModel::polynomial;

  detectors::LossWeights pilot_weights;
  detectors::LossWeights data_weights;
  detectors::NetworkShape shape;
  detectors::TrainConfig train;
  nn::AdamConfig adam;

  // Report rate with rho = 1 instead of D / K.
  bool full_payload_rate = false;

  std::uint64_t seed = 1;
  unsigned threads = 1;
  // Record wallclock per (block, detector); off leaves the column at 0 so
  // repeated runs produce identical files.
  bool timing = true;
  std::filesystem::path output = "results.csv";
  std::optional<std::filesystem::path> aggregate_output;

  double payload_fraction() const noexcept {
    return full_payload_rate ? 1.0 : static_cast<double>(payload) / static_cast<double>(block_length);
  }
  double block_period_s() const noexcept { return static_cast<double>(block_length) / symbol_rate_hz; }
};

ExperimentConfig paper_profile();
// Desk-scale defaults: 8 receive x 64 transmit antennas, 8 streams, halved
// hidden widths, K = 80, P = 16, D = 64, 10 blocks, Eb/N0 in {15, 20, 25} dB.
ExperimentConfig smoke_profile();
ExperimentConfig profile_by_name(std::string_view name);

// Throws ConfigError naming the offending field.
void validate(const ExperimentConfig& cfg);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Reads `key = value` lines; '#' starts a comment, blank lines are skipped.
KeyValues read_key_values(std::istream& in);
KeyValues read_key_values(const std::filesystem::path& path);

// Builds a configuration from file entries overridden by flag entries. The
// `profile` key (flags first, then file) picks the defaults; other keys are
// applied on top. Setting only one of pilots/payload derives the other from
// block_length. The result is validated.
ExperimentConfig build_config(const KeyValues& file, const KeyValues& flags = {});
ExperimentConfig parse_config(const std::optional<std::filesystem::path>& path, const KeyValues& flags = {});

// "5:5:30" (start:step:stop, inclusive) or a comma list "15,20,25".
std::vector<double> parse_ebn0_list(std::string_view text);

// Writes every key with its current value in the file format.
void write_config(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace mimogan::harness
