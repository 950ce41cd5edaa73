#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "mimogan/harness/metrics.hpp"

namespace mimogan::harness {

inline constexpr const char* kCsvHeader =
    "ebn0_db,block_index,detector,ber,achievable_rate_bits_per_use,epochs_run,used_previous_pilots,"
    "pseudo_label_refreshes,wallclock_s,seed";

// Header plus one row per record; reals printed with 10 significant digits,
// booleans as 0/1, LF line endings.
void write_csv(const std::vector<MetricsRecord>& records, std::ostream& out);
void write_csv(const std::vector<MetricsRecord>& records, const std::filesystem::path& path);

// Parses a file produced by write_csv. Throws FormatError on a bad header
// or malformed row.
std::vector<MetricsRecord> read_csv(std::istream& in);
std::vector<MetricsRecord> read_csv(const std::filesystem::path& path);

struct AggregateRow {
  double ebn0_db = 0.0;
  std::string detector;
  double mean_ber = 0.0;
  double mean_rate = 0.0;
  std::size_t count = 0;
};

// Means per (Eb/N0, detector) in first-appearance order.
std::vector<AggregateRow> aggregate(const std::vector<MetricsRecord>& records);

// Columns ebn0_db,detector,mean_ber,mean_rate.
void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& out);
void write_aggregate_csv(const std::vector<AggregateRow>& rows, const std::filesystem::path& path);

}  // namespace mimogan::harness
