#include "mimogan/harness/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mimogan/common/errors.hpp"

namespace mimogan::harness {

namespace {

std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_num(const std::string& s, int row, const char* column) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw FormatError("row " + std::to_string(row) + ": bad " + column + " '" + s + "'");
  return value;
}

}  // namespace

void write_csv(const std::vector<MetricsRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << real(r.ebn0_db) << ',' << r.block_index << ',' << r.detector << ',' << real(r.ber) << ','
        << real(r.achievable_rate_bits_per_use) << ',' << r.epochs_run << ',' << (r.used_previous_pilots ? 1 : 0)
        << ',' << r.pseudo_label_refreshes << ',' << real(r.wallclock_s) << ',' << r.seed << '\n';
  }
}

void write_csv(const std::vector<MetricsRecord>& records, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_csv(records, out);
}

std::vector<MetricsRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw FormatError("metrics CSV: unexpected header");
  std::vector<MetricsRecord> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto c = split_row(line);
    if (c.size() != 10) throw FormatError("row " + std::to_string(row) + ": expected 10 columns");
    MetricsRecord r;
    r.ebn0_db = parse_num<double>(c[0], row, "ebn0_db");
    r.block_index = parse_num<std::size_t>(c[1], row, "block_index");
    r.detector = c[2];
    r.ber = parse_num<double>(c[3], row, "ber");
    r.achievable_rate_bits_per_use = parse_num<double>(c[4], row, "achievable_rate_bits_per_use");
    r.epochs_run = parse_num<int>(c[5], row, "epochs_run");
    r.used_previous_pilots = parse_num<int>(c[6], row, "used_previous_pilots") != 0;
    r.pseudo_label_refreshes = parse_num<int>(c[7], row, "pseudo_label_refreshes");
    r.wallclock_s = parse_num<double>(c[8], row, "wallclock_s");
    r.seed = parse_num<std::uint64_t>(c[9], row, "seed");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<MetricsRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  return read_csv(in);
}

std::vector<AggregateRow> aggregate(const std::vector<MetricsRecord>& records) {
  std::vector<AggregateRow> rows;
  for (const auto& r : records) {
    AggregateRow* hit = nullptr;
    for (auto& a : rows)
      if (a.ebn0_db == r.ebn0_db && a.detector == r.detector) hit = &a;
    if (hit == nullptr) {
      rows.push_back({r.ebn0_db, r.detector, 0.0, 0.0, 0});
      hit = &rows.back();
    }
    hit->mean_ber += r.ber;
    hit->mean_rate += r.achievable_rate_bits_per_use;
    ++hit->count;
  }
  for (auto& a : rows) {
    a.mean_ber /= static_cast<double>(a.count);
    a.mean_rate /= static_cast<double>(a.count);
  }
  return rows;
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& out) {
  out << "ebn0_db,detector,mean_ber,mean_rate\n";
  for (const auto& a : rows)
    out << real(a.ebn0_db) << ',' << a.detector << ',' << real(a.mean_ber) << ',' << real(a.mean_rate) << '\n';
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_aggregate_csv(rows, out);
}

}  // namespace mimogan::harness
