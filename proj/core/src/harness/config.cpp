#include "mimogan/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mimogan/common/errors.hpp"

namespace mimogan::harness {

std::string_view to_string(DetectorId id) noexcept {
  switch (id) {
    case DetectorId::lmmse: return "lmmse";
    case DetectorId::dnn: return "dnn";
    case DetectorId::cyclednn: return "cyclednn";
    case DetectorId::cyclegan: return "cyclegan";
  }
  return "unknown";
}

DetectorId parse_detector(std::string_view name) {
  for (auto id : {DetectorId::lmmse, DetectorId::dnn, DetectorId::cyclednn, DetectorId::cyclegan})
    if (to_string(id) == name) return id;
  throw ConfigError("detectors: unknown detector '" + std::string(name) + "'");
}

ExperimentConfig paper_profile() { return ExperimentConfig{}; }

ExperimentConfig smoke_profile() {
  ExperimentConfig c;
  c.profile = "smoke";
  c.tx_antennas = 64;  // keeps the per-antenna PA drive level of the full setup
  c.rx_antennas = 8;
  c.streams = 8;
  c.block_length = 80;
  c.pilots = 16;
  c.payload = 64;
  c.ebn0_db = {15, 20, 25};
  c.blocks_per_point = 10;
  c.shape = detectors::NetworkShape::smoke(2 * c.streams);
  return c;
}

ExperimentConfig profile_by_name(std::string_view name) {
  if (name == "paper") return paper_profile();
  if (name == "smoke") return smoke_profile();
  throw ConfigError("profile: expected 'paper' or 'smoke', got '" + std::string(name) + "'");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& expected) {
  throw ConfigError(key + ": expected " + expected + ", got '" + value + "'");
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end || !std::isfinite(out)) bad(key, v, "a finite number");
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end) bad(key, v, "an integer");
  return out;
}

long long to_positive(const std::string& key, const std::string& v) {
  const auto n = to_int(key, v);
  if (n < 1) bad(key, v, "a positive integer");
  return n;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  bad(key, v, "on|off");
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& part : split(v, ',')) out.push_back(to_double(key, part));
  return out;
}

detectors::LossWeights to_weights(const std::string& key, const std::string& v) {
  const auto w = to_doubles(key, v);
  if (w.size() != 4) bad(key, v, "four comma-separated weights alpha,beta,gamma,delta");
  for (double x : w)
    if (x < 0) bad(key, v, "non-negative weights");
  return {w[0], w[1], w[2], w[3]};
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v[i]);
  return out;
}

struct Field {
  std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

const std::map<std::string, Field>& fields() {
  using C = ExperimentConfig;
  using S = std::string;
  static const std::map<std::string, Field> table = {
      {"tx_antennas", {[](C& c, const S& k, const S& v) { c.tx_antennas = to_positive(k, v); },
                       [](const C& c) { return std::to_string(c.tx_antennas); }}},
      {"rx_antennas", {[](C& c, const S& k, const S& v) { c.rx_antennas = to_positive(k, v); },
                       [](const C& c) { return std::to_string(c.rx_antennas); }}},
      {"streams", {[](C& c, const S& k, const S& v) { c.streams = to_positive(k, v); },
                   [](const C& c) { return std::to_string(c.streams); }}},
      {"block_length", {[](C& c, const S& k, const S& v) { c.block_length = to_positive(k, v); },
                        [](const C& c) { return std::to_string(c.block_length); }}},
      {"pilots", {[](C& c, const S& k, const S& v) { c.pilots = to_positive(k, v); },
                  [](const C& c) { return std::to_string(c.pilots); }}},
      {"payload", {[](C& c, const S& k, const S& v) { c.payload = to_int(k, v); },
                   [](const C& c) { return std::to_string(c.payload); }}},
      {"ebn0_db", {[](C& c, const S&, const S& v) { c.ebn0_db = parse_ebn0_list(v); },
                   [](const C& c) { return join(c.ebn0_db); }}},
      {"blocks", {[](C& c, const S& k, const S& v) { c.blocks_per_point = static_cast<std::size_t>(to_positive(k, v)); },
                  [](const C& c) { return std::to_string(c.blocks_per_point); }}},
      {"detectors",
       {[](C& c, const S&, const S& v) {
          c.detectors.clear();
          for (const auto& name : split(v, ',')) c.detectors.push_back(parse_detector(name));
        },
        [](const C& c) {
          std::string out;
          for (std::size_t i = 0; i < c.detectors.size(); ++i) out += (i ? "," : "") + std::string(to_string(c.detectors[i]));
          return out;
        }}},
      {"channel",
       {[](C& c, const S& k, const S& v) {
          if (v == "rayleigh") {
            c.channel = ChannelKind::rayleigh;
          } else if (v == "rician") {
            c.channel = ChannelKind::rician;
          } else if (v.rfind("rician:", 0) == 0 && v.size() > 9 && v.substr(v.size() - 2) == "db") {
            c.channel = ChannelKind::rician;
            c.rician_k_db = to_double(k, v.substr(7, v.size() - 9));
          } else {
            bad(k, v, "rayleigh | rician | rician:<K>db");
          }
        },
        [](const C& c) { return c.channel == ChannelKind::rayleigh ? S("rayleigh") : "rician:" + fmt(c.rician_k_db) + "db"; }}},
      {"rician_k_db", {[](C& c, const S& k, const S& v) { c.rician_k_db = to_double(k, v); },
                       [](const C& c) { return fmt(c.rician_k_db); }}},
      {"doppler_hz", {[](C& c, const S& k, const S& v) { c.doppler_hz = to_double(k, v); },
                      [](const C& c) { return fmt(c.doppler_hz); }}},
      {"symbol_rate_hz", {[](C& c, const S& k, const S& v) { c.symbol_rate_hz = to_double(k, v); },
                          [](const C& c) { return fmt(c.symbol_rate_hz); }}},
      {"oscillators", {[](C& c, const S& k, const S& v) { c.oscillators = static_cast<int>(to_positive(k, v)); },
                       [](const C& c) { return std::to_string(c.oscillators); }}},
      {"pa", {[](C& c, const S& k, const S& v) { c.pa_enabled = to_bool(k, v); },
              [](const C& c) { return S(c.pa_enabled ? "on" : "off"); }}},
      {"pa_coeffs", {[](C& c, const S& k, const S& v) { c.pa_coeffs.odd = to_doubles(k, v); },
                     [](const C& c) { return join(c.pa_coeffs.odd); }}},
      {"pa_model",
       {[](C& c, const S& k, const S& v) {
          if (v == "polynomial") c.pa_model = link::PaModel::polynomial;
          else if (v == "amplitude") c.pa_model = link::PaModel::amplitude;
          else bad(k, v, "polynomial | amplitude");
        },
        [](const C& c) { return S(c.pa_model == link::PaModel::polynomial ? "polynomial" : "amplitude"); }}},
      {"pilot_weights", {[](C& c, const S& k, const S& v) { c.pilot_weights = to_weights(k, v); },
                         [](const C& c) {
                           const auto& w = c.pilot_weights;
                           return join({w.alpha, w.beta, w.gamma, w.delta});
                         }}},
      {"data_weights", {[](C& c, const S& k, const S& v) { c.data_weights = to_weights(k, v); },
                        [](const C& c) {
                          const auto& w = c.data_weights;
                          return join({w.alpha, w.beta, w.gamma, w.delta});
                        }}},
      {"gen_hidden1", {[](C& c, const S& k, const S& v) { c.shape.gen_hidden1 = to_positive(k, v); },
                       [](const C& c) { return std::to_string(c.shape.gen_hidden1); }}},
      {"gen_hidden2", {[](C& c, const S& k, const S& v) { c.shape.gen_hidden2 = to_positive(k, v); },
                       [](const C& c) { return std::to_string(c.shape.gen_hidden2); }}},
      {"disc_hidden1", {[](C& c, const S& k, const S& v) { c.shape.disc_hidden1 = to_positive(k, v); },
                        [](const C& c) { return std::to_string(c.shape.disc_hidden1); }}},
      {"disc_hidden2", {[](C& c, const S& k, const S& v) { c.shape.disc_hidden2 = to_positive(k, v); },
                        [](const C& c) { return std::to_string(c.shape.disc_hidden2); }}},
      {"leaky_slope", {[](C& c, const S& k, const S& v) { c.shape.slope = to_double(k, v); },
                       [](const C& c) { return fmt(c.shape.slope); }}},
      {"dropout", {[](C& c, const S& k, const S& v) { c.shape.drop_rate = to_double(k, v); },
                   [](const C& c) { return fmt(c.shape.drop_rate); }}},
      {"max_epochs", {[](C& c, const S& k, const S& v) { c.train.max_epochs = static_cast<int>(to_int(k, v)); },
                      [](const C& c) { return std::to_string(c.train.max_epochs); }}},
      {"patience", {[](C& c, const S& k, const S& v) { c.train.patience = static_cast<int>(to_positive(k, v)); },
                    [](const C& c) { return std::to_string(c.train.patience); }}},
      {"batch_size", {[](C& c, const S& k, const S& v) { c.train.batch_size = static_cast<int>(to_positive(k, v)); },
                      [](const C& c) { return std::to_string(c.train.batch_size); }}},
      {"label_invert_prob", {[](C& c, const S& k, const S& v) { c.train.label_invert_prob = to_double(k, v); },
                             [](const C& c) { return fmt(c.train.label_invert_prob); }}},
      {"pilot_augment", {[](C& c, const S& k, const S& v) { c.train.pilot_augment = static_cast<int>(to_positive(k, v)); },
                         [](const C& c) { return std::to_string(c.train.pilot_augment); }}},
      {"payload_augment", {[](C& c, const S& k, const S& v) { c.train.payload_augment = static_cast<int>(to_positive(k, v)); },
                           [](const C& c) { return std::to_string(c.train.payload_augment); }}},
      {"augment_noise_std", {[](C& c, const S& k, const S& v) { c.train.augment_noise_std = to_double(k, v); },
                             [](const C& c) { return fmt(c.train.augment_noise_std); }}},
      {"scale_mode",
       {[](C& c, const S& k, const S& v) {
          if (v == "per_domain") c.train.scale_mode = detectors::ScaleMode::per_domain;
          else if (v == "shared_transmit") c.train.scale_mode = detectors::ScaleMode::shared_transmit;
          else bad(k, v, "per_domain | shared_transmit");
        },
        [](const C& c) {
          return S(c.train.scale_mode == detectors::ScaleMode::per_domain ? "per_domain" : "shared_transmit");
        }}},
      {"learning_rate", {[](C& c, const S& k, const S& v) { c.adam.learning_rate = to_double(k, v); },
                         [](const C& c) { return fmt(c.adam.learning_rate); }}},
      {"beta1", {[](C& c, const S& k, const S& v) { c.adam.beta1 = to_double(k, v); },
                 [](const C& c) { return fmt(c.adam.beta1); }}},
      {"beta2", {[](C& c, const S& k, const S& v) { c.adam.beta2 = to_double(k, v); },
                 [](const C& c) { return fmt(c.adam.beta2); }}},
      {"adam_epsilon", {[](C& c, const S& k, const S& v) { c.adam.epsilon = to_double(k, v); },
                        [](const C& c) { return fmt(c.adam.epsilon); }}},
      {"l2", {[](C& c, const S& k, const S& v) { c.adam.l2 = to_double(k, v); },
              [](const C& c) { return fmt(c.adam.l2); }}},
      {"full_payload_rate", {[](C& c, const S& k, const S& v) { c.full_payload_rate = to_bool(k, v); },
                             [](const C& c) { return S(c.full_payload_rate ? "on" : "off"); }}},
      {"seed", {[](C& c, const S& k, const S& v) {
                  const auto n = to_int(k, v);
                  if (n < 0) bad(k, v, "a non-negative integer");
                  c.seed = static_cast<std::uint64_t>(n);
                },
                [](const C& c) { return std::to_string(c.seed); }}},
      {"threads", {[](C& c, const S& k, const S& v) { c.threads = static_cast<unsigned>(to_positive(k, v)); },
                   [](const C& c) { return std::to_string(c.threads); }}},
      {"timing", {[](C& c, const S& k, const S& v) { c.timing = to_bool(k, v); },
                  [](const C& c) { return S(c.timing ? "on" : "off"); }}},
      {"output", {[](C& c, const S&, const S& v) { c.output = v; }, [](const C& c) { return c.output.string(); }}},
      {"aggregate_output",
       {[](C& c, const S&, const S& v) {
          if (v.empty()) c.aggregate_output.reset();
          else c.aggregate_output = v;
        },
        [](const C& c) { return c.aggregate_output ? c.aggregate_output->string() : S(); }}},
  };
  return table;
}

}  // namespace

std::vector<double> parse_ebn0_list(std::string_view text) {
  const std::string key = "ebn0_db";
  const std::string v = trim(text);
  if (v.empty()) bad(key, v, "a non-empty list");
  if (v.find(':') != std::string::npos) {
    const auto parts = split(v, ':');
    if (parts.size() != 3) bad(key, v, "start:step:stop");
    const double start = to_double(key, parts[0]);
    const double step = to_double(key, parts[1]);
    const double stop = to_double(key, parts[2]);
    if (!(step > 0) || stop < start) bad(key, v, "start:step:stop with step > 0 and stop >= start");
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  return to_doubles(key, v);
}

void validate(const ExperimentConfig& c) {
  const auto fail = [](const std::string& field, const std::string& msg) { throw ConfigError(field + ": " + msg); };
  if (c.pilots + c.payload != c.block_length)
    fail("pilots", "pilots (" + std::to_string(c.pilots) + ") + payload (" + std::to_string(c.payload) +
                       ") must equal block_length (" + std::to_string(c.block_length) + ")");
  if (c.pilots < 4) fail("pilots", "at least 4 pilots are needed for the 3:1 train/validation split");
  if (c.payload < 0) fail("payload", "must be >= 0");
  if (c.streams > std::min(c.rx_antennas, c.tx_antennas))
    fail("streams", "must not exceed min(rx_antennas, tx_antennas)");
  if (c.ebn0_db.empty()) fail("ebn0_db", "needs at least one point");
  if (c.blocks_per_point < 1) fail("blocks", "must be >= 1");
  if (c.detectors.empty()) fail("detectors", "needs at least one detector");
  if (c.doppler_hz < 0) fail("doppler_hz", "must be >= 0");
  if (!(c.symbol_rate_hz > 0)) fail("symbol_rate_hz", "must be > 0");
  if (c.rician_k_db < -300) fail("rician_k_db", "out of range");
  if (c.pa_coeffs.odd.empty()) fail("pa_coeffs", "needs at least one coefficient");
  if (c.shape.features != 2 * c.streams) fail("streams", "network feature width must equal 2 x streams");
  if (!(c.shape.slope > 0)) fail("leaky_slope", "must be > 0");
  if (!(c.shape.drop_rate >= 0 && c.shape.drop_rate < 1)) fail("dropout", "must lie in [0, 1)");
  if (c.train.max_epochs < 0) fail("max_epochs", "must be >= 0");
  if (!(c.train.label_invert_prob >= 0 && c.train.label_invert_prob <= 1)) fail("label_invert_prob", "must lie in [0, 1]");
  if (c.train.augment_noise_std < 0) fail("augment_noise_std", "must be >= 0");
  if (!(c.adam.learning_rate > 0)) fail("learning_rate", "must be > 0");
  if (!(c.adam.beta1 >= 0 && c.adam.beta1 < 1)) fail("beta1", "must lie in [0, 1)");
  if (!(c.adam.beta2 >= 0 && c.adam.beta2 < 1)) fail("beta2", "must lie in [0, 1)");
  if (!(c.adam.epsilon > 0)) fail("adam_epsilon", "must be > 0");
  if (c.adam.l2 < 0) fail("l2", "must be >= 0");
}

KeyValues read_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    out.emplace_back(trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
  }
  return out;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  return read_key_values(in);
}

ExperimentConfig build_config(const KeyValues& file, const KeyValues& flags) {
  std::string profile = "paper";
  for (const auto* src : {&file, &flags})
    for (const auto& [k, v] : *src)
      if (k == "profile") profile = v;
  ExperimentConfig cfg = profile_by_name(profile);

  bool pilots_set = false, payload_set = false;
  for (const auto* src : {&file, &flags}) {
    for (const auto& [k, v] : *src) {
      if (k == "profile") continue;
      const auto it = fields().find(k);
      if (it == fields().end()) throw ConfigError(k + ": unknown key");
      it->second.set(cfg, k, v);
      pilots_set |= k == "pilots";
      payload_set |= k == "payload";
    }
  }
  if (pilots_set && !payload_set) cfg.payload = cfg.block_length - cfg.pilots;
  if (payload_set && !pilots_set) cfg.pilots = cfg.block_length - cfg.payload;
  if (!pilots_set && !payload_set && cfg.pilots + cfg.payload != cfg.block_length)
    cfg.payload = cfg.block_length - cfg.pilots;
  cfg.shape.features = 2 * cfg.streams;
  validate(cfg);
  return cfg;
}

ExperimentConfig parse_config(const std::optional<std::filesystem::path>& path, const KeyValues& flags) {
  return build_config(path ? read_key_values(*path) : KeyValues{}, flags);
}

void write_config(const ExperimentConfig& cfg, std::ostream& out) {
  out << "profile = " << cfg.profile << '\n';
  for (const auto& [key, field] : fields()) out << key << " = " << field.get(cfg) << '\n';
}

}  // namespace mimogan::harness
