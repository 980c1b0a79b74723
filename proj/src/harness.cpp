#include "waring/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "waring/residue.hpp"
#include "waring/rng.hpp"
#include "waring/zk.hpp"

namespace waring::harness {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw PreconditionError("config: cannot parse value '" + text + "' for key '" + key + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const auto t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw PreconditionError("config: cannot parse boolean '" + text + "' for key '" + key + "'");
}

// Shortest text that parses back to the same double.
std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string cell_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// dst |= src << shift, truncated to dst's length.
void shift_or(std::vector<u64>& dst, const std::vector<u64>& src, u64 shift) {
  const u64 ws = shift >> 6, bs = shift & 63;
  for (std::size_t i = dst.size(); i-- > ws;) {
    const std::size_t j = i - ws;
    u64 v = src[j] << bs;
    if (bs && j > 0) v |= src[j - 1] >> (64 - bs);
    dst[i] |= v;
  }
}

}  // namespace

std::string to_string(SubsetMode mode) {
  switch (mode) {
    case SubsetMode::bernoulli: return "bernoulli";
    case SubsetMode::exact_count: return "exact_count";
    case SubsetMode::full: return "full";
  }
  return "full";
}

std::string to_string(OutputFormat format) {
  return format == OutputFormat::json ? "json" : "csv";
}

SubsetMode parse_subset_mode(const std::string& text) {
  if (text == "bernoulli") return SubsetMode::bernoulli;
  if (text == "exact_count") return SubsetMode::exact_count;
  if (text == "full") return SubsetMode::full;
  throw PreconditionError("unknown subset mode '" + text + "'");
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  throw PreconditionError("unknown output format '" + text + "'");
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "k") k = parse_number<unsigned>(key, value);
  else if (key == "w") w = parse_number<unsigned>(key, value);
  else if (key == "N") N = parse_number<u64>(key, value);
  else if (key == "s") s = parse_number<unsigned>(key, value);
  else if (key == "density") density = parse_number<double>(key, value);
  else if (key == "seed") seed = parse_number<u64>(key, value);
  else if (key == "rho") rho = parse_number<double>(key, value);
  else if (key == "grid") grid = parse_number<u64>(key, value);
  else if (key == "subset_mode") subset_mode = parse_subset_mode(trim(value));
  else if (key == "output_format") output_format = parse_output_format(trim(value));
  else if (key == "n_min") n_min = parse_number<u64>(key, value);
  else if (key == "congruence_filter") congruence_filter = parse_bool(key, value);
  else throw PreconditionError("config: unknown key '" + key + "'");
}

void ExperimentConfig::validate() const {
  require(k >= 2 && k <= 12, "config: k must lie in [2, 12]");
  require(w >= 2, "config: w must be at least 2");
  require(s >= 1, "config: s must be at least 1");
  require(density > 0 && density <= 1, "config: density must lie in (0, 1]");
  require(rho > 0 && rho <= 1.0 / 3 + 1e-12, "config: rho must lie in (0, 1/3]");
  require(N >= 1 && N <= (u64{1} << 26), "config: N must lie in [1, 2^26]");
  require(n_min >= 1 && n_min <= N, "config: n_min must lie in [1, N]");
  require(grid == 0 || (grid & (grid - 1)) == 0, "config: grid must be a power of two");
}

std::string ExperimentConfig::to_key_value() const {
  std::ostringstream os;
  os << "k=" << k << '\n'
     << "w=" << w << '\n'
     << "N=" << N << '\n'
     << "s=" << s << '\n'
     << "density=" << format_double(density) << '\n'
     << "seed=" << seed << '\n'
     << "rho=" << format_double(rho) << '\n'
     << "grid=" << grid << '\n'
     << "subset_mode=" << to_string(subset_mode) << '\n'
     << "output_format=" << to_string(output_format) << '\n'
     << "n_min=" << n_min << '\n'
     << "congruence_filter=" << (congruence_filter ? "true" : "false") << '\n';
  return os.str();
}

json ExperimentConfig::to_json() const {
  return {{"k", k},
          {"w", w},
          {"N", N},
          {"s", s},
          {"density", density},
          {"seed", seed},
          {"rho", rho},
          {"grid", grid},
          {"subset_mode", to_string(subset_mode)},
          {"output_format", to_string(output_format)},
          {"n_min", n_min},
          {"congruence_filter", congruence_filter}};
}

ExperimentConfig ExperimentConfig::from_key_value(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw PreconditionError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  for (const auto& [key, value] : j.items()) {
    c.set(key, value.is_string() ? value.get<std::string>() : value.dump());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return ExperimentConfig::from_key_value(buf.str());
}

std::vector<u64> random_dense_subset(unsigned k, u64 range_max, double density, u64 seed,
                                     SubsetMode mode) {
  require(density > 0 && density <= 1, "random_dense_subset: density must lie in (0, 1]");
  require(k >= 1, "random_dense_subset: k must be positive");
  std::vector<u64> powers;
  for (u64 t = 1;; ++t) {
    u128 v = 1;
    for (unsigned i = 0; i < k && v <= range_max; ++i) v *= t;
    if (v > range_max) break;
    powers.push_back(static_cast<u64>(v));
  }
  Rng rng(seed);
  switch (mode) {
    case SubsetMode::full:
      return powers;
    case SubsetMode::bernoulli: {
      std::vector<u64> out;
      for (u64 x : powers) {
        if (rng.bernoulli(density)) out.push_back(x);
      }
      return out;
    }
    case SubsetMode::exact_count: {
      const u64 want = std::min<u64>(
          powers.size(),
          static_cast<u64>(std::ceil(density * static_cast<double>(powers.size()) - 1e-9)));
      // Partial Fisher-Yates, then restore increasing order.
      for (u64 i = 0; i < want; ++i) {
        std::swap(powers[i], powers[i + rng.uniform_below(powers.size() - i)]);
      }
      powers.resize(want);
      std::sort(powers.begin(), powers.end());
      return powers;
    }
  }
  return powers;
}

double empirical_density(std::span<const u64> A, unsigned k, u64 range_max) {
  u64 total = 0;
  for (u64 t = 1;; ++t) {
    u128 v = 1;
    for (unsigned i = 0; i < k && v <= range_max; ++i) v *= t;
    if (v > range_max) break;
    ++total;
  }
  if (total == 0) return 0.0;
  std::set<u64> distinct;
  for (u64 a : A) {
    if (a >= 1 && a <= range_max) distinct.insert(a);
  }
  return static_cast<double>(distinct.size()) / static_cast<double>(total);
}

RepresentationCounts representation_count(std::span<const u64> A, unsigned s, u64 n_max) {
  require(s >= 1, "representation_count: s must be at least 1");
  if (n_max > (u64{1} << 26)) throw RangeError("representation_count: n_max exceeds 2^26");
  std::vector<u64> elems;
  for (u64 a : A) {
    if (a <= n_max) elems.push_back(a);
  }
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  RepresentationCounts r;
  r.counts.assign(n_max + 1, 0);
  for (u64 a : elems) r.counts[a] = 1;
  constexpr u64 kSaturated = ~u64{0};
  for (unsigned layer = 2; layer <= s; ++layer) {
    std::vector<u64> next(n_max + 1, 0);
    for (u64 n = 0; n <= n_max; ++n) {
      u64 acc = 0;
      for (u64 a : elems) {
        if (a > n) break;
        const u64 add = r.counts[n - a];
        if (__builtin_add_overflow(acc, add, &acc)) {
          acc = kSaturated;
          r.overflow = true;
          break;
        }
      }
      next[n] = acc;
    }
    r.counts = std::move(next);
  }
  return r;
}

double shnirelman_density(std::span<const u64> B, u64 n_max) {
  require(n_max >= 1, "shnirelman_density: n_max must be positive");
  std::vector<bool> in(n_max + 1, false);
  for (u64 b : B) {
    require(b >= 1 && b <= n_max, "shnirelman_density: B must lie in [1, n_max]");
    in[b] = true;
  }
  double best = 1.0;
  u64 count = 0;
  for (u64 N = 1; N <= n_max; ++N) {
    count += in[N];
    best = std::min(best, static_cast<double>(count) / static_cast<double>(N));
  }
  return best;
}

bool ExperimentReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.holds || c.flag_only; });
}

std::string library_version() { return "0.1.0"; }

ExperimentReport coverage_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport report;
  report.config = config.to_json();
  report.version = library_version();

  const auto kctx = build_k_context(config.k);
  const auto A = random_dense_subset(config.k, config.N, config.density, config.seed,
                                     config.subset_mode);
  const double realized = empirical_density(A, config.k, config.N);

  // Reachable s-fold sums as a bitset over [0, N].
  const u64 words = (config.N + 1 + 63) / 64;
  std::vector<u64> reach(words, 0);
  reach[0] = 1;
  for (unsigned i = 0; i < config.s; ++i) {
    std::vector<u64> next(words, 0);
    for (u64 a : A) shift_or(next, reach, a);
    if ((config.N + 1) & 63) next.back() &= (u64{1} << ((config.N + 1) & 63)) - 1;
    reach = std::move(next);
  }
  auto reachable = [&](u64 n) { return (reach[n >> 6] >> (n & 63)) & 1; };

  u64 examined = 0, covered = 0;
  std::optional<u64> first_gap, last_gap;
  for (u64 n = config.n_min; n <= config.N; ++n) {
    if (config.congruence_filter && n % kctx.R_k != config.s % kctx.R_k) continue;
    ++examined;
    if (reachable(n)) {
      ++covered;
    } else {
      if (!first_gap) first_gap = n;
      last_gap = n;
    }
  }
  const double coverage = examined ? static_cast<double>(covered) / examined : 1.0;

  json measured = {{"coverage", coverage},
                   {"examined", examined},
                   {"covered", covered},
                   {"set_size", A.size()},
                   {"realized_density", realized},
                   {"R_k", kctx.R_k}};
  measured["first_gap"] = first_gap ? json(*first_gap) : json(nullptr);
  measured["last_gap"] = last_gap ? json(*last_gap) : json(nullptr);
  report.checks.push_back({"coverage_at_least_0.99", coverage >= 0.99, false, measured});
  report.checks.push_back({"full_coverage", covered == examined, true,
                           {{"missing", examined - covered}}});

  const u64 s_threshold = 16 * config.k * kctx.omega_k + 4 * config.k + 4;
  if (config.s < s_threshold) {
    report.notes.push_back("hypothesis unmet: s = " + std::to_string(config.s) +
                           " is below 16 k omega(k) + 4k + 4 = " + std::to_string(s_threshold));
  }
  const auto zk = zk::zk_estimate(config.k, 1e-3);
  const double density_threshold =
      std::pow(1 - 1 / (2 * zk.upper), 1.0 / static_cast<double>(config.k));
  if (config.density <= density_threshold) {
    report.notes.push_back("hypothesis unmet: density " + format_double(config.density) +
                           " does not exceed (1 - 1/(2 Z_k))^(1/k) = " +
                           format_double(density_threshold));
  }
  return report;
}

json to_json(const ExperimentReport& report) {
  json j;
  j["config"] = report.config;
  j["version"] = report.version;
  j["notes"] = report.notes;
  j["all_hold"] = report.all_hold();
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back(
        {{"name", c.name}, {"holds", c.holds}, {"flag_only", c.flag_only}, {"measured", c.measured}});
  }
  j["checks"] = checks;
  if (report.wall_time_seconds) j["wall_time_seconds"] = *report.wall_time_seconds;
  return j;
}

ExperimentReport report_from_json(const json& j) {
  try {
    ExperimentReport r;
    r.config = j.value("config", json::object());
    r.version = j.value("version", std::string());
    r.notes = j.value("notes", std::vector<std::string>{});
    for (const auto& c : j.at("checks")) {
      r.checks.push_back({c.at("name").get<std::string>(), c.at("holds").get<bool>(),
                          c.value("flag_only", false), c.value("measured", json::object())});
    }
    if (j.contains("wall_time_seconds")) r.wall_time_seconds = j["wall_time_seconds"].get<double>();
    return r;
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed report: ") + e.what());
  }
}

std::string to_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "name,holds,flag_only,measured\r\n";
  for (const auto& c : report.checks) {
    os << csv_cell(c.name) << ',' << (c.holds ? "true" : "false") << ','
       << (c.flag_only ? "true" : "false") << ',' << csv_cell(c.measured.dump()) << "\r\n";
  }
  return os.str();
}

std::string json_to_csv(const json& j) {
  std::vector<json> rows;
  if (j.is_array()) {
    rows.assign(j.begin(), j.end());
  } else {
    rows.push_back(j);
  }
  std::vector<std::string> header;
  for (const auto& row : rows) {
    require(row.is_object(), "json_to_csv: rows must be objects");
    for (const auto& [key, _] : row.items()) {
      if (std::find(header.begin(), header.end(), key) == header.end()) header.push_back(key);
    }
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_cell(header[i]);
  os << "\r\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) os << ',';
      if (row.contains(header[i])) os << csv_cell(cell_text(row[header[i]]));
    }
    os << "\r\n";
  }
  return os.str();
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

void emit_report(const ExperimentReport& report, OutputFormat format, const std::string& path) {
  const std::string text =
      format == OutputFormat::json ? dump_json(to_json(report)) : to_csv(report);
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("failed writing report to '" + path + "'");
}

}  // namespace waring::harness
