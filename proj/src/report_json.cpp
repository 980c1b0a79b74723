#include "waring/report_json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace waring::harness {
namespace {

json members_list(const std::vector<ResidueSet>& blocks) {
  json out = json::array();
  for (const auto& b : blocks) out.push_back(to_json(b));
  return out;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::string to_string(zk::Convention convention) {
  return convention == zk::Convention::exact ? "exact" : "cyclic";
}

zk::Convention parse_convention(const std::string& text) {
  if (text == "cyclic") return zk::Convention::cyclic_formula;
  if (text == "exact") return zk::Convention::exact;
  throw PreconditionError("unknown convention '" + text + "' (expected cyclic or exact)");
}

std::optional<bool> zk_agrees(const zk::ZkEstimate& estimate, double tol) {
  const auto ref = zk::reference_value(estimate.k);
  if (!ref) return std::nullopt;
  return estimate.lower - tol <= *ref && *ref <= estimate.upper + tol;
}

json to_json(const ResidueSet& set) { return set.members(); }

json to_json(const zk::ZkEstimate& e) {
  json j = {{"k", e.k},
            {"lower", e.lower},
            {"upper", e.upper},
            {"width", e.width()},
            {"truncation_prime", e.truncation_prime},
            {"tail_log_bound", e.tail_log_bound},
            {"converged", e.converged},
            {"convention", to_string(e.convention)}};
  const auto ref = zk::reference_value(e.k);
  j["reference_value"] = ref ? json(*ref) : json(nullptr);
  const auto agrees = zk_agrees(e);
  j["agrees"] = agrees ? json(*agrees) : json(nullptr);
  const auto sandwich = zk::zeta_sandwich(e.k);
  j["zeta_lower"] = sandwich.lower;
  j["zeta_upper"] = sandwich.upper ? json(*sandwich.upper) : json(nullptr);
  return j;
}

json to_json(const local::WaringPairReport& r) {
  json j = {{"q", r.q.value()},
            {"s", r.s},
            {"k", r.k},
            {"holds", r.holds},
            {"exhaustive", r.exhaustive},
            {"sets_checked", r.sets_checked}};
  if (r.counterexample) {
    j["counterexample"] = {{"A", to_json(r.counterexample->A)},
                           {"missing", r.counterexample->missing}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

json to_json(const local::MinimalSReport& r) {
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  return {{"s", r.s ? json(*r.s) : json(nullptr)}, {"found", r.s.has_value()}, {"certificates", certs}};
}

json to_json(const local::DownsetReport& r) {
  return {{"q", r.before.empty() ? 0 : r.before.front().modulus()},
          {"before", members_list(r.before)},
          {"after", members_list(r.after)},
          {"sumset_size_before", r.sumset_size_before},
          {"sumset_size_after", r.sumset_size_after},
          {"cardinality_preserved", r.cardinality_preserved},
          {"downsets", r.downsets},
          {"upper_bound", r.upper_bound},
          {"any_wraps", r.any_wraps},
          {"sumset_not_larger", r.sumset_not_larger},
          {"holds", r.holds()}};
}

json to_json(const circle::PseudoReport& r) {
  return {{"eta", r.eta},
          {"M", r.M},
          {"argmax_index", r.argmax_index},
          {"argmax_frequency", r.argmax_frequency},
          {"arc_class", r.arc_class}};
}

json to_json(const transfer::TransferenceReport& r) {
  return {{"N", r.N},
          {"s", r.s},
          {"eps", r.eps},
          {"delta", r.delta},
          {"kappa", r.kappa},
          {"q_exp", r.q_exp},
          {"M", r.M},
          {"means", r.means},
          {"mean_total", r.mean_total},
          {"mean_total_ok", r.mean_total_ok},
          {"mean_each_ok", r.mean_each_ok},
          {"eta", r.eta},
          {"eta_ok", r.eta_ok},
          {"K_hat", r.K_hat},
          {"holder_term", r.holder_term},
          {"max_model_error", r.max_model_error},
          {"K_hat_ok", r.K_hat_ok},
          {"bohr_size", r.bohr_sizes},
          {"uniformity", r.uniformity},
          {"window", {r.window_lo, r.window_hi}},
          {"min_convolution", finite_or_null(r.min_convolution)},
          {"argmin", r.argmin},
          {"support_covers_window", r.support_covers_window},
          {"support_gcd", r.support_gcd},
          {"positive", r.positive},
          {"holds", r.holds},
          {"notes", r.notes}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::vector<u64>> parse_integer_blocks(const std::string& text) {
  std::vector<std::vector<u64>> blocks(1);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      if (!blocks.back().empty()) blocks.emplace_back();
      continue;
    }
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;  // comment line
    const auto e = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(b, e - b + 1);
    u64 value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw PreconditionError("line " + std::to_string(line_no) + ": expected a nonnegative integer, got '" +
                              token + "'");
    }
    blocks.back().push_back(value);
  }
  if (blocks.back().empty()) blocks.pop_back();
  return blocks;
}

std::vector<u64> parse_integer_list(const std::string& text) {
  std::vector<u64> out;
  for (const auto& block : parse_integer_blocks(text)) out.insert(out.end(), block.begin(), block.end());
  return out;
}

}  // namespace waring::harness
