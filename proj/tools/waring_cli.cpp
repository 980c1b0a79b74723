// Command-line front end. Every subcommand produces one JSON document (or a
// CSV table) and an overall verdict that becomes the exit status:
// 0 all checks hold, 1 a check failed, 2 usage or input error, 3 internal error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "waring/circle.hpp"
#include "waring/harness.hpp"
#include "waring/local.hpp"
#include "waring/report_json.hpp"
#include "waring/transference.hpp"
#include "waring/zk.hpp"

using namespace waring;
using harness::json;

namespace {

struct Globals {
  std::string out = "-";
  std::optional<std::string> format;
  unsigned threads = 1;
  std::optional<u64> seed;
};

struct Outcome {
  json doc;
  bool ok = true;
  /// Used instead of the generic JSON-to-CSV table when set.
  std::optional<std::string> csv;
  /// Used when no --format was given.
  std::optional<std::string> plain;
};

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw PreconditionError("failed writing '" + path + "'");
}

std::string render(const Outcome& o, const std::optional<std::string>& format) {
  if (!format && o.plain) return *o.plain;
  const std::string f = format.value_or("json");
  if (harness::parse_output_format(f) == harness::OutputFormat::csv) {
    return o.csv ? *o.csv : harness::json_to_csv(o.doc);
  }
  return harness::dump_json(o.doc);
}

std::vector<u64> sorted_unique(std::vector<u64> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// ---- zk --------------------------------------------------------------------

struct ZkArgs {
  unsigned k = 2;
  double precision = 1e-3;
  std::string convention = "cyclic";
  u64 max_prime = zk::kMaxTruncationPrime;
};

Outcome run_zk(const ZkArgs& a) {
  const auto est = zk::zk_estimate(a.k, a.precision, harness::parse_convention(a.convention),
                                   a.max_prime);
  Outcome o;
  o.doc = harness::to_json(est);
  o.ok = est.converged && harness::zk_agrees(est).value_or(true);
  return o;
}

// ---- local -----------------------------------------------------------------

struct LocalCheckArgs {
  unsigned k = 2;
  u64 q = 0;
  unsigned s = 0;
  bool exhaustive = false;
  std::optional<u64> trials;
};

Outcome run_local_check(const LocalCheckArgs& a, const Globals& g) {
  const auto kctx = build_k_context(a.k);
  const FactoredModulus q(a.q);
  local::WaringPairReport r;
  if (a.exhaustive) {
    r = local::waring_pair_exhaustive(q, a.s, kctx, {g.threads, std::nullopt});
  } else if (a.trials) {
    r = local::waring_pair_random(q, a.s, kctx, *a.trials, g.seed.value_or(1));
  } else {
    r = local::check_waring_pair(q, a.s, kctx, 2000, g.seed.value_or(1), g.threads);
  }
  return {harness::to_json(r), r.holds, {}, {}};
}

struct MinimalSArgs {
  unsigned k = 2;
  u64 q = 0;
  unsigned s_max = 64;
};

Outcome run_minimal_s(const MinimalSArgs& a, const Globals& g) {
  const auto kctx = build_k_context(a.k);
  const auto r = local::minimal_s(FactoredModulus(a.q), kctx, a.s_max, g.threads);
  json doc = harness::to_json(r);
  doc["q"] = a.q;
  doc["k"] = a.k;
  return {doc, r.s.has_value(), {}, {}};
}

struct DownsetArgs {
  u64 q = 0;
  std::string sets;
};

Outcome run_downset(const DownsetArgs& a) {
  const FactoredModulus q(a.q);
  const auto blocks = harness::parse_integer_blocks(harness::read_text_file(a.sets));
  require(!blocks.empty(), "downset: the set file contains no residues");
  std::vector<ResidueSet> sets;
  for (const auto& b : blocks) {
    for (u64 x : b) require(x < a.q, "downset: residue " + std::to_string(x) + " is not below q");
    sets.push_back(ResidueSet::from_members(q, b));
  }
  const auto r = local::downset_report(sets);
  return {harness::to_json(r), r.holds(), {}, {}};
}

// ---- circle ----------------------------------------------------------------

struct PseudoArgs {
  unsigned k = 2;
  unsigned w = 2;
  u64 b = 1;
  u64 N = 0;
  u64 grid = 0;
  double rho = 0.2;
};

Outcome run_pseudo(const PseudoArgs& a) {
  const WContext ctx(a.k, a.w);
  const u64 M = a.grid ? a.grid : circle::default_grid(a.N);
  const auto r = circle::pseudorandomness(ctx, a.b, a.N, M, a.rho);
  json doc = harness::to_json(r);
  doc["N"] = a.N;
  doc["k"] = a.k;
  doc["W"] = ctx.modulus();
  doc["b"] = a.b;
  return {doc, true, {}, {}};
}

struct RestrictArgs {
  unsigned k = 2;
  unsigned w = 2;
  u64 b = 1;
  double qexp = 0;
  u64 N = 0;
  std::string set = "all-powers";
  u64 grid = 0;
};

Outcome run_restrict(const RestrictArgs& a) {
  const WContext ctx(a.k, a.w);
  const u64 W = ctx.modulus();
  const u64 limit = checked_mul(W, a.N, u64{1} << 40) + a.b;
  const auto A = a.set == "all-powers"
                     ? circle::kth_powers_up_to(a.k, limit)
                     : sorted_unique(harness::parse_integer_list(harness::read_text_file(a.set)));
  const auto f = circle::build_f_b(A, a.N, ctx, a.b);
  const u64 M = a.grid ? a.grid : circle::default_grid(a.N);
  const double K = circle::restriction_constant(f, a.qexp, M);
  json doc = {{"K_hat", K}, {"N", a.N}, {"q_exp", a.qexp}, {"M", M},
              {"k", a.k},   {"W", W},   {"b", a.b},        {"set_size", A.size()},
              {"mean", f.mean()}};
  return {doc, true, {}, {}};
}

struct VqArgs {
  unsigned k = 2;
  unsigned w = 2;
  u64 b = 1;
  u64 qmax = 3;
  std::string method = "crt";
};

Outcome run_vq(const VqArgs& a) {
  require(a.qmax >= 1, "vq: qmax must be positive");
  require(a.method == "crt" || a.method == "direct", "vq: method must be crt or direct");
  const WContext ctx(a.k, a.w);
  Outcome o;
  o.doc = json::array();
  std::ostringstream csv;
  csv << "q,a,abs_V\r\n";
  for (u64 q = 1; q <= a.qmax; ++q) {
    for (u64 r = 0; r < q; ++r) {
      if (std::gcd(r, q) != 1) continue;
      const auto v = a.method == "crt" ? circle::V_q_crt(static_cast<i64>(r), a.b, q, ctx)
                                       : circle::V_q(static_cast<i64>(r), a.b, q, ctx);
      o.doc.push_back({{"q", q}, {"a", r}, {"re", v.real()}, {"im", v.imag()}, {"abs_V", std::abs(v)}});
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", std::abs(v));
      csv << q << ',' << r << ',' << buf << "\r\n";
    }
  }
  o.csv = csv.str();
  o.plain = o.csv;
  return o;
}

struct JcountArgs {
  unsigned t = 1;
  unsigned k = 1;
  u64 X = 1;
  std::string method = "hash";
};

Outcome run_jcount(const JcountArgs& a) {
  circle::VinogradovMethod m = circle::VinogradovMethod::hash_join;
  if (a.method == "multiset") {
    m = circle::VinogradovMethod::multiset;
  } else if (a.method == "exhaustive") {
    m = circle::VinogradovMethod::exhaustive;
  } else {
    require(a.method == "hash", "jcount: method must be hash, multiset or exhaustive");
  }
  const u64 J = circle::vinogradov_count(a.t, a.k, a.X, m);
  Outcome o;
  o.doc = {{"t", a.t}, {"k", a.k}, {"X", a.X}, {"J", J}};
  o.csv = "t,k,X,J\r\n" + std::to_string(a.t) + "," + std::to_string(a.k) + "," +
          std::to_string(a.X) + "," + std::to_string(J) + "\r\n";
  o.plain = std::to_string(J) + "\n";
  return o;
}

// ---- transference ----------------------------------------------------------

struct TransferArgs {
  unsigned k = 2;
  unsigned w = 2;
  u64 b = 1;
  u64 N = 0;
  unsigned s = 0;
  double eps = 0.5;
  double delta = 0.05;
  u64 grid = 0;
  double qexp = 0;
  std::optional<std::string> set;
};

Outcome run_transfer(const TransferArgs& a) {
  require(a.s >= 2, "transfer: s must be at least 2");
  const WContext ctx(a.k, a.w);
  const auto nu = circle::build_nu_b(a.N, ctx, a.b);
  circle::WeightedSequence f = nu;
  if (a.set) {
    const auto A = sorted_unique(harness::parse_integer_list(harness::read_text_file(*a.set)));
    f = circle::build_f_b(A, a.N, ctx, a.b);
  }
  const std::vector<circle::WeightedSequence> fs(a.s, f), majorants(a.s, nu);
  transfer::TransferenceOptions opt;
  opt.eps = a.eps;
  opt.delta = a.delta;
  opt.M = a.grid;
  opt.q_exp = a.qexp;
  const auto r = transfer::transference_demo(fs, majorants, opt);
  json doc = harness::to_json(r);
  doc["k"] = a.k;
  doc["W"] = ctx.modulus();
  doc["b"] = a.b;
  return {doc, r.holds, {}, {}};
}

// ---- experiment / report ---------------------------------------------------

struct ExperimentArgs {
  std::optional<std::string> config;
  std::optional<unsigned> k, w, s;
  std::optional<u64> N, grid, n_min;
  std::optional<double> density, rho;
  std::optional<std::string> subset_mode;
  std::optional<bool> congruence_filter;
  bool timing = false;
};

Outcome run_experiment(const ExperimentArgs& a, const Globals& g, std::optional<std::string>& format) {
  harness::ExperimentConfig c = a.config ? harness::load_config(*a.config) : harness::ExperimentConfig{};
  if (a.k) c.k = *a.k;
  if (a.w) c.w = *a.w;
  if (a.s) c.s = *a.s;
  if (a.N) c.N = *a.N;
  if (a.grid) c.grid = *a.grid;
  if (a.n_min) c.n_min = *a.n_min;
  if (a.density) c.density = *a.density;
  if (a.rho) c.rho = *a.rho;
  if (a.subset_mode) c.subset_mode = harness::parse_subset_mode(*a.subset_mode);
  if (a.congruence_filter) c.congruence_filter = *a.congruence_filter;
  if (g.seed) c.seed = *g.seed;
  if (format) {
    c.output_format = harness::parse_output_format(*format);
  } else {
    format = harness::to_string(c.output_format);
  }
  const auto start = std::chrono::steady_clock::now();
  auto report = harness::coverage_experiment(c);
  if (a.timing) {
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  Outcome o;
  o.doc = harness::to_json(report);
  o.csv = harness::to_csv(report);
  o.ok = report.all_hold();
  return o;
}

Outcome run_report(const std::string& in) {
  json j;
  try {
    j = json::parse(harness::read_text_file(in));
  } catch (const json::parse_error& e) {
    throw PreconditionError("'" + in + "' is not valid JSON: " + e.what());
  }
  const auto report = harness::report_from_json(j);
  Outcome o;
  o.doc = harness::to_json(report);
  o.csv = harness::to_csv(report);
  o.ok = report.all_hold();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density Waring toolkit: local solubility, singular-series constants, "
               "circle-method and transference diagnostics"};
  app.set_version_flag("--version", harness::library_version());
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Globals g;
  app.add_option("--out", g.out, "Output path, '-' for stdout")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed");

  std::function<Outcome()> action;

  ZkArgs zk_args;
  auto* zk_cmd = app.add_subcommand("zk", "Enclose the singular-series constant Z_k");
  zk_cmd->add_option("--k", zk_args.k, "Exponent k")->required()->check(CLI::Range(2u, 12u));
  zk_cmd->add_option("--precision", zk_args.precision, "Target enclosure width")->capture_default_str();
  zk_cmd->add_option("--convention", zk_args.convention, "2-adic class count convention")
      ->check(CLI::IsMember({"cyclic", "exact"}))
      ->capture_default_str();
  zk_cmd->add_option("--max-prime", zk_args.max_prime, "Largest truncation prime")->capture_default_str();
  zk_cmd->callback([&] { action = [&] { return run_zk(zk_args); }; });

  auto* local_cmd = app.add_subcommand("local", "Waring pairs modulo q");
  local_cmd->require_subcommand(1);
  LocalCheckArgs check_args;
  auto* check_cmd = local_cmd->add_subcommand("check", "Is (q, s) a Waring pair for k-th powers");
  check_cmd->add_option("--k", check_args.k, "Exponent k")->required();
  check_cmd->add_option("--q", check_args.q, "Modulus q")->required()->check(CLI::PositiveNumber);
  check_cmd->add_option("--s", check_args.s, "Number of summands")->required()->check(CLI::PositiveNumber);
  auto* exhaustive_flag =
      check_cmd->add_flag("--exhaustive", check_args.exhaustive, "Check every majority subset");
  check_cmd->add_option("--trials", check_args.trials, "Random majority subsets to test")
      ->excludes(exhaustive_flag);
  check_cmd->callback([&] { action = [&] { return run_local_check(check_args, g); }; });

  MinimalSArgs min_args;
  auto* min_cmd = local_cmd->add_subcommand("minimal-s", "Smallest s making (q, s) a Waring pair");
  min_cmd->add_option("--k", min_args.k, "Exponent k")->required();
  min_cmd->add_option("--q", min_args.q, "Modulus q")->required()->check(CLI::PositiveNumber);
  min_cmd->add_option("--s-max", min_args.s_max, "Largest s tried")->capture_default_str();
  min_cmd->callback([&] { action = [&] { return run_minimal_s(min_args, g); }; });

  auto* downset_cmd = app.add_subcommand("downset", "Downset compression of residue sets");
  downset_cmd->require_subcommand(1);
  DownsetArgs down_args;
  auto* demo_cmd = downset_cmd->add_subcommand("demo", "Compress the sets in a file and compare sumsets");
  demo_cmd->add_option("--q", down_args.q, "Square-free modulus")->required()->check(CLI::PositiveNumber);
  demo_cmd->add_option("--sets", down_args.sets, "Residue file, one per line, blank line between sets")
      ->required();
  demo_cmd->callback([&] { action = [&] { return run_downset(down_args); }; });

  PseudoArgs pseudo_args;
  auto* pseudo_cmd = app.add_subcommand("pseudo", "Fourier pseudorandomness of nu_b");
  pseudo_cmd->add_option("--k", pseudo_args.k)->capture_default_str();
  pseudo_cmd->add_option("--w", pseudo_args.w)->capture_default_str();
  pseudo_cmd->add_option("--b", pseudo_args.b)->capture_default_str();
  pseudo_cmd->add_option("--N", pseudo_args.N)->required()->check(CLI::PositiveNumber);
  pseudo_cmd->add_option("--grid", pseudo_args.grid, "Grid size M (0: smallest power of two >= 4N)")
      ->capture_default_str();
  pseudo_cmd->add_option("--rho", pseudo_args.rho, "Major arc exponent")->capture_default_str();
  pseudo_cmd->callback([&] { action = [&] { return run_pseudo(pseudo_args); }; });

  RestrictArgs restrict_args;
  auto* restrict_cmd = app.add_subcommand("restrict", "Restriction constant of f_b");
  restrict_cmd->add_option("--k", restrict_args.k)->capture_default_str();
  restrict_cmd->add_option("--w", restrict_args.w)->capture_default_str();
  restrict_cmd->add_option("--b", restrict_args.b)->capture_default_str();
  restrict_cmd->add_option("--qexp", restrict_args.qexp, "Exponent q > 2")->required();
  restrict_cmd->add_option("--N", restrict_args.N)->required()->check(CLI::PositiveNumber);
  restrict_cmd->add_option("--set", restrict_args.set, "File of k-th powers, or all-powers")
      ->capture_default_str();
  restrict_cmd->add_option("--grid", restrict_args.grid)->capture_default_str();
  restrict_cmd->callback([&] { action = [&] { return run_restrict(restrict_args); }; });

  VqArgs vq_args;
  auto* vq_cmd = app.add_subcommand("vq", "Local sums V_q(a, b) for coprime a");
  vq_cmd->add_option("--k", vq_args.k)->capture_default_str();
  vq_cmd->add_option("--w", vq_args.w)->capture_default_str();
  vq_cmd->add_option("--b", vq_args.b)->capture_default_str();
  vq_cmd->add_option("--qmax", vq_args.qmax)->capture_default_str();
  vq_cmd->add_option("--method", vq_args.method)->check(CLI::IsMember({"crt", "direct"}))->capture_default_str();
  vq_cmd->callback([&] { action = [&] { return run_vq(vq_args); }; });

  JcountArgs j_args;
  auto* j_cmd = app.add_subcommand("jcount", "Vinogradov system solution count J_t^(k)(X)");
  j_cmd->add_option("--t", j_args.t)->required();
  j_cmd->add_option("--k", j_args.k)->required();
  j_cmd->add_option("--X", j_args.X)->required();
  j_cmd->add_option("--method", j_args.method)
      ->check(CLI::IsMember({"hash", "multiset", "exhaustive"}))
      ->capture_default_str();
  j_cmd->callback([&] { action = [&] { return run_jcount(j_args); }; });

  TransferArgs t_args;
  auto* t_cmd = app.add_subcommand("transfer", "Dense-model transference demonstration");
  t_cmd->add_option("--k", t_args.k)->capture_default_str();
  t_cmd->add_option("--w", t_args.w)->capture_default_str();
  t_cmd->add_option("--b", t_args.b)->capture_default_str();
  t_cmd->add_option("--N", t_args.N)->required()->check(CLI::PositiveNumber);
  t_cmd->add_option("--s", t_args.s)->required();
  t_cmd->add_option("--eps", t_args.eps)->capture_default_str();
  t_cmd->add_option("--delta", t_args.delta)->capture_default_str();
  t_cmd->add_option("--grid", t_args.grid)->capture_default_str();
  t_cmd->add_option("--qexp", t_args.qexp, "Restriction exponent (0: s - 1/2)")->capture_default_str();
  t_cmd->add_option("--set", t_args.set, "File of k-th powers (default: all of them)");
  t_cmd->callback([&] { action = [&] { return run_transfer(t_args); }; });

  ExperimentArgs e_args;
  auto* e_cmd = app.add_subcommand("experiment", "Coverage of s-fold sums of a dense set of k-th powers");
  e_cmd->add_option("--config", e_args.config, "key=value configuration file");
  e_cmd->add_option("--k", e_args.k);
  e_cmd->add_option("--w", e_args.w);
  e_cmd->add_option("--s", e_args.s);
  e_cmd->add_option("--N", e_args.N, "Largest n examined");
  e_cmd->add_option("--n-min", e_args.n_min, "Smallest n examined");
  e_cmd->add_option("--density", e_args.density);
  e_cmd->add_option("--rho", e_args.rho);
  e_cmd->add_option("--grid", e_args.grid);
  e_cmd->add_option("--subset-mode", e_args.subset_mode)
      ->check(CLI::IsMember({"bernoulli", "exact_count", "full"}));
  e_cmd->add_option("--congruence-filter", e_args.congruence_filter, "Only n = s (mod R_k)");
  e_cmd->add_flag("--timing", e_args.timing, "Include wall time in the report");
  e_cmd->callback([&] { action = [&] { return run_experiment(e_args, g, g.format); }; });

  std::string report_in;
  auto* r_cmd = app.add_subcommand("report", "Re-emit a saved experiment report");
  r_cmd->add_option("--in", report_in, "JSON report")->required();
  r_cmd->callback([&] { action = [&] { return run_report(report_in); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Outcome o = action();
    write_output(render(o, g.format), g.out);
    return o.ok ? 0 : 1;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
