#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "waring/circle.hpp"
#include "waring/harness.hpp"
#include "waring/local.hpp"
#include "waring/report_json.hpp"
#include "waring/residue.hpp"
#include "waring/transference.hpp"
#include "waring/zk.hpp"

namespace py = pybind11;
using namespace waring;
using harness::json;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) {
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

std::vector<u64> sorted_unique(std::vector<u64> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

circle::WeightedSequence f_b_or_nu(unsigned k, unsigned w, u64 b, u64 N,
                                   const std::optional<std::vector<u64>>& A) {
  const WContext ctx(k, w);
  if (!A) return circle::build_nu_b(N, ctx, b);
  const auto sorted = sorted_unique(*A);
  return circle::build_f_b(sorted, N, ctx, b);
}

}  // namespace

PYBIND11_MODULE(_waring, m) {
  m.doc() = "Density Waring toolkit: native core";

  auto base = py::register_exception<Error>(m, "WaringError", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<InvariantError>(m, "InvariantError", base.ptr());

  m.def("version", &harness::library_version);

  // Singular-series constant.
  m.def(
      "zk_estimate",
      [](unsigned k, double precision, const std::string& convention) {
        return to_py(harness::to_json(zk::zk_estimate(k, precision, harness::parse_convention(convention))));
      },
      py::arg("k"), py::arg("precision") = 1e-3, py::arg("convention") = "cyclic");
  m.def("zeta", &zk::zeta, py::arg("s"));
  m.def(
      "zeta_sandwich",
      [](unsigned k) {
        const auto s = zk::zeta_sandwich(k);
        return std::make_pair(s.lower, s.upper);
      },
      py::arg("k"));

  // Residues.
  m.def("size_Z_formula", &size_Z_formula, py::arg("p"), py::arg("e"), py::arg("k"));
  m.def("unit_power_class_count", &unit_power_class_count, py::arg("p"), py::arg("e"), py::arg("k"));
  m.def(
      "kth_power_classes",
      [](u64 q, unsigned k, bool units_only) {
        const FactoredModulus fq(q);
        return (units_only ? unit_kth_power_classes(fq, k) : kth_power_classes(fq, k)).members();
      },
      py::arg("q"), py::arg("k"), py::arg("units_only") = false);
  m.def(
      "sigma_W", [](unsigned k, unsigned w, u64 b) { return WContext(k, w).sigma(b); }, py::arg("k"),
      py::arg("w"), py::arg("b"));
  m.def(
      "W_modulus", [](unsigned k, unsigned w) { return WContext(k, w).modulus(); }, py::arg("k"),
      py::arg("w"));

  // Local problem.
  m.def(
      "sumset",
      [](u64 q, const std::vector<u64>& A, const std::vector<u64>& B) {
        const FactoredModulus fq(q);
        return local::sumset(ResidueSet::from_members(fq, A), ResidueSet::from_members(fq, B)).members();
      },
      py::arg("q"), py::arg("A"), py::arg("B"));
  m.def(
      "quantitative_cd",
      [](u64 p, const std::vector<u64>& A, const std::vector<u64>& B, double eta) {
        const FactoredModulus fp(p);
        const auto r = local::verify_quantitative_cd(p, ResidueSet::from_members(fp, A),
                                                     ResidueSet::from_members(fp, B), eta);
        return py::dict(py::arg("lhs") = r.lhs, py::arg("rhs") = r.rhs, py::arg("holds") = r.bound_holds);
      },
      py::arg("p"), py::arg("A"), py::arg("B"), py::arg("eta"));
  m.def(
      "waring_pair",
      [](u64 q, unsigned s, unsigned k, std::optional<u64> trials, u64 seed, unsigned threads,
         bool exhaustive) {
        const auto kctx = build_k_context(k);
        const FactoredModulus fq(q);
        local::WaringPairReport r;
        {
          py::gil_scoped_release release;
          if (exhaustive) {
            r = local::waring_pair_exhaustive(fq, s, kctx, {threads, std::nullopt});
          } else if (trials) {
            r = local::waring_pair_random(fq, s, kctx, *trials, seed);
          } else {
            r = local::check_waring_pair(fq, s, kctx, 2000, seed, threads);
          }
        }
        return to_py(harness::to_json(r));
      },
      py::arg("q"), py::arg("s"), py::arg("k"), py::arg("trials") = py::none(), py::arg("seed") = 1,
      py::arg("threads") = 1, py::arg("exhaustive") = false);
  m.def(
      "minimal_s",
      [](u64 q, unsigned k, unsigned s_max, unsigned threads) {
        const auto kctx = build_k_context(k);
        local::MinimalSReport r;
        {
          py::gil_scoped_release release;
          r = local::minimal_s(FactoredModulus(q), kctx, s_max, threads);
        }
        return to_py(harness::to_json(r));
      },
      py::arg("q"), py::arg("k"), py::arg("s_max") = 64, py::arg("threads") = 1);
  m.def(
      "downset_demo",
      [](u64 q, const std::vector<std::vector<u64>>& blocks) {
        const FactoredModulus fq(q);
        std::vector<ResidueSet> sets;
        for (const auto& b : blocks) sets.push_back(ResidueSet::from_members(fq, b));
        require(!sets.empty(), "downset_demo: need at least one set");
        return to_py(harness::to_json(local::downset_report(sets)));
      },
      py::arg("q"), py::arg("blocks"));

  // Circle method.
  m.def(
      "pseudorandomness",
      [](unsigned k, unsigned w, u64 b, u64 N, u64 M, double rho) {
        const WContext ctx(k, w);
        return to_py(harness::to_json(
            circle::pseudorandomness(ctx, b, N, M ? M : circle::default_grid(N), rho)));
      },
      py::arg("k"), py::arg("w"), py::arg("b"), py::arg("N"), py::arg("M") = 0, py::arg("rho") = 0.2);
  m.def(
      "restriction_constant",
      [](unsigned k, unsigned w, u64 b, u64 N, double q_exp, std::optional<std::vector<u64>> A,
         u64 M) {
        const auto f = f_b_or_nu(k, w, b, N, A);
        return circle::restriction_constant(f, q_exp, M ? M : circle::default_grid(N));
      },
      py::arg("k"), py::arg("w"), py::arg("b"), py::arg("N"), py::arg("q_exp"),
      py::arg("A") = py::none(), py::arg("M") = 0);
  m.def(
      "V_q",
      [](i64 a, u64 b, u64 q, unsigned k, unsigned w, const std::string& method) {
        const WContext ctx(k, w);
        require(method == "direct" || method == "crt", "V_q: method must be direct or crt");
        return method == "crt" ? circle::V_q_crt(a, b, q, ctx) : circle::V_q(a, b, q, ctx);
      },
      py::arg("a"), py::arg("b"), py::arg("q"), py::arg("k"), py::arg("w"), py::arg("method") = "direct");
  m.def(
      "vinogradov_count",
      [](unsigned t, unsigned k, u64 X, const std::string& method) {
        auto mth = circle::VinogradovMethod::hash_join;
        if (method == "multiset") {
          mth = circle::VinogradovMethod::multiset;
        } else if (method == "exhaustive") {
          mth = circle::VinogradovMethod::exhaustive;
        } else {
          require(method == "hash", "vinogradov_count: method must be hash, multiset or exhaustive");
        }
        return circle::vinogradov_count(t, k, X, mth);
      },
      py::arg("t"), py::arg("k"), py::arg("X"), py::arg("method") = "hash");

  // Transference.
  m.def(
      "dense_sumset_check",
      [](const std::vector<std::vector<u64>>& blocks, u64 N, double eps, bool enforce) {
        const auto r = transfer::dense_sumset_check(blocks, N, eps, enforce);
        return py::dict(py::arg("preconditions_met") = r.preconditions_met, py::arg("holds") = r.holds,
                        py::arg("window") = std::make_pair(r.window_lo, r.window_hi),
                        py::arg("min_count") = r.min_count, py::arg("argmin") = r.argmin);
      },
      py::arg("blocks"), py::arg("N"), py::arg("eps"), py::arg("enforce_preconditions") = true);
  m.def(
      "transference_demo",
      [](unsigned k, unsigned w, u64 b, u64 N, unsigned s, double eps, double delta, u64 M,
         double q_exp, std::optional<std::vector<u64>> A) {
        require(s >= 2, "transference_demo: s must be at least 2");
        const auto nu = f_b_or_nu(k, w, b, N, std::nullopt);
        const auto f = A ? f_b_or_nu(k, w, b, N, A) : nu;
        const std::vector<circle::WeightedSequence> fs(s, f), majorants(s, nu);
        transfer::TransferenceOptions opt;
        opt.eps = eps;
        opt.delta = delta;
        opt.M = M;
        opt.q_exp = q_exp;
        transfer::TransferenceReport r;
        {
          py::gil_scoped_release release;
          r = transfer::transference_demo(fs, majorants, opt);
        }
        return to_py(harness::to_json(r));
      },
      py::arg("k"), py::arg("w"), py::arg("b"), py::arg("N"), py::arg("s"), py::arg("eps") = 0.5,
      py::arg("delta") = 0.05, py::arg("M") = 0, py::arg("q_exp") = 0.0, py::arg("A") = py::none());

  // Harness.
  m.def(
      "random_dense_subset",
      [](unsigned k, u64 range_max, double density, u64 seed, const std::string& mode) {
        return harness::random_dense_subset(k, range_max, density, seed, harness::parse_subset_mode(mode));
      },
      py::arg("k"), py::arg("range_max"), py::arg("density"), py::arg("seed") = 1,
      py::arg("mode") = "bernoulli");
  m.def(
      "empirical_density",
      [](const std::vector<u64>& A, unsigned k, u64 range_max) {
        return harness::empirical_density(A, k, range_max);
      },
      py::arg("A"), py::arg("k"), py::arg("range_max"));
  m.def(
      "representation_count",
      [](const std::vector<u64>& A, unsigned s, u64 n_max) {
        auto r = harness::representation_count(A, s, n_max);
        return std::make_pair(std::move(r.counts), r.overflow);
      },
      py::arg("A"), py::arg("s"), py::arg("n_max"));
  m.def(
      "shnirelman_density",
      [](const std::vector<u64>& B, u64 n_max) { return harness::shnirelman_density(B, n_max); },
      py::arg("B"), py::arg("n_max"));
  m.def(
      "coverage_experiment",
      [](const py::dict& config) {
        const auto c = harness::ExperimentConfig::from_json(from_py(config));
        harness::ExperimentReport r;
        {
          py::gil_scoped_release release;
          r = harness::coverage_experiment(c);
        }
        return to_py(harness::to_json(r));
      },
      py::arg("config") = py::dict());
}
