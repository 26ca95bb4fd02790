// Copyright 2026 The symclone authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "symclone/capacity.hpp"
#include "symclone/channels.hpp"
#include "symclone/combinat.hpp"
#include "symclone/definetti.hpp"
#include "symclone/diamond.hpp"
#include "symclone/serialize.hpp"
#include "symclone/symspace.hpp"

namespace symclone {
namespace {

struct CommonOpts {
  std::uint64_t seed = 0;
  double tol_alg = kTolAlg;
  double tol_sdp = 1e-6;
  std::string out;
  std::string format = "json";
  int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts* o,
                const std::vector<std::string>& formats = {"json"}) {
  cmd->add_option("--seed", o->seed, "random seed (default 0)");
  cmd->add_option("--tol-alg", o->tol_alg, "algebraic tolerance");
  cmd->add_option("--tol-sdp", o->tol_sdp, "SDP certificate tolerance");
  cmd->add_option("--out", o->out, "output path (stdout when omitted)");
  cmd->add_option("--format", o->format, "output format")
      ->check(CLI::IsMember(formats));
  cmd->add_option("--jobs", o->jobs, "worker pool size for sweeps");
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + o.out);
    f << text;
  }
}

std::pair<int, int> parse_m_range(const std::string& range, int single_m) {
  if (!range.empty()) {
    const auto colon = range.find(':');
    if (colon == std::string::npos) {
      return {std::stoi(range), std::stoi(range)};
    }
    const int lo = std::stoi(range.substr(0, colon));
    const int hi = std::stoi(range.substr(colon + 1));
    if (lo > hi) throw CLI::ValidationError("--M-range", "empty range");
    return {lo, hi};
  }
  if (single_m <= 0) {
    throw CLI::ValidationError("--M", "need --M or --M-range");
  }
  return {single_m, single_m};
}

// Bounded worker pool; results land in their slot, so ordering is
// deterministic regardless of completion order.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  int workers = jobs > 0 ? jobs
                         : static_cast<int>(std::min<unsigned>(
                               std::thread::hardware_concurrency(), 8));
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        int i;
        while ((i = next.fetch_add(1)) < n) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

int run_identities(int max_m, bool inject_fault, const CommonOpts& o) {
  const IdentityReport report = identity_suite(max_m, inject_fault);
  JsonValue v = JsonValue::object();
  v.add("max_M", JsonValue::integer(max_m));
  v.add("passed", JsonValue::boolean(report.passed));
  v.add("checks_run",
        JsonValue::integer(static_cast<std::int64_t>(report.checks_run)));
  if (!report.passed) {
    v.add("first_counterexample", JsonValue::string(
        report.first_counterexample));
  }
  emit(o, v.dump());
  return report.passed ? 0 : 1;
}

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

int run_decompose(int d, int m, int k, const CommonOpts& o) {
  const double residual = decomposition_residual(d, m, k);
  const ProbabilityVector p = ps_distribution(d, m, k);
  JsonValue v = JsonValue::object();
  v.add("d", JsonValue::integer(d));
  v.add("M", JsonValue::integer(m));
  v.add("k", JsonValue::integer(k));
  v.add("choi_residual", certified(residual, o.tol_alg));
  JsonValue exact = JsonValue::array();
  JsonValue approx = JsonValue::array();
  for (const auto& q : p.entries) {
    exact.push(JsonValue::string(rational_str(q)));
    approx.push(JsonValue::number(rational_to_double(q)));
  }
  v.add("p_exact", std::move(exact));
  v.add("p", std::move(approx));
  const bool pass = residual < o.tol_alg;
  v.add("passed", JsonValue::boolean(pass));
  emit(o, v.dump());
  return pass ? 0 : 1;
}

int run_bounds(int d, const std::string& m_range, int single_m, int k,
               bool exact, const CommonOpts& o) {
  const auto [m_lo, m_hi] = parse_m_range(m_range, single_m);
  const int n = m_hi - m_lo + 1;
  std::vector<BoundComparisonRow> rows(n);
  DiamondOptions opts;
  opts.tol_sdp = o.tol_sdp;
  opts.seed = o.seed;
  parallel_for(n, o.jobs, [&](int i) {
    auto part = bound_comparison_table(d, m_lo + i, m_lo + i, k, exact, opts);
    rows[i] = std::move(part.front());
  });

  if (o.format == "json") {
    JsonValue arr = JsonValue::array();
    for (const auto& row : rows) arr.push(to_json(row, o.tol_sdp));
    emit(o, arr.dump());
  } else if (o.format == "csv") {
    std::string text = csv_row({"M", "bound1", "bound2_exact", "bound2_linear",
                                "clone_bound", "min", "sdp_upper",
                                "seesaw_lower"});
    for (const auto& row : rows) {
      std::vector<std::string> cells{
          std::to_string(row.M),
          format_double(rational_to_double(row.bounds.bound_estimation_1)),
          row.bounds.estimation2_defined
              ? format_double(*row.bounds.bound_estimation_2_exact)
              : "",
          row.bounds.estimation2_defined
              ? format_double(rational_to_double(
                    *row.bounds.bound_estimation_2_linear))
              : "",
          format_double(rational_to_double(row.bounds.bound_cloning)),
          format_double(row.bounds.min_estimation_bound),
          row.computed ? format_double(row.computed->upper) : "",
          row.computed ? format_double(row.computed->lower) : ""};
      text += csv_row(cells);
    }
    emit(o, text);
  } else {  // svg
    SvgSeries b1{"bound1", {}, {}}, b2{"bound2_exact", {}, {}},
        b2l{"bound2_linear", {}, {}}, mn{"min", {}, {}},
        sdp{"sdp_upper", {}, {}};
    for (const auto& row : rows) {
      const double m = row.M;
      b1.x.push_back(m);
      b1.y.push_back(rational_to_double(row.bounds.bound_estimation_1));
      if (row.bounds.estimation2_defined) {
        b2.x.push_back(m);
        b2.y.push_back(*row.bounds.bound_estimation_2_exact);
        b2l.x.push_back(m);
        b2l.y.push_back(
            rational_to_double(*row.bounds.bound_estimation_2_linear));
      }
      mn.x.push_back(m);
      mn.y.push_back(row.bounds.min_estimation_bound);
      if (row.computed) {
        sdp.x.push_back(m);
        sdp.y.push_back(row.computed->upper);
      }
    }
    std::vector<SvgSeries> series{b1, b2, b2l, mn};
    if (!sdp.x.empty()) series.push_back(sdp);
    emit(o, svg_line_plot(series, "M", "diamond-norm bound"));
  }
  return 0;
}

int run_definetti(const std::string& state_file, int k, const CommonOpts& o) {
  DeFinettiCertificate cert;
  if (sym_operator_file_is_subspace(state_file)) {
    const SymOperator rho = read_sym_operator(state_file);
    cert = definetti_state(rho, k).second;
  } else {
    int d = 0, m = 0;
    const Matrix rho = read_full_operator(state_file, d, m);
    cert = definetti_perm_invariant(rho, d, m, k);
  }
  emit(o, to_json(cert, o.tol_alg).dump());
  return cert.margin >= -kTolNum ? 0 : 1;
}

int run_broadcast(const std::string& channel_file, int k,
                  const CommonOpts& o) {
  const SymChannel e = read_sym_channel(channel_file);
  DiamondOptions opts;
  opts.tol_sdp = o.tol_sdp;
  opts.seed = o.seed;
  const auto [approx, cert] = broadcast_approx(e, k, opts);
  (void)approx;
  emit(o, to_json(cert, o.tol_sdp).dump());
  return cert.margin >= -kTolNum ? 0 : 1;
}

int run_capacity(int d, int m, int k, std::int64_t d_in, bool exact,
                 const CommonOpts& o) {
  CapacityReport report = capacity_bounds(d, m, k, d_in);
  if (exact) {
    DiamondOptions opts;
    opts.tol_sdp = o.tol_sdp;
    opts.seed = o.seed;
    report.computed_transpose_diamond =
        transpose_diamond(trace_channel(d, m, k), opts);
  }
  emit(o, to_json(report, o.tol_sdp).dump());
  if (report.computed_transpose_diamond &&
      *report.computed_transpose_diamond >
          report.transpose_bound_log + 1e-3) {
    return 1;
  }
  return 0;
}

int run_clonegap(int d, int n, const std::string& m_range, int single_m,
                 const CommonOpts& o) {
  const auto [m_lo, m_hi] = parse_m_range(m_range, single_m);
  const auto rows = cloning_estimation_gap(d, n, m_lo, m_hi);
  if (o.format == "csv") {
    std::string text = csv_row({"M", "f_clon", "f_est", "gap", "bound"});
    for (const auto& row : rows) {
      text += csv_row({std::to_string(row.M), format_double(row.f_clon),
                       format_double(row.f_est), format_double(row.gap),
                       format_double(row.bound)});
    }
    emit(o, text);
  } else {
    JsonValue arr = JsonValue::array();
    for (const auto& row : rows) arr.push(to_json(row));
    emit(o, arr.dump());
  }
  return 0;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"symclone: exact toolkit for universal cloning, "
               "measure-and-prepare channels and finite de Finetti bounds"};
  app.require_subcommand(1);

  CommonOpts o;

  auto* identities = app.add_subcommand(
      "identities", "verify the exact combinatorial identities");
  int max_m = 30;
  bool inject_fault = false;
  identities->add_option("--max-M", max_m, "largest M checked");
  identities->add_flag("--inject-fault", inject_fault,
                       "corrupt one term (self-test of the checker)")
      ->group("");
  add_common(identities, &o);

  auto* decompose = app.add_subcommand(
      "decompose", "verify the loss-plus-cloning mixture decomposition");
  int d = 2, m = 0, k = 1;
  std::int64_t d_in = 2;
  std::string m_range;
  decompose->add_option("--d", d, "local dimension")->required();
  decompose->add_option("--M", m, "input copies")->required();
  decompose->add_option("--k", k, "output copies")->required();
  add_common(decompose, &o);

  auto* bounds = app.add_subcommand(
      "bounds", "analytic bound table, optionally with certified distances");
  bool exact = false;
  bounds->add_option("--d", d, "local dimension")->required();
  bounds->add_option("--k", k, "output copies")->required();
  bounds->add_option("--M", m, "single M");
  bounds->add_option("--M-range", m_range, "inclusive range a:b");
  bounds->add_flag("--exact", exact, "compute certified diamond distances");
  add_common(bounds, &o, {"json", "csv", "svg"});

  auto* definetti = app.add_subcommand(
      "definetti", "de Finetti certificate for a state file");
  std::string state_file, channel_file;
  definetti->add_option("--state", state_file, "SymOperator JSON file")
      ->required();
  definetti->add_option("--k", k, "restriction size")->required();
  add_common(definetti, &o);

  auto* broadcast = app.add_subcommand(
      "broadcast", "de Finetti certificate for a broadcast channel file");
  broadcast->add_option("--channel", channel_file, "SymChannel JSON file")
      ->required();
  broadcast->add_option("--k", k, "receiver group size")->required();
  add_common(broadcast, &o);

  auto* capacity = app.add_subcommand(
      "capacity", "quantum capacity upper bounds for k receivers");
  capacity->add_option("--d", d, "local dimension")->required();
  capacity->add_option("--M", m, "receiver count")->required();
  capacity->add_option("--k", k, "receiver group size")->required();
  capacity->add_option("--din", d_in, "input dimension")->required();
  capacity->add_flag("--exact", exact,
                     "also compute the transpose-diamond bound for the "
                     "identity broadcast");
  add_common(capacity, &o);

  auto* clonegap = app.add_subcommand(
      "clonegap", "cloning versus estimation fidelity gap table");
  int n_copies = 1;
  clonegap->add_option("--d", d, "local dimension")->required();
  clonegap->add_option("--N", n_copies, "input copies")->required();
  clonegap->add_option("--M", m, "single M");
  clonegap->add_option("--M-range", m_range, "inclusive range a:b");
  add_common(clonegap, &o, {"json", "csv"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (identities->parsed()) return run_identities(max_m, inject_fault, o);
  if (decompose->parsed()) return run_decompose(d, m, k, o);
  if (bounds->parsed()) return run_bounds(d, m_range, m, k, exact, o);
  if (definetti->parsed()) return run_definetti(state_file, k, o);
  if (broadcast->parsed()) return run_broadcast(channel_file, k, o);
  if (capacity->parsed()) return run_capacity(d, m, k, d_in, exact, o);
  if (clonegap->parsed()) return run_clonegap(d, n_copies, m_range, m, o);
  return 2;
}

}  // namespace
}  // namespace symclone

int main(int argc, char** argv) {
  try {
    return symclone::dispatch(argc, argv);
  } catch (const symclone::ResourceLimitError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const symclone::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
