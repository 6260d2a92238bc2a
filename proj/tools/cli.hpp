// Copyright 2026 The qdsbch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Kept in a header so the test suite can drive
// every subcommand in-process.

#ifndef QDSBCH_TOOLS_CLI_HPP
#define QDSBCH_TOOLS_CLI_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qdsbch/qdsbch.hpp"
#include "qdsbch/serialize.hpp"

namespace qdsbch::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kVerifyFailed = 2, kBudgetRefused = 3 };

/// Inclusive "lo:hi" integer range.
inline std::vector<std::size_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  std::size_t lo = 0;
  std::size_t hi = 0;
  try {
    if (colon == std::string::npos) {
      lo = hi = std::stoul(text);
    } else {
      lo = std::stoul(text.substr(0, colon));
      hi = std::stoul(text.substr(colon + 1));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed range '" + text + "', expected lo:hi");
  }
  if (lo > hi) throw std::invalid_argument("range '" + text + "' is empty");
  std::vector<std::size_t> out;
  for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

/// "lo:hi:logN", "lo:hi:linN" (N points, endpoints included) or "a,b,c".
inline std::vector<double> parse_points(const std::string& text) {
  std::vector<double> out;
  try {
    if (text.find(':') == std::string::npos) {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    } else {
      std::stringstream ss(text);
      std::string lo_s, hi_s, spacing;
      std::getline(ss, lo_s, ':');
      std::getline(ss, hi_s, ':');
      std::getline(ss, spacing);
      const double lo = std::stod(lo_s);
      const double hi = std::stod(hi_s);
      const bool log_scale = spacing.starts_with("log");
      if (!log_scale && !spacing.starts_with("lin")) throw std::invalid_argument("spacing");
      const auto count = std::stoul(spacing.substr(3));
      if (count < 1 || (log_scale && (lo <= 0 || hi <= 0))) throw std::invalid_argument("points");
      for (std::size_t i = 0; i < count; ++i) {
        const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(log_scale ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo));
      }
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed point list '" + text + "', expected lo:hi:logN, lo:hi:linN or a,b,c");
  }
  for (double p : out) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0, 1] in '" + text + "'");
  }
  return out;
}

/// Writes via a temporary file and rename, so a failed run leaves no partial output.
inline void write_file_atomically(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    os << contents;
    if (!os) throw std::runtime_error("write to '" + tmp + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct CodeOptions {
  std::string code = "steane";
  std::string code_file;
  std::string sm = "bch";
  std::size_t t = 1;
  std::size_t reps = 0;
  std::string m_rule = "bound";
  std::uint64_t budget = kDefaultEnumerationBudget;

  void attach(CLI::App* app, bool with_sm = true) {
    app->add_option("--code", code, "Built-in stabilizer code")->check(CLI::IsMember({"steane"}));
    app->add_option("--code-file", code_file, "Stabilizer code file ('n k' line, then n-k Pauli strings)");
    app->add_option("--budget", budget, "Enumeration budget for decoder tables and exhaustive checks");
    if (!with_sm) return;
    app->add_option("--sm", sm, "Syndrome measurement code")->check(CLI::IsMember({"bch", "repetition", "identity"}));
    app->add_option("--t", t, "Syndrome errors to correct (BCH t; repetition uses 2t+1 rounds)");
    app->add_option("--reps", reps, "Repetition rounds (odd); overrides --t for --sm repetition");
    app->add_option("--m-rule", m_rule, "BCH extension degree rule")->check(CLI::IsMember({"bound", "exact"}));
  }

  [[nodiscard]] MSelection rule() const { return m_rule == "exact" ? MSelection::kExactRedundancy : MSelection::kBound; }

  [[nodiscard]] StabilizerCode load_code() const {
    if (code_file.empty()) return steane_code();
    std::istringstream is(read_file(code_file));
    auto stem = std::filesystem::path(code_file).stem().string();
    StabilizerCode c = read_stabilizer_code(is, stem);
    if (auto d = code_distance(c, budget)) c.set_distance(*d);
    return c;
  }

  [[nodiscard]] std::shared_ptr<const SyndromeMeasurementCode> load_sm(std::size_t ell) const {
    if (sm == "bch") return bch_sm(ell, t, rule());
    if (sm == "identity") return identity_sm(ell);
    return repetition_sm(ell, reps != 0 ? reps : 2 * t + 1);
  }

  [[nodiscard]] json to_json() const {
    return {{"code", code_file.empty() ? code : code_file}, {"sm", sm}, {"t", t}, {"reps", reps},
            {"m_rule", m_rule}, {"budget", budget}};
  }
};

inline json metadata(const std::string& command, json params) {
  return {{"tool", "qdsbch"}, {"version", kVersion}, {"command", command}, {"params", std::move(params)}};
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum data-syndrome codes from BCH syndrome measurement codes", "qdsbch"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // bch info
  auto* bch = app.add_subcommand("bch", "Primitive narrow-sense BCH codes")->require_subcommand(1);
  auto* bch_info = bch->add_subcommand("info", "Print code parameters and R(m,t)");
  int info_m = 0;
  std::size_t info_t = 0;
  std::size_t info_a = 0;
  std::string info_format = "text";
  bool info_matrix = false;
  bch_info->add_option("--m", info_m, "Extension degree (2..16)")->required();
  bch_info->add_option("--t", info_t, "Designed error-correction radius")->required();
  bch_info->add_option("--shorten", info_a, "Leading coordinates to remove");
  bch_info->add_option("--format", info_format)->check(CLI::IsMember({"text", "json"}));
  bch_info->add_flag("--matrix", info_matrix, "Also print the systematic generator matrix");

  // qds assemble | count | verify
  auto* qds = app.add_subcommand("qds", "QDS code construction and overhead")->require_subcommand(1);
  auto* assemble = qds->add_subcommand("assemble", "Write H_Q = G^T H and a JSON parameter block");
  CodeOptions assemble_opts;
  assemble_opts.attach(assemble);
  std::string assemble_out;
  std::string assemble_meta;
  assemble->add_option("--out", assemble_out, "H_Q text file (default: stdout)");
  assemble->add_option("--meta-out", assemble_meta, "Parameter JSON file (default: stdout)");

  auto* count = qds->add_subcommand("count", "Extra-measurement table as CSV");
  std::string ell_range = "5:60";
  std::string t_range = "1:12";
  std::string count_rule = "bound";
  std::string count_out;
  count->add_option("--ell-range", ell_range, "Inclusive ell range lo:hi");
  count->add_option("--t-range", t_range, "Inclusive t range lo:hi");
  count->add_option("--m-rule", count_rule)->check(CLI::IsMember({"bound", "exact"}));
  count->add_option("--out", count_out, "CSV file (default: stdout)");

  auto* verify = qds->add_subcommand("verify", "Exhaustively check the simultaneous correction guarantee");
  CodeOptions verify_opts;
  verify_opts.attach(verify);

  // sim grid | sweep
  auto* sim = app.add_subcommand("sim", "Weight-stratified Monte Carlo")->require_subcommand(1);
  auto* grid_cmd = sim->add_subcommand("grid", "Estimate per-(w_q, w_s) failure rates");
  CodeOptions grid_opts;
  grid_opts.attach(grid_cmd);
  std::uint64_t trials = 10'000;
  std::uint64_t trials_far = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string grid_out;
  grid_cmd->add_option("--trials", trials, "Trials per cell next to the guaranteed region");
  grid_cmd->add_option("--trials-far", trials_far, "Trials per other cell (default max(1000, trials/10))");
  grid_cmd->add_option("--seed", seed, "Root PRNG seed");
  grid_cmd->add_option("--threads", threads, "Worker threads (default: hardware concurrency)");
  grid_cmd->add_option("--out", grid_out, "grid.json path")->required();

  auto* sweep_cmd = sim->add_subcommand("sweep", "Recombine a grid into a p_err curve");
  std::string sweep_grid;
  std::string sweep_ps = "1e-4:1e-1:log25";
  double ratio = 0.0;
  double truncation = 1e-12;
  std::string sweep_out;
  sweep_cmd->add_option("--grid", sweep_grid, "grid.json from 'sim grid'")->required();
  sweep_cmd->add_option("--ps", sweep_ps, "Syndrome flip probabilities: lo:hi:logN, lo:hi:linN or a,b,c");
  sweep_cmd->add_option("--ratio", ratio, "p_q / p_s");
  sweep_cmd->add_option("--truncation", truncation, "Drop cells whose prefactor is below this");
  sweep_cmd->add_option("--out", sweep_out, "curve.csv path (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (bch_info->parsed()) {
      const BchCode code = bch_construct(info_m, info_t).shortened(info_a);
      if (info_format == "json") {
        json j = to_json(code);
        j["n"] = code.length();
        j["k"] = code.dimension();
        j["d"] = code.designed_distance();
        j["r"] = code.redundancy();
        j["generator_polynomial"] = code.generator_polynomial().to_hex();
        if (info_matrix) j["generator_matrix"] = to_json(code.generator_matrix());
        out << j.dump(2) << '\n';
      } else {
        out << code.parameters() << " R=" << code.redundancy() << " g=" << code.generator_polynomial().to_hex()
            << " primitive=" << code.field().primitive_polynomial().to_hex() << '\n';
        if (info_matrix) write_matrix_text(out, code.generator_matrix());
      }
      return kSuccess;
    }

    if (assemble->parsed()) {
      const StabilizerCode base = assemble_opts.load_code();
      const QdsCode q(base, assemble_opts.load_sm(base.ell()));
      json params = {{"n", q.base().n()},
                     {"k", q.base().k()},
                     {"d", q.base().distance().value_or(0)},
                     {"r", q.extra_measurements()},
                     {"n_s", q.num_measurements()},
                     {"t_s", q.sm().correctable()},
                     {"sm", q.sm().name()},
                     {"metadata", metadata("qds assemble", assemble_opts.to_json())}};
      const std::string matrix = matrix_to_text(q.h_q());
      const std::string meta = params.dump(2) + "\n";
      if (assemble_out.empty()) {
        out << matrix;
      } else {
        write_file_atomically(assemble_out, matrix);
      }
      if (assemble_meta.empty()) {
        out << meta;
      } else {
        write_file_atomically(assemble_meta, meta);
      }
      return kSuccess;
    }

    if (count->parsed()) {
      const auto rule = count_rule == "exact" ? MSelection::kExactRedundancy : MSelection::kBound;
      std::ostringstream csv;
      write_overhead_csv(csv, overhead_table(parse_range(ell_range), parse_range(t_range), rule));
      if (count_out.empty()) {
        out << csv.str();
      } else {
        write_file_atomically(count_out, csv.str());
      }
      return kSuccess;
    }

    if (verify->parsed()) {
      const StabilizerCode base = verify_opts.load_code();
      if (!base.distance()) throw std::invalid_argument("verify: code distance unknown (k = 0?)");
      const QdsCode q(base, verify_opts.load_sm(base.ell()));
      const std::size_t tq = base.correctable_weight();
      const std::size_t ts = q.sm().correctable();
      const std::uint64_t required =
          saturating_mul(pauli_count_up_to_weight(base.n(), tq), patterns_up_to_weight(q.num_measurements(), ts));
      if (required > verify_opts.budget) throw BudgetExceeded("verify", required, verify_opts.budget);
      const LookupDecoder decoder = LookupDecoder::build(base, tq, true, verify_opts.budget);
      std::uint64_t total = 0;
      std::uint64_t failed = 0;
      out << "verify " << (base.name().empty() ? "custom" : base.name()) << " + " << q.sm().name() << " [n_s="
          << q.num_measurements() << ", t_q=" << tq << ", t_s=" << ts << "]\n";
      for (std::size_t wq = 0; wq <= tq; ++wq) {
        for (std::size_t ws = 0; ws <= ts; ++ws) {
          std::uint64_t cases = 0;
          std::uint64_t fails = 0;
          for_each_pauli_of_weight(base.n(), wq, [&](const PauliOperator& e) {
            BitVector s(q.num_measurements());
            for_each_combination(q.num_measurements(), ws, [&](const std::vector<std::size_t>& flips) {
              for (std::size_t i : flips) s.set(i);
              ++cases;
              if (decoding_fails(q, decoder, e, s)) ++fails;
              for (std::size_t i : flips) s.reset(i);
            });
          });
          out << "cell wq=" << wq << " ws=" << ws << " cases=" << cases << " failures=" << fails << ' '
              << (fails == 0 ? "PASS" : "FAIL") << '\n';
          total += cases;
          failed += fails;
        }
      }
      out << (failed == 0 ? "PASS" : "FAIL") << ' ' << total << " cases, " << failed << " failures\n";
      return failed == 0 ? kSuccess : kVerifyFailed;
    }

    if (grid_cmd->parsed()) {
      const StabilizerCode base = grid_opts.load_code();
      const QdsCode q(base, grid_opts.load_sm(base.ell()));
      const LookupDecoder decoder =
          LookupDecoder::build(base, base.distance() ? base.correctable_weight() : 1, true, grid_opts.budget);
      GridOptions opt;
      opt.trials_boundary = trials;
      opt.trials_far = trials_far != 0 ? trials_far : std::max<std::uint64_t>(1000, trials / 10);
      opt.seed = seed;
      opt.threads = threads != 0 ? threads : std::max(1U, std::thread::hardware_concurrency());
      const SimGrid grid = build_grid(q, decoder, opt);
      json params = grid_opts.to_json();
      params["trials"] = opt.trials_boundary;
      params["trials_far"] = opt.trials_far;
      params["seed"] = seed;
      json j = to_json(grid);
      j["metadata"] = metadata("sim grid", std::move(params));
      write_file_atomically(grid_out, j.dump(2) + "\n");
      out << "wrote " << grid.cells.size() << " cells to " << grid_out << '\n';
      return kSuccess;
    }

    if (sweep_cmd->parsed()) {
      const SimGrid grid = grid_from_json(json::parse(read_file(sweep_grid)));
      const auto curve = sweep(grid, parse_points(sweep_ps), ratio, truncation);
      std::ostringstream csv;
      write_curve_csv(csv, curve);
      if (sweep_out.empty()) {
        out << csv.str();
      } else {
        write_file_atomically(sweep_out, csv.str());
      }
      return kSuccess;
    }
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudgetRefused;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace qdsbch::cli

#endif  // QDSBCH_TOOLS_CLI_HPP
