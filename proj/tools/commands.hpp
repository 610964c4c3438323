// Copyright 2026 The erbox Authors
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

#pragma once

// Command layer behind the erbox executable. Kept separate from argument
// parsing so the tests can drive it with in-memory streams.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "erbox/erbox.hpp"

namespace erbox::cli {

enum class ExitCode : int { pass = 0, fail = 1, usage = 2 };

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string command;
  std::optional<std::string> box_path;
  std::optional<std::string> task;
  std::optional<std::uint64_t> seed;
  double tol = 1e-9;
  OutputFormat output = OutputFormat::json;
  std::size_t grid = 1001;
  std::optional<std::string> out_path;
  std::string protocol = "zflip";
  std::string receiver = "ab";
};

/// Usage problems: bad flags, unknown names, incompatible combinations.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json config_to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["box"] = c.box_path ? Json(*c.box_path) : Json(nullptr);
  j["task"] = c.task ? Json(*c.task) : Json(nullptr);
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  j["tol"] = c.tol;
  j["output"] = c.output == OutputFormat::json ? "json" : "csv";
  j["grid"] = c.grid;
  j["out"] = c.out_path ? Json(*c.out_path) : Json(nullptr);
  if (c.command == "signal") {
    j["protocol"] = c.protocol;
    j["receiver"] = c.receiver;
  }
  return j;
}

inline Json validation_to_json(const ValidationReport& v) {
  return {{"output_fidelity", v.output_fidelity},
          {"trace_distance_to_target", v.trace_distance_to_target},
          {"completeness_residual", v.completeness_residual},
          {"pass", v.pass}};
}

inline Json structure_to_json(const StructureReport& s) {
  Json branches = Json::array();
  for (const auto& b : s.branches) {
    Json jb{{"label", b.label},
            {"trivial", b.trivial},
            {"probability", b.probability},
            {"branch_weight", b.weight},
            {"charlie_rank", b.charlie_rank},
            {"expected_rank", b.expected_rank},
            {"charlie_schmidt", b.charlie_schmidt},
            {"charlie_form_residual", b.charlie_form_residual},
            {"a_unitarity_deviation", b.a_unitarity_deviation},
            {"b_unitarity_deviation", b.b_unitarity_deviation},
            {"ab_factors_unitary", b.factors_unitary},
            {"branch_identity_residual", b.branch_identity_residual},
            {"proportionality", b.proportionality},
            {"pass", b.pass}};
    if (s.task == BoxTask::ghz_to_epr) jb["charlie_phase"] = b.charlie_phase;
    if (s.task == BoxTask::two_epr_to_ghz) jb["singular_value_balance"] = b.singular_value_balance;
    branches.push_back(std::move(jb));
  }
  return {{"task", std::string(task_name(s.task))},
          {"branches", std::move(branches)},
          {"completeness_residual", s.completeness_residual},
          {"resolution_residual", s.resolution_residual},
          {"pass", s.pass}};
}

inline Json summary_to_json(const TaskSummary& s) {
  const CcBound& cc = s.cc;
  Json jcc{{"lower", cc.lower},
           {"outcome_entropy", cc.outcome_entropy},
           {"delta_S", cc.delta_S},
           {"delta_I", cc.delta_I},
           {"pre_measurement_mutual_information", cc.pre_measurement_mi},
           {"lemma_chain_holds", cc.chain_holds},
           {"achieving_box", cc.achieving_box},
           {"achieving_cost", cc.achieving_cost},
           {"source", "cc_lower + cc_of_box"}};
  Json jcv{{"lower", s.cv.lower},
           {"upper", s.cv.upper ? Json(*s.cv.upper) : Json("unbounded-by-this-artifact")},
           {"witnesses", s.cv.witnesses}};
  return {{"task", std::string(task_name(s.cc.task))},
          {"cc", std::move(jcc)},
          {"cv", std::move(jcv)},
          {"cc_minus_cv_lower", cc.lower - s.cv.lower}};
}

inline Json matrix_summary(const Matrix& m) { return matrix_to_json(m); }

namespace detail {

inline Box resolve_box(const RunConfig& c) {
  if (c.box_path) return load_box(*c.box_path);
  if (!c.task) throw UsageError("this command needs --box or --task");
  const BoxTask t = parse_task(*c.task);
  return c.seed ? random_box(t, *c.seed) : canonical_box(t);
}

inline BoxTask require_task(const RunConfig& c) {
  if (!c.task) throw UsageError("this command needs --task");
  return parse_task(*c.task);
}

inline void write_text(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + *path + "'");
  f << text;
  if (!f) throw UsageError("cannot write '" + *path + "'");
}

struct Outcome {
  Json result;
  bool pass = true;
  std::optional<std::string> text;  // replaces the JSON document (csv, box file)
};

inline Outcome cmd_validate(const RunConfig& c) {
  const Box box = resolve_box(c);
  const ValidationReport v = validate(box, c.tol);
  const StructureReport s = analyze_structure(box, std::max(c.tol, kStructureTol));
  return {{{"validation", validation_to_json(v)}, {"structure", structure_to_json(s)}}, v.pass && s.pass, {}};
}

inline Outcome cmd_structure(const RunConfig& c) {
  const Box box = resolve_box(c);
  const StructureReport s = analyze_structure(box, std::max(c.tol, kStructureTol));
  return {structure_to_json(s), s.pass, {}};
}

inline Outcome cmd_bounds(const RunConfig& c) {
  const TaskSummary s = task_summary(require_task(c));
  const bool ok = s.cc.chain_holds && (!s.cv.upper || s.cv.lower <= *s.cv.upper + c.tol) &&
                  s.cc.lower >= s.cv.lower - c.tol;
  return {summary_to_json(s), ok, {}};
}

inline Outcome cmd_sweep(const RunConfig& c) {
  if (require_task(c) != BoxTask::two_epr_to_ghz) throw UsageError("sweep is defined for --task 2epr-ghz");
  if (c.grid < 2) throw UsageError("--grid must be at least 2");
  const DepolarizeReport lower = cv_lower_depolarize(parity_2eprghz_box());
  const TwirledUpperReport upper = cv_upper_twirled(BoxTask::two_epr_to_ghz);
  const auto chi_lower = holevo_curve(lower.identity_output, lower.depolarized_output);
  const auto chi_upper = holevo_curve(upper.rho_f_max, upper.rho_f_min);

  std::vector<double> ps(c.grid), lo(c.grid), up(c.grid);
  std::size_t ilo = 0;
  std::size_t iup = 0;
  for (std::size_t k = 0; k < c.grid; ++k) {
    ps[k] = static_cast<double>(k) / static_cast<double>(c.grid - 1);
    lo[k] = chi_lower(ps[k]);
    up[k] = chi_upper(ps[k]);
    if (lo[k] > lo[ilo]) ilo = k;
    if (up[k] > up[iup]) iup = k;
  }
  const double step = 1.0 / static_cast<double>(c.grid - 1);
  const bool agree = std::abs(ps[ilo] - lower.p_star) <= step && std::abs(ps[iup] - upper.p_star) <= step;

  auto flag = [&](std::size_t k) {
    std::string f;
    if (k == ilo) f = "max_lower";
    if (k == iup) f += f.empty() ? "max_upper" : ";max_upper";
    return f;
  };

  Outcome o;
  o.pass = agree;
  o.result = {{"grid", c.grid},
              {"max_lower", {{"p", ps[ilo]}, {"chi", lo[ilo]}}},
              {"max_upper", {{"p", ps[iup]}, {"chi", up[iup]}}},
              {"optimizer_lower", {{"p", lower.p_star}, {"chi", lower.chi_max}}},
              {"optimizer_upper", {{"p", upper.p_star}, {"chi", upper.value}}},
              {"maxima_agree_with_optimizer", agree}};
  if (c.output == OutputFormat::csv) {
    std::ostringstream csv;
    csv << std::setprecision(17) << "p,chi_lower,chi_upper,flag\n";
    for (std::size_t k = 0; k < c.grid; ++k) csv << ps[k] << ',' << lo[k] << ',' << up[k] << ',' << flag(k) << '\n';
    o.text = csv.str();
  } else {
    Json rows = Json::array();
    for (std::size_t k = 0; k < c.grid; ++k) {
      rows.push_back({{"p", ps[k]}, {"chi_lower", lo[k]}, {"chi_upper", up[k]}, {"flag", flag(k)}});
    }
    o.result["rows"] = std::move(rows);
  }
  return o;
}

inline IndexSet parse_receiver(const std::string& r) {
  if (r == "ab") return {0, 1};
  if (r == "a") return {0};
  if (r == "b") return {1};
  throw UsageError("--receiver must be a, b or ab");
}

inline Outcome cmd_signal(const RunConfig& c) {
  const Box box = resolve_box(c);
  const double tol = c.tol;
  Outcome o;
  if (c.protocol == "zflip") {
    if (box.task() == BoxTask::two_epr_to_ghz) throw UsageError("zflip needs an es or ghz-epr box");
    const ZflipReport z = cv_lower_zflip(box, tol);
    o.result = {{"protocol", "zflip"}, {"bits", z.bits}, {"overlap", z.overlap},
                {"trace_distance", z.distance}, {"holevo", z.holevo}, {"certified", z.certified}};
    o.pass = z.certified;
  } else if (c.protocol == "dense-coding") {
    if (box.task() != BoxTask::entanglement_swapping) throw UsageError("dense-coding needs an es box");
    DenseCodingReport d;
    try {
      d = dense_coding_demo(box, tol);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    Json gram = Json::array();
    for (std::size_t i = 0; i < 4; ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < 4; ++j) row.push_back(d.gram(i, j).real());
      gram.push_back(std::move(row));
    }
    o.result = {{"protocol", "dense-coding"},
                {"bits", d.bits},
                {"receiver", d.receiver == Party::alice ? "alice" : "bob"},
                {"gram", std::move(gram)},
                {"gram_residual", d.gram_residual},
                {"certified", d.certified}};
    o.pass = d.certified;
  } else if (c.protocol == "depolarize") {
    if (box.task() != BoxTask::two_epr_to_ghz) throw UsageError("depolarize needs a 2epr-ghz box");
    const DepolarizeReport d = cv_lower_depolarize(box);
    o.result = {{"protocol", "depolarize"},
                {"bits", d.chi_max},
                {"p_star", d.p_star},
                {"depolarized_residual", d.depolarized_residual},
                {"identity_residual", d.identity_residual}};
    o.pass = d.depolarized_residual <= tol && d.identity_residual <= tol;
  } else if (c.protocol == "custom") {
    // Charlie either does nothing or measures all his qubits in the
    // computational basis; the receiver is chosen with --receiver.
    const SubsystemShape shape = box.input_shape();
    IndexSet charlie;
    for (std::size_t i = 2; i < shape.count(); ++i) charlie.push_back(i);
    std::vector<Matrix> meas;
    const std::size_t dc = shape.total_of(charlie);
    for (std::size_t k = 0; k < dc; ++k) meas.push_back(outer(Matrix::basis_vector(dc, k), Matrix::basis_vector(dc, k)));
    std::vector<AlphabetMap> maps{AlphabetMap::identity(shape, charlie, "id"),
                                  AlphabetMap::kraus(meas, shape, charlie, "measure-z")};
    const SignalingReport s = signaling_test(box.channel(), canonical_input(box.task()).density(), maps,
                                             parse_receiver(c.receiver), tol);
    o.result = {{"protocol", "custom"},
                {"labels", s.labels},
                {"distances", s.distances},
                {"max_distance", s.max_distance},
                {"holevo_of_outputs", s.holevo_of_outputs},
                {"signaling", s.signaling},
                {"bits", s.holevo_of_outputs}};
    o.pass = true;
  } else {
    throw UsageError("unknown protocol '" + c.protocol + "'");
  }
  return o;
}

inline Outcome cmd_make(const RunConfig& c) {
  const BoxTask t = require_task(c);
  const Box box = c.seed ? random_box(t, *c.seed) : canonical_box(t);
  Outcome o;
  o.result = {{"task", std::string(task_name(t))}, {"branches", box.branches().size()}};
  o.text = dump_box(box);
  return o;
}

}  // namespace detail

/// Runs one command. The report (or CSV / box file) goes to `out` unless
/// --out names a file; diagnostics go to `err`.
inline int run_command(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  auto emit_error = [&](const std::string& kind, const std::string& message, const std::string& pointer) {
    err << "error: " << message << "\n";
    Json doc{{"command", c.command},
             {"config", config_to_json(c)},
             {"error", {{"kind", kind}, {"message", message}}},
             {"version", std::string(kVersion)}};
    if (!pointer.empty() || kind == "schema") doc["error"]["pointer"] = pointer;
    if (c.output == OutputFormat::json) out << doc.dump(2) << "\n";
    return static_cast<int>(ExitCode::usage);
  };
  try {
    if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
    if (c.grid < 2) throw UsageError("--grid must be at least 2");
    if (c.output == OutputFormat::csv && c.command != "sweep") {
      throw UsageError("--output csv is only available for sweep");
    }
    detail::Outcome o;
    if (c.command == "validate") o = detail::cmd_validate(c);
    else if (c.command == "structure") o = detail::cmd_structure(c);
    else if (c.command == "bounds") o = detail::cmd_bounds(c);
    else if (c.command == "sweep") o = detail::cmd_sweep(c);
    else if (c.command == "signal") o = detail::cmd_signal(c);
    else if (c.command == "make") o = detail::cmd_make(c);
    else throw UsageError("unknown command '" + c.command + "'");

    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.text) {
      detail::write_text(c.out_path, *o.text, out);
      if (c.out_path && c.command == "make") {
        Json doc{{"command", c.command}, {"config", config_to_json(c)}, {"result", o.result},
                 {"version", std::string(kVersion)}, {"elapsed_ms", elapsed}};
        out << doc.dump(2) << "\n";
      }
    } else {
      Json doc{{"command", c.command}, {"config", config_to_json(c)}, {"result", o.result},
               {"version", std::string(kVersion)}, {"elapsed_ms", elapsed}};
      detail::write_text(c.out_path, doc.dump(2) + "\n", out);
    }
    return static_cast<int>(o.pass ? ExitCode::pass : ExitCode::fail);
  } catch (const SchemaError& e) {
    return emit_error("schema", e.what(), e.pointer());
  } catch (const UsageError& e) {
    return emit_error("usage", e.what(), "");
  } catch (const std::invalid_argument& e) {
    // Unknown task names and boxes that fail construction-time checks.
    return emit_error("usage", e.what(), "");
  } catch (const std::runtime_error& e) {
    return emit_error("io", e.what(), "");
  }
}

}  // namespace erbox::cli
