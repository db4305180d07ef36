// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "unlearn_lab/harness.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "unlearn_lab/errors.hpp"
#include "unlearn_lab/linalg.hpp"
#include "unlearn_lab/metrics.hpp"
#include "unlearn_lab/parallel.hpp"
#include "unlearn_lab/solvers.hpp"
#include "unlearn_lab/theory.hpp"

namespace unlearn_lab {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;
using Row = std::vector<std::string>;

constexpr std::array<std::string_view, 15> kVerifyColumns{
    "experiment", "d_r",       "d_lap",     "d_f",     "seed",
    "theorem",    "option",    "n_t",       "quantity", "measured",
    "predicted",  "abs_gap",   "rel_gap",   "pass",    "runtime_seconds"};

constexpr std::array<std::string_view, 16> kSweepNtColumns{
    "experiment",     "d_r",           "d_lap",          "d_f",
    "seed",           "n_t",           "rl_ft",          "ul_ft",
    "rl_gold",        "ul_gold",       "rl_edit_retain", "ul_edit_retain",
    "rl_edit_discard", "ul_edit_discard", "pass",         "runtime_seconds"};

constexpr std::array<std::string_view, 16> kSweepOverlapColumns{
    "experiment",           "d_r",
    "d_lap",                "d_f",
    "seed",                 "n_t",
    "rl_gold",              "ul_gold",
    "rl_edit_retain",       "ul_edit_retain",
    "rl_edit_discard",      "ul_edit_discard",
    "pred_rl_edit_discard", "pred_ul_edit_discard",
    "pass",                 "runtime_seconds"};

constexpr std::array<std::string_view, 12> kClassifierColumns{
    "experiment", "variant",   "alpha",     "seed", "ua",   "ra",
    "ta",         "golden_ua", "golden_ra", "golden_ta", "pass", "runtime_seconds"};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string cell(Index v) { return std::to_string(v); }
std::string cell(std::uint64_t v) { return std::to_string(v); }
std::string cell(double v) { return format_real(v); }
std::string cell(bool v) { return v ? "1" : "0"; }

// Rows and failures from one independent unit of work (one scenario or one
// seed). Units are filled in parallel and concatenated in order.
struct UnitResult {
  std::vector<Row> rows;
  std::size_t failed = 0;
  std::vector<std::string> errors;
  int stated_form_pass = 0;
  int stated_form_fail = 0;
  int expanded_form_pass = 0;
  int expanded_form_fail = 0;
  std::vector<std::string> skipped;
};

std::string layout_label(const FeatureLayout& l) {
  return fmt::format("({}, {}, {})", l.remaining_only, l.overlap, l.forgetting_only);
}

// The Option A/B closed forms need X_r to span the first d_r + d_lap
// coordinates.
bool remaining_block_spanned(const SyntheticScenario& s) {
  return projector(s.x_remain).rank() == s.layout.overlap_end();
}

void record_error(UnitResult& unit, Row row, std::string message) {
  unit.rows.push_back(std::move(row));
  ++unit.failed;
  unit.errors.push_back(std::move(message));
}

// ---------------------------------------------------------------- verify

struct VerifyKey {
  const FeatureLayout* layout;
  std::uint64_t seed;
};

void add_gap_row(UnitResult& unit, const VerifyKey& key, std::string_view theorem,
                 std::string_view option, const std::string& n_t,
                 const FieldGap& gap, double runtime) {
  const FeatureLayout& l = *key.layout;
  unit.rows.push_back({"verify-theorems", cell(l.remaining_only), cell(l.overlap),
                       cell(l.forgetting_only), cell(key.seed), std::string(theorem),
                       std::string(option), n_t, gap.field, cell(gap.measured),
                       cell(gap.predicted), cell(gap.abs_gap), cell(gap.rel_gap),
                       cell(gap.pass), cell(runtime)});
  if (!gap.pass) ++unit.failed;
}

UnitResult verify_unit(const ExperimentConfig& cfg, const FeatureLayout& layout,
                       std::uint64_t seed) {
  UnitResult unit;
  const VerifyKey key{&layout, seed};
  const TolerancePolicy& tol = cfg.tolerance;
  try {
    auto start = Clock::now();
    const SyntheticScenario s = generate_scenario(
        cfg.scenario.n_remain, cfg.scenario.n_forget, layout, seed, cfg.scenario.dist);
    const Vector w_o = train_original(s);
    const Vector w_g = retrain_golden(s);
    const LossReport gold = measure_losses(w_g, s, ModelTag::kGolden);
    const TheoremPrediction thm2 = predict_thm2(s);
    const double expanded = golden_ul_block_expansion(s);
    std::optional<TheoremPrediction> thm1;
    if (layout.is_distinct()) thm1 = predict_thm1(s);
    const bool spanned = remaining_block_spanned(s);
    double runtime = seconds_since(start);

    if (thm1) {
      for (const FieldGap& g : gap_report(gold, *thm1, tol).fields) {
        add_gap_row(unit, key, "T1", "none", "all", g, runtime);
      }
    }
    for (const FieldGap& g : gap_report(gold, thm2, tol).fields) {
      add_gap_row(unit, key, "T2", "none", "all", g, runtime);
    }
    const FieldGap stated = compare_field("ul_gold", gold.ul, thm2.ul_gold, tol);
    const FieldGap expanded_gap =
        compare_field("ul_gold_expanded", gold.ul, expanded, tol);
    add_gap_row(unit, key, "T2", "none", "all", expanded_gap, runtime);
    (stated.pass ? unit.stated_form_pass : unit.stated_form_fail)++;
    (expanded_gap.pass ? unit.expanded_form_pass : unit.expanded_form_fail)++;

    std::vector<EditOption> options;
    if (layout.is_distinct()) options.push_back(EditOption::kDistinctZeroForget);
    if (spanned) {
      options.push_back(EditOption::kOverlapRetain);
      options.push_back(EditOption::kOverlapDiscard);
    } else {
      unit.skipped.push_back(fmt::format(
          "T3-A/T3-B skipped for layout {} seed {}: rank(X_r) < d_r + d_lap",
          layout_label(layout), seed));
    }

    for (Index n_t : cfg.fine_tune_sizes()) {
      start = Clock::now();
      const std::string nt = cell(n_t);
      const FineTuneSet sub = fine_tune_subset(s, n_t);
      const Vector w_t = fine_tune_unlearn(w_o, sub.x, sub.y);
      const Vector w_t_alt = projection_form_unlearn(w_o, sub.x, sub.y);
      const LossReport ft = measure_losses(w_t, s, ModelTag::kFineTuned, n_t);
      TheoremPrediction thm2_nt = thm2;
      thm2_nt.provenance.n_t = n_t;
      std::vector<std::pair<EditOption, LossReport>> edited;
      std::vector<TheoremPrediction> thm3;
      for (EditOption opt : options) {
        const Vector w_e =
            fine_tune_unlearn(edit_pretrained(w_o, layout, opt), sub.x, sub.y);
        edited.emplace_back(opt, measure_losses(w_e, s, ModelTag::kEditedFineTuned, n_t));
        thm3.push_back(predict_thm3(s, opt, n_t));
      }
      runtime = seconds_since(start);

      if (thm1) {
        TheoremPrediction thm1_nt = *thm1;
        thm1_nt.provenance.n_t = n_t;
        for (const FieldGap& g : gap_report(ft, thm1_nt, tol).fields) {
          add_gap_row(unit, key, "T1", "none", nt, g, runtime);
        }
        add_gap_row(unit, key, "T1", "none", nt,
                    compare_field("wt_minus_wo_inf", (w_t - w_o).lpNorm<Eigen::Infinity>(),
                                  0.0, tol),
                    runtime);
      }
      for (const FieldGap& g : gap_report(ft, thm2_nt, tol).fields) {
        add_gap_row(unit, key, "T2", "none", nt, g, runtime);
      }
      add_gap_row(unit, key, "T2", "none", nt,
                  compare_field("eq4_identity_gap",
                                (w_t - w_t_alt).lpNorm<Eigen::Infinity>(), 0.0, tol),
                  runtime);
      for (std::size_t i = 0; i < edited.size(); ++i) {
        const auto& [opt, report] = edited[i];
        for (const FieldGap& g : gap_report(report, thm3[i], tol).fields) {
          add_gap_row(unit, key, to_string(thm3[i].tag), to_string(opt), nt, g, runtime);
        }
      }
    }
  } catch (const LabError& e) {
    record_error(unit,
                 {"verify-theorems", cell(layout.remaining_only), cell(layout.overlap),
                  cell(layout.forgetting_only), cell(seed), "error", "none", "all",
                  "exception", cell(kNaN), cell(kNaN), cell(kNaN), cell(kNaN),
                  cell(false), cell(0.0)},
                 fmt::format("layout {} seed {}: {}", layout_label(layout), seed, e.what()));
  }
  return unit;
}

// -------------------------------------------------------------- sweep-nt

struct EditPair {
  LossReport retain;
  LossReport discard;
};

EditPair edited_losses(const Vector& w_o, const SyntheticScenario& s,
                       const FineTuneSet& sub, Index n_t) {
  auto run = [&](EditOption opt) {
    const Vector w = fine_tune_unlearn(edit_pretrained(w_o, s.layout, opt), sub.x, sub.y);
    return measure_losses(w, s, ModelTag::kEditedFineTuned, n_t);
  };
  return {run(EditOption::kOverlapRetain), run(EditOption::kOverlapDiscard)};
}

bool all_pass(const GapReport& r) { return r.pass(); }

UnitResult sweep_nt_unit(const ExperimentConfig& cfg, std::uint64_t seed) {
  UnitResult unit;
  const FeatureLayout& layout = cfg.scenario.layout;
  const TolerancePolicy& tol = cfg.tolerance;
  try {
    const SyntheticScenario s = generate_scenario(
        cfg.scenario.n_remain, cfg.scenario.n_forget, layout, seed, cfg.scenario.dist);
    const Vector w_o = train_original(s);
    const LossReport gold = measure_losses(retrain_golden(s), s, ModelTag::kGolden);
    const TheoremPrediction thm2 = predict_thm2(s);
    const bool spanned = remaining_block_spanned(s);
    if (!spanned) {
      unit.skipped.push_back(fmt::format(
          "edited columns unchecked for seed {}: rank(X_r) < d_r + d_lap", seed));
    }
    const bool gold_ok = all_pass(gap_report(gold, thm2, tol));

    for (Index n_t : cfg.fine_tune_sizes()) {
      const auto start = Clock::now();
      const FineTuneSet sub = fine_tune_subset(s, n_t);
      const LossReport ft =
          measure_losses(fine_tune_unlearn(w_o, sub.x, sub.y), s, ModelTag::kFineTuned, n_t);
      const EditPair ed = edited_losses(w_o, s, sub, n_t);
      TheoremPrediction thm2_nt = thm2;
      thm2_nt.provenance.n_t = n_t;
      bool pass = gold_ok && all_pass(gap_report(ft, thm2_nt, tol));
      if (spanned) {
        pass = pass &&
               all_pass(gap_report(ed.retain, predict_thm3(s, EditOption::kOverlapRetain, n_t), tol)) &&
               all_pass(gap_report(ed.discard, predict_thm3(s, EditOption::kOverlapDiscard, n_t), tol));
      }
      const double runtime = seconds_since(start);
      unit.rows.push_back({"sweep-nt", cell(layout.remaining_only), cell(layout.overlap),
                           cell(layout.forgetting_only), cell(seed), cell(n_t),
                           cell(ft.rl), cell(ft.ul), cell(gold.rl), cell(gold.ul),
                           cell(ed.retain.rl), cell(ed.retain.ul), cell(ed.discard.rl),
                           cell(ed.discard.ul), cell(pass), cell(runtime)});
      if (!pass) ++unit.failed;
    }
  } catch (const LabError& e) {
    Row row{"sweep-nt", cell(layout.remaining_only), cell(layout.overlap),
            cell(layout.forgetting_only), cell(seed), "all"};
    for (int i = 0; i < 8; ++i) row.push_back(cell(kNaN));
    row.push_back(cell(false));
    row.push_back(cell(0.0));
    record_error(unit, std::move(row), fmt::format("seed {}: {}", seed, e.what()));
  }
  return unit;
}

// --------------------------------------------------------- sweep-overlap

UnitResult sweep_overlap_unit(const ExperimentConfig& cfg, Index d_lap,
                              std::uint64_t seed) {
  UnitResult unit;
  const FeatureLayout layout = cfg.overlap.layout_for(d_lap);
  const Index n_t = cfg.overlap.n_t;
  const TolerancePolicy& tol = cfg.tolerance;
  try {
    const auto start = Clock::now();
    const SyntheticScenario s = generate_scenario(
        cfg.scenario.n_remain, cfg.scenario.n_forget, layout, seed, cfg.scenario.dist);
    const Vector w_o = train_original(s);
    const LossReport gold = measure_losses(retrain_golden(s), s, ModelTag::kGolden);
    const FineTuneSet sub = fine_tune_subset(s, n_t);
    const EditPair ed = edited_losses(w_o, s, sub, n_t);
    bool pass = all_pass(gap_report(gold, predict_thm2(s), tol));
    double pred_rl = kNaN;
    double pred_ul = kNaN;
    if (remaining_block_spanned(s)) {
      const TheoremPrediction b = predict_thm3(s, EditOption::kOverlapDiscard, n_t);
      pred_rl = *b.rl_edit;
      pred_ul = *b.ul_edit;
      pass = pass && all_pass(gap_report(ed.discard, b, tol));
    } else {
      unit.skipped.push_back(fmt::format(
          "discard prediction unavailable for layout {} seed {}: rank(X_r) < d_r + d_lap",
          layout_label(layout), seed));
    }
    const double runtime = seconds_since(start);
    unit.rows.push_back({"sweep-overlap", cell(layout.remaining_only), cell(layout.overlap),
                         cell(layout.forgetting_only), cell(seed), cell(n_t),
                         cell(gold.rl), cell(gold.ul), cell(ed.retain.rl),
                         cell(ed.retain.ul), cell(ed.discard.rl), cell(ed.discard.ul),
                         cell(pred_rl), cell(pred_ul), cell(pass), cell(runtime)});
    if (!pass) ++unit.failed;
  } catch (const LabError& e) {
    Row row{"sweep-overlap", cell(layout.remaining_only), cell(layout.overlap),
            cell(layout.forgetting_only), cell(seed), cell(n_t)};
    for (int i = 0; i < 8; ++i) row.push_back(cell(kNaN));
    row.push_back(cell(false));
    row.push_back(cell(0.0));
    record_error(unit, std::move(row),
                 fmt::format("layout {} seed {}: {}", layout_label(layout), seed, e.what()));
  }
  return unit;
}

// ------------------------------------------------------------ classifier

Row metrics_row(std::string_view experiment, FtVariant variant, double alpha,
                std::string seed, const Metrics& m, const Metrics& golden, bool ok) {
  return {std::string(experiment), std::string(to_string(variant)), cell(alpha),
          std::move(seed), cell(m.ua), cell(m.ra), cell(m.ta), cell(golden.ua),
          cell(golden.ra), cell(golden.ta), cell(ok), cell(m.runtime_seconds)};
}

void run_classifier(const ExperimentConfig& cfg, unsigned threads, ResultTable& out) {
  const std::string_view name = to_string(cfg.experiment);
  const SweepTable sweep =
      alpha_sweep(cfg.classifier, cfg.variants, cfg.alphas, cfg.seeds, cfg.ft, threads);
  for (const SweepRow& r : sweep.rows) {
    out.rows.push_back(
        metrics_row(name, r.variant, r.alpha, cell(r.seed), r.metrics, r.golden, r.ok));
    if (!r.ok) {
      ++out.failed_rows;
      out.errors.push_back(fmt::format("{} alpha={} seed {}: {}", to_string(r.variant),
                                       format_real(r.alpha), r.seed, r.error));
    }
  }
  // Golden metrics do not depend on the variant, so their mean and std are
  // taken over the rows of each group.
  for (const SweepAggregate& a : sweep.aggregates) {
    std::vector<Metrics> golden;
    for (const SweepRow& r : sweep.rows) {
      if (r.variant == a.variant && r.alpha == a.alpha) golden.push_back(r.golden);
    }
    Metrics g_mean;
    Metrics g_std;
    const double n = static_cast<double>(golden.size());
    for (const Metrics& m : golden) {
      g_mean.ua += m.ua / n;
      g_mean.ra += m.ra / n;
      g_mean.ta += m.ta / n;
    }
    if (golden.size() > 1) {
      for (const Metrics& m : golden) {
        g_std.ua += (m.ua - g_mean.ua) * (m.ua - g_mean.ua) / (n - 1);
        g_std.ra += (m.ra - g_mean.ra) * (m.ra - g_mean.ra) / (n - 1);
        g_std.ta += (m.ta - g_mean.ta) * (m.ta - g_mean.ta) / (n - 1);
      }
      g_std.ua = std::sqrt(g_std.ua);
      g_std.ra = std::sqrt(g_std.ra);
      g_std.ta = std::sqrt(g_std.ta);
    }
    out.rows.push_back(metrics_row(name, a.variant, a.alpha, "mean", a.mean, g_mean, a.ok));
    out.rows.push_back(metrics_row(name, a.variant, a.alpha, "std", a.stddev, g_std, a.ok));
  }
}

void merge(std::vector<UnitResult>& units, ResultTable& out) {
  int stated_pass = 0, stated_fail = 0, expanded_pass = 0, expanded_fail = 0;
  json skipped = json::array();
  for (UnitResult& u : units) {
    for (Row& r : u.rows) out.rows.push_back(std::move(r));
    out.failed_rows += u.failed;
    for (auto& e : u.errors) out.errors.push_back(std::move(e));
    for (auto& s : u.skipped) skipped.push_back(std::move(s));
    stated_pass += u.stated_form_pass;
    stated_fail += u.stated_form_fail;
    expanded_pass += u.expanded_form_pass;
    expanded_fail += u.expanded_form_fail;
  }
  if (!skipped.empty()) out.notes["skipped"] = skipped;
  if (out.experiment != ExperimentKind::kVerifyTheorems) return;

  const bool stated_ok = stated_fail == 0 && stated_pass > 0;
  const bool expanded_ok = expanded_fail == 0 && expanded_pass > 0;
  const char* agreeing = stated_ok && expanded_ok ? "both"
                         : stated_ok              ? "stated"
                         : expanded_ok            ? "expanded"
                                                  : "neither";
  out.notes["golden_ul_forms"] = {
      {"stated", {{"pass", stated_pass}, {"fail", stated_fail}}},
      {"expanded", {{"pass", expanded_pass}, {"fail", expanded_fail}}},
      {"agreeing", agreeing}};
  if (!(stated_ok && expanded_ok)) {
    spdlog::warn("golden UL forms disagree with measurement: stated {}/{} expanded {}/{}",
                 stated_pass, stated_pass + stated_fail, expanded_pass,
                 expanded_pass + expanded_fail);
  }
}

std::string join(const Row& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}

int parse_threads() {
  const char* env = std::getenv("UNLEARN_LAB_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) {
    throw ConfigError(fmt::format("UNLEARN_LAB_THREADS must be an integer in [1, 1024], got '{}'", env));
  }
  return static_cast<int>(v);
}

ExperimentConfig load_config(const std::string& path, std::string_view experiment) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  if (!doc.contains("experiment")) {
    doc["experiment"] = std::string(experiment);
  } else if (!doc["experiment"].is_string() || doc["experiment"].get<std::string>() != experiment) {
    throw ConfigError(fmt::format("config experiment {} does not match command '{}'",
                                  doc["experiment"].dump(), experiment));
  }
  return parse_config(doc);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ConfigError("cannot write '" + path + "'");
}

}  // namespace

std::span<const std::string_view> csv_columns(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kVerifyTheorems:
      return kVerifyColumns;
    case ExperimentKind::kSweepNt:
      return kSweepNtColumns;
    case ExperimentKind::kSweepOverlap:
      return kSweepOverlapColumns;
    case ExperimentKind::kClassifierDemo:
    case ExperimentKind::kSweepAlpha:
      return kClassifierColumns;
  }
  return {};
}

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

ResultTable run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  validate(cfg);
  const auto start = Clock::now();
  ResultTable out;
  out.experiment = cfg.experiment;

  std::vector<std::function<UnitResult()>> jobs;
  switch (cfg.experiment) {
    case ExperimentKind::kVerifyTheorems:
      for (const FeatureLayout& l : cfg.layouts) {
        for (std::uint64_t seed : cfg.seeds) {
          jobs.emplace_back([&cfg, &l, seed] { return verify_unit(cfg, l, seed); });
        }
      }
      break;
    case ExperimentKind::kSweepNt:
      for (std::uint64_t seed : cfg.seeds) {
        jobs.emplace_back([&cfg, seed] { return sweep_nt_unit(cfg, seed); });
      }
      break;
    case ExperimentKind::kSweepOverlap:
      for (Index d_lap : cfg.overlap.d_lap_values) {
        for (std::uint64_t seed : cfg.seeds) {
          jobs.emplace_back([&cfg, d_lap, seed] { return sweep_overlap_unit(cfg, d_lap, seed); });
        }
      }
      break;
    case ExperimentKind::kClassifierDemo:
    case ExperimentKind::kSweepAlpha:
      run_classifier(cfg, threads, out);
      out.runtime_seconds = seconds_since(start);
      return out;
  }

  std::vector<UnitResult> units(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t i) { units[i] = jobs[i](); });
  merge(units, out);
  out.runtime_seconds = seconds_since(start);
  return out;
}

std::string render_csv(const ExperimentConfig& cfg, const ResultTable& table) {
  json echo = to_json(cfg);
  echo.erase("output_path");
  std::string csv = fmt::format("# unlearn-lab csv schema={} experiment={}\n# config={}\n",
                                kCsvSchemaVersion, to_string(table.experiment), echo.dump());
  const auto columns = csv_columns(table.experiment);
  csv += join(Row(columns.begin(), columns.end()));
  csv += '\n';
  for (const Row& r : table.rows) {
    csv += join(r);
    csv += '\n';
  }
  return csv;
}

std::string strip_last_column(std::string_view csv) {
  std::string out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t eol = csv.find('\n', pos);
    if (eol == std::string_view::npos) eol = csv.size();
    std::string_view line = csv.substr(pos, eol - pos);
    if (!line.starts_with('#')) {
      const std::size_t comma = line.rfind(',');
      if (comma != std::string_view::npos) line = line.substr(0, comma);
    }
    out += line;
    out += '\n';
    pos = eol + 1;
  }
  return out;
}

json summary_json(const ExperimentConfig& cfg, const ResultTable& table) {
  return {{"schema", kCsvSchemaVersion},
          {"experiment", std::string(to_string(table.experiment))},
          {"pass", table.pass()},
          {"rows", table.rows.size()},
          {"failed_rows", table.failed_rows},
          {"errors", table.errors},
          {"notes", table.notes},
          {"runtime_seconds", table.runtime_seconds},
          {"config", to_json(cfg)}};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form and classifier unlearning experiments", "unlearn-lab"};
  std::string experiment;
  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::string> seeds_text;
  std::optional<double> tolerance;
  app.add_option("experiment", experiment,
                 "verify-theorems | sweep-nt | sweep-overlap | classifier-demo | sweep-alpha")
      ->required();
  app.add_option("--config", config_path, "JSON configuration file")->required();
  app.add_option("--out", out_path, "CSV output path; the summary goes to <out>.summary.json");
  app.add_option("--seeds", seeds_text, "comma-separated seeds, replacing the config list");
  app.add_option("--tolerance", tolerance, "relative tolerance override (>= 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "unlearn-lab: " << e.what() << "\n";
    return kExitConfigError;
  }

  ExperimentConfig cfg;
  ResultTable table;
  try {
    experiment_kind_from_string(experiment);
    cfg = load_config(config_path, experiment);
    if (seeds_text) cfg.seeds = parse_seed_list(*seeds_text);
    if (tolerance) {
      if (!(*tolerance >= 0.0)) throw ConfigError("--tolerance must be >= 0");
      cfg.tolerance.rel = *tolerance;
      cfg.tolerance.abs_floor = std::min(cfg.tolerance.abs_floor, *tolerance);
    }
    if (out_path) cfg.output_path = *out_path;
    const int threads = parse_threads();
    table = run_experiment(cfg, static_cast<unsigned>(threads));

    const std::string csv = render_csv(cfg, table);
    const std::string summary = summary_json(cfg, table).dump(2) + "\n";
    if (cfg.output_path) {
      write_file(*cfg.output_path, csv);
      write_file(*cfg.output_path + ".summary.json", summary);
    } else {
      out << csv;
      err << summary;
    }
  } catch (const ConfigError& e) {
    err << "unlearn-lab: config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const LabError& e) {
    err << "unlearn-lab: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  for (const std::string& e : table.errors) err << "unlearn-lab: " << e << "\n";
  return table.pass() ? kExitPass : kExitNumericalFailure;
}

}  // namespace unlearn_lab
