// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data error.
#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "seed/errors.hpp"
#include "seed/fetch.hpp"
#include "seed/grader.hpp"
#include "seed/harness.hpp"
#include "seed/stats.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kData = 2;

std::string fixed(long double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", digits, v);
  return buf;
}

seed::GradeConfig config_or_default(const std::string& path) {
  return path.empty() ? seed::GradeConfig{} : seed::load_config(path);
}

int cmd_grade(const std::string& pred, const std::string& gt, const std::string& type, const std::string& config) {
  auto t = seed::parse_answer_type(type);
  if (!t) {
    std::cerr << "unknown --type '" << type << "' (expression, equation, numeric, tuple, interval)\n";
    return kUsage;
  }
  const seed::GradeConfig cfg = config_or_default(config);
  const seed::GradeResult r = seed::grade(pred, gt, *t, cfg);
  std::cout << "score: " << fixed(r.score, 2) << "\n";
  std::cout << "equivalent: " << (r.equivalent ? "true" : "false") << "\n";
  std::cout << "distance: " << seed::to_string(r.distance) << "\n";
  std::cout << "relative_distance: " << fixed(r.relative_distance, 4) << "\n";
  for (const auto& op : r.edit_script) {
    std::cout << "edit: " << seed::edit_kind_name(op.kind) << " " << op.path;
    if (op.kind == seed::EditKind::Relabel) std::cout << " " << op.before << " -> " << op.after;
    if (op.kind == seed::EditKind::Delete) std::cout << " " << op.before;
    if (op.kind == seed::EditKind::Insert) {
      std::cout << " " << op.after << " at " << op.position << " adopting " << op.adopt;
    }
    switch (seed::prediction_view(op.kind)) {
      case seed::EditKind::Insert: std::cout << "  (prediction has extra " << op.before << ")"; break;
      case seed::EditKind::Delete: std::cout << "  (prediction lacks " << op.after << ")"; break;
      case seed::EditKind::Relabel: break;
    }
    std::cout << "\n";
  }
  for (const auto& d : r.diagnostics) std::cout << "note: " << d << "\n";
  return 0;
}

int cmd_run(const std::string& dataset, const std::string& responses, const std::string& config,
            const std::string& out) {
  const seed::GradeConfig cfg = config_or_default(config);
  std::vector<std::string> issues;
  std::vector<seed::BenchmarkItem> items;
  try {
    items = seed::load_dataset(dataset, cfg, &issues);
  } catch (const seed::Error&) {
    for (const auto& i : issues) std::cerr << dataset << ": " << i << "\n";
    throw;
  }
  std::vector<std::string> warnings;
  const auto resp = seed::load_responses(responses, &warnings);
  const seed::RunReport report = seed::grade_run(items, resp, cfg, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  seed::write_run(out, report, cfg);
  std::cout << seed::report_text(report);
  return 0;
}

int cmd_report(const std::string& run, const std::string& by) {
  auto g = seed::parse_group_by(by);
  if (!g) {
    std::cerr << "unknown --by '" << by << "' (topic, answer_type, model)\n";
    return kUsage;
  }
  const seed::RunReport report = seed::read_run(run);
  if (report.records.empty()) throw seed::DegenerateInput("run has no records");
  std::vector<std::string> empty;
  const auto rows = seed::aggregate(report, *g, &empty);
  std::cout << seed::render_table(rows, seed::overall(report), "by " + by);
  for (const auto& e : empty) std::cout << "empty group: " << e << "\n";
  return 0;
}

int cmd_correlate(const std::string& a, const std::string& b) {
  const auto x = seed::parse_scores(seed::read_file(a));
  const auto y = seed::parse_scores(seed::read_file(b));
  std::cout << "spearman: " << fixed(seed::spearman(x, y), 6) << "\n";
  return 0;
}

int cmd_fetch(const std::string& dataset, const std::string& model, const std::string& endpoint,
              const std::string& cache, const std::string& out) {
  std::vector<std::string> issues;
  const auto items = seed::load_dataset(dataset, {}, &issues);
  seed::FetchConfig fc;
  fc.endpoint = endpoint;
  fc.model = model;
  if (!cache.empty()) fc.cache_dir = cache;
  const auto responses = seed::fetch_responses(fc, items, seed::make_http_transport(), seed::real_sleeper());
  std::ofstream file;
  if (!out.empty()) {
    file.open(out, std::ios::binary | std::ios::trunc);
    if (!file) throw seed::SchemaError(0, out, "cannot write file");
  }
  std::ostream& sink = out.empty() ? std::cout : file;
  for (const auto& r : responses) {
    sink << nlohmann::json{{"id", r.id}, {"model", r.model}, {"response", r.response}}.dump() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grade LaTeX answers with tree edit distance over canonical expression trees"};
  app.require_subcommand(1);

  std::string pred, gt, type, config, dataset, responses, out, run, by, a, b, model, endpoint, cache;

  auto* grade = app.add_subcommand("grade", "Grade one prediction against one ground truth");
  grade->add_option("--pred", pred, "Prediction text (response or LaTeX)")->required();
  grade->add_option("--gt", gt, "Ground-truth LaTeX")->required();
  grade->add_option("--type", type, "expression | equation | numeric | tuple | interval")->required();
  grade->add_option("--config", config, "key = value config file");

  auto* runc = app.add_subcommand("run", "Grade a response file against a dataset");
  runc->add_option("--dataset", dataset, "Dataset JSONL")->required();
  runc->add_option("--responses", responses, "Responses JSONL")->required();
  runc->add_option("--config", config, "key = value config file");
  runc->add_option("--out", out, "Output directory")->required();

  auto* report = app.add_subcommand("report", "Aggregate a finished run");
  report->add_option("--run", run, "Run directory")->required();
  report->add_option("--by", by, "topic | answer_type | model")->required();

  auto* corr = app.add_subcommand("correlate", "Spearman correlation of two score lists");
  corr->add_option("--a", a, "Scores file")->required();
  corr->add_option("--b", b, "Scores file")->required();

  auto* fetch = app.add_subcommand("fetch", "Query an OpenAI-compatible endpoint (key in SEED_API_KEY)");
  fetch->add_option("--dataset", dataset, "Dataset JSONL")->required();
  fetch->add_option("--model", model, "Model name")->required();
  fetch->add_option("--endpoint", endpoint, "Base URL, e.g. https://host/v1")->required();
  fetch->add_option("--cache", cache, "Cache directory (default seed_cache)");
  fetch->add_option("--out", out, "Write responses JSONL here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*grade) return cmd_grade(pred, gt, type, config);
    if (*runc) return cmd_run(dataset, responses, config, out);
    if (*report) return cmd_report(run, by);
    if (*corr) return cmd_correlate(a, b);
    if (*fetch) return cmd_fetch(dataset, model, endpoint, cache, out);
  } catch (const seed::Error& e) {
    std::cerr << e.code() << ": " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
