// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails. Tolerances and sizes are pinned below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seed/canon.hpp"
#include "seed/errors.hpp"
#include "seed/grader.hpp"
#include "seed/harness.hpp"
#include "seed/parser.hpp"
#include "seed/stats.hpp"
#include "seed/ted.hpp"
#include "support/fuzz.hpp"
#include "support/properties.hpp"
#include "support/ted_oracle.hpp"

using namespace seed;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kAnchorSeconds = 1.0;
constexpr double kOracleSeconds = 60.0;
constexpr std::size_t kOracleMinPairs = 10000;
constexpr int kOracleMaxNodes = 6;
constexpr long double kZeroScoreMax = 5.0L;
constexpr long double kTupleExpected = 200.0L / 3.0L;
constexpr long double kIntervalExpected = 75.0L;
constexpr long double kTypedTolerance = 0.01L;
constexpr long double kSpearmanTolerance = 1e-9L;
constexpr int kFuzzTrees = 100000;
constexpr int kFuzzDepth = 4;
constexpr double kSuiteSeconds = 30.0;

constexpr const char* kGt51 = "\\frac{8\\pi M}{\\mu^2} \\left(1-\\frac{4m^2}{M^2}\\right)^{-1/2}";
constexpr const char* kGt228 = "\\frac{m}{\\pi\\hbar^2}";

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail << std::endl;
}

std::string fmt(long double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << static_cast<double>(v);
  return s.str();
}

Outcome timed_grade(const char* pred, const char* gt, AnswerType t, long double& score) {
  const auto t0 = Clock::now();
  score = grade(pred, gt, t).score;
  return {seconds_since(t0) < kAnchorSeconds, fmt(seconds_since(t0)) + " s"};
}

Outcome anchors_exact() {
  long double s1 = 0, s2 = 0, s3 = 0;
  const Outcome a = timed_grade("\\frac{8\\pi M^{2}}{\\mu^{2}\\sqrt{M^{2}-4m^{2}}}", kGt51, AnswerType::Expression, s1);
  const Outcome b = timed_grade("\\frac{(\\varepsilon-1)E^2}{8\\pi\\rho g}", "\\frac{E^2 (\\varepsilon-1)}{8\\pi g\\rho}",
                                AnswerType::Expression, s2);
  const Outcome c = timed_grade("\\frac{E^2 (\\varepsilon-1)}{8\\pi g\\rho}", "\\frac{(\\varepsilon-1)E^2}{8\\pi\\rho g}",
                                AnswerType::Expression, s3);
  return {s1 == 100 && s2 == 100 && s3 == 100 && a.pass && b.pass && c.pass,
          "51: " + fmt(s1, 2) + " (" + a.detail + "), 116: " + fmt(s2, 2) + "/" + fmt(s3, 2) + " (" + b.detail + ", " +
              c.detail + ")"};
}

Outcome anchors_partial() {
  const long double s32 = grade("\\frac{32\\pi M^{2}}{\\mu^{2}\\sqrt{M^{2}-4m^{2}}}", kGt51, AnswerType::Expression).score;
  const long double s16 = grade("\\frac{16\\pi M}{\\mu^2\\sqrt{1-\\frac{4m^2}{M^2}}}", kGt51, AnswerType::Expression).score;
  return {s32 > 0 && s32 < 100 && s16 > 0 && s16 < 100, "32pi: " + fmt(s32, 2) + ", 16pi: " + fmt(s16, 2)};
}

Outcome anchor_zero() {
  const long double s = grade("g(E) \\Delta E", kGt228, AnswerType::Expression).score;
  return {s <= kZeroScoreMax, "score " + fmt(s, 2) + " (max " + fmt(kZeroScoreMax, 0) + ")"};
}

bool mentions_two(const std::string& label) { return label.find('2') != std::string::npos; }

Outcome anchor_localization() {
  const GradeResult r = grade("\\frac{m}{2\\pi\\hbar^2}", kGt228, AnswerType::Expression);
  // Counted from the prediction's side: a factor it added is an insertion.
  int hits = 0;
  std::string ops;
  for (const EditOp& op : r.edit_script) {
    const EditKind k = prediction_view(op.kind);
    ops += std::string(ops.empty() ? "" : "; ") + std::string(edit_kind_name(k)) + " " +
           (op.kind == EditKind::Insert ? op.after : op.before);
    if (k == EditKind::Insert && mentions_two(op.before)) ++hits;
    if (k == EditKind::Relabel && (mentions_two(op.before) || mentions_two(op.after))) ++hits;
  }
  return {r.score > 0 && r.score < 100 && hits == 1,
          "score " + fmt(r.score, 2) + ", ops in prediction view [" + ops + "], literal-2 ops " + std::to_string(hits)};
}

Outcome oracle() {
  const auto t0 = Clock::now();
  const auto trees = testing::enumerate_trees(kOracleMaxNodes);
  std::mt19937_64 rng(0x0dd5);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  // Every tree against a random partner, plus all pairs among small trees.
  for (std::size_t i = 0; i < trees.size(); ++i) pairs.emplace_back(i, rng() % trees.size());
  std::size_t small = 0;
  while (small < trees.size() && node_count(trees[small]) <= 3) ++small;
  for (std::size_t i = 0; i < small; ++i)
    for (std::size_t j = 0; j < small; ++j) pairs.emplace_back(i, j);
  std::size_t mismatches = 0;
  for (auto [i, j] : pairs) {
    const auto fast = tree_edit_distance(trees[i], trees[j]).distance;
    if (fast != Rational(testing::brute_force_ted(trees[i], trees[j]))) ++mismatches;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && pairs.size() >= kOracleMinPairs && secs < kOracleSeconds,
          std::to_string(trees.size()) + " trees, " + std::to_string(pairs.size()) + " pairs, " +
              std::to_string(mismatches) + " mismatches, " + fmt(secs, 2) + " s"};
}

const std::vector<std::pair<const char*, const char*>> kEquivalent = {
    {"x + y", "y + x"},
    {"x y", "y x"},
    {"(x+1)^2", "x^2 + 2x + 1"},
    {"(x-y)(x+y)", "x^2 - y^2"},
    {"\\frac{a}{b}", "a b^{-1}"},
    {"\\frac{1}{\\sqrt{x}}", "x^{-1/2}"},
    {"\\sqrt{x^2}", "x"},
    {"\\sqrt{4x}", "2\\sqrt{x}"},
    {"\\frac{x^2 - 1}{x - 1}", "x + 1"},
    {"\\frac{2}{4}", "\\frac{1}{2}"},
    {"0.5 x", "\\frac{x}{2}"},
    {"\\frac{a}{b} + \\frac{c}{d}", "\\frac{ad + bc}{bd}"},
    {"e^{x} e^{y}", "e^{x+y}"},
    {"\\exp(x)", "e^x"},
    {"\\ln(x y)", "\\ln x + \\ln y"},
    {"\\ln(x^3)", "3 \\ln x"},
    {"\\sin^2 x + \\cos^2 x", "1"},
    {"2\\sin x \\cos x", "\\sin(2x)"},
    {"\\tan x", "\\frac{\\sin x}{\\cos x}"},
    {"\\cosh^2 x - \\sinh^2 x", "1"},
    {"\\frac{8\\pi M}{\\mu^2}(1-\\frac{4m^2}{M^2})^{-1/2}", "\\frac{8\\pi M^2}{\\mu^2\\sqrt{M^2-4m^2}}"},
    {"\\frac{(\\varepsilon-1)E^2}{8\\pi\\rho g}", "\\frac{E^2(\\varepsilon-1)}{8\\pi\\rho g}"},
    {"\\frac{\\hbar^2 k^2}{2m}", "\\frac{1}{2} \\hbar^2 k^2 m^{-1}"},
    {"\\frac{m}{\\pi\\hbar^2}", "\\frac{2m}{2\\pi\\hbar^2}"},
    {"x^a x^b", "x^{a+b}"},
    {"(x^2)^3", "x^6"},
    {"(x y)^2", "x^2 y^2"},
    {"\\frac{1}{\\frac{1}{x}}", "x"},
    {"\\frac{x}{y z}", "\\frac{x/y}{z}"},
    {"a(b + c)", "ab + ac"},
    {"(a + b)^3", "a^3 + 3a^2 b + 3 a b^2 + b^3"},
    {"\\sqrt{\\frac{k}{m}}", "\\frac{\\sqrt{k}}{\\sqrt{m}}"},
    {"2^{10}", "1024"},
    {"\\frac{3}{4} + \\frac{1}{4}", "1"},
    {"|{-x}|", "x"},
    {"\\cos(\\pi)", "-1"},
    {"x - (y - z)", "x - y + z"},
    {"-(-x)", "x"},
    {"\\frac{-x}{-y}", "\\frac{x}{y}"},
    {"\\frac{1}{2}\\cdot\\frac{2}{3}", "\\frac{1}{3}"},
    {"x^{1/2} x^{1/3}", "x^{5/6}"},
    {"E = mc^2", "E - mc^2 = 0"},
    {"2E = 2mc^2", "E = mc^2"},
    {"x < y", "y > x"},
    {"x \\le y", "-x \\ge -y"},
    {"2a \\le 2b", "a \\le b"},
    {"a + b = c", "c = b + a"},
    {"x^2 = y", "3x^2 = 3y"},
    {"\\frac{x}{2} > 1", "x > 2"},
    {"f(x) + f(x)", "2 f(x)"},
};

const std::vector<std::pair<const char*, const char*>> kInequivalent = {
    {"x + y", "x - y"},
    {"x y", "x + y"},
    {"(x+1)^2", "x^2 + 1"},
    {"x^2 - y^2", "(x-y)^2"},
    {"\\frac{a}{b}", "\\frac{b}{a}"},
    {"\\frac{1}{\\sqrt{x}}", "\\sqrt{x}"},
    {"x^2", "x^3"},
    {"2x", "3x"},
    {"-x", "x"},
    {"\\frac{1}{2}", "\\frac{1}{3}"},
    {"e^{x} e^{y}", "e^{xy}"},
    {"\\ln(x + y)", "\\ln x + \\ln y"},
    {"\\sin x", "\\cos x"},
    {"\\sin(2x)", "2\\sin x"},
    {"\\tan x", "\\frac{\\cos x}{\\sin x}"},
    {"\\frac{8\\pi M}{\\mu^2}(1-\\frac{4m^2}{M^2})^{-1/2}", "\\frac{32\\pi M^2}{\\mu^2\\sqrt{M^2-4m^2}}"},
    {"\\frac{8\\pi M}{\\mu^2}(1-\\frac{4m^2}{M^2})^{-1/2}", "\\frac{16\\pi M}{\\mu^2\\sqrt{1-\\frac{4m^2}{M^2}}}"},
    {"\\frac{m}{\\pi\\hbar^2}", "\\frac{m}{2\\pi\\hbar^2}"},
    {"\\frac{m}{\\pi\\hbar^2}", "g(E)\\Delta E"},
    {"\\frac{(\\varepsilon-1)E^2}{8\\pi\\rho g}", "\\frac{(\\varepsilon+1)E^2}{8\\pi\\rho g}"},
    {"\\frac{\\hbar^2 k^2}{2m}", "\\frac{\\hbar k^2}{2m}"},
    {"x^a x^b", "x^{ab}"},
    {"(x^2)^3", "x^5"},
    {"(x y)^2", "x y^2"},
    {"a(b + c)", "ab + c"},
    {"(a + b)^3", "a^3 + b^3"},
    {"\\sqrt{x + y}", "\\sqrt{x} + \\sqrt{y}"},
    {"2^{10}", "1000"},
    {"\\pi", "3.14159"},
    {"e", "2.71828"},
    {"x - (y - z)", "x - y - z"},
    {"\\frac{x}{y z}", "\\frac{x z}{y}"},
    {"x^{1/2}", "x^{1/3}"},
    {"x + 1", "x + 1.001"},
    {"f(x)", "g(x)"},
    {"f(x)", "f(y)"},
    {"\\sin(x)", "\\sin(-x)"},
    {"\\cosh x", "\\sinh x"},
    {"\\frac{k_B T}{\\hbar}", "\\frac{k_B T}{h}"},
    {"\\Delta_0", "\\Delta_1"},
    {"E = mc^2", "E = mc^3"},
    {"E = mc^2", "E = 2mc^2"},
    {"x < y", "x > y"},
    {"x < y", "x \\le y"},
    {"x = y", "x < y"},
    {"x \\le y", "x \\ge y"},
    {"a + b = c", "a - b = c"},
    {"x^2 = y", "x = y^2"},
    {"\\frac{x}{2} > 1", "x > 1"},
    {"x^2 + y^2", "(x + y)^2"},
};

Outcome equivalence_corpus() {
  EquivConfig cfg;  // default seed
  int ok_eq = 0, ok_neq = 0;
  std::string misses;
  for (auto [a, b] : kEquivalent) {
    if (equivalent(parse_latex(a), parse_latex(b), cfg)) ++ok_eq;
    else misses += std::string(" [") + a + " ~ " + b + "]";
  }
  for (auto [a, b] : kInequivalent) {
    if (!equivalent(parse_latex(a), parse_latex(b), cfg)) ++ok_neq;
    else misses += std::string(" [") + a + " !~ " + b + "]";
  }
  const bool sized = kEquivalent.size() == 50 && kInequivalent.size() == 50;
  return {sized && ok_eq == 50 && ok_neq == 50,
          std::to_string(ok_eq) + "/" + std::to_string(kEquivalent.size()) + " equivalent, " + std::to_string(ok_neq) +
              "/" + std::to_string(kInequivalent.size()) + " inequivalent" + misses};
}

Outcome fuzz_properties() {
  testing::TreeFuzzer fz(0xfacade);
  std::mt19937_64 rng(0xbeef);
  int idem = 0, homo = 0, skipped = 0;
  for (int i = 0; i < kFuzzTrees; ++i) {
    const Node t = fz.tree(kFuzzDepth);
    if (!testing::idempotent(t)) ++idem;
    switch (testing::homomorphic(t, rng)) {
      case testing::Homomorphism::Violated: ++homo; break;
      case testing::Homomorphism::Skipped: ++skipped; break;
      case testing::Homomorphism::Holds: break;
    }
  }
  return {idem == 0 && homo == 0,
          std::to_string(kFuzzTrees) + " trees, idempotence violations " + std::to_string(idem) +
              ", homomorphism violations " + std::to_string(homo) + " (" + std::to_string(skipped) +
              " singular samples skipped)"};
}

Outcome numeric() {
  const GradeResult c = grade("3.0e8 m/s", "299792458 m/s", AnswerType::Numeric);
  const GradeResult ev = grade("1 eV", "1.602e\u221219 J", AnswerType::Numeric);
  const GradeResult dm = grade("1 m", "1 s", AnswerType::Numeric);
  const GradeResult dm2 = grade("1 eV", "1 kg", AnswerType::Numeric);
  auto flagged = [](const GradeResult& r) {
    for (const auto& d : r.diagnostics)
      if (d.rfind("DimensionMismatch", 0) == 0) return r.score == 0;
    return false;
  };
  return {c.score == 100 && ev.score == 100 && flagged(dm) && flagged(dm2),
          "c: " + fmt(c.score, 2) + ", eV: " + fmt(ev.score, 2) + ", m vs s: " + fmt(dm.score, 2) +
              ", eV vs kg: " + fmt(dm2.score, 2)};
}

Outcome typed() {
  const long double t = grade("(1, 2, 4)", "(1, 2, 3)", AnswerType::Tuple).score;
  const long double i = grade("(0, L)", "[0, L]", AnswerType::Interval).score;
  return {std::fabs(t - kTupleExpected) <= kTypedTolerance && std::fabs(i - kIntervalExpected) <= kTypedTolerance,
          "tuple " + fmt(t) + ", interval " + fmt(i)};
}

Outcome correlation() {
  const long double same = spearman({1, 2, 3, 4, 5}, {1, 2, 3, 4, 5});
  const long double rev = spearman({1, 2, 3, 4, 5}, {5, 4, 3, 2, 1});
  const long double hand = spearman({1, 2, 3, 4}, {1, 3, 2, 4});
  return {std::fabs(same - 1) <= kSpearmanTolerance && std::fabs(rev + 1) <= kSpearmanTolerance &&
              std::fabs(hand - 0.8L) <= kSpearmanTolerance,
          fmt(same, 12) + ", " + fmt(rev, 12) + ", " + fmt(hand, 12)};
}

Outcome determinism(const std::string& suite, double own_seconds) {
  const std::string dir = std::string(SEED_DATA_DIR) + "/mini_corpus/";
  const auto items = load_dataset(dir + "dataset.jsonl");
  const auto rs = load_responses(dir + "responses.jsonl");
  const RunReport a = grade_run(items, rs), b = grade_run(items, rs);
  const bool same = records_jsonl(a) == records_jsonl(b) && report_text(a) == report_text(b);
  std::string timing = "suite not timed";
  bool fast = true;
  if (!suite.empty()) {
    const auto t0 = Clock::now();
    const int rc = std::system((suite + " > /dev/null 2>&1").c_str());
    const double secs = seconds_since(t0) + own_seconds;
    fast = rc == 0 && secs < kSuiteSeconds;
    timing = "unit suite exit " + std::to_string(rc) + ", suite without oracle " + fmt(secs, 2) + " s";
  }
  return {items.size() == 12 && same && fast,
          std::to_string(items.size()) + " items, " + std::to_string(a.records.size()) + " records, reports " +
              (same ? "identical" : "differ") + ", " + timing};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string suite;
  bool skip_oracle = false;
  app.add_option("--suite", suite, "unit test binary, timed as part of the offline suite");
  app.add_flag("--skip-oracle", skip_oracle, "omit the exhaustive oracle comparison");
  CLI11_PARSE(app, argc, argv);

  const auto t0 = Clock::now();
  double oracle_seconds = 0;
  report(1, "reference anchors score 100", anchors_exact);
  report(2, "coefficient variants get partial credit", anchors_partial);
  report(3, "unrelated answer scores near zero", anchor_zero);
  report(4, "near miss is localized to the factor 2", anchor_localization);
  if (!skip_oracle) {
    const auto o0 = Clock::now();
    report(5, "Zhang-Shasha agrees with exhaustive search", oracle);
    oracle_seconds = seconds_since(o0);
  }
  report(6, "equivalence corpus", equivalence_corpus);
  report(7, "canonicalization properties", fuzz_properties);
  report(8, "numeric grading with units", numeric);
  report(9, "tuple and interval scores", typed);
  report(10, "spearman", correlation);
  const double own = seconds_since(t0) - oracle_seconds;
  report(11, "deterministic reports and offline runtime", [&] { return determinism(suite, own); });
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " failing" << std::endl;
  return failures ? 1 : 0;
}
