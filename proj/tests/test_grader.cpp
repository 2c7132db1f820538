#include <algorithm>
#include <string>

#include "doctest.h"
#include "seed/errors.hpp"
#include "seed/grader.hpp"
#include "support/fuzz.hpp"

using namespace seed;

namespace {

bool has_diag(const GradeResult& r, std::string_view prefix) {
  return std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                     [&](const std::string& d) { return d.rfind(prefix, 0) == 0; });
}

constexpr const char* kGt51 = "\\frac{8\\pi M}{\\mu^2} \\left(1 - \\frac{4m^2}{M^2}\\right)^{-1/2}";

}  // namespace

TEST_SUITE("grader") {
  TEST_CASE("expression anchors") {
    CHECK(grade("\\boxed{\\frac{8\\pi M^{2}}{\\mu^{2}\\sqrt{M^{2}-4m^{2}}}}", kGt51, AnswerType::Expression).score == 100);
    const GradeResult r32 = grade("\\frac{32\\pi M}{\\mu^2} (1 - \\frac{4m^2}{M^2})^{-1/2}", kGt51, AnswerType::Expression);
    CHECK(r32.score > 0);
    CHECK(r32.score < 100);
    CHECK_FALSE(r32.equivalent);
    CHECK(grade("\\frac{m}{2\\pi\\hbar^2}", "\\frac{m}{\\pi \\hbar^2}", AnswerType::Expression).score ==
          doctest::Approx(87.5));
  }

  TEST_CASE("equations") {
    CHECK(grade("E = mc^3", "E = mc^2", AnswerType::Equation).score == doctest::Approx(90));
    CHECK(grade("2E = 2mc^2", "E = mc^2", AnswerType::Equation).score == 100);
    CHECK(grade("E - mc^2 = 0", "E = mc^2", AnswerType::Equation).score == 100);
    const GradeResult lt = grade("x > y", "x < y", AnswerType::Equation);
    CHECK(lt.score < 100);
    CHECK_FALSE(lt.equivalent);
    const GradeResult bare = grade("mc^2", "E = mc^2", AnswerType::Equation);
    CHECK(bare.score == 0);
    CHECK(has_diag(bare, "TypeMismatch"));
  }

  TEST_CASE("tuples") {
    const GradeResult r = grade("(1, 2, 4)", "(1, 2, 3)", AnswerType::Tuple);
    CHECK(r.score == doctest::Approx(66.6667).epsilon(1e-4));
    CHECK(grade("(1, 2, 3)", "(1, 2, 3)", AnswerType::Tuple).score == 100);
    // A missing component scores 0 in its slot.
    CHECK(grade("(1, 2)", "(1, 2, 3)", AnswerType::Tuple).score == doctest::Approx(66.6667).epsilon(1e-4));
    // A bare expression against a tuple is retried as a one-component tuple.
    const GradeResult single = grade("x", "(x, y)", AnswerType::Tuple);
    CHECK(single.score == doctest::Approx(50));
  }

  TEST_CASE("intervals") {
    const GradeResult r = grade("(0, L)", "[0, L]", AnswerType::Interval);
    CHECK(r.score == doctest::Approx(75));
    CHECK(has_diag(r, "openness"));
    CHECK(grade("[0, L]", "[0, L]", AnswerType::Interval).score == 100);
    CHECK(grade("0 \\le x \\le L", "[0, L]", AnswerType::Interval).score == 100);
    GradeConfig cfg;
    cfg.openness_penalty = 0;
    CHECK(grade("(0, L)", "[0, L]", AnswerType::Interval, cfg).score == 100);
  }

  TEST_CASE("numeric") {
    CHECK(grade("3 \\times 10^{8} m/s", "3e8 m/s", AnswerType::Numeric).score == 100);
    CHECK(grade("1 eV", "1.602176634 \\times 10^{-19} J", AnswerType::Numeric).score == 100);
    const GradeResult dm = grade("1 m", "1 s", AnswerType::Numeric);
    CHECK(dm.score == 0);
    CHECK(has_diag(dm, "DimensionMismatch"));
    const GradeResult off = grade("1.5 m", "1 m", AnswerType::Numeric);
    CHECK(off.score == 0);
    CHECK(has_diag(off, "MagnitudeError"));
    GradeConfig cfg;
    cfg.numeric_partial_credit = true;
    const GradeResult partial = grade("1.02 m", "1 m", AnswerType::Numeric, cfg);
    CHECK(partial.score > 0);
    CHECK(partial.score < 100);
    CHECK(grade("\\frac{1}{2}", "0.5", AnswerType::Numeric).score == 100);
  }

  TEST_CASE("prediction failures score zero with the error name") {
    const GradeResult empty = grade("   ", "x", AnswerType::Expression);
    CHECK(empty.score == 0);
    CHECK(empty.relative_distance == 1);
    CHECK(has_diag(empty, "EmptyResponse"));
    CHECK(has_diag(grade("\\frac{x}", "x", AnswerType::Expression), "Unbalanceable"));
    CHECK(has_diag(grade("x +", "x", AnswerType::Expression), "ParseError"));
    CHECK(has_diag(grade("\\weird{x}", "x", AnswerType::Expression), "UnknownCommand"));
    CHECK(has_diag(grade("x + y", "[0, 1]", AnswerType::Interval), "TypeMismatch"));
  }

  TEST_CASE("ground truth failures escape") {
    CHECK_THROWS_AS(prepare_ground_truth("x +", AnswerType::Expression), GroundTruthInvalid);
    try {
      (void)prepare_ground_truth("x + )", AnswerType::Expression);
      FAIL("expected GroundTruthInvalid");
    } catch (const GroundTruthInvalid& e) {
      CHECK(std::string(e.what()).size() > 0);
    }
  }

  TEST_CASE("perfect match is total and scores stay in range") {
    testing::TreeFuzzer fz(404);
    for (int i = 0; i < 400; ++i) {
      const std::string gt = to_latex(fz.tree(3));
      const std::string pred = to_latex(fz.tree(3));
      INFO(gt << " | " << pred);
      const GradeResult self = grade(gt, gt, AnswerType::Expression);
      CHECK(self.score == 100);
      const GradeResult r = grade(pred, gt, AnswerType::Expression);
      CHECK(r.score >= 0);
      CHECK(r.score <= 100);
      CHECK((r.relative_distance == 0) == (r.score == 100));
    }
  }

  TEST_CASE("scores degrade monotonically with added noise") {
    const std::string gt = "\\frac{m}{\\pi \\hbar^2}";
    const char* const preds[] = {"\\frac{m}{\\pi \\hbar^2}", "\\frac{m}{2 \\pi \\hbar^2}",
                                 "\\frac{m^2}{2 \\pi \\hbar^2}", "\\frac{m^2}{2 \\pi \\hbar^3 k}"};
    long double last = 101;
    for (const char* p : preds) {
      const long double s = grade(p, gt, AnswerType::Expression).score;
      CHECK(s < last);
      last = s;
    }
  }

  TEST_CASE("configuration does not leak between calls") {
    GradeConfig loose;
    loose.rtol = 0.6L;
    CHECK(grade("1.5 m", "1 m", AnswerType::Numeric, loose).score == 100);
    CHECK(grade("1.5 m", "1 m", AnswerType::Numeric).score == 0);
  }
}
