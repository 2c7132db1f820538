#include "doctest.h"
#include "seed/errors.hpp"
#include "seed/preprocess.hpp"

using namespace seed;

TEST_SUITE("preprocess") {
  TEST_CASE("last boxed group wins") {
    CHECK(extract_final_answer(
              "...thus $$\\boxed{\\tau = \\frac{8\\pi M^{2}}{\\mu^{2}\\sqrt{M^{2}-4m^{2}}}}$$") ==
          "\\tau = \\frac{8\\pi M^{2}}{\\mu^{2}\\sqrt{M^{2}-4m^{2}}}");
    CHECK(extract_final_answer("\\boxed{x}") == "x");
    CHECK(extract_final_answer("first \\boxed{a} then \\boxed{b}") == "b");
    CHECK(extract_final_answer("\\boxed{\\frac{a}{b}}") == "\\frac{a}{b}");
  }

  TEST_CASE("fallback order: display, inline, last line") {
    // Hand trace: no boxed group, no display block; the last inline segment
    // is "$a-b$" on the second line.
    CHECK(extract_final_answer("Answer: $a+b$\nFinal Answer: $a-b$") == "a-b");
    CHECK(extract_final_answer("text $x$ and $$y+1$$ then") == "y+1");
    CHECK(extract_final_answer("see \\[ z^2 \\] ok") == "z^2");
    CHECK(extract_final_answer("line one\nFinal Answer: 42.\n\n") == "42");
  }

  TEST_CASE("empty responses") {
    CHECK_THROWS_AS(extract_final_answer(""), EmptyResponse);
    CHECK_THROWS_AS(extract_final_answer("   \n\t\n"), EmptyResponse);
    CHECK_THROWS_AS(extract_final_answer("\\boxed{}"), EmptyResponse);
  }

  TEST_CASE("extraction never returns boxed text") {
    for (const char* s : {"\\boxed{\\boxed{x}}", "a \\boxed{b", "$\\boxed{1}$ and \\fbox{2}"}) {
      CHECK(extract_final_answer(s).find("\\boxed") == std::string::npos);
    }
  }

  TEST_CASE("wrappers and left/right") {
    CHECK(canonicalize_latex("\\left(1-\\frac{4m^{2}}{M^{2}}\\right)^{-1/2}").text ==
          "(1-\\frac{4m^{2}}{M^{2}})^{-1/2}");
    CHECK(canonicalize_latex("x \\le y").text == "x \\le y");
    CHECK(canonicalize_latex("\\left[ x \\right.").text.find("\\left") == std::string::npos);
  }

  TEST_CASE("unicode normalization") {
    CHECK(canonicalize_latex("\xE2\x88\x92x").text == "-x");               // U+2212
    CHECK(canonicalize_latex("2\xC3\x97" "3").text == "2\\times 3");      // U+00D7
    CHECK(canonicalize_latex("\xCE\xB1+\xCE\xB2").text == "\\alpha +\\beta");
    CHECK(canonicalize_latex("\xC4\xA7").text == "\\hbar");
    CHECK(canonicalize_latex("x\xC2\xB2").text == "x^{2}");
  }

  TEST_CASE("font unwrapping keeps units and single symbols") {
    CHECK(canonicalize_latex("\\mathrm{d}x").text == "d x");
    CHECK(canonicalize_latex("5 \\text{ eV}").text == "5 eV");
    CHECK(canonicalize_latex("\\text{lifetime}=x").text == "x");
    CHECK(canonicalize_latex("\\mathbb{R}").text == "R");
  }

  TEST_CASE("aliases") {
    CHECK(canonicalize_latex("\\dfrac{a}{b}").text == "\\frac{a}{b}");
    CHECK(canonicalize_latex("\\operatorname{sin} x").text == "\\sin x");
    CHECK(canonicalize_latex("a \\leq b").text == "a \\le b");
  }

  TEST_CASE("balancing") {
    auto c = canonicalize_latex("(a+b");
    CHECK(c.text == "(a+b)");
    CHECK(std::find(c.notes.begin(), c.notes.end(), "balance") != c.notes.end());
    CHECK(canonicalize_latex("a+b)").text == "(a+b)");
    CHECK_THROWS_AS(canonicalize_latex("((((x"), Unbalanceable);
    PreprocessConfig loose;
    loose.balance_limit = 5;
    CHECK(canonicalize_latex("((((x", loose).text == "((((x))))");
    CHECK_THROWS_AS(canonicalize_latex("\\frac{a}"), Unbalanceable);
  }

  TEST_CASE("idempotence on samples") {
    for (const char* s : {"x", "\\left(1-\\frac{4m^{2}}{M^{2}}\\right)^{-1/2}", "\\text{Answer: } 3\\,\\mathrm{m/s}",
                          "\xE2\x88\x92\xCE\xB1 \xC3\x97 \xCE\xB2", "(a+b", "Final Answer: $x^2$.",
                          "\\boxed{\\dfrac{E^{2}\\left(\\varepsilon - 1\\right)}{8\\pi\\rho g}}"}) {
      const std::string once = canonicalize_latex(s).text;
      CHECK(canonicalize_latex(once).text == once);
      CHECK(is_balanced(once));
    }
  }
}
