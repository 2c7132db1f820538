#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace seed {

struct CleanLatex {
  std::string text;
  std::vector<std::string> notes;  // rule identifiers, in application order, deduplicated
};

struct PreprocessConfig {
  std::size_t balance_limit = 3;
  // Matched case-insensitively at the start of the answer, optionally
  // followed by ':' or '='.
  std::vector<std::string> boilerplate = default_boilerplate();

  static std::vector<std::string> default_boilerplate();
};

// Last \boxed{...} group, else last display block, else last inline math
// segment, else last non-empty line; leading labels removed.
// Throws EmptyResponse when nothing remains.
std::string extract_final_answer(std::string_view response, const PreprocessConfig& cfg = {});

// Throws Unbalanceable when more than cfg.balance_limit brackets would have
// to be inserted, or when a \frac lacks an argument.
CleanLatex canonicalize_latex(std::string_view raw, const PreprocessConfig& cfg = {});

// (), [], {} nest correctly (with '(' and '[' closable by either ')' or ']')
// and every \frac has two arguments.
bool is_balanced(std::string_view latex);

}  // namespace seed
