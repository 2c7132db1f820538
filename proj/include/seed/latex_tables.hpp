#pragma once

#include <optional>
#include <string_view>

namespace seed::latex {

enum class CommandClass {
  Greek,        // \alpha ... stored as Symbol "\alpha"
  SymbolLike,   // \hbar, \ell, \infty, \nabla, \AA
  Constant,     // \pi, \imath
  Function,     // \sin ... \ln, \exp
  Frac,
  Sqrt,
  Accent,       // \hat, \vec, ...
  Relation,     // \le, \ge, \lt, \gt
  Times,        // \times, \cdot
  Partial,
  Environment,  // \begin, \end
  Operatorname,
  Sizing,       // \left, \right: ignored by the tokenizer
  In,
};

// The closed command whitelist; nullopt for unsupported commands.
std::optional<CommandClass> classify(std::string_view name);

bool is_function_name(std::string_view name);

}  // namespace seed::latex
