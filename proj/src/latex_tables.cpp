#include "seed/latex_tables.hpp"

#include <algorithm>
#include <array>

namespace seed::latex {

namespace {

constexpr std::array<std::string_view, 40> kGreek = {
    "alpha", "beta",    "gamma", "delta",  "epsilon", "varepsilon", "zeta",  "eta",
    "theta", "vartheta", "iota", "kappa",  "lambda",  "mu",         "nu",    "xi",
    "rho",   "varrho",  "sigma", "varsigma", "tau",   "upsilon",    "phi",   "varphi",
    "chi",   "psi",     "omega", "Gamma",  "Delta",   "Theta",      "Lambda", "Xi",
    "Pi",    "Sigma",   "Upsilon", "Phi",  "Psi",     "Omega",      "varkappa", "varpi"};

constexpr std::array<std::string_view, 6> kSymbolLike = {"hbar", "ell", "infty", "nabla", "AA",
                                                         "emptyset"};

constexpr std::array<std::string_view, 15> kFunctions = {
    "sin",  "cos",    "tan",    "cot",    "sec",  "csc", "sinh", "cosh",
    "tanh", "coth",   "arcsin", "arccos", "arctan", "ln", "exp"};

constexpr std::array<std::string_view, 10> kAccents = {"hat",   "tilde",     "bar",      "vec",
                                                       "dot",   "ddot",      "overline", "widetilde",
                                                       "widehat", "mathring"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& table, std::string_view name) {
  return std::find(table.begin(), table.end(), name) != table.end();
}

}  // namespace

bool is_function_name(std::string_view name) { return contains(kFunctions, name) || name == "log"; }

std::optional<CommandClass> classify(std::string_view name) {
  if (contains(kGreek, name)) return CommandClass::Greek;
  if (contains(kSymbolLike, name)) return CommandClass::SymbolLike;
  if (name == "pi" || name == "imath") return CommandClass::Constant;
  if (is_function_name(name)) return CommandClass::Function;
  if (name == "frac" || name == "dfrac" || name == "tfrac") return CommandClass::Frac;
  if (name == "sqrt") return CommandClass::Sqrt;
  if (contains(kAccents, name)) return CommandClass::Accent;
  if (name == "le" || name == "leq" || name == "ge" || name == "geq" || name == "lt" || name == "gt") {
    return CommandClass::Relation;
  }
  if (name == "times" || name == "cdot") return CommandClass::Times;
  if (name == "partial") return CommandClass::Partial;
  if (name == "begin" || name == "end") return CommandClass::Environment;
  if (name == "operatorname") return CommandClass::Operatorname;
  if (name == "left" || name == "right") return CommandClass::Sizing;
  if (name == "in") return CommandClass::In;
  return std::nullopt;
}

}  // namespace seed::latex
