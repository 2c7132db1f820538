#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "seed/math_node.hpp"
#include "seed/rational.hpp"

namespace seed {

enum class Tok : std::uint8_t {
  Number,
  Symbol,
  Constant,
  Function,
  Frac,
  Sqrt,
  Begin,
  End,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  Bang,
  Prime,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Amp,
  RowSep,
  Pipe,
  RelOp,
  ImplicitMul,
  Partial,
  In,
};

struct Token {
  Tok kind = Tok::Number;
  std::string text;   // Symbol/Constant/Function name, environment name
  Rational value;     // Number
  RelOp op = RelOp::Eq;
  bool open = false;  // Pipe: opening bar
  std::string sub;    // Function: subscript source (log base)
  std::size_t pos = 0;
};

// Longest-match tokenization over the supported command whitelist. Throws
// UnknownCommand for commands outside it and ParseError for stray characters.
std::vector<Token> tokenize(std::string_view src);

// Compact rendering used in tests and diagnostics, e.g. "Number 2", "ImplicitMul".
std::string describe(const Token& t);

}  // namespace seed
