#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "seed/math_node.hpp"
#include "seed/preprocess.hpp"
#include "seed/tokenizer.hpp"
#include "seed/units.hpp"

namespace seed {

enum class AnswerType : std::uint8_t { Expression, Equation, Numeric, Tuple, Interval };

std::string_view answer_type_name(AnswerType t);
std::optional<AnswerType> parse_answer_type(std::string_view name);

struct TypedAnswer {
  AnswerType answer_type = AnswerType::Expression;
  std::vector<Node> parts;               // one element except for Tuple
  std::optional<units::Quantity> quantity;  // Numeric only
};

// Whole token sequence; at most one relation operator. Throws ParseError.
Node parse_expression(const std::vector<Token>& tokens);

// tokenize + parse_expression.
Node parse_latex(std::string_view latex);

// Dispatches on the declared type. Throws TypeMismatch when the structure
// contradicts it, ParseError/UnknownCommand from lower layers.
TypedAnswer parse_answer(const CleanLatex& src, AnswerType declared);
TypedAnswer parse_answer(std::string_view clean_text, AnswerType declared);

}  // namespace seed
