#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace seed {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split_lines(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);
bool iequals_prefix(std::string_view s, std::string_view prefix);
void replace_all(std::string& s, std::string_view from, std::string_view to);

// Index of the brace closing the one at `open`, skipping escaped braces;
// npos when unclosed.
std::size_t matching_brace(std::string_view s, std::size_t open);

// Letters following a backslash at `i`; empty when s[i] is not a backslash
// or the command is a single non-letter (e.g. "\,").
std::string_view command_name(std::string_view s, std::size_t i);

// Replaces every `\name{content}` for the listed names by " content ".
std::string unwrap_commands(std::string_view s, std::initializer_list<std::string_view> names);

std::string collapse_whitespace(std::string_view s);

}  // namespace seed
