#include "seed/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "seed/errors.hpp"
#include "seed/text_util.hpp"

namespace seed {

PreprocessConfig GradeConfig::preprocess() const {
  PreprocessConfig p;
  p.balance_limit = balance_limit;
  return p;
}

void GradeConfig::validate() const {
  score.costs.validate();
  if (!(score.zero_cutoff > 0)) throw ConfigError("zero_cutoff must be positive");
  if (score.equiv.trials < 1 || score.equiv.trials > 1000) throw ConfigError("equiv_trials must be in [1, 1000]");
  if (score.equiv.retries < 1 || score.equiv.retries > 100) throw ConfigError("equiv_retries must be in [1, 100]");
  if (!(score.equiv.eval_rtol > 0 && score.equiv.eval_rtol < 1)) throw ConfigError("eval_rtol must be in (0, 1)");
  if (!(rtol > 0 && rtol < 1)) throw ConfigError("rtol must be in (0, 1)");
  if (!(openness_penalty >= 0 && openness_penalty <= 1)) throw ConfigError("openness_penalty must be in [0, 1]");
  if (balance_limit > 64) throw ConfigError("balance_limit must be at most 64");
  if (threads > 256) throw ConfigError("threads must be at most 256");
}

namespace {

long double parse_real(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const long double x = std::strtold(v.c_str(), &end);
  if (v.empty() || *end != '\0' || !std::isfinite(x)) throw ConfigError(key + ": not a number '" + v + "'");
  return x;
}

unsigned long parse_uint(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 19) {
    throw ConfigError(key + ": not a non-negative integer '" + v + "'");
  }
  return std::stoul(v);
}

Rational parse_cost(const std::string& key, const std::string& v) {
  const auto slash = v.find('/');
  if (slash != std::string::npos) {
    const auto n = parse_decimal(v.substr(0, slash));
    const auto d = parse_decimal(v.substr(slash + 1));
    if (!n || !d || *d == 0) throw ConfigError(key + ": not a rational '" + v + "'");
    return *n / *d;
  }
  const auto q = parse_decimal(v);
  if (!q) throw ConfigError(key + ": not a rational '" + v + "'");
  return *q;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::string real_text(long double x) {
  char buf[64];
  for (int prec = 1; prec <= 21; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*Lg", prec, x);
    if (std::strtold(buf, nullptr) == x) break;
  }
  return buf;
}

}  // namespace

GradeConfig parse_config(std::string_view text) {
  GradeConfig cfg;
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string line(raw);
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = std::string(trim(line));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(std::string_view(line).substr(0, eq)));
    const std::string v(trim(std::string_view(line).substr(eq + 1)));
    if (key == "rtol") cfg.rtol = parse_real(key, v);
    else if (key == "openness_penalty") cfg.openness_penalty = parse_real(key, v);
    else if (key == "zero_cutoff") cfg.score.zero_cutoff = parse_real(key, v);
    else if (key == "insert_cost") cfg.score.costs.insert_cost = parse_cost(key, v);
    else if (key == "delete_cost") cfg.score.costs.delete_cost = parse_cost(key, v);
    else if (key == "rename_cost") cfg.score.costs.rename_cost = parse_cost(key, v);
    else if (key == "kind_change_cost") cfg.score.costs.kind_change_cost = parse_cost(key, v);
    else if (key == "equiv_trials") cfg.score.equiv.trials = static_cast<int>(std::min(parse_uint(key, v), 100000ul));
    else if (key == "equiv_retries") cfg.score.equiv.retries = static_cast<int>(std::min(parse_uint(key, v), 100000ul));
    else if (key == "eval_rtol") cfg.score.equiv.eval_rtol = parse_real(key, v);
    else if (key == "seed") cfg.score.equiv.seed = parse_uint(key, v);
    else if (key == "numeric_partial_credit") cfg.numeric_partial_credit = parse_bool(key, v);
    else if (key == "balance_limit") cfg.balance_limit = parse_uint(key, v);
    else if (key == "threads") cfg.threads = static_cast<unsigned>(std::min(parse_uint(key, v), 100000ul));
    else throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

GradeConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_config_text(const GradeConfig& cfg) {
  std::ostringstream out;
  out << "rtol = " << real_text(cfg.rtol) << "\n";
  out << "openness_penalty = " << real_text(cfg.openness_penalty) << "\n";
  out << "zero_cutoff = " << real_text(cfg.score.zero_cutoff) << "\n";
  out << "insert_cost = " << to_string(cfg.score.costs.insert_cost) << "\n";
  out << "delete_cost = " << to_string(cfg.score.costs.delete_cost) << "\n";
  out << "rename_cost = " << to_string(cfg.score.costs.rename_cost) << "\n";
  out << "kind_change_cost = " << to_string(cfg.score.costs.kind_change_cost) << "\n";
  out << "equiv_trials = " << cfg.score.equiv.trials << "\n";
  out << "equiv_retries = " << cfg.score.equiv.retries << "\n";
  out << "eval_rtol = " << real_text(cfg.score.equiv.eval_rtol) << "\n";
  out << "seed = " << cfg.score.equiv.seed << "\n";
  out << "numeric_partial_credit = " << (cfg.numeric_partial_credit ? "true" : "false") << "\n";
  out << "balance_limit = " << cfg.balance_limit << "\n";
  out << "threads = " << cfg.threads << "\n";
  return out.str();
}

}  // namespace seed
