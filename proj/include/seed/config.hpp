#pragma once

#include <string>
#include <string_view>

#include "seed/preprocess.hpp"
#include "seed/ted.hpp"

namespace seed {

// Every knob that influences a score. Serialized as `key = value` lines.
struct GradeConfig {
  ScoreConfig score;                   // edit costs, cutoff, equivalence sampling
  long double rtol = 1e-2L;            // numeric relative tolerance, (0, 1)
  long double openness_penalty = 0.25L;  // [0, 1]
  bool numeric_partial_credit = false; // 100 * min(1, rtol / relerr) instead of 0
  std::size_t balance_limit = 3;       // bracket insertions allowed in preprocessing
  unsigned threads = 0;                // 0: hardware concurrency; never affects scores

  PreprocessConfig preprocess() const;

  // Throws ConfigError naming the offending key.
  void validate() const;
};

// Unknown keys, malformed values and out-of-range values throw ConfigError.
// Missing keys keep their defaults. `#` starts a comment.
GradeConfig parse_config(std::string_view text);
GradeConfig load_config(const std::string& path);

// Canonical serialization: every key, fixed order, shortest round-trip numbers.
std::string to_config_text(const GradeConfig& cfg);

}  // namespace seed
