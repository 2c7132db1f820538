#pragma once

#include <string_view>

#include "seed/config.hpp"
#include "seed/parser.hpp"
#include "seed/ted.hpp"

namespace seed {

// Preprocess and parse a ground truth. Throws GroundTruthInvalid carrying the
// parser position when available.
TypedAnswer prepare_ground_truth(std::string_view gt_raw, AnswerType declared, const GradeConfig& cfg = {});

// Full pipeline for one prediction. Prediction failures never throw: they
// score 0 with a diagnostic naming the error. Only GroundTruthInvalid escapes.
GradeResult grade(std::string_view pred_raw, std::string_view gt_raw, AnswerType declared,
                  const GradeConfig& cfg = {});
GradeResult grade(std::string_view pred_raw, const TypedAnswer& gt, const GradeConfig& cfg = {});

GradeResult grade_expression(const Node& pred, const Node& gt, const GradeConfig& cfg = {});
// Both must be relations; otherwise 0 with TypeMismatch.
GradeResult grade_equation(const Node& pred, const Node& gt, const GradeConfig& cfg = {});
// Positional; the mean runs over the longer length.
GradeResult grade_tuple(const TypedAnswer& pred, const TypedAnswer& gt, const GradeConfig& cfg = {});
GradeResult grade_interval(const TypedAnswer& pred, const TypedAnswer& gt, const GradeConfig& cfg = {});
GradeResult grade_numeric(const TypedAnswer& pred, const TypedAnswer& gt, const GradeConfig& cfg = {});

}  // namespace seed
