#include "seed/grader.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "seed/errors.hpp"

namespace seed {

namespace {

std::string diagnostic(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return err->code() + ": " + err->what();
  return std::string("InternalError: ") + e.what();
}

// Failed or incomparable answers sit at the cutoff: score 0, relative distance 1.
GradeResult zero(std::string note) {
  GradeResult r;
  r.relative_distance = 1;
  r.diagnostics.push_back(std::move(note));
  return r;
}

void prefix_script(std::vector<EditOp>& script, const std::string& prefix) {
  for (EditOp& op : script) op.path = prefix + op.path;
}

GradeResult dispatch(const TypedAnswer& pred, const TypedAnswer& gt, const GradeConfig& cfg) {
  switch (gt.answer_type) {
    case AnswerType::Expression: return grade_expression(pred.parts.at(0), gt.parts.at(0), cfg);
    case AnswerType::Equation: return grade_equation(pred.parts.at(0), gt.parts.at(0), cfg);
    case AnswerType::Tuple: return grade_tuple(pred, gt, cfg);
    case AnswerType::Interval: return grade_interval(pred, gt, cfg);
    case AnswerType::Numeric: return grade_numeric(pred, gt, cfg);
  }
  return zero("TypeMismatch: unknown answer type");
}

}  // namespace

TypedAnswer prepare_ground_truth(std::string_view gt_raw, AnswerType declared, const GradeConfig& cfg) {
  try {
    CleanLatex clean = canonicalize_latex(gt_raw, cfg.preprocess());
    return parse_answer(clean, declared);
  } catch (const ParseError& e) {
    throw GroundTruthInvalid(std::string("ground truth: ") + e.what(), 0, e.position());
  } catch (const UnknownCommand& e) {
    throw GroundTruthInvalid(std::string("ground truth: ") + e.what(), 0, e.position());
  } catch (const GroundTruthInvalid&) {
    throw;
  } catch (const Error& e) {
    throw GroundTruthInvalid(std::string("ground truth: ") + e.what());
  }
}

GradeResult grade(std::string_view pred_raw, std::string_view gt_raw, AnswerType declared,
                  const GradeConfig& cfg) {
  return grade(pred_raw, prepare_ground_truth(gt_raw, declared, cfg), cfg);
}

GradeResult grade(std::string_view pred_raw, const TypedAnswer& gt, const GradeConfig& cfg) {
  const AnswerType declared = gt.answer_type;
  std::vector<std::string> notes;
  CleanLatex clean;
  try {
    clean = canonicalize_latex(extract_final_answer(pred_raw, cfg.preprocess()), cfg.preprocess());
  } catch (const std::exception& e) {
    return zero(diagnostic(e));
  }
  for (const auto& n : clean.notes) notes.push_back("preprocess:" + n);

  GradeResult result;
  try {
    TypedAnswer pred;
    try {
      pred = parse_answer(clean, declared);
    } catch (const Error& first) {
      if (declared == AnswerType::Expression) throw;
      const std::exception_ptr original = std::current_exception();
      // Retry as a bare expression; only a tuple can use the result.
      TypedAnswer bare;
      try {
        bare = parse_answer(clean, AnswerType::Expression);
      } catch (const Error&) {
        std::rethrow_exception(original);
      }
      notes.push_back("retry:expression after " + diagnostic(first));
      if (declared != AnswerType::Tuple) {
        throw TypeMismatch(std::string("prediction is not a ") + std::string(answer_type_name(declared)));
      }
      bare.answer_type = AnswerType::Tuple;
      pred = std::move(bare);
    }
    result = dispatch(pred, gt, cfg);
  } catch (const std::exception& e) {
    result = zero(diagnostic(e));
  }
  notes.insert(notes.end(), result.diagnostics.begin(), result.diagnostics.end());
  result.diagnostics = std::move(notes);
  result.score = std::clamp(result.score, 0.0L, 100.0L);
  return result;
}

GradeResult grade_expression(const Node& pred, const Node& gt, const GradeConfig& cfg) {
  return seed_score(pred, gt, cfg.score);
}

GradeResult grade_equation(const Node& pred, const Node& gt, const GradeConfig& cfg) {
  if (pred.kind != Kind::Relation || gt.kind != Kind::Relation) {
    return zero("TypeMismatch: equation grading needs two relations");
  }
  const Node p = standardize_relation(pred);
  const Node g = standardize_relation(gt);
  // Whole standardized relations keep the direction in the distance.
  return seed_score(p, g, cfg.score);
}

GradeResult grade_tuple(const TypedAnswer& pred, const TypedAnswer& gt, const GradeConfig& cfg) {
  GradeResult r;
  const std::size_t n = std::max(pred.parts.size(), gt.parts.size());
  if (n == 0) return zero("TypeMismatch: empty tuple");
  long double total = 0;
  std::size_t gt_size = 0;
  bool all = pred.parts.size() == gt.parts.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::string tag = "[" + std::to_string(k) + "]";
    if (k >= pred.parts.size() || k >= gt.parts.size()) {
      r.diagnostics.push_back(tag + (k >= pred.parts.size() ? " missing component" : " extra component"));
      if (k < gt.parts.size()) {
        const std::size_t s = node_count(canonical(gt.parts[k]));
        gt_size += s;
        r.distance += Rational(static_cast<long>(s)) * cfg.score.costs.insert_cost;
      } else {
        r.distance += Rational(static_cast<long>(node_count(canonical(pred.parts[k])))) * cfg.score.costs.delete_cost;
      }
      continue;
    }
    GradeResult c = seed_score(pred.parts[k], gt.parts[k], cfg.score);
    total += c.score;
    all = all && c.equivalent;
    gt_size += node_count(canonical(gt.parts[k]));
    r.distance += c.distance;
    prefix_script(c.edit_script, tag);
    for (auto& op : c.edit_script) r.edit_script.push_back(std::move(op));
    for (auto& d : c.diagnostics) r.diagnostics.push_back(tag + " " + d);
  }
  r.score = total / static_cast<long double>(n);
  r.equivalent = all;
  if (all) r.score = 100;
  r.relative_distance = gt_size ? to_long_double(r.distance) / static_cast<long double>(gt_size) : 0;
  return r;
}

GradeResult grade_interval(const TypedAnswer& pred, const TypedAnswer& gt, const GradeConfig& cfg) {
  if (pred.parts.size() != 1 || gt.parts.size() != 1 || pred.parts[0].kind != Kind::Interval ||
      gt.parts[0].kind != Kind::Interval) {
    return zero("TypeMismatch: interval grading needs two intervals");
  }
  const Node& p = pred.parts[0];
  const Node& g = gt.parts[0];
  GradeResult lo = seed_score(p.children[0], g.children[0], cfg.score);
  GradeResult hi = seed_score(p.children[1], g.children[1], cfg.score);
  const int mismatched = (p.lower_open != g.lower_open) + (p.upper_open != g.upper_open);
  GradeResult r;
  r.score = (lo.score + hi.score) / 2 * (1 - cfg.openness_penalty * mismatched / 2.0L);
  r.equivalent = lo.equivalent && hi.equivalent && mismatched == 0;
  // A flipped bracket counts as one rename of the interval node's label.
  r.distance = lo.distance + hi.distance + Rational(mismatched) * cfg.score.costs.rename_cost;
  const std::size_t gt_size = 1 + node_count(canonical(g.children[0])) + node_count(canonical(g.children[1]));
  r.relative_distance = to_long_double(r.distance) / static_cast<long double>(gt_size);
  prefix_script(lo.edit_script, "[lower]");
  prefix_script(hi.edit_script, "[upper]");
  r.edit_script = std::move(lo.edit_script);
  for (auto& op : hi.edit_script) r.edit_script.push_back(std::move(op));
  for (auto& d : lo.diagnostics) r.diagnostics.push_back("[lower] " + d);
  for (auto& d : hi.diagnostics) r.diagnostics.push_back("[upper] " + d);
  if (p.lower_open != g.lower_open) r.diagnostics.push_back("openness: lower bound");
  if (p.upper_open != g.upper_open) r.diagnostics.push_back("openness: upper bound");
  return r;
}

GradeResult grade_numeric(const TypedAnswer& pred, const TypedAnswer& gt, const GradeConfig& cfg) {
  if (!pred.quantity || !gt.quantity) return zero("TypeMismatch: numeric grading needs two quantities");
  GradeResult r;
  try {
    if (units::compare_quantities(*pred.quantity, *gt.quantity, cfg.rtol)) {
      r.score = 100;
      r.equivalent = true;
      return r;
    }
  } catch (const DimensionMismatch& e) {
    return zero(diagnostic(e));
  }
  const long double p = pred.quantity->magnitude, g = gt.quantity->magnitude;
  const long double denom = std::max(std::fabs(p), std::fabs(g));
  const long double relerr = denom > 0 ? std::fabs(p - g) / denom : 0;
  r.relative_distance = relerr;
  r.diagnostics.push_back("MagnitudeError: relative error " + std::to_string(static_cast<double>(relerr)));
  if (cfg.numeric_partial_credit && relerr > 0) {
    r.score = std::min(100.0L, 100.0L * cfg.rtol / relerr);
  }
  return r;
}

}  // namespace seed
