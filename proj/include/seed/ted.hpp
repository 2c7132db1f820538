#pragma once

#include <string>
#include <utility>
#include <vector>

#include "seed/canon.hpp"
#include "seed/math_node.hpp"
#include "seed/rational.hpp"

namespace seed {

// Invariant: 0 <= rename <= kind_change <= insert + delete.
struct CostModel {
  Rational insert_cost = 1;
  Rational delete_cost = 1;
  Rational rename_cost = 1;       // relabel within a node kind
  Rational kind_change_cost = 2;  // relabel across kinds

  // Throws ConfigError naming the violated bound.
  void validate() const;
  Rational relabel(const Node& a, const Node& b) const;
};

enum class EditKind : std::uint8_t { Insert, Delete, Relabel };
std::string_view edit_kind_name(EditKind k);

// One step of a sequential script over a working copy of pred wrapped in a
// virtual root. Paths: "^" virtual root, "/" the tree root, "/0/2" child
// indices from the root. Deleting the root can leave several top-level trees
// for a while; "^k" names the k-th of them ("^1/0" is its first child).
//  Relabel: node at `path` gets `label`.
//  Delete:  node at `path` is removed; its children take its place.
//  Insert:  under the node at `path`, children [position, position+adopt)
//           become the children of a new node `label` placed at `position`.
struct EditOp {
  EditKind kind = EditKind::Relabel;
  std::string path;
  std::string before;  // label text, empty for Insert
  std::string after;   // label text, empty for Delete
  Node label;          // Relabel/Insert: childless shell with the new label
  Node replaced;       // Relabel/Delete: shell of the node being replaced
  std::size_t position = 0;
  std::size_t adopt = 0;
  int pred_node = -1;  // postorder index in pred, or -1
  int gt_node = -1;    // postorder index in gt, or -1
};

// Scripts run pred -> gt, so a node the prediction added is a Delete here.
// This maps an op to the prediction's point of view: Delete -> Insert
// ("prediction inserted"), Insert -> Delete ("prediction omitted").
EditKind prediction_view(EditKind k);

struct TedResult {
  Rational distance;
  std::vector<EditOp> script;
  std::vector<std::pair<int, int>> mapping;  // (pred, gt) postorder indices
};

// Exact Zhang-Shasha over ordered trees plus one optimal script. Ties prefer
// relabel/match, then delete, then insert.
TedResult tree_edit_distance(const Node& pred, const Node& gt, const CostModel& cm = {});

// Replays `script` on pred. Throws std::invalid_argument on an invalid step.
Node apply_edit_script(const Node& pred, const std::vector<EditOp>& script);

// Sum of op costs under `cm` (relabels priced by the labels they swap).
Rational script_cost(const std::vector<EditOp>& script, const CostModel& cm = {});

struct ScoreConfig {
  CostModel costs;
  long double zero_cutoff = 1.0L;  // relative distance that maps to score 0
  EquivConfig equiv;
};

// 100 * max(0, 1 - (d / gt_size) / cutoff), clamped to [0, 100].
long double distance_to_score(const Rational& d, std::size_t gt_size, long double zero_cutoff = 1.0L);

struct GradeResult {
  long double score = 0;
  bool equivalent = false;
  Rational distance = 0;
  long double relative_distance = 0;
  std::vector<EditOp> edit_script;
  std::vector<std::string> diagnostics;
};

// Canonicalize both, decide equivalence, else score by edit distance.
// Inconclusive equivalence is recorded as a diagnostic.
GradeResult seed_score(const Node& pred, const Node& gt, const ScoreConfig& cfg = {});

}  // namespace seed
