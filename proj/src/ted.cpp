#include "seed/ted.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "seed/errors.hpp"

namespace seed {

void CostModel::validate() const {
  if (insert_cost < 0 || delete_cost < 0 || rename_cost < 0 || kind_change_cost < 0) {
    throw ConfigError("edit costs must be non-negative");
  }
  if (rename_cost > kind_change_cost) throw ConfigError("rename_cost must not exceed kind_change_cost");
  if (kind_change_cost > insert_cost + delete_cost) {
    throw ConfigError("kind_change_cost must not exceed insert_cost + delete_cost");
  }
}

Rational CostModel::relabel(const Node& a, const Node& b) const {
  if (same_label(a, b)) return 0;
  return a.kind == b.kind ? rename_cost : kind_change_cost;
}

std::string_view edit_kind_name(EditKind k) {
  switch (k) {
    case EditKind::Insert: return "insert";
    case EditKind::Delete: return "delete";
    case EditKind::Relabel: return "relabel";
  }
  return "relabel";
}

EditKind prediction_view(EditKind k) {
  switch (k) {
    case EditKind::Insert: return EditKind::Delete;
    case EditKind::Delete: return EditKind::Insert;
    case EditKind::Relabel: return EditKind::Relabel;
  }
  return k;
}

namespace {

// Postorder view, 1-based: index 0 is unused.
struct Flat {
  std::vector<const Node*> node{nullptr};
  std::vector<int> lml{0};     // leftmost leaf descendant
  std::vector<int> parent{0};  // 0 for the root
  std::vector<int> pre{0};     // preorder rank
  std::vector<std::string> path{""};
  std::vector<int> keyroots;

  explicit Flat(const Node& root) {
    int pre_counter = 0;
    walk(root, 0, "/", pre_counter);
    const int n = size();
    std::vector<bool> seen(n + 1, false);
    for (int i = n; i >= 1; --i) {
      if (!seen[lml[i]]) {
        keyroots.push_back(i);
        seen[lml[i]] = true;
      }
    }
    std::sort(keyroots.begin(), keyroots.end());
  }

  int size() const { return static_cast<int>(node.size()) - 1; }

 private:
  int walk(const Node& n, int parent_slot, const std::string& p, int& pre_counter) {
    const int my_pre = pre_counter++;
    std::vector<int> kids;
    for (std::size_t k = 0; k < n.children.size(); ++k) {
      const std::string child_path = (p == "/" ? "/" : p + "/") + std::to_string(k);
      kids.push_back(walk(n.children[k], 0, child_path, pre_counter));
    }
    node.push_back(&n);
    const int id = size();
    lml.push_back(kids.empty() ? id : lml[kids.front()]);
    parent.push_back(parent_slot);
    pre.push_back(my_pre);
    path.push_back(p);
    for (int k : kids) parent[k] = id;
    return id;
  }
};

struct IntCosts {
  std::int64_t ins, del, ren, kind;
  std::int64_t scale;  // common denominator

  explicit IntCosts(const CostModel& cm) {
    mpz_class l = 1;
    for (const Rational* r : {&cm.insert_cost, &cm.delete_cost, &cm.rename_cost, &cm.kind_change_cost}) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r->get_den().get_mpz_t());
    }
    if (!l.fits_slong_p()) throw ConfigError("cost denominators too large");
    scale = l.get_si();
    auto to_int = [&](const Rational& r) {
      mpz_class v = r.get_num() * (l / r.get_den());
      if (!v.fits_slong_p() || v > (std::int64_t{1} << 40)) throw ConfigError("edit cost too large");
      return static_cast<std::int64_t>(v.get_si());
    };
    ins = to_int(cm.insert_cost);
    del = to_int(cm.delete_cost);
    ren = to_int(cm.rename_cost);
    kind = to_int(cm.kind_change_cost);
  }

  std::int64_t relabel(const Node& a, const Node& b) const {
    if (same_label(a, b)) return 0;
    return a.kind == b.kind ? ren : kind;
  }
};

class ZhangShasha {
 public:
  ZhangShasha(const Flat& a, const Flat& b, const IntCosts& c)
      : a_(a), b_(b), c_(c), td_((a.size() + 1) * (b.size() + 1), 0) {}

  std::int64_t run() {
    for (int i : a_.keyroots) {
      for (int j : b_.keyroots) forest(i, j);
    }
    return td(a_.size(), b_.size());
  }

  std::vector<std::pair<int, int>> mapping() {
    std::vector<std::pair<int, int>> out;
    std::vector<std::pair<int, int>> stack{{a_.size(), b_.size()}};
    while (!stack.empty()) {
      auto [i, j] = stack.back();
      stack.pop_back();
      forest(i, j);
      const int li = a_.lml[i], lj = b_.lml[j];
      int x = i, y = j;
      while (x >= li || y >= lj) {
        if (x < li) {
          --y;
          continue;
        }
        if (y < lj) {
          --x;
          continue;
        }
        const std::int64_t here = fd(x, y);
        const bool whole = a_.lml[x] == li && b_.lml[y] == lj;
        if (whole) {
          if (here == fd(x - 1, y - 1) + c_.relabel(*a_.node[x], *b_.node[y])) {
            out.emplace_back(x, y);
            --x;
            --y;
            continue;
          }
        } else if (here == fd(a_.lml[x] - 1, b_.lml[y] - 1) + td(x, y)) {
          stack.emplace_back(x, y);
          x = a_.lml[x] - 1;
          y = b_.lml[y] - 1;
          continue;
        }
        if (here == fd(x - 1, y) + c_.del) {
          --x;
        } else {
          --y;
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::int64_t& td(int i, int j) { return td_[static_cast<std::size_t>(i) * (b_.size() + 1) + j]; }

  // Forest distance cell; x < li or y < lj denotes the empty forest prefix.
  std::int64_t& fd(int x, int y) {
    return fd_[static_cast<std::size_t>(x - ioff_) * cols_ + static_cast<std::size_t>(y - joff_)];
  }

  void forest(int i, int j) {
    const int li = a_.lml[i], lj = b_.lml[j];
    ioff_ = li - 1;
    joff_ = lj - 1;
    cols_ = static_cast<std::size_t>(j - lj + 2);
    fd_.assign(static_cast<std::size_t>(i - li + 2) * cols_, 0);
    for (int x = li; x <= i; ++x) fd(x, joff_) = fd(x - 1, joff_) + c_.del;
    for (int y = lj; y <= j; ++y) fd(ioff_, y) = fd(ioff_, y - 1) + c_.ins;
    for (int x = li; x <= i; ++x) {
      for (int y = lj; y <= j; ++y) {
        const std::int64_t del = fd(x - 1, y) + c_.del;
        const std::int64_t ins = fd(x, y - 1) + c_.ins;
        if (a_.lml[x] == li && b_.lml[y] == lj) {
          const std::int64_t rel = fd(x - 1, y - 1) + c_.relabel(*a_.node[x], *b_.node[y]);
          fd(x, y) = std::min({del, ins, rel});
          td(x, y) = fd(x, y);
        } else {
          const std::int64_t sub = fd(a_.lml[x] - 1, b_.lml[y] - 1) + td(x, y);
          fd(x, y) = std::min({del, ins, sub});
        }
      }
    }
  }

  const Flat& a_;
  const Flat& b_;
  const IntCosts& c_;
  std::vector<std::int64_t> td_;
  std::vector<std::int64_t> fd_;
  int ioff_ = 0, joff_ = 0;
  std::size_t cols_ = 0;
};

// Mutable tree used to derive and replay sequential scripts.
struct Work {
  struct Slot {
    Node label;
    int parent = -1;
    std::vector<int> kids;
    int gt = -1;  // gt postorder id once it corresponds to a gt node
  };
  std::vector<Slot> slots;

  int add(Node label, int parent) {
    slots.push_back({std::move(label), parent, {}, -1});
    return static_cast<int>(slots.size()) - 1;
  }

  // Builds slots for `n` under `parent`; `ids` receives postorder slot ids.
  int build(const Node& n, int parent, std::vector<int>* ids) {
    const int id = add(n.shell(), parent);
    for (const Node& c : n.children) {
      const int k = build(c, id, ids);
      slots[id].kids.push_back(k);
    }
    if (ids) ids->push_back(id);
    return id;
  }

  std::size_t index_in_parent(int id) const {
    const auto& kids = slots[slots[id].parent].kids;
    return static_cast<std::size_t>(std::find(kids.begin(), kids.end(), id) - kids.begin());
  }

  // Top-level tree t is "/" for t == 0 and "^t" otherwise; child steps follow.
  std::string path(int id) const {
    if (id == 0) return "^";
    std::vector<std::size_t> steps;
    int cur = id;
    while (slots[cur].parent != 0) {
      steps.push_back(index_in_parent(cur));
      cur = slots[cur].parent;
    }
    const std::size_t top = index_in_parent(cur);
    std::string out = top == 0 ? "" : "^" + std::to_string(top);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) out += "/" + std::to_string(*it);
    return out.empty() ? "/" : out;
  }

  int resolve(const std::string& p) const {
    if (p == "^") return 0;
    auto bad = [&p](const char* why) { return std::invalid_argument(std::string(why) + " '" + p + "'"); };
    auto number = [&](std::size_t from, std::size_t to) {
      const std::string part = p.substr(from, to - from);
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) throw bad("bad edit path");
      return std::stoul(part);
    };
    std::size_t i = 0, top = 0;
    if (!p.empty() && p[0] == '^') {
      i = std::min(p.find('/'), p.size());
      top = number(1, i);
    } else if (p.empty() || p[0] != '/') {
      throw bad("bad edit path");
    }
    if (top >= slots[0].kids.size()) throw bad("edit path out of range");
    int cur = slots[0].kids[top];
    if (p == "/") return cur;
    while (i < p.size()) {
      const std::size_t j = std::min(p.find('/', i + 1), p.size());
      const std::size_t k = number(i + 1, j);
      if (k >= slots[cur].kids.size()) throw bad("edit path out of range");
      cur = slots[cur].kids[k];
      i = j;
    }
    return cur;
  }

  void remove(int id) {
    if (slots[id].parent < 0) throw std::invalid_argument("node already deleted");
    auto& siblings = slots[slots[id].parent].kids;
    const auto at = std::find(siblings.begin(), siblings.end(), id);
    if (at == siblings.end()) throw std::invalid_argument("detached node");
    const auto pos = at - siblings.begin();
    siblings.erase(at);
    siblings.insert(siblings.begin() + pos, slots[id].kids.begin(), slots[id].kids.end());
    for (int k : slots[id].kids) slots[k].parent = slots[id].parent;
    slots[id].kids.clear();
    slots[id].parent = -1;
  }

  int insert(int parent, std::size_t position, std::size_t adopt, Node label) {
    auto& kids = slots[parent].kids;
    if (position > kids.size() || adopt > kids.size() - position) {
      throw std::invalid_argument("insert range out of bounds");
    }
    const int id = add(std::move(label), parent);
    auto& pk = slots[parent].kids;  // re-fetch: add() may reallocate
    std::vector<int> moved(pk.begin() + static_cast<long>(position),
                           pk.begin() + static_cast<long>(position + adopt));
    pk.erase(pk.begin() + static_cast<long>(position), pk.begin() + static_cast<long>(position + adopt));
    pk.insert(pk.begin() + static_cast<long>(position), id);
    for (int k : moved) slots[k].parent = id;
    slots[id].kids = std::move(moved);
    return id;
  }

  Node to_node(int id) const {
    Node n = slots[id].label;
    for (int k : slots[id].kids) n.children.push_back(to_node(k));
    return n;
  }
};

}  // namespace

TedResult tree_edit_distance(const Node& pred, const Node& gt, const CostModel& cm) {
  const IntCosts costs(cm);
  const Flat a(pred), b(gt);
  ZhangShasha zs(a, b, costs);
  TedResult result;
  const std::int64_t d = zs.run();
  result.distance = Rational(d, costs.scale);
  result.distance.canonicalize();
  result.mapping = zs.mapping();

  std::vector<int> a_to_b(a.size() + 1, 0), b_to_a(b.size() + 1, 0);
  for (auto [x, y] : result.mapping) {
    a_to_b[x] = y;
    b_to_a[y] = x;
  }

  Work w;
  w.add(Node::tuple({}), -1);
  std::vector<int> slot_of_a;  // postorder, 0-based
  const int pred_root = w.build(pred, 0, &slot_of_a);  // grows slots; bind kids after
  w.slots[0].kids.push_back(pred_root);
  auto slot_a = [&](int x) { return slot_of_a[static_cast<std::size_t>(x - 1)]; };

  // Relabels in pred preorder.
  std::vector<int> by_pre(a.size());
  for (int x = 1; x <= a.size(); ++x) by_pre[a.pre[x]] = x;
  for (int x : by_pre) {
    const int y = a_to_b[x];
    if (y == 0 || same_label(*a.node[x], *b.node[y])) continue;
    EditOp op;
    op.kind = EditKind::Relabel;
    op.path = w.path(slot_a(x));
    op.before = label(*a.node[x]);
    op.after = label(*b.node[y]);
    op.label = b.node[y]->shell();
    op.replaced = a.node[x]->shell();
    op.pred_node = x - 1;
    op.gt_node = y - 1;
    w.slots[slot_a(x)].label = op.label;
    result.script.push_back(std::move(op));
  }
  // Deletes in pred postorder.
  for (int x = 1; x <= a.size(); ++x) {
    if (a_to_b[x] != 0) continue;
    EditOp op;
    op.kind = EditKind::Delete;
    op.path = w.path(slot_a(x));
    op.before = label(*a.node[x]);
    op.replaced = a.node[x]->shell();
    op.pred_node = x - 1;
    w.remove(slot_a(x));
    result.script.push_back(std::move(op));
  }
  // Inserts in gt postorder; children of an inserted node already sit
  // contiguously under the image of its nearest present ancestor.
  std::vector<int> slot_of_b(b.size() + 1, -1);
  for (int y = 1; y <= b.size(); ++y) {
    if (b_to_a[y] != 0) {
      slot_of_b[y] = slot_a(b_to_a[y]);
      w.slots[slot_of_b[y]].gt = y;
    }
  }
  for (int y = 1; y <= b.size(); ++y) {
    if (b_to_a[y] != 0) continue;
    int anc = b.parent[y];
    while (anc != 0 && b_to_a[anc] == 0) anc = b.parent[anc];
    const int container = anc == 0 ? 0 : slot_of_b[anc];
    const auto& kids = w.slots[container].kids;
    std::size_t position = 0;
    for (int k : kids) {
      if (b.pre[w.slots[k].gt] < b.pre[y]) ++position;
    }
    EditOp op;
    op.kind = EditKind::Insert;
    op.path = w.path(container);
    op.after = label(*b.node[y]);
    op.label = b.node[y]->shell();
    op.position = position;
    op.adopt = b.node[y]->children.size();
    op.gt_node = y - 1;
    const int id = w.insert(container, position, op.adopt, op.label);
    w.slots[id].gt = y;
    slot_of_b[y] = id;
    result.script.push_back(std::move(op));
  }
  return result;
}

Node apply_edit_script(const Node& pred, const std::vector<EditOp>& script) {
  Work w;
  w.add(Node::tuple({}), -1);
  const int pred_root = w.build(pred, 0, nullptr);
  w.slots[0].kids.push_back(pred_root);
  for (const EditOp& op : script) {
    const int target = w.resolve(op.path);
    switch (op.kind) {
      case EditKind::Relabel:
        if (target == 0) throw std::invalid_argument("cannot relabel the virtual root");
        w.slots[target].label = op.label.shell();
        break;
      case EditKind::Delete:
        if (target == 0) throw std::invalid_argument("cannot delete the virtual root");
        w.remove(target);
        break;
      case EditKind::Insert:
        w.insert(target, op.position, op.adopt, op.label.shell());
        break;
    }
  }
  if (w.slots[0].kids.size() != 1) throw std::invalid_argument("script leaves a forest, not a tree");
  return w.to_node(w.slots[0].kids[0]);
}

Rational script_cost(const std::vector<EditOp>& script, const CostModel& cm) {
  Rational total = 0;
  for (const EditOp& op : script) {
    switch (op.kind) {
      case EditKind::Insert: total += cm.insert_cost; break;
      case EditKind::Delete: total += cm.delete_cost; break;
      case EditKind::Relabel: total += cm.relabel(op.replaced, op.label); break;
    }
  }
  return total;
}

long double distance_to_score(const Rational& d, std::size_t gt_size, long double zero_cutoff) {
  if (d == 0) return 100.0L;
  if (gt_size == 0 || zero_cutoff <= 0) return 0.0L;
  const long double r = to_long_double(d) / static_cast<long double>(gt_size);
  const long double s = 100.0L * std::max(0.0L, 1.0L - r / zero_cutoff);
  // d > 0 never reaches 100.
  return std::clamp(s, 0.0L, std::nextafter(100.0L, 0.0L));
}

GradeResult seed_score(const Node& pred, const Node& gt, const ScoreConfig& cfg) {
  GradeResult r;
  const Node p = canonical(pred);
  const Node g = canonical(gt);
  try {
    EquivOutcome eq = equivalence(p, g, cfg.equiv);
    if (eq.method != "structural") r.diagnostics.push_back("equivalence:" + eq.method);
    if (eq.equivalent) {
      r.score = 100;
      r.equivalent = true;
      return r;
    }
  } catch (const Inconclusive&) {
    r.diagnostics.push_back("Inconclusive: every evaluation retry hit a singularity; scored by tree distance");
  }
  TedResult ted = tree_edit_distance(p, g, cfg.costs);
  const std::size_t gt_size = node_count(g);
  r.distance = ted.distance;
  r.relative_distance = to_long_double(ted.distance) / static_cast<long double>(gt_size);
  r.score = distance_to_score(ted.distance, gt_size, cfg.zero_cutoff);
  r.edit_script = std::move(ted.script);
  return r;
}

}  // namespace seed
