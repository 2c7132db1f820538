#include <chrono>

#include "doctest.h"
#include "seed/canon.hpp"
#include "seed/errors.hpp"
#include "seed/parser.hpp"
#include "seed/ted.hpp"
#include "support/fuzz.hpp"
#include "support/ted_oracle.hpp"

using namespace seed;

namespace {

Node X() { return Node::symbol("x"); }
Node Y() { return Node::symbol("y"); }

long long as_int(const Rational& r) { return r.get_num().get_si(); }

// Big left-deep / right-deep mixed tree with n internal nodes.
Node comb(int n, bool left) {
  Node t = X();
  for (int i = 0; i < n; ++i) {
    Node leaf = i % 3 ? Y() : Node::number(i);
    t = left ? Node::add({t, leaf}) : Node::mul({leaf, t});
  }
  return t;
}

}  // namespace

TEST_SUITE("ted") {
  TEST_CASE("hand cases") {
    CHECK(tree_edit_distance(X(), X()).distance == 0);
    CHECK(tree_edit_distance(X(), X()).script.empty());
    CHECK(tree_edit_distance(X(), Y()).distance == 1);
    // Mul(2, x) -> x: delete the Mul and the 2.
    const Node m = Node::mul({Node::number(2), X()});
    CHECK(tree_edit_distance(m, X()).distance == 2);
    CHECK(tree_edit_distance(X(), m).distance == 2);
    // Number -> Symbol changes kind.
    CHECK(tree_edit_distance(Node::number(2), X()).distance == 2);
    CHECK(distance_to_score(3, 10) == doctest::Approx(70));
    CHECK(distance_to_score(0, 10) == 100);
    CHECK(distance_to_score(10, 10) == 0);
    CHECK(distance_to_score(25, 10) == 0);
    CHECK(distance_to_score(Rational(1), 1000000) < 100);
  }

  TEST_CASE("cost model bounds") {
    CostModel cm;
    CHECK_NOTHROW(cm.validate());
    cm.rename_cost = 3;
    CHECK_THROWS_AS(cm.validate(), ConfigError);
    cm = {};
    cm.kind_change_cost = 5;
    CHECK_THROWS_AS(cm.validate(), ConfigError);
    cm = {};
    cm.insert_cost = -1;
    CHECK_THROWS_AS(cm.validate(), ConfigError);
  }

  TEST_CASE("scripts replay to the ground truth at the reported cost") {
    testing::TreeFuzzer fz(11);
    for (int i = 0; i < 1500; ++i) {
      const Node a = canonical(fz.tree(3)), b = canonical(fz.tree(3));
      const TedResult r = tree_edit_distance(a, b);
      INFO(to_sexpr(a) << " -> " << to_sexpr(b));
      CHECK(apply_edit_script(a, r.script) == b);
      CHECK(script_cost(r.script) == r.distance);
      CHECK(tree_edit_distance(b, a).distance == r.distance);
    }
  }

  TEST_CASE("agrees with exhaustive mapping search") {
    const auto trees = testing::enumerate_trees(4);
    int mismatches = 0;
    for (std::size_t i = 0; i < trees.size(); ++i) {
      for (std::size_t j = i; j < trees.size(); j += 7) {
        const auto fast = as_int(tree_edit_distance(trees[i], trees[j]).distance);
        const auto slow = testing::brute_force_ted(trees[i], trees[j]);
        if (fast != slow) {
          ++mismatches;
          MESSAGE(to_sexpr(trees[i]) << " vs " << to_sexpr(trees[j]) << ": " << fast << " != " << slow);
        }
      }
    }
    CHECK(mismatches == 0);
  }

  TEST_CASE("triangle inequality on small trees") {
    testing::TreeFuzzer fz(3);
    for (int i = 0; i < 300; ++i) {
      const Node a = fz.tree(2), b = fz.tree(2), c = fz.tree(2);
      CHECK(tree_edit_distance(a, c).distance <=
            tree_edit_distance(a, b).distance + tree_edit_distance(b, c).distance);
    }
  }

  TEST_CASE("rename never beats delete plus insert") {
    CostModel cm;
    cm.rename_cost = 2;
    cm.kind_change_cost = 2;
    CHECK_NOTHROW(cm.validate());
    CHECK(tree_edit_distance(X(), Y(), cm).distance == 2);
  }

  TEST_CASE("rational costs stay exact") {
    CostModel cm;
    cm.insert_cost = make_rational(1, 3);
    cm.delete_cost = make_rational(1, 2);
    cm.rename_cost = make_rational(1, 4);
    cm.kind_change_cost = make_rational(5, 6);
    const Node a = parse_latex("x + y"), b = parse_latex("x y z");
    const TedResult r = tree_edit_distance(a, b, cm);
    CHECK(script_cost(r.script, cm) == r.distance);
    CHECK(apply_edit_script(a, r.script) == b);
  }

  TEST_CASE("prediction view of the script") {
    const Node gt = canonical(parse_latex("\\frac{m}{2\\pi\\hbar^2}"));
    const Node pred = canonical(parse_latex("\\frac{m}{\\pi\\hbar^2}"));
    const TedResult r = tree_edit_distance(pred, gt);
    REQUIRE(r.script.size() == 1);
    CHECK(r.script[0].kind == EditKind::Insert);
    CHECK(prediction_view(r.script[0].kind) == EditKind::Delete);
    CHECK(r.script[0].after == "1/2");
  }

  TEST_CASE("500-node trees within a second") {
    const Node a = comb(250, true), b = comb(250, false);
    REQUIRE(node_count(a) >= 500);
    const auto t0 = std::chrono::steady_clock::now();
    const TedResult r = tree_edit_distance(a, b);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(r.distance > 0);
    CHECK(secs < 1.0);
  }

  TEST_CASE("score properties") {
    const Node gt = parse_latex("\\frac{m}{\\pi \\hbar^2}");
    const GradeResult same = seed_score(gt, gt);
    CHECK(same.score == 100);
    CHECK(same.equivalent);
    const GradeResult off = seed_score(parse_latex("\\frac{m}{2\\pi \\hbar^2}"), gt);
    CHECK(off.score > 0);
    CHECK(off.score < 100);
    CHECK_FALSE(off.equivalent);
    CHECK(off.relative_distance > 0);
    // More damage never scores higher.
    const GradeResult worse = seed_score(parse_latex("\\frac{m^2}{2\\pi \\hbar}"), gt);
    CHECK(worse.score <= off.score);
  }
}
