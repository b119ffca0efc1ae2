#include <doctest.h>

#include <string>

#include "fodb/corpus.hpp"
#include "fodb/ops.hpp"
#include "support/oracle.hpp"

using namespace fodb;

TEST_CASE("insertion chain: binding b, then extending E with a fresh element") {
  Fixtures fx = make_fixtures();
  // D1: domain unchanged, b names the existing A_
  CHECK(fx.d1.structure.canonical_encoding() == fx.d1_expected.canonical_encoding());
  CHECK(fx.d1.structure.domain_size() == 3);
  // D2: domain gains B_, E gains (B_)
  CHECK(fx.d2.structure.canonical_encoding() == fx.d2_expected.canonical_encoding());
  CHECK(fx.d2.structure.domain_size() == 4);
}

TEST_CASE("insertion proviso: rebinding b to a fresh element falsifies the disjunction") {
  Fixtures fx = make_fixtures();
  try {
    apply_insertion(fx.d1, fx.op_insert_b_fresh, OpMode::Paper);
    FAIL("expected OperationError");
  } catch (const OperationError& e) {
    CHECK(std::string(e.what()).find("C(x) | E(x)") != std::string::npos);
  }
}

TEST_CASE("identity insertions are accepted with a flag; rebinds are rejected") {
  Fixtures fx = make_fixtures();
  OperationDescriptor same{OpKind::Insert, OpPayload::ConstBind, "s", {ElemRef{false, "S_"}}};
  ApplyResult r = apply_insertion(fx.d0, same, OpMode::Paper);
  CHECK(r.identity);
  CHECK(r.database.structure.canonical_encoding() == fx.d0.structure.canonical_encoding());

  OperationDescriptor rebind{OpKind::Insert, OpPayload::ConstBind, "s", {ElemRef{false, "L_"}}};
  CHECK_THROWS_AS(apply_insertion(fx.d0, rebind, OpMode::Paper), OperationError);
}

TEST_CASE("insertion shape errors") {
  Fixtures fx = make_fixtures();
  // arity mismatch against the declared relation
  OperationDescriptor bad{OpKind::Insert, OpPayload::RelTuple, "H", {ElemRef{false, "S_"}}};
  CHECK_THROWS_AS(apply_insertion(fx.d0, bad, OpMode::Paper), OperationError);
  // fresh label colliding with an existing element
  OperationDescriptor clash{OpKind::Insert, OpPayload::RelTuple, "E", {ElemRef{true, "S_"}}};
  CHECK_THROWS_AS(apply_insertion(fx.d0, clash, OpMode::Paper), OperationError);
  // unknown element label
  OperationDescriptor missing{OpKind::Insert, OpPayload::ConstBind, "b", {ElemRef{false, "Z_"}}};
  CHECK_THROWS_AS(apply_insertion(fx.d0, missing, OpMode::Paper), OperationError);
}

TEST_CASE("deletion chain of the worked example, paper mode") {
  Fixtures fx = make_fixtures();
  ApplyResult r1 = apply_deletion(
      fx.d0,
      OperationDescriptor{OpKind::Delete, OpPayload::ConstReinterpret, "s", {ElemRef{false, "A_"}}},
      OpMode::Paper);
  CHECK(r1.database.structure.canonical_encoding() == fx.dp1_expected.canonical_encoding());
  REQUIRE(r1.theory_breaks.size() == 1);
  CHECK(print_formula(r1.theory_breaks[0]) == "C(s)");

  ApplyResult r2 = apply_deletion(r1.database,
                                  OperationDescriptor{OpKind::Delete, OpPayload::RelTupleRemove,
                                                      "H",
                                                      {ElemRef{false, "S_"}, ElemRef{false, "A_"}}},
                                  OpMode::Paper);
  CHECK(r2.database.structure.canonical_encoding() == fx.dp2_expected.canonical_encoding());
}

TEST_CASE("strict mode enforces the proviso for deletions") {
  Fixtures fx = make_fixtures();
  OperationDescriptor op{OpKind::Delete, OpPayload::ConstReinterpret, "s", {ElemRef{false, "A_"}}};
  CHECK_THROWS_AS(apply_deletion(fx.d0, op, OpMode::Strict), OperationError);
}

TEST_CASE("dropping C from D'1 cannot reproduce the transcribed structure") {
  Fixtures fx = make_fixtures();
  ApplyResult r = apply_deletion(
      fx.dp1, OperationDescriptor{OpKind::Delete, OpPayload::RelDrop, "C", {}}, OpMode::Paper);
  // H stays untouched and S_ stays in the domain (it occurs in an H tuple)
  CHECK(r.database.structure.rel_interp("H")->size() == 2);
  CHECK(r.database.structure.domain_size() == 3);
  CHECK(r.database.structure.canonical_encoding() != fx.ap3_printed.canonical_encoding());
}

TEST_CASE("deletion errors") {
  Fixtures fx = make_fixtures();
  // reinterpret to the current element
  OperationDescriptor same{OpKind::Delete, OpPayload::ConstReinterpret, "s",
                           {ElemRef{false, "S_"}}};
  CHECK_THROWS_AS(apply_deletion(fx.d0, same, OpMode::Paper), OperationError);
  // removing an absent tuple
  OperationDescriptor absent{OpKind::Delete, OpPayload::RelTupleRemove, "H",
                             {ElemRef{false, "A_"}, ElemRef{false, "A_"}}};
  CHECK_THROWS_AS(apply_deletion(fx.d0, absent, OpMode::Paper), OperationError);
  // symbol not in the signature
  OperationDescriptor missing{OpKind::Delete, OpPayload::ConstDrop, "b", {}};
  CHECK_THROWS_AS(apply_deletion(fx.d0, missing, OpMode::Paper), OperationError);
}

TEST_CASE("free_for") {
  Fixtures fx = make_fixtures();
  const Structure& a0 = fx.d0.structure;
  // A_ is named by constant a, so it is not free for E
  CHECK_FALSE(free_for(a0, *a0.element_by_label("A_"), "E"));
  // a lone unnamed element is free for anything
  Signature sig;
  sig.add(make_relation("E", 1));
  Structure lone = Structure::make(sig, {"e"}, {}, {});
  CHECK(free_for(lone, 0, "E"));
  // in D2, B_ occurs only in E's own tuples and no constant names it
  const Structure& a2 = fx.d2.structure;
  CHECK(free_for(a2, *a2.element_by_label("B_"), "E"));
}

TEST_CASE("constant drop removes the element exactly when free") {
  Signature sig;
  sig.add(make_constant("c"));
  sig.add(make_constant("d"));
  sig.add(make_relation("P", 1));
  Structure a = Structure::make(sig, {"e1", "e2"}, {{"c", "e1"}, {"d", "e2"}}, {{"P", {{"e1"}}}});
  Database db{a, Theory{}};
  // e2 is free: no other constant, no tuple
  ApplyResult r1 = apply_deletion(
      db, OperationDescriptor{OpKind::Delete, OpPayload::ConstDrop, "d", {}}, OpMode::Paper);
  CHECK(r1.database.structure.domain_size() == 1);
  CHECK_FALSE(r1.database.structure.sig().contains("d"));
  // e1 occurs in P: kept
  ApplyResult r2 = apply_deletion(
      db, OperationDescriptor{OpKind::Delete, OpPayload::ConstDrop, "c", {}}, OpMode::Paper);
  CHECK(r2.database.structure.domain_size() == 2);
}

TEST_CASE("relation drop removes exactly the free elements of its tuples") {
  Signature sig;
  sig.add(make_constant("c"));
  sig.add(make_relation("P", 1));
  sig.add(make_relation("Q", 1));
  Structure a = Structure::make(sig, {"e1", "e2", "e3"}, {{"c", "e1"}},
                                {{"P", {{"e1"}, {"e2"}, {"e3"}}}, {"Q", {{"e3"}}}});
  Database db{a, Theory{}};
  ApplyResult r = apply_deletion(
      db, OperationDescriptor{OpKind::Delete, OpPayload::RelDrop, "P", {}}, OpMode::Paper);
  // e1 named by c, e3 occurs in Q: both stay; e2 is free and goes
  CHECK(r.database.structure.domain_size() == 2);
  CHECK(r.database.structure.element_by_label("e2") == std::nullopt);
  CHECK_FALSE(r.database.structure.sig().contains("P"));
  // no remaining interpretation references a removed element (from_parts
  // would have rejected the rebuild otherwise)
  CHECK(r.database.structure.rel_interp("Q")->size() == 1);
}

TEST_CASE("enumerate_successors on the base fixture") {
  Fixtures fx = make_fixtures();
  auto succs = enumerate_successors(fx.d0, OpMode::Paper, 0, {});
  int h_removals = 0, reinterpretations = 0, drops = 0, insertions = 0;
  for (const Successor& s : succs) {
    if (s.op.kind == OpKind::Insert) ++insertions;
    if (s.op.payload == OpPayload::RelTupleRemove && s.op.symbol == "H") ++h_removals;
    if (s.op.payload == OpPayload::ConstReinterpret) ++reinterpretations;
    if (s.op.payload == OpPayload::ConstDrop || s.op.payload == OpPayload::RelDrop) ++drops;
  }
  CHECK(h_removals == 2);
  CHECK(reinterpretations == 6);  // three constants, two targets each
  CHECK(drops == 6);
  CHECK(insertions > 0);  // tuple insertions into existing relations pass the proviso
  for (const Successor& s : succs) {
    CHECK(fx.d0.structure.sig().contains(s.op.symbol));  // no new symbols without a pool
  }
  // deterministic
  auto again = enumerate_successors(fx.d0, OpMode::Paper, 0, {});
  REQUIRE(again.size() == succs.size());
  for (std::size_t i = 0; i < succs.size(); ++i) CHECK(again[i].op == succs[i].op);
}

TEST_CASE("enumerate_successors with a pool constant") {
  Fixtures fx = make_fixtures();
  auto succs = enumerate_successors(fx.d0, OpMode::Paper, 1, {make_constant("b")});
  std::vector<std::string> b_inserts;
  for (const Successor& s : succs) {
    if (s.op.kind == OpKind::Insert && s.op.symbol == "b") b_inserts.push_back(s.op.to_line());
  }
  // binding b to a fresh element is not legal here: the new element would
  // falsify forall x (C(x) | E(x)), exactly like the rejected chain case
  REQUIRE(b_inserts.size() == 3);
  CHECK(b_inserts[0] == "insert const b = S_");
  CHECK(b_inserts[1] == "insert const b = L_");
  CHECK(b_inserts[2] == "insert const b = A_");

  // with an unconstrained theory the fresh binding is offered too
  Database free_db{fx.d0.structure, Theory{}};
  auto free_succs = enumerate_successors(free_db, OpMode::Paper, 1, {make_constant("b")});
  bool saw_fresh = false;
  for (const Successor& s : free_succs) {
    if (s.op.to_line() == "insert const b = new _1") saw_fresh = true;
  }
  CHECK(saw_fresh);
}

TEST_CASE("a pinned-down database has no strict successors") {
  Signature sig;
  sig.add(make_constant("c"));
  sig.add(make_relation("P", 1));
  Structure a = Structure::make(sig, {"e"}, {{"c", "e"}}, {{"P", {{"e"}}}});
  Theory t({parse_formula("P(c)", sig).formula, parse_formula("forall x (x = c)", sig).formula});
  Database db = make_database(a, t);
  CHECK(enumerate_successors(db, OpMode::Strict, 0, {}).empty());
}

TEST_CASE("successors change one symbol only and reapply bit-for-bit") {
  test::Rng rng(5150);
  Signature sig;
  sig.add(make_constant("c"));
  sig.add(make_constant("d"));
  sig.add(make_relation("P", 1));
  sig.add(make_relation("R", 2));
  int seen = 0;
  for (int i = 0; i < 40 && seen < 1000; ++i) {
    Structure a = test::random_structure(rng, sig, 3);
    Theory t(test::random_true_theory(rng, a, 2));
    Database db{a, t};
    const OpMode mode = rng.chance(0.5) ? OpMode::Paper : OpMode::Strict;
    for (const Successor& s : enumerate_successors(db, mode, 1, {make_constant("k")})) {
      ++seen;
      const Structure& before = db.structure;
      const Structure& after = s.result.database.structure;
      // single-symbol change, compared by label so domain remaps do not matter
      for (const Symbol& sym : before.sig().symbols()) {
        if (sym.name == s.op.symbol) continue;
        if (sym.kind == SymbolKind::Constant) {
          REQUIRE(after.const_interp(sym.name).has_value());
          CHECK(before.label(*before.const_interp(sym.name)) ==
                after.label(*after.const_interp(sym.name)));
        } else {
          auto labelize = [](const Structure& st, const std::set<Tuple>& ts) {
            std::set<std::vector<std::string>> out;
            for (const Tuple& tu : ts) {
              std::vector<std::string> lt;
              for (ElementId e : tu) lt.push_back(st.label(e));
              out.insert(lt);
            }
            return out;
          };
          REQUIRE(after.rel_interp(sym.name) != nullptr);
          CHECK(labelize(before, *before.rel_interp(sym.name)) ==
                labelize(after, *after.rel_interp(sym.name)));
        }
      }
      // strict successors and paper insertions keep the database correct
      if (mode == OpMode::Strict || s.op.kind == OpKind::Insert) {
        CHECK(is_correct(s.result.database).ok);
      }
      // the descriptor reproduces the paired database exactly
      ApplyResult again = apply_operation(db, s.op, mode);
      CHECK(again.database.structure.canonical_encoding() ==
            after.canonical_encoding());
    }
  }
  CHECK(seen > 200);
}

TEST_CASE("ops script lines round-trip through the printer") {
  Fixtures fx = make_fixtures();
  for (const Successor& s : enumerate_successors(fx.d0, OpMode::Paper, 1, {make_constant("b")})) {
    CHECK(parse_ops(s.op.to_line()).at(0) == s.op);
  }
}
