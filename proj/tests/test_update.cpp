#include <doctest.h>

#include "fodb/corpus.hpp"
#include "fodb/update.hpp"
#include "support/oracle.hpp"

using namespace fodb;

TEST_CASE("validate_update accepts the transcribed chains") {
  Fixtures fx = make_fixtures();
  Update u = validate_update({fx.d0, fx.d1}, {fx.op_insert_b}, OpMode::Paper);
  CHECK(u.length() == 2);
  Update singleton = validate_update({fx.d0}, {}, OpMode::Paper);
  CHECK(singleton.length() == 1);
}

TEST_CASE("validate_update rejects a jump of more than one operation") {
  Fixtures fx = make_fixtures();
  // D'3 differs from D0 in several symbols; no single descriptor bridges them
  try {
    validate_update({fx.d0, fx.dp3},
                    {OperationDescriptor{OpKind::Delete, OpPayload::RelTupleRemove, "C",
                                         {ElemRef{false, "S_"}}}},
                    OpMode::Paper);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("step 0") != std::string::npos);
  }
}

TEST_CASE("validate_update rejects theory drift") {
  Fixtures fx = make_fixtures();
  Database other{fx.d1.structure, Theory{}};
  CHECK_THROWS_AS(validate_update({fx.d0, other}, {fx.op_insert_b}, OpMode::Paper),
                  ValidationError);
}

TEST_CASE("satisfaction of the worked-example updates") {
  Fixtures fx = make_fixtures();
  CHECK(is_satisfactory(fx.u1, fx.f_eb));
  CHECK(is_satisfactory(fx.u1, fx.f_hlb));
  CHECK(is_satisfactory(fx.u3, fx.f_es_and_not_hsa));
  // the recorded PD-1 reading: s = a holds in the final structure
  CHECK(is_satisfactory(fx.u3, fx.f_s_eq_a));
  CHECK_FALSE(is_satisfactory(fx.u0, fx.f_eb));
}

TEST_CASE("norm") {
  Fixtures fx = make_fixtures();
  CHECK(norm(fx.u1, fx.f_eb) == 1);
  CHECK(norm(fx.u0, fx.f_ea) == 0);  // true at the base
  CHECK(norm(fx.u2, fx.f_neg_eb) == 4);
  CHECK_THROWS_AS(norm(fx.u0, fx.f_eb), ValidationError);  // unsatisfactory
  for (const Update* u : {&fx.u0, &fx.u1, &fx.u2, &fx.u3}) {
    for (const Formula* f : {&fx.f_eb, &fx.f_neg_eb, &fx.f_ea, &fx.f_neg_cs}) {
      if (!is_satisfactory(*u, *f)) continue;
      const int n = norm(*u, *f);
      CHECK(n <= static_cast<int>(u->length()) - 1);
      CHECK((n == 0) == evaluate(u->base().structure, *f));
    }
  }
}

TEST_CASE("satisfaction is not monotone along an update") {
  Fixtures fx = make_fixtures();
  // E(b) holds at index 3 of the long chain and fails at index 4
  CHECK(evaluate(fx.u2.databases[3].structure, fx.f_eb));
  CHECK_FALSE(evaluate(fx.u2.databases[4].structure, fx.f_eb));
  CHECK_FALSE(is_satisfactory(fx.u2, fx.f_eb));
}

TEST_CASE("is_acceptable") {
  Fixtures fx = make_fixtures();
  Acceptability found = is_acceptable(fx.d0, fx.f_eb, 2, 1, OpMode::Paper);
  CHECK(found.acceptable);
  REQUIRE(found.witness.has_value());
  CHECK(found.witness->ops.size() == 1);

  Acceptability trivial = is_acceptable(fx.d0, fx.f_ea, 2, 1, OpMode::Paper);
  CHECK(trivial.acceptable);
  CHECK(trivial.witness->length() == 1);

  Formula contradiction =
      parse_formula("exists x ~(x = x)", fx.d0.structure.sig()).formula;
  Acceptability none = is_acceptable(fx.d0, contradiction, 3, 1, OpMode::Paper);
  CHECK_FALSE(none.acceptable);
}

TEST_CASE("search_minimal_update on the fixtures") {
  Fixtures fx = make_fixtures();
  auto w1 = search_minimal_update(fx.d0, fx.f_eb, 3, 1, OpMode::Paper);
  REQUIRE(w1.has_value());
  CHECK(norm(*w1, fx.f_eb) == 1);

  auto w0 = search_minimal_update(fx.d0, fx.f_ea, 3, 1, OpMode::Paper);
  REQUIRE(w0.has_value());
  CHECK(w0->length() == 1);
  CHECK(norm(*w0, fx.f_ea) == 0);

  // C(b) becomes true by binding b to an element of C; the deterministic
  // tie-break picks the first domain element, S_
  auto wc = search_minimal_update(fx.d0, fx.f_cb, 2, 1, OpMode::Paper);
  REQUIRE(wc.has_value());
  CHECK(norm(*wc, fx.f_cb) == 1);
  CHECK(wc->ops.at(0).to_line() == "insert const b = S_");

  // every returned update revalidates
  Update checked = validate_update(wc->databases, wc->ops, OpMode::Paper);
  CHECK(checked.length() == wc->length());
}

TEST_CASE("search agrees with the exhaustive oracle on random databases (smoke)") {
  test::Rng rng(31337);
  Signature sig;
  sig.add(make_constant("c"));
  sig.add(make_relation("P", 1));
  sig.add(make_relation("R", 2));
  int done = 0;
  for (int i = 0; i < 12; ++i) {
    Structure a = test::random_structure(rng, sig, 2);
    Theory t(test::random_true_theory(rng, a, 2));
    Database db{a, t};
    std::vector<Symbol> syms = sig.symbols();
    syms.push_back(make_constant("k"));
    Formula f = test::random_sentence(rng, syms, 3);
    const OpMode mode = rng.chance(0.5) ? OpMode::Paper : OpMode::Strict;
    auto got = search_minimal_update(db, f, 2, 1, mode);
    auto want = test::brute_min_norm(db, f, 2, 1, mode);
    CHECK(got.has_value() == want.has_value());
    if (got && want) {
      CHECK(norm(*got, f) == *want);
      CHECK(is_satisfactory(*got, f));
    }
    ++done;
  }
  CHECK(done == 12);
}

TEST_CASE("collections require a shared base") {
  Fixtures fx = make_fixtures();
  CHECK_THROWS_AS(make_collection({fx.u0, make_update(fx.d1, {}, OpMode::Paper)}),
                  ValidationError);
  CHECK(make_collection({fx.u0, fx.u1, fx.u2}).updates.size() == 3);
}
