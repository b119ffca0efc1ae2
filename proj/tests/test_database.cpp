#include <doctest.h>

#include "fodb/corpus.hpp"
#include "fodb/database.hpp"
#include "support/oracle.hpp"

using namespace fodb;

TEST_CASE("make_database accepts the base fixture and the empty theory") {
  Fixtures fx = make_fixtures();
  CHECK(fx.d0.theory.size() == 4);
  Database empty = make_database(fx.d0.structure, Theory{});
  CHECK(is_correct(empty).ok);
}

TEST_CASE("make_database rejects a falsified sentence, naming it") {
  Fixtures fx = make_fixtures();
  Structure a_star = Structure::make(
      fx.d1.structure.sig(), {"S_", "L_", "A_", "B_"},
      {{"s", "S_"}, {"l", "L_"}, {"a", "A_"}, {"b", "B_"}},
      {{"C", {{"S_"}, {"L_"}}}, {"E", {{"A_"}}}, {"H", {{"S_", "A_"}, {"L_", "A_"}}}});
  try {
    make_database(a_star, fx.d0.theory);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("C(x) | E(x)") != std::string::npos);
  }
}

TEST_CASE("make_database rejects out-of-signature theory sentences") {
  Fixtures fx = make_fixtures();
  Formula eb = parse_formula("E(b)", fx.d0.structure.sig()).formula;
  CHECK_THROWS_AS(make_database(fx.d0.structure, Theory{{eb}}), ValidationError);
}

TEST_CASE("is_correct reports the first violated sentence") {
  Fixtures fx = make_fixtures();
  CHECK(is_correct(fx.d0).ok);
  // D'1 pairs A'1 with T even though C(s) fails there
  Database broken{fx.dp1.structure, fx.d0.theory};
  CorrectnessCheck c = is_correct(broken);
  CHECK_FALSE(c.ok);
  REQUIRE(c.witness.has_value());
  CHECK(print_formula(*c.witness) == "C(s)");
  CHECK(is_correct(Database{fx.dp1.structure, Theory{}}).ok);
}

TEST_CASE("theory deduplicates structurally and keeps order") {
  Fixtures fx = make_fixtures();
  const Signature& sig = fx.d0.structure.sig();
  Formula cs = parse_formula("C(s)", sig).formula;
  Formula el = parse_formula("~E(l)", sig).formula;
  Theory t({cs, el, cs});
  REQUIRE(t.size() == 2);
  CHECK(t.sentences()[0] == cs);
  CHECK(t.sentences()[1] == el);
  CHECK_THROWS_AS(Theory({parse_formula("C(x)", sig).formula}), ValidationError);
}

TEST_CASE("make_database succeeds exactly when models_theory holds (1000 random pairs)") {
  test::Rng rng(424242);
  Signature sig;
  sig.add(make_constant("c"));
  sig.add(make_relation("P", 1));
  sig.add(make_relation("R", 2));
  for (int i = 0; i < 1000; ++i) {
    Structure a = test::random_structure(rng, sig, 3);
    std::vector<Formula> sentences;
    for (int j = 0; j < 2; ++j) sentences.push_back(test::random_sentence(rng, sig.symbols(), 3));
    Theory t(sentences);
    const bool models = models_theory(a, t.sentences());
    bool made = true;
    try {
      make_database(a, t);
    } catch (const ValidationError&) {
      made = false;
    }
    CHECK(made == models);
  }
}
