#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fodb/database.hpp"

namespace fodb {

// Three-valued outcome of a bounded consequence check. Fails is a conclusive
// certificate (the witness re-checks with evaluate); HoldsUpToBound is sound
// only relative to the bound.
struct Verdict {
  enum class Kind { HoldsUpToBound, Fails, Unknown };

  Kind kind = Kind::Unknown;
  int bound = 0;                     // the exhausted bound, for HoldsUpToBound
  std::optional<Structure> witness;  // the countermodel, for Fails
  std::string reason;                // for Unknown

  bool holds() const { return kind == Kind::HoldsUpToBound; }
  bool fails() const { return kind == Kind::Fails; }
  bool unknown() const { return kind == Kind::Unknown; }
};

struct BoundConfig {
  int max_domain = 4;
  // Checked before enumeration, in order; a seed that interprets the joint
  // signature, models the theory, and falsifies the formula is returned as
  // the countermodel immediately.
  std::vector<Structure> seeds;
  // Cap on enumeration steps; exceeding it yields Unknown.
  std::uint64_t max_candidates = 50'000'000;
};

// Searches for a model of t falsifying f over sig(t) union symbols_of(f),
// seeds first, then domain sizes 1..max_domain with constants assigned
// before relations and interpretations in ascending order. Pruning: a branch
// dies as soon as an assigned prefix falsifies a theory sentence or already
// satisfies f.
Verdict entails(const Theory& t, const Formula& f, const BoundConfig& cfg);

Verdict is_tautology(const Formula& f, const BoundConfig& cfg);

struct Deduction {
  std::vector<Formula> premises;
  std::vector<Formula> steps;  // intermediate formulas, excluded from the support
  Formula conclusion;
};

// Premises plus conclusion, deduplicated structurally, premise order first.
std::vector<Formula> support_of(const Deduction& ded);

// Countermodel search for premises-and-not-conclusion over the joint
// signature. Fails certifies invalidity conclusively. A conclusion that
// repeats a premise short-circuits to HoldsUpToBound.
Verdict is_valid_deduction(const Deduction& ded, const BoundConfig& cfg);

}  // namespace fodb
