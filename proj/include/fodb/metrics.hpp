#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fodb/entail.hpp"
#include "fodb/rational.hpp"
#include "fodb/update.hpp"

namespace fodb {

// Minimum norm over the collection's satisfactory updates; 0 when none is
// satisfactory. Always an integer.
Rational complexity(const UpdateCollection& coll, const Formula& f);

// Sum of complexity over the distinct members of fs.
Rational complexity_of_set(const UpdateCollection& coll, const std::vector<Formula>& fs);

// Members of fs the update satisfies and the theory conclusively does not
// entail (a concrete countermodel exists). The update's own structures seed
// the countermodel search.
std::vector<Formula> relevant_propositions(const Update& u, const std::vector<Formula>& fs,
                                           const BoundConfig& cfg);

struct RelevancyResult {
  Rational value;
  Verdict validity;                   // verdict on the deduction itself
  std::optional<std::size_t> chosen;  // index of the selected update in the collection
  std::vector<Formula> relevant;
  std::vector<std::string> caveats;   // e.g. "validity-assumed" on unknown verdicts
};

// Zero for invalid deductions and for conclusions no member update
// satisfies; otherwise the relevant fraction of the support, computed on the
// smallest update satisfactory for the conclusion (norm, then length, then
// collection order).
RelevancyResult relevancy(const UpdateCollection& coll, const Deduction& ded,
                          const BoundConfig& cfg);

struct InformativityResult {
  Rational value;        // complexity * relevancy
  Rational complexity;   // of the support set
  RelevancyResult relevancy;
};

InformativityResult informativity(const UpdateCollection& coll, const Deduction& ded,
                                  const BoundConfig& cfg);

// Informativity of the one-element deduction (premise f, conclusion f).
InformativityResult informativity_of_proposition(const UpdateCollection& coll, const Formula& f,
                                                 const BoundConfig& cfg);

}  // namespace fodb
