#include "fodb/metrics.hpp"

#include <algorithm>

namespace fodb {

Rational complexity(const UpdateCollection& coll, const Formula& f) {
  std::optional<int> best;
  for (const Update& u : coll.updates) {
    if (!is_satisfactory(u, f)) continue;
    const int n = norm(u, f);
    if (!best || n < *best) best = n;
  }
  return Rational(best.value_or(0));
}

Rational complexity_of_set(const UpdateCollection& coll, const std::vector<Formula>& fs) {
  std::vector<Formula> distinct;
  for (const Formula& f : fs) add_formula(distinct, f);
  Rational sum;
  for (const Formula& f : distinct) sum = sum + complexity(coll, f);
  return sum;
}

std::vector<Formula> relevant_propositions(const Update& u, const std::vector<Formula>& fs,
                                           const BoundConfig& cfg) {
  BoundConfig seeded = cfg;
  std::vector<Structure> seeds;
  for (const Database& d : u.databases) seeds.push_back(d.structure);
  for (const Structure& s : cfg.seeds) seeds.push_back(s);
  seeded.seeds = std::move(seeds);

  const Theory& t = u.base().theory;
  std::vector<Formula> distinct;
  for (const Formula& f : fs) add_formula(distinct, f);
  std::vector<Formula> out;
  for (const Formula& f : distinct) {
    if (!is_satisfactory(u, f)) continue;
    if (entails(t, f, seeded).fails()) out.push_back(f);
  }
  return out;
}

RelevancyResult relevancy(const UpdateCollection& coll, const Deduction& ded,
                          const BoundConfig& cfg) {
  RelevancyResult r;
  r.validity = is_valid_deduction(ded, cfg);
  if (r.validity.fails()) {
    r.value = Rational(0);
    return r;
  }
  if (r.validity.unknown()) r.caveats.push_back("validity-assumed");

  // Smallest update satisfactory for the conclusion: by norm, then by number
  // of databases, then by collection order.
  std::optional<std::size_t> best;
  int best_norm = 0;
  for (std::size_t i = 0; i < coll.updates.size(); ++i) {
    const Update& u = coll.updates[i];
    if (!is_satisfactory(u, ded.conclusion)) continue;
    const int n = norm(u, ded.conclusion);
    if (!best || n < best_norm ||
        (n == best_norm && u.length() < coll.updates[*best].length())) {
      best = i;
      best_norm = n;
    }
  }
  if (!best) {
    r.value = Rational(0);
    return r;
  }
  r.chosen = best;
  const std::vector<Formula> support = support_of(ded);
  r.relevant = relevant_propositions(coll.updates[*best], support, cfg);
  r.value = Rational(static_cast<std::int64_t>(r.relevant.size()),
                     static_cast<std::int64_t>(support.size()));
  return r;
}

InformativityResult informativity(const UpdateCollection& coll, const Deduction& ded,
                                  const BoundConfig& cfg) {
  InformativityResult out;
  out.complexity = complexity_of_set(coll, support_of(ded));
  out.relevancy = relevancy(coll, ded, cfg);
  out.value = out.complexity * out.relevancy.value;
  return out;
}

InformativityResult informativity_of_proposition(const UpdateCollection& coll, const Formula& f,
                                                 const BoundConfig& cfg) {
  return informativity(coll, Deduction{{f}, {}, f}, cfg);
}

}  // namespace fodb
