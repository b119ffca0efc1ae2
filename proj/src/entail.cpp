#include "fodb/entail.hpp"

#include <algorithm>
#include <set>

#include "fodb/errors.hpp"

namespace fodb {

namespace {

struct CapExceeded {};

// Joint signature of the check: theory symbols plus formula symbols.
// Symbols reused at inconsistent arities make the check meaningless, so they
// reject early.
std::vector<Symbol> joint_symbols(const Theory& t, const Formula& f) {
  std::map<std::string, Symbol> out;
  auto add = [&](const Symbol& s) {
    auto [it, inserted] = out.emplace(s.name, s);
    if (!inserted && !(it->second == s)) {
      throw ValidationError("symbol '" + s.name + "' used at two different arities");
    }
  };
  for (const Symbol& s : t.symbols()) add(s);
  for (const Symbol& s : symbols_of(f)) add(s);
  std::vector<Symbol> v;
  for (auto& [_, s] : out) v.push_back(s);
  // Constants first, then relations, each alphabetical.
  std::stable_sort(v.begin(), v.end(), [](const Symbol& a, const Symbol& b) {
    if (a.kind != b.kind) return a.kind == SymbolKind::Constant;
    return a.name < b.name;
  });
  return v;
}

std::vector<Tuple> all_tuples(int arity, int size) {
  std::vector<Tuple> out;
  Tuple cur(arity, 0);
  while (true) {
    out.push_back(cur);
    int i = arity - 1;
    while (i >= 0 && static_cast<int>(cur[i]) == size - 1) {
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

class CountermodelSearch {
 public:
  CountermodelSearch(const Theory& t, const Formula& f, const BoundConfig& cfg)
      : theory_(t), target_(f), cfg_(cfg), symbols_(joint_symbols(t, f)) {
    // Position after which each sentence becomes checkable.
    auto trigger = [&](const Formula& g) {
      int pos = -1;
      for (const Symbol& s : symbols_of(g)) {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
          if (symbols_[i].name == s.name) pos = std::max(pos, static_cast<int>(i));
        }
      }
      return pos;
    };
    checks_.resize(symbols_.size());
    for (const Formula& g : theory_.sentences()) {
      const int p = trigger(g);
      if (p < 0) {
        domain_only_theory_.push_back(&g);
      } else {
        checks_[p].push_back(&g);
      }
    }
    target_trigger_ = trigger(target_);
  }

  Verdict run() {
    budget_ = cfg_.max_candidates;
    try {
      for (int size = 1; size <= cfg_.max_domain; ++size) {
        size_ = size;
        labels_.clear();
        for (int i = 1; i <= size; ++i) labels_.push_back("e" + std::to_string(i));
        bool domain_ok = true;
        Structure bare = Structure::from_parts(Signature{}, labels_, {}, {});
        for (const Formula* g : domain_only_theory_) {
          if (!evaluate(bare, *g)) {
            domain_ok = false;
            break;
          }
        }
        if (!domain_ok) continue;
        if (target_trigger_ < 0 && evaluate(bare, target_)) continue;
        consts_.clear();
        rels_.clear();
        if (assign(0)) {
          return Verdict{Verdict::Kind::Fails, 0, std::move(witness_), ""};
        }
      }
    } catch (const CapExceeded&) {
      return Verdict{Verdict::Kind::Unknown, 0, std::nullopt,
                     "enumeration cap of " + std::to_string(cfg_.max_candidates) + " exceeded"};
    }
    return Verdict{Verdict::Kind::HoldsUpToBound, cfg_.max_domain, std::nullopt, ""};
  }

 private:
  bool step_budget() {
    if (budget_ == 0) throw CapExceeded{};
    --budget_;
    return true;
  }

  Structure current(std::size_t upto) const {
    Signature sig;
    for (std::size_t i = 0; i < upto; ++i) sig.add(symbols_[i]);
    return Structure::from_parts(std::move(sig), labels_, consts_, rels_);
  }

  // Checks everything that became decidable once symbols_[pos] is assigned;
  // true when the branch survives.
  bool branch_alive(std::size_t pos) {
    Structure cur = current(pos + 1);
    for (const Formula* g : checks_[pos]) {
      if (!evaluate(cur, *g)) return false;
    }
    if (static_cast<int>(pos) == target_trigger_ && evaluate(cur, target_)) return false;
    return true;
  }

  bool assign(std::size_t pos) {
    if (pos == symbols_.size()) {
      witness_ = current(pos);
      return true;
    }
    const Symbol& s = symbols_[pos];
    if (s.kind == SymbolKind::Constant) {
      for (int e = 0; e < size_; ++e) {
        step_budget();
        consts_[s.name] = static_cast<ElementId>(e);
        if (branch_alive(pos) && assign(pos + 1)) return true;
      }
      consts_.erase(s.name);
      return false;
    }
    const std::vector<Tuple> tuples = all_tuples(s.arity, size_);
    if (tuples.size() > 22) {
      throw CapExceeded{};  // 2^k subsets would dwarf any budget
    }
    const std::uint64_t limit = std::uint64_t{1} << tuples.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
      step_budget();
      std::set<Tuple> interp;
      for (std::size_t i = 0; i < tuples.size(); ++i) {
        if (mask & (std::uint64_t{1} << i)) interp.insert(tuples[i]);
      }
      rels_[s.name] = std::move(interp);
      if (branch_alive(pos) && assign(pos + 1)) return true;
    }
    rels_.erase(s.name);
    return false;
  }

  const Theory& theory_;
  const Formula& target_;
  const BoundConfig& cfg_;
  std::vector<Symbol> symbols_;
  std::vector<std::vector<const Formula*>> checks_;
  std::vector<const Formula*> domain_only_theory_;
  int target_trigger_ = -1;

  int size_ = 1;
  std::vector<std::string> labels_;
  std::map<std::string, ElementId> consts_;
  std::map<std::string, std::set<Tuple>> rels_;
  std::uint64_t budget_ = 0;
  std::optional<Structure> witness_;
};

bool seed_applies(const Structure& seed, const std::vector<Symbol>& joint) {
  for (const Symbol& s : joint) {
    if (!seed.interprets(s)) return false;
  }
  return true;
}

}  // namespace

Verdict entails(const Theory& t, const Formula& f, const BoundConfig& cfg) {
  if (!is_sentence(f)) throw EvalError("entailment check requires a sentence");
  const std::vector<Symbol> joint = joint_symbols(t, f);
  for (const Structure& seed : cfg.seeds) {
    if (!seed_applies(seed, joint)) continue;
    if (models_theory(seed, t.sentences()) && !evaluate(seed, f)) {
      return Verdict{Verdict::Kind::Fails, 0, seed, ""};
    }
  }
  CountermodelSearch search(t, f, cfg);
  return search.run();
}

Verdict is_tautology(const Formula& f, const BoundConfig& cfg) {
  return entails(Theory{}, f, cfg);
}

std::vector<Formula> support_of(const Deduction& ded) {
  std::vector<Formula> out;
  for (const Formula& p : ded.premises) add_formula(out, p);
  add_formula(out, ded.conclusion);
  return out;
}

Verdict is_valid_deduction(const Deduction& ded, const BoundConfig& cfg) {
  for (const Formula& f : ded.premises) {
    if (!is_sentence(f)) throw EvalError("deduction premises must be sentences");
  }
  if (!is_sentence(ded.conclusion)) throw EvalError("deduction conclusion must be a sentence");
  // A conclusion that repeats a premise is valid at every domain size.
  if (contains_formula(ded.premises, ded.conclusion)) {
    return Verdict{Verdict::Kind::HoldsUpToBound, cfg.max_domain, std::nullopt, ""};
  }
  return entails(Theory{ded.premises}, ded.conclusion, cfg);
}

}  // namespace fodb
