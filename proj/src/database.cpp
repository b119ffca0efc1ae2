#include "fodb/database.hpp"

#include <set>

#include "fodb/errors.hpp"

namespace fodb {

Theory::Theory(std::vector<Formula> sentences) {
  for (Formula& f : sentences) {
    if (!is_sentence(f)) {
      throw ValidationError("theory member '" + print_formula(f) + "' has free variables");
    }
    add_formula(sentences_, f);
  }
}

std::vector<Symbol> Theory::symbols() const {
  std::set<Symbol> out;
  for (const Formula& f : sentences_) {
    for (const Symbol& s : symbols_of(f)) out.insert(s);
  }
  return std::vector<Symbol>(out.begin(), out.end());
}

bool Theory::operator==(const Theory& o) const {
  if (sentences_.size() != o.sentences_.size()) return false;
  for (std::size_t i = 0; i < sentences_.size(); ++i) {
    if (sentences_[i] != o.sentences_[i]) return false;
  }
  return true;
}

Database make_database(Structure a, Theory t) {
  for (const Formula& f : t.sentences()) {
    for (const Symbol& s : symbols_of(f)) {
      if (!a.interprets(s)) {
        throw ValidationError("theory sentence '" + print_formula(f) + "' uses symbol '" + s.name +
                              "' not interpreted by the structure");
      }
    }
  }
  for (const Formula& f : t.sentences()) {
    if (!evaluate(a, f)) {
      throw ValidationError("theory sentence '" + print_formula(f) + "' is false in the structure");
    }
  }
  return Database{std::move(a), std::move(t)};
}

CorrectnessCheck is_correct(const Database& d) {
  for (const Formula& f : d.theory.sentences()) {
    if (!evaluate(d.structure, f)) return CorrectnessCheck{false, f};
  }
  return CorrectnessCheck{};
}

}  // namespace fodb
