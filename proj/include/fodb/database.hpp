#pragma once

#include <optional>
#include <vector>

#include "fodb/structure.hpp"
#include "fodb/syntax.hpp"

namespace fodb {

// Finite ordered list of sentences, deduplicated by structural equality.
class Theory {
 public:
  Theory() = default;
  explicit Theory(std::vector<Formula> sentences);  // throws on non-sentences

  const std::vector<Formula>& sentences() const { return sentences_; }
  bool empty() const { return sentences_.empty(); }
  std::size_t size() const { return sentences_.size(); }
  std::vector<Symbol> symbols() const;

  bool operator==(const Theory& o) const;
  bool operator!=(const Theory& o) const { return !(*this == o); }

 private:
  std::vector<Formula> sentences_;
};

// A database pairs a structure with a theory true in it. Construction via
// make_database enforces correctness; structural operations in paper mode
// may later break it (is_correct reports, the update machinery warns).
struct Database {
  Structure structure;
  Theory theory;
};

// Returns the pair iff every theory sentence is interpreted and true in the
// structure; throws ValidationError naming the first offender otherwise.
Database make_database(Structure a, Theory t);

struct CorrectnessCheck {
  bool ok = true;
  std::optional<Formula> witness;  // first violated sentence when !ok
};

CorrectnessCheck is_correct(const Database& d);

}  // namespace fodb
