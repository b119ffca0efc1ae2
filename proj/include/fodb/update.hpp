#pragma once

#include <optional>
#include <vector>

#include "fodb/ops.hpp"

namespace fodb {

// Finite sequence of databases, consecutive pairs linked by one structural
// operation, all sharing one theory.
struct Update {
  std::vector<Database> databases;            // nonempty
  std::vector<OperationDescriptor> ops;       // size == databases.size() - 1
  OpMode mode = OpMode::Paper;
  std::vector<std::vector<Formula>> step_theory_breaks;  // per op

  const Database& base() const { return databases.front(); }
  const Database& final_db() const { return databases.back(); }
  std::size_t length() const { return databases.size(); }
};

// Applies ops to base in sequence.
Update make_update(const Database& base, const std::vector<OperationDescriptor>& ops, OpMode mode);

// Re-applies each descriptor and checks the given chain step by step;
// throws ValidationError carrying the index of the first illegal step.
Update validate_update(const std::vector<Database>& dbs,
                       const std::vector<OperationDescriptor>& ops, OpMode mode);

// True iff the final structure satisfies f.
bool is_satisfactory(const Update& u, const Formula& f);

// Least index at which f holds; only defined on satisfactory updates.
int norm(const Update& u, const Formula& f);

// Collection of updates over one base database (identical encodings).
struct UpdateCollection {
  std::vector<Update> updates;
};

UpdateCollection make_collection(std::vector<Update> updates);

// Bounded breadth-first search for a satisfactory update of minimal norm.
// The symbol pool is symbols_of(f) minus the base signature; states are
// deduplicated by canonical encoding; ties resolve to the first successor
// in enumeration order.
std::optional<Update> search_minimal_update(const Database& d, const Formula& f, int depth,
                                            int fresh_budget, OpMode mode);

struct Acceptability {
  bool acceptable = false;        // conclusive when true
  std::optional<Update> witness;  // absent means not-found-up-to-bounds
};

Acceptability is_acceptable(const Database& d, const Formula& f, int depth, int fresh_budget,
                            OpMode mode);

}  // namespace fodb
