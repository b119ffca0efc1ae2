#pragma once

#include <string>
#include <vector>

#include "fodb/database.hpp"

namespace fodb {

// Whether the theory-preservation proviso applies to deletions. Insertions
// always enforce it; the worked examples this engine reproduces require
// deletions that break the theory, hence the default.
enum class OpMode { Paper, Strict };

const char* op_mode_name(OpMode m);

enum class OpKind { Insert, Delete };

// Payload shapes, one per clause of the two operation definitions:
//   ConstBind        insert: bind a constant to an existing or fresh element
//   RelTuple         insert: add one tuple (args existing or fresh)
//   ConstReinterpret delete, symbol kept: move a constant to another element
//   ConstDrop        delete, symbol removed: drop a constant
//   RelTupleRemove   delete, symbol kept: remove one named tuple
//   RelDrop          delete, symbol removed: drop a relation
enum class OpPayload { ConstBind, RelTuple, ConstReinterpret, ConstDrop, RelTupleRemove, RelDrop };

struct ElemRef {
  bool fresh = false;  // true: create a new element with this label
  std::string label;

  bool operator==(const ElemRef& o) const { return fresh == o.fresh && label == o.label; }
};

struct OperationDescriptor {
  OpKind kind = OpKind::Insert;
  OpPayload payload = OpPayload::ConstBind;
  std::string symbol;
  std::vector<ElemRef> args;

  std::string to_line() const;  // .ops script form
  bool operator==(const OperationDescriptor& o) const {
    return kind == o.kind && payload == o.payload && symbol == o.symbol && args == o.args;
  }
};

struct ApplyResult {
  Database database;
  // Theory sentences false after the step; nonempty only for paper-mode
  // deletions (anything else rejects instead).
  std::vector<Formula> theory_breaks;
  // Explicit no-op insertion (constant rebound to its current element, or
  // tuple already present). Accepted in scripts, excluded from search.
  bool identity = false;
};

ApplyResult apply_insertion(const Database& d, const OperationDescriptor& op, OpMode mode);
ApplyResult apply_deletion(const Database& d, const OperationDescriptor& op, OpMode mode);
ApplyResult apply_operation(const Database& d, const OperationDescriptor& op, OpMode mode);

// True iff no constant other than `symbol` names e and no relation other
// than `symbol` has a tuple containing e. Only free elements may leave the
// domain during a deletion.
bool free_for(const Structure& a, ElementId e, const std::string& symbol);

struct Successor {
  OperationDescriptor op;
  ApplyResult result;
};

// Every legal single operation from d, over the signature plus symbol_pool,
// creating at most fresh_budget fresh elements per operation. Identity
// insertions are excluded. Deterministic order: symbol name, then clause,
// then element order; successors with a duplicate resulting encoding are
// dropped (first occurrence wins).
std::vector<Successor> enumerate_successors(const Database& d, OpMode mode, int fresh_budget,
                                            const std::vector<Symbol>& symbol_pool);

}  // namespace fodb
