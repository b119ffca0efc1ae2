#include "fodb/update.hpp"

#include <set>

#include "fodb/errors.hpp"

namespace fodb {

Update make_update(const Database& base, const std::vector<OperationDescriptor>& ops, OpMode mode) {
  Update u;
  u.mode = mode;
  u.databases.push_back(base);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    try {
      ApplyResult r = apply_operation(u.databases.back(), ops[i], mode);
      u.databases.push_back(std::move(r.database));
      u.ops.push_back(ops[i]);
      u.step_theory_breaks.push_back(std::move(r.theory_breaks));
    } catch (const OperationError& e) {
      throw ValidationError("step " + std::to_string(i) + ": " + e.what());
    }
  }
  return u;
}

Update validate_update(const std::vector<Database>& dbs,
                       const std::vector<OperationDescriptor>& ops, OpMode mode) {
  if (dbs.empty()) throw ValidationError("an update needs at least one database");
  if (ops.size() + 1 != dbs.size()) {
    throw ValidationError("operation count does not match database count");
  }
  for (std::size_t i = 1; i < dbs.size(); ++i) {
    if (dbs[i].theory != dbs[0].theory) {
      throw ValidationError("step " + std::to_string(i - 1) + ": theory differs between databases");
    }
  }
  Update u;
  u.mode = mode;
  u.databases.push_back(dbs.front());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    ApplyResult r;
    try {
      r = apply_operation(dbs[i], ops[i], mode);
    } catch (const OperationError& e) {
      throw ValidationError("step " + std::to_string(i) + ": " + e.what());
    }
    if (r.database.structure.canonical_encoding() != dbs[i + 1].structure.canonical_encoding()) {
      throw ValidationError("step " + std::to_string(i) +
                            ": applying the descriptor does not reproduce the stated database");
    }
    u.databases.push_back(dbs[i + 1]);
    u.ops.push_back(ops[i]);
    u.step_theory_breaks.push_back(std::move(r.theory_breaks));
  }
  return u;
}

bool is_satisfactory(const Update& u, const Formula& f) {
  return evaluate(u.final_db().structure, f);
}

int norm(const Update& u, const Formula& f) {
  if (!is_satisfactory(u, f)) {
    throw ValidationError("norm undefined: update is unsatisfactory for '" + print_formula(f) +
                          "'");
  }
  for (std::size_t i = 0; i < u.databases.size(); ++i) {
    if (evaluate(u.databases[i].structure, f)) return static_cast<int>(i);
  }
  return static_cast<int>(u.databases.size() - 1);  // unreachable: final holds
}

UpdateCollection make_collection(std::vector<Update> updates) {
  if (!updates.empty()) {
    const std::string base = updates.front().base().structure.canonical_encoding();
    const Theory& t = updates.front().base().theory;
    for (const Update& u : updates) {
      if (u.base().structure.canonical_encoding() != base || u.base().theory != t) {
        throw ValidationError("collection members must share one base database");
      }
    }
  }
  return UpdateCollection{std::move(updates)};
}

namespace {

std::vector<Symbol> search_pool(const Database& d, const Formula& f) {
  std::vector<Symbol> pool;
  for (const Symbol& s : symbols_of(f)) {
    if (!d.structure.sig().contains(s.name)) pool.push_back(s);
  }
  return pool;
}

}  // namespace

std::optional<Update> search_minimal_update(const Database& d, const Formula& f, int depth,
                                            int fresh_budget, OpMode mode) {
  if (!is_sentence(f)) throw EvalError("search requires a sentence");
  if (evaluate(d.structure, f)) {
    Update u;
    u.mode = mode;
    u.databases.push_back(d);
    return u;
  }
  const std::vector<Symbol> pool = search_pool(d, f);

  struct NodeRec {
    Database db;
    int parent;
    OperationDescriptor op;
    std::vector<Formula> breaks;
  };
  std::vector<NodeRec> nodes;
  nodes.push_back(NodeRec{d, -1, {}, {}});
  std::set<std::string> visited{d.structure.canonical_encoding()};
  std::vector<int> frontier{0};

  auto rebuild = [&](int idx) {
    std::vector<int> chain;
    for (int i = idx; i >= 0; i = nodes[i].parent) chain.push_back(i);
    Update u;
    u.mode = mode;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      u.databases.push_back(nodes[*it].db);
      if (nodes[*it].parent >= 0) {
        u.ops.push_back(nodes[*it].op);
        u.step_theory_breaks.push_back(nodes[*it].breaks);
      }
    }
    return u;
  };

  for (int level = 1; level <= depth; ++level) {
    std::vector<int> next;
    for (int idx : frontier) {
      for (Successor& s : enumerate_successors(nodes[idx].db, mode, fresh_budget, pool)) {
        if (!visited.insert(s.result.database.structure.canonical_encoding()).second) continue;
        nodes.push_back(NodeRec{std::move(s.result.database), idx, std::move(s.op),
                                std::move(s.result.theory_breaks)});
        const int ni = static_cast<int>(nodes.size()) - 1;
        if (evaluate(nodes[ni].db.structure, f)) return rebuild(ni);
        next.push_back(ni);
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return std::nullopt;
}

Acceptability is_acceptable(const Database& d, const Formula& f, int depth, int fresh_budget,
                            OpMode mode) {
  std::optional<Update> w = search_minimal_update(d, f, depth, fresh_budget, mode);
  return Acceptability{w.has_value(), std::move(w)};
}

}  // namespace fodb
