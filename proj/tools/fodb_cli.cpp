// fodb: load first-order databases, apply structural operations, search for
// satisfactory updates, run bounded entailment checks, and compute the
// informational metrics over update collections.
//
// Exit codes: 0 success, 1 usage or parse error, 2 validation or illegal
// operation, 3 computed but caveated (unknown verdicts or bounded search
// came up empty).

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fodb/corpus.hpp"
#include "fodb/errors.hpp"
#include "fodb/io.hpp"
#include "fodb/metrics.hpp"

namespace {

using namespace fodb;

OpMode to_mode(const std::string& s) {
  if (s == "paper") return OpMode::Paper;
  if (s == "strict") return OpMode::Strict;
  throw CLI::ValidationError("--mode", "must be 'paper' or 'strict'");
}

Formula parse_cli_formula(const std::string& text, const Database& db, bool warn = true) {
  ParseResult r = parse_formula(text, db.structure.sig());
  if (warn && !r.unknown_symbols.empty()) {
    std::cerr << "warning: symbols not in the database signature:";
    for (const Symbol& s : r.unknown_symbols) std::cerr << ' ' << s.name;
    std::cerr << " (sentences mentioning uninterpreted symbols evaluate to false)\n";
  }
  if (!is_sentence(r.formula)) {
    throw ValidationError("formula has free variables: " + print_formula(r.formula));
  }
  return r.formula;
}

UpdateCollection load_collection(const Database& base, const std::vector<std::string>& scripts,
                                 OpMode mode) {
  std::vector<Update> updates;
  for (const std::string& path : scripts) updates.push_back(load_ops_script(path, base, mode));
  return make_collection(std::move(updates));
}

void print_update_trace(const Update& u) {
  for (std::size_t i = 0; i < u.ops.size(); ++i) {
    std::cout << "  step " << i << ": " << u.ops[i].to_line() << "\n";
    for (const Formula& f : u.step_theory_breaks[i]) {
      std::cout << "    theory break: " << print_formula(f) << "\n";
    }
  }
}

void print_verdict(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::HoldsUpToBound:
      std::cout << "holds up to domain size " << v.bound << "\n";
      break;
    case Verdict::Kind::Fails:
      std::cout << "fails; countermodel:\n" << structure_to_interpret_block(*v.witness) << "\n";
      break;
    case Verdict::Kind::Unknown:
      std::cout << "unknown: " << v.reason << "\n";
      break;
  }
}

int run(int argc, char** argv) {
  CLI::App app{"finite first-order database updates and informational metrics"};
  app.require_subcommand(1);

  std::string db_path, ops_path, out_path, formula_text, ded_path, mode_name = "paper";
  std::vector<std::string> update_scripts;
  int bound = 4, depth = 4, fresh = 2;
  bool json = false;

  auto* check = app.add_subcommand("check", "validate a .fodb database file");
  check->add_option("db", db_path)->required();

  auto* eval = app.add_subcommand("eval", "evaluate a sentence in a database's structure");
  eval->add_option("db", db_path)->required();
  eval->add_option("--formula", formula_text)->required();

  auto* apply = app.add_subcommand("apply", "apply an .ops script to a database");
  apply->add_option("db", db_path)->required();
  apply->add_option("ops", ops_path)->required();
  apply->add_option("--mode", mode_name);
  apply->add_option("-o,--out", out_path);

  auto* entails_cmd = app.add_subcommand("entails", "bounded consequence check against the theory");
  entails_cmd->add_option("db", db_path)->required();
  entails_cmd->add_option("--formula", formula_text)->required();
  entails_cmd->add_option("--bound", bound);

  auto* search = app.add_subcommand("search", "find a minimal satisfactory update");
  search->add_option("db", db_path)->required();
  search->add_option("--formula", formula_text)->required();
  search->add_option("--depth", depth);
  search->add_option("--fresh", fresh);
  search->add_option("--mode", mode_name);

  auto add_metric_options = [&](CLI::App* cmd, bool need_formula_or_ded) {
    cmd->add_option("--db", db_path)->required();
    cmd->add_option("--updates", update_scripts)->required()->expected(-1);
    if (need_formula_or_ded) {
      cmd->add_option("--formula", formula_text);
      cmd->add_option("--deduction", ded_path);
    }
    cmd->add_option("--bound", bound);
    cmd->add_option("--mode", mode_name);
  };
  auto* complexity_cmd = app.add_subcommand("complexity", "informational complexity over a collection");
  add_metric_options(complexity_cmd, false);
  complexity_cmd->add_option("--formula", formula_text)->required();

  auto* relevancy_cmd = app.add_subcommand("relevancy", "informational relevancy of a deduction");
  add_metric_options(relevancy_cmd, false);
  relevancy_cmd->add_option("--deduction", ded_path)->required();

  auto* inform_cmd = app.add_subcommand("informativity", "semantic informativity");
  add_metric_options(inform_cmd, true);

  auto* report_cmd = app.add_subcommand("paper-report", "recompute the bundled reference corpus");
  report_cmd->add_option("--mode", mode_name);
  report_cmd->add_option("--bound", bound);
  report_cmd->add_flag("--json", json);

  CLI11_PARSE(app, argc, argv);
  const OpMode mode = to_mode(mode_name);
  BoundConfig cfg;
  cfg.max_domain = bound;

  if (check->parsed()) {
    Database d = load_database(db_path);
    std::cout << "valid database: " << d.structure.domain_size() << " element(s), "
              << d.structure.sig().size() << " symbol(s), " << d.theory.size()
              << " theory sentence(s)\n";
    return 0;
  }

  if (eval->parsed()) {
    Database d = load_database(db_path);
    Formula f = parse_cli_formula(formula_text, d);
    std::cout << (evaluate(d.structure, f) ? "true" : "false") << "\n";
    return 0;
  }

  if (apply->parsed()) {
    Database d = load_database(db_path);
    Update u = load_ops_script(ops_path, d, mode);
    std::cout << "applied " << u.ops.size() << " operation(s) (mode " << op_mode_name(mode)
              << ")\n";
    print_update_trace(u);
    const std::string text = save_database(u.final_db());
    if (!out_path.empty()) {
      write_file(out_path, text);
      std::cout << "wrote " << out_path << "\n";
    } else {
      std::cout << text;
    }
    return 0;
  }

  if (entails_cmd->parsed()) {
    Database d = load_database(db_path);
    Formula f = parse_cli_formula(formula_text, d);
    Verdict v = entails(d.theory, f, cfg);
    print_verdict(v);
    return v.unknown() ? 3 : 0;
  }

  if (search->parsed()) {
    Database d = load_database(db_path);
    Formula f = parse_cli_formula(formula_text, d);
    std::optional<Update> u = search_minimal_update(d, f, depth, fresh, mode);
    if (!u) {
      std::cout << "not found up to depth " << depth << " with fresh budget " << fresh << "\n";
      return 3;
    }
    std::cout << "found update of norm " << norm(*u, f) << " (" << u->ops.size()
              << " operation(s), mode " << op_mode_name(mode) << ")\n";
    print_update_trace(*u);
    return 0;
  }

  if (complexity_cmd->parsed()) {
    Database d = load_database(db_path);
    UpdateCollection coll = load_collection(d, update_scripts, mode);
    Formula f = parse_cli_formula(formula_text, d);
    std::cout << complexity(coll, f).str() << "\n";
    return 0;
  }

  if (relevancy_cmd->parsed() || inform_cmd->parsed()) {
    Database d = load_database(db_path);
    UpdateCollection coll = load_collection(d, update_scripts, mode);
    Deduction ded;
    if (!ded_path.empty()) {
      ded = load_deduction(ded_path, d.structure.sig());
    } else if (!formula_text.empty()) {
      Formula f = parse_cli_formula(formula_text, d);
      ded = Deduction{{f}, {}, f};
    } else {
      throw ValidationError("provide --deduction or --formula");
    }
    InformativityResult r = informativity(coll, ded, cfg);
    if (relevancy_cmd->parsed()) {
      std::cout << r.relevancy.value.str() << "\n";
    } else {
      std::cout << "C=" << r.complexity.str() << " R=" << r.relevancy.value.str()
                << " I=" << r.value.str() << "\n";
    }
    if (r.relevancy.chosen) {
      std::cout << "chosen update: index " << *r.relevancy.chosen << "; relevant members:";
      for (const Formula& f : r.relevancy.relevant) std::cout << "\n  " << print_formula(f);
      std::cout << "\n";
    }
    for (const std::string& c : r.relevancy.caveats) std::cout << "caveat: " << c << "\n";
    return r.relevancy.caveats.empty() ? 0 : 3;
  }

  if (report_cmd->parsed()) {
    Report r = run_paper_report(mode, cfg);
    std::cout << (json ? render_report_json(r) : render_report_text(r));
    return r.all_derived_match() ? 0 : 2;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fodb::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const fodb::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const fodb::OperationError& e) {
    std::cerr << "operation error: " << e.what() << "\n";
    return 2;
  } catch (const fodb::EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
