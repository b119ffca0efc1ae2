#include "fodb/corpus.hpp"

#include <sstream>

#include <json.hpp>

#include "fodb/errors.hpp"

namespace fodb {

namespace corpus_text {

const char* kExample22Fodb = R"(# corpus: base database D0
signature { const s, l, a  rel C/1, E/1, H/2 }
domain { S_, L_, A_ }
interpret {
  s = S_
  l = L_
  a = A_
  C = {S_, L_}
  E = {A_}
  H = {(S_,A_), (L_,A_)}
}
theory {
  forall x (C(x) -> exists y H(x,y))
  forall x (C(x) | E(x))
  ~E(l)
  C(s)
}
)";

const char* kExample24StarFodb = R"(# corpus: the rejected variant; loading must fail because
# forall x (C(x) | E(x)) is false at element B_
signature { const s, l, a, b  rel C/1, E/1, H/2 }
domain { S_, L_, A_, B_ }
interpret {
  s = S_
  l = L_
  a = A_
  b = B_
  C = {S_, L_}
  E = {A_}
  H = {(S_,A_), (L_,A_)}
}
theory {
  forall x (C(x) -> exists y H(x,y))
  forall x (C(x) | E(x))
  ~E(l)
  C(s)
}
)";

const char* kUpdateSingletonOps = "# empty script: the singleton update (D0)\n";

const char* kUpdateDOps = "insert const b = A_\n";

const char* kUpdateDpOps = R"(delete const s reinterpret A_
delete rel H tuple (S_,A_)
delete rel C tuple (S_)
)";

const char* kUpdateDppOps = R"(insert const b = A_
insert rel E (new B_)
delete const b reinterpret B_
delete rel E tuple (B_)
)";

const char* kDeduction52Ded = R"(premises {
  forall x (C(x) -> ~E(x))
  C(b)
}
steps {
  C(b) -> ~E(b)
}
conclusion {
  ~E(b)
}
)";

const char* kDeductionEaDed = R"(premises { E(a) }
steps { }
conclusion { exists x E(x) }
)";

}  // namespace corpus_text

namespace {

Formula parse_f(const std::string& text, const Signature& sig) {
  return parse_formula(text, sig).formula;
}

Signature base_sig_with_b() {
  Signature sig;
  sig.add(make_constant("s"));
  sig.add(make_constant("l"));
  sig.add(make_constant("a"));
  sig.add(make_constant("b"));
  sig.add(make_relation("C", 1));
  sig.add(make_relation("E", 1));
  sig.add(make_relation("H", 2));
  return sig;
}

Signature base_sig() {
  Signature sig;
  sig.add(make_constant("s"));
  sig.add(make_constant("l"));
  sig.add(make_constant("a"));
  sig.add(make_relation("C", 1));
  sig.add(make_relation("E", 1));
  sig.add(make_relation("H", 2));
  return sig;
}

}  // namespace

Fixtures make_fixtures() {
  Fixtures fx;
  fx.d0 = parse_database(corpus_text::kExample22Fodb);
  const Signature& sig = fx.d0.structure.sig();

  fx.op_insert_b =
      OperationDescriptor{OpKind::Insert, OpPayload::ConstBind, "b", {ElemRef{false, "A_"}}};
  fx.op_insert_e_fresh =
      OperationDescriptor{OpKind::Insert, OpPayload::RelTuple, "E", {ElemRef{true, "B_"}}};
  fx.op_insert_b_fresh =
      OperationDescriptor{OpKind::Insert, OpPayload::ConstBind, "b", {ElemRef{true, "B_"}}};

  fx.d1 = apply_insertion(fx.d0, fx.op_insert_b, OpMode::Paper).database;
  fx.d2 = apply_insertion(fx.d1, fx.op_insert_e_fresh, OpMode::Paper).database;

  fx.d1_expected = Structure::make(
      base_sig_with_b(), {"S_", "L_", "A_"},
      {{"s", "S_"}, {"l", "L_"}, {"a", "A_"}, {"b", "A_"}},
      {{"C", {{"S_"}, {"L_"}}}, {"E", {{"A_"}}}, {"H", {{"S_", "A_"}, {"L_", "A_"}}}});
  fx.d2_expected = Structure::make(
      base_sig_with_b(), {"S_", "L_", "A_", "B_"},
      {{"s", "S_"}, {"l", "L_"}, {"a", "A_"}, {"b", "A_"}},
      {{"C", {{"S_"}, {"L_"}}}, {"E", {{"A_"}, {"B_"}}}, {"H", {{"S_", "A_"}, {"L_", "A_"}}}});

  const std::vector<OperationDescriptor> dp_ops = parse_ops(corpus_text::kUpdateDpOps);
  fx.dp1 = apply_deletion(fx.d0, dp_ops[0], OpMode::Paper).database;
  fx.dp2 = apply_deletion(fx.dp1, dp_ops[1], OpMode::Paper).database;
  fx.dp3 = apply_deletion(fx.dp2, dp_ops[2], OpMode::Paper).database;

  fx.dp1_expected = Structure::make(
      base_sig(), {"S_", "L_", "A_"}, {{"s", "A_"}, {"l", "L_"}, {"a", "A_"}},
      {{"C", {{"S_"}, {"L_"}}}, {"E", {{"A_"}}}, {"H", {{"S_", "A_"}, {"L_", "A_"}}}});
  fx.dp2_expected = Structure::make(
      base_sig(), {"S_", "L_", "A_"}, {{"s", "A_"}, {"l", "L_"}, {"a", "A_"}},
      {{"C", {{"S_"}, {"L_"}}}, {"E", {{"A_"}}}, {"H", {{"L_", "A_"}}}});
  fx.ap3_printed = Structure::make(base_sig(), {"L_", "A_"},
                                   {{"s", "A_"}, {"l", "L_"}, {"a", "A_"}},
                                   {{"C", {{"L_"}}}, {"E", {{"A_"}}}, {"H", {{"L_", "A_"}}}});

  fx.u0 = make_update(fx.d0, parse_ops(corpus_text::kUpdateSingletonOps), OpMode::Paper);
  fx.u1 = make_update(fx.d0, parse_ops(corpus_text::kUpdateDOps), OpMode::Paper);
  fx.u2 = make_update(fx.d0, parse_ops(corpus_text::kUpdateDppOps), OpMode::Paper);
  fx.u3 = make_update(fx.d0, dp_ops, OpMode::Paper);

  fx.coll_u1 = make_collection({fx.u1});
  fx.coll_u3 = make_collection({fx.u3});
  fx.coll_a = make_collection({fx.u0, fx.u1});
  fx.coll_b = make_collection({fx.u0, fx.u1, fx.u2});

  fx.ded_main = parse_deduction(corpus_text::kDeduction52Ded, sig);
  fx.ded_ea = parse_deduction(corpus_text::kDeductionEaDed, sig);

  fx.f_eb = parse_f("E(b)", sig);
  fx.f_hlb = parse_f("H(l,b)", sig);
  fx.f_eb_and_hlb = parse_f("E(b) & H(l,b)", sig);
  fx.f_eb_or_hlb = parse_f("E(b) | H(l,b)", sig);
  fx.f_neg_cs = parse_f("~C(s)", sig);
  fx.f_neg_hsa = parse_f("~H(s,a)", sig);
  fx.f_neg_cs_and_neg_hsa = parse_f("~C(s) & ~H(s,a)", sig);
  fx.f_s_eq_a = parse_f("s = a", sig);
  fx.f_es_and_not_hsa = parse_f("E(s) & ~H(s,a)", sig);
  fx.f_ea = parse_f("E(a)", sig);
  fx.f_ex_ex = parse_f("exists x E(x)", sig);
  fx.f_ea_impl_ex_ex = parse_f("E(a) -> exists x E(x)", sig);
  fx.f_all_c_not_e = parse_f("forall x (C(x) -> ~E(x))", sig);
  fx.f_cb = parse_f("C(b)", sig);
  fx.f_cb_impl_neg_eb = parse_f("C(b) -> ~E(b)", sig);
  fx.f_neg_eb = parse_f("~E(b)", sig);
  fx.f_conditional = parse_f("(forall x (C(x) -> ~E(x)) & C(b)) -> ~E(b)", sig);
  return fx;
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

namespace {

std::string render_formula_set(const std::vector<Formula>& fs) {
  std::string out = "{";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(fs[i]);
  }
  out += "}";
  return out;
}

// "accepted" when applying op to d reproduces `expected`, otherwise a
// rejected/mismatch string. The note receives proviso errors and breaks.
std::string run_apply_case(const Database& d, const OperationDescriptor& op, OpMode mode,
                           const Structure& expected, std::string& note) {
  try {
    ApplyResult r = apply_operation(d, op, mode);
    for (const Formula& f : r.theory_breaks) {
      if (!note.empty()) note += "; ";
      note += "theory break: " + print_formula(f);
    }
    if (r.database.structure.canonical_encoding() == expected.canonical_encoding()) {
      return "accepted";
    }
    return "accepted, but differs from the transcribed structure";
  } catch (const OperationError& e) {
    note = e.what();
    return "rejected";
  }
}

struct CaseBuilder {
  Report& report;

  void add(CaseResult c) { report.cases.push_back(std::move(c)); }

  void metric(const std::string& id, const std::string& computed,
              std::optional<std::string> paper, const std::string& derived,
              std::optional<std::string> pd = std::nullopt, std::string note = "",
              std::vector<std::string> caveats = {}) {
    add(CaseResult{id, computed, std::move(paper), derived, std::move(pd), std::move(note),
                   std::move(caveats)});
  }
};

}  // namespace

bool Report::all_derived_match() const {
  for (const CaseResult& c : cases) {
    if (!c.match_derived()) return false;
  }
  return true;
}

int Report::paper_matches() const {
  int n = 0;
  for (const CaseResult& c : cases) {
    if (c.match_paper()) ++n;
  }
  return n;
}

Report run_paper_report(OpMode mode, const BoundConfig& cfg) {
  Report report;
  report.mode = mode;
  report.bound = cfg.max_domain;
  CaseBuilder cb{report};
  Fixtures fx = make_fixtures();

  // Loading and structural operations.
  {
    std::string computed = "valid";
    try {
      parse_database(corpus_text::kExample22Fodb);
    } catch (const std::exception& e) {
      computed = std::string("invalid: ") + e.what();
    }
    cb.metric("Ex2.2-D0-valid", computed, "valid", "valid");
  }
  {
    std::string note;
    cb.metric("Ex2.4-D1-insertion",
              run_apply_case(fx.d0, fx.op_insert_b, mode, fx.d1_expected, note), "accepted",
              "accepted", std::nullopt, note);
  }
  {
    std::string note;
    cb.metric("Ex2.4-D2-insertion",
              run_apply_case(fx.d1, fx.op_insert_e_fresh, mode, fx.d2_expected, note), "accepted",
              "accepted", std::nullopt, note);
  }
  {
    std::string note;
    std::string computed = "accepted";
    try {
      apply_operation(fx.d1, fx.op_insert_b_fresh, mode);
    } catch (const OperationError& e) {
      computed = "rejected";
      note = e.what();
    }
    cb.metric("Ex2.4-Dstar-insertion", computed, "rejected", "rejected", std::nullopt, note);
  }
  {
    std::string note;
    const std::vector<OperationDescriptor> dp_ops = parse_ops(corpus_text::kUpdateDpOps);
    cb.metric("Ex2.6-Dp1-deletion", run_apply_case(fx.d0, dp_ops[0], mode, fx.dp1_expected, note),
              "accepted", "accepted", std::nullopt, note);
    std::string note2;
    cb.metric("Ex2.6-Dp2-deletion", run_apply_case(fx.dp1, dp_ops[1], mode, fx.dp2_expected, note2),
              "accepted", "accepted", std::nullopt, note2);
  }
  {
    // No single deletion of C from D'1 yields the transcribed final
    // structure (it would have to change H and the domain as well).
    std::string computed = "rejected";
    for (const Successor& s : enumerate_successors(fx.dp1, mode, 1, {})) {
      if (s.op.kind == OpKind::Delete && s.op.symbol == "C" &&
          s.result.database.structure.canonical_encoding() ==
              fx.ap3_printed.canonical_encoding()) {
        computed = "accepted via " + s.op.to_line();
      }
    }
    cb.metric("Ex2.6-Dp3-from-Dp1", computed, "rejected", "rejected", std::nullopt,
              "no single deletion of C reaches the transcribed structure");
  }

  // Satisfaction and norms.
  {
    const bool sat = is_satisfactory(fx.u1, fx.f_eb) && is_satisfactory(fx.u1, fx.f_hlb);
    cb.metric("Ex3.2-D-satisfactory-Eb-Hlb", sat ? "true" : "false", "true", "true");
  }
  {
    const bool sat = is_satisfactory(fx.u3, fx.f_es_and_not_hsa);
    cb.metric("Ex3.2-Dp-satisfactory-Es-and-not-Hsa", sat ? "true" : "false", "true", "true");
  }
  {
    const bool sat = is_satisfactory(fx.u3, fx.f_s_eq_a);
    const Rational c = complexity(fx.coll_u3, fx.f_s_eq_a);
    const std::string computed =
        "C=" + c.str() + (sat ? " (satisfactory)" : " (unsatisfactory)");
    cb.metric("Ex3.2-3.4-s-eq-a", computed, "C=0 (unsatisfactory)", "C=1 (satisfactory)", "PD-1");
  }
  cb.metric("Ex3.4-C-Eb", complexity(fx.coll_u1, fx.f_eb).str(), "1", "1");
  cb.metric("Ex3.4-C-Hlb", complexity(fx.coll_u1, fx.f_hlb).str(), "1", "1");
  cb.metric("Ex3.4-C-Eb-and-Hlb", complexity(fx.coll_u1, fx.f_eb_and_hlb).str(), "1", "1");
  cb.metric("Ex3.4-C-Eb-or-Hlb", complexity(fx.coll_u1, fx.f_eb_or_hlb).str(), "1", "1");
  cb.metric("Ex3.4-C-negCs", complexity(fx.coll_u3, fx.f_neg_cs).str(), "1", "1");
  cb.metric("Ex3.4-C-negHsa", complexity(fx.coll_u3, fx.f_neg_hsa).str(), "3", "1", "PD-5");
  cb.metric("Ex3.4-C-negCs-and-negHsa", complexity(fx.coll_u3, fx.f_neg_cs_and_neg_hsa).str(), "3",
            "1", std::nullopt, "same root cause as PD-5");

  // Relevant propositions.
  std::string pd2_artifact;
  {
    const std::vector<Formula> rel =
        relevant_propositions(fx.u0, {fx.f_ea, fx.f_ex_ex}, cfg);
    cb.metric("Ex4.2-relevant-first", render_formula_set(rel), "{E(a)}",
              "{E(a), exists x E(x)}", "PD-2");
    Verdict v = entails(fx.d0.theory, fx.f_ex_ex, cfg);
    if (v.fails()) pd2_artifact = structure_to_interpret_block(*v.witness);
  }
  {
    const std::vector<Formula> rel = relevant_propositions(
        fx.u1, {fx.f_all_c_not_e, fx.f_cb, fx.f_cb_impl_neg_eb, fx.f_neg_eb}, cfg);
    cb.metric("Ex4.2-relevant-second", render_formula_set(rel),
              "{forall x (C(x) -> ~E(x)), C(b) -> ~E(b)}",
              "{forall x (C(x) -> ~E(x)), C(b) -> ~E(b)}");
  }

  // Relevancy.
  {
    RelevancyResult r = relevancy(fx.coll_a, fx.ded_main, cfg);
    cb.metric("Ex4.5-R-deduction-collA", r.value.str(), "0", "0", std::nullopt, "", r.caveats);
  }
  {
    RelevancyResult r = relevancy(fx.coll_b, fx.ded_main, cfg);
    cb.metric("Ex4.5-R-deduction-collB", r.value.str(), "2/3", "2/3", std::nullopt,
              "relevant: " + render_formula_set(r.relevant), r.caveats);
  }
  {
    RelevancyResult r = relevancy(fx.coll_a, fx.ded_ea, cfg);
    cb.metric("Ex4.5-R-Ea-ExEx", r.value.str(), "1", "1", std::nullopt,
              "relevant: " + render_formula_set(r.relevant) + " (cf. PD-2)", r.caveats);
  }

  // Informativity.
  {
    InformativityResult r = informativity(fx.coll_b, fx.ded_main, cfg);
    cb.metric("Ex5.2-I-deduction", r.value.str(), "8/3", "8/3", std::nullopt,
              "C=" + r.complexity.str() + ", R=" + r.relevancy.value.str());
  }
  {
    InformativityResult r = informativity(fx.coll_b, fx.ded_ea, cfg);
    cb.metric("Ex5.2-I-Ea-ExEx", r.value.str(), "1", "0", "PD-4",
              "C=" + r.complexity.str() + ", R=" + r.relevancy.value.str());
  }
  auto prop_case = [&](const std::string& id, const Formula& f, const std::string& paper,
                       const std::string& derived) {
    InformativityResult r = informativity_of_proposition(fx.coll_b, f, cfg);
    cb.metric(id, r.value.str(), paper, derived, std::nullopt,
              "C=" + r.complexity.str() + ", R=" + r.relevancy.value.str());
  };
  prop_case("Ex5.4-I-Ea", fx.f_ea, "0", "0");
  prop_case("Ex5.4-I-ExEx", fx.f_ex_ex, "0", "0");
  prop_case("Ex5.4-I-Ea-impl-ExEx", fx.f_ea_impl_ex_ex, "0", "0");
  prop_case("Ex5.4-I-allC-notE", fx.f_all_c_not_e, "0", "0");
  prop_case("Ex5.4-I-Cb", fx.f_cb, "0", "0");
  prop_case("Ex5.4-I-negEb", fx.f_neg_eb, "4", "4");
  prop_case("Ex5.4-I-conditional", fx.f_conditional, "0", "0");
  {
    InformativityResult r = informativity_of_proposition(fx.coll_b, fx.f_conditional, cfg);
    const std::string computed = "C=" + r.complexity.str() + ", I=" + r.value.str();
    cb.metric("Ex5.4-Thm53-conditional", computed, "I=C", "C=1, I=0", "PD-3",
              "the proposition-informativity identity fails on this extended-signature tautology");
  }

  report.discrepancies = {
      {"PD-1", "Ex3.2-3.4-s-eq-a", "C=0 (unsatisfactory)", "C=1 (satisfactory)",
       "s = a holds in the final structure of the deletion chain (s and a both name A_), so the "
       "update is satisfactory for it with norm 1; the reference calls it unsatisfactory.",
       ""},
      {"PD-2", "Ex4.2-relevant-first", "{E(a)}", "{E(a), exists x E(x)}",
       "the theory does not entail exists x E(x): a one-element model with an empty E satisfies "
       "every theory sentence, so the proposition is relevant too.",
       pd2_artifact},
      {"PD-3", "Ex5.4-Thm53-conditional", "I=C", "C=1, I=0",
       "for a tautology whose symbols extend the base signature, complexity is positive but no "
       "countermodel can certify non-entailment, so relevancy and informativity stay 0; the "
       "proposition-informativity identity holds only for base-signature formulas.",
       ""},
      {"PD-4", "Ex5.2-I-Ea-ExEx", "1", "0",
       "both support members hold in the base structure, so the support complexity is 0 and the "
       "product is 0; the reference prints 1*1=1.",
       ""},
      {"PD-5", "Ex3.4-C-negHsa", "3", "1",
       "~H(s,a) already holds at index 1 of the deletion chain (s names A_ and (A_,A_) is not in "
       "H), so the least-index norm is 1; the reference prints 3.",
       ""},
  };
  return report;
}

std::string render_report_text(const Report& r) {
  std::ostringstream out;
  out << "paper-report (mode=" << op_mode_name(r.mode) << ", bound=" << r.bound << ")\n";
  out << "convention: a sentence mentioning symbols the structure does not interpret "
         "evaluates to false\n\n";
  std::size_t idw = 4, cw = 8;
  for (const CaseResult& c : r.cases) {
    idw = std::max(idw, c.id.size());
    cw = std::max(cw, c.computed.size());
  }
  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  out << pad("case", idw) << "  " << pad("computed", cw) << "  derived  paper        flag\n";
  for (const CaseResult& c : r.cases) {
    out << pad(c.id, idw) << "  " << pad(c.computed, cw) << "  "
        << pad(c.match_derived() ? "ok" : "MISMATCH", 7) << "  "
        << pad(!c.paper ? "-" : (c.match_paper() ? "match" : "differs"), 11) << "  "
        << (c.pd ? *c.pd : "") << "\n";
    if (!c.note.empty()) out << pad("", idw) << "  note: " << c.note << "\n";
    for (const std::string& cav : c.caveats) out << pad("", idw) << "  caveat: " << cav << "\n";
  }
  out << "\ndiscrepancies (reference value vs engine value):\n";
  for (const DiscrepancyEntry& d : r.discrepancies) {
    out << "  " << d.id << " [" << d.case_id << "] reference: " << d.paper_value
        << " | engine: " << d.derived_value << "\n    " << d.description << "\n";
    if (!d.artifact.empty()) {
      std::istringstream lines(d.artifact);
      std::string line;
      while (std::getline(lines, line)) out << "    | " << line << "\n";
    }
  }
  int derived = 0;
  for (const CaseResult& c : r.cases) {
    if (c.match_derived()) ++derived;
  }
  out << "\nsummary: " << r.cases.size() << " cases, " << derived << " derived-match, "
      << r.paper_matches() << " paper-match\n";
  return out.str();
}

std::string render_report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["mode"] = op_mode_name(r.mode);
  j["bound"] = r.bound;
  j["convention"] =
      "a sentence mentioning symbols the structure does not interpret evaluates to false";
  j["cases"] = nlohmann::ordered_json::array();
  for (const CaseResult& c : r.cases) {
    nlohmann::ordered_json jc;
    jc["id"] = c.id;
    jc["computed"] = c.computed;
    jc["paper"] = c.paper ? nlohmann::ordered_json(*c.paper) : nlohmann::ordered_json(nullptr);
    jc["derived"] = c.derived;
    jc["match_paper"] =
        c.paper ? nlohmann::ordered_json(c.match_paper()) : nlohmann::ordered_json(nullptr);
    jc["match_derived"] = c.match_derived();
    jc["pd"] = c.pd ? nlohmann::ordered_json(*c.pd) : nlohmann::ordered_json(nullptr);
    jc["note"] = c.note;
    jc["caveats"] = c.caveats;
    j["cases"].push_back(std::move(jc));
  }
  j["discrepancies"] = nlohmann::ordered_json::array();
  for (const DiscrepancyEntry& d : r.discrepancies) {
    nlohmann::ordered_json jd;
    jd["id"] = d.id;
    jd["case"] = d.case_id;
    jd["paper"] = d.paper_value;
    jd["derived"] = d.derived_value;
    jd["description"] = d.description;
    jd["artifact"] = d.artifact;
    j["discrepancies"].push_back(std::move(jd));
  }
  int derived = 0;
  for (const CaseResult& c : r.cases) {
    if (c.match_derived()) ++derived;
  }
  j["summary"] = {{"cases", r.cases.size()},
                  {"derived_matches", derived},
                  {"paper_matches", r.paper_matches()}};
  return j.dump(2) + "\n";
}

}  // namespace fodb
