#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fodb/io.hpp"
#include "fodb/metrics.hpp"

namespace fodb {

// Bundled reference corpus (also shipped under data/); the embedded copies
// keep the report independent of the working directory.
namespace corpus_text {
extern const char* kExample22Fodb;
extern const char* kExample24StarFodb;
extern const char* kUpdateSingletonOps;
extern const char* kUpdateDOps;
extern const char* kUpdateDpOps;
extern const char* kUpdateDppOps;
extern const char* kDeduction52Ded;
extern const char* kDeductionEaDed;
}  // namespace corpus_text

// All databases, updates, collections, deductions, and watched formulas the
// corpus cases use. Updates are applied under the paper proviso convention;
// the deletion chains do not exist under strict.
struct Fixtures {
  Database d0;

  OperationDescriptor op_insert_b;        // insert const b = A_
  OperationDescriptor op_insert_e_fresh;  // insert rel E (new B_)
  OperationDescriptor op_insert_b_fresh;  // insert const b = new B_ (illegal from d1)
  Database d1, d2;
  Structure d1_expected, d2_expected;

  Database dp1, dp2, dp3;
  Structure dp1_expected, dp2_expected;
  Structure ap3_printed;  // reference's final deletion structure; unreachable in one step

  Update u0;  // (D0)
  Update u1;  // (D0, D1)
  Update u2;  // (D0, D1, D2, D3, D4)
  Update u3;  // (D0, D'1, D'2, D'3)
  UpdateCollection coll_u1, coll_u3, coll_a, coll_b;

  Deduction ded_main;  // premises {forall x (C(x)->~E(x)), C(b)}, conclusion ~E(b)
  Deduction ded_ea;    // premises {E(a)}, conclusion exists x E(x)

  Formula f_eb, f_hlb, f_eb_and_hlb, f_eb_or_hlb;
  Formula f_neg_cs, f_neg_hsa, f_neg_cs_and_neg_hsa, f_s_eq_a, f_es_and_not_hsa;
  Formula f_ea, f_ex_ex, f_ea_impl_ex_ex, f_all_c_not_e, f_cb, f_cb_impl_neg_eb, f_neg_eb;
  Formula f_conditional;  // (forall x (C(x)->~E(x)) & C(b)) -> ~E(b)
};

Fixtures make_fixtures();

struct CaseResult {
  std::string id;
  std::string computed;
  std::optional<std::string> paper;  // present iff the reference prints a value
  std::string derived;
  std::optional<std::string> pd;  // PD-1..PD-5
  std::string note;
  std::vector<std::string> caveats;

  bool match_paper() const { return paper.has_value() && *paper == computed; }
  bool match_derived() const { return derived == computed; }
};

struct DiscrepancyEntry {
  std::string id;
  std::string case_id;
  std::string paper_value;
  std::string derived_value;
  std::string description;
  std::string artifact;  // e.g. a countermodel in interpret-block syntax
};

struct Report {
  OpMode mode = OpMode::Paper;
  int bound = 4;
  std::vector<CaseResult> cases;
  std::vector<DiscrepancyEntry> discrepancies;

  bool all_derived_match() const;
  int paper_matches() const;
};

// Recomputes every corpus case under the given mode and bound. The derived
// expectations hold under the default paper mode; strict runs show which
// steps the stricter proviso rejects.
Report run_paper_report(OpMode mode, const BoundConfig& cfg);

std::string render_report_text(const Report& r);
std::string render_report_json(const Report& r);

}  // namespace fodb
