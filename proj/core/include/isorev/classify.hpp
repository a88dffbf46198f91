#pragma once

#include <optional>
#include <string>

#include "isorev/oracle.hpp"

namespace isorev {

// Which rule of the decision procedure produced the verdict.
enum class Rule {
  Identity,
  SpStrongEvenClasses,
  SpStrongOddClass,
  USelfDual,
  UNotSelfDual,
  SuLinearSelfDual,
  SuLinearNotSelfDual,
  SuLinearMod4Exception,
  Su1ZeroTranslation,
  Su1NonzeroTranslation,
  SuAffineNotSelfDual,
  SuAffineMinusOneBlock,
  SuAffineMod4Exception,
  SuAffineLinearPart,
  PinnedLineFamily,
  SuAffineOddPairs,
  SuAffineFixedBlock,
};

const char* to_string(Rule r);

// Full answer for one element: the two flags, the governing rule, a
// verified witness for positive verdicts, and a determinant obstruction
// certificate when a self-dual element fails strong reversibility.
struct Verdict {
  bool reversible = false;
  bool strongly_reversible = false;
  Rule reason = Rule::Identity;
  std::optional<ReverserWitness> witness;
  std::optional<ObstructionCertificate> obstruction;

  bool witness_is_involution() const {
    return witness.has_value() && witness->is_involution;
  }
};

// Per-family classification on the normal form.  Every positive verdict
// carries a witness whose residuals were measured against the
// reconstructed element.
Verdict classify_sp_linear(const NormalFormH& nf, double tol);
Verdict classify_sp_affine(const NormalFormH& nf, double tol);
Verdict classify_u(const NormalFormC& nf, double tol);
Verdict classify_su_linear(const NormalFormC& nf, double tol);
Verdict classify_su_affine(const NormalFormC& nf, double tol);

// The pinned-line family: self-dual spectrum, no -1 block, a single fixed
// line carrying a nonzero translation, and an even number of conjugate
// pairs.  Such elements are reversible but not strongly reversible.
bool exceptional_family_detect(const NormalFormC& nf, double tol);

struct DecideOptions {
  double tol = 1e-9;
};

// Membership check, normal form, family dispatch, witness re-verification
// against the original element.
Verdict decide(const AnyIsometry& g, const DecideOptions& opt = {});

}  // namespace isorev
