#include "isorev/classify.hpp"

#include <cmath>

namespace isorev {

const char* to_string(Rule r) {
  switch (r) {
    case Rule::Identity: return "identity";
    case Rule::SpStrongEvenClasses: return "sp-strong-even-classes";
    case Rule::SpStrongOddClass: return "sp-strong-odd-class";
    case Rule::USelfDual: return "u-self-dual";
    case Rule::UNotSelfDual: return "u-not-self-dual";
    case Rule::SuLinearSelfDual: return "su-linear-self-dual";
    case Rule::SuLinearNotSelfDual: return "su-linear-not-self-dual";
    case Rule::SuLinearMod4Exception: return "su-linear-mod4-exception";
    case Rule::Su1ZeroTranslation: return "su1-zero-translation";
    case Rule::Su1NonzeroTranslation: return "su1-nonzero-translation";
    case Rule::SuAffineNotSelfDual: return "su-affine-not-self-dual";
    case Rule::SuAffineMinusOneBlock: return "su-affine-minus-one-block";
    case Rule::SuAffineMod4Exception: return "su-affine-mod4-exception";
    case Rule::SuAffineLinearPart: return "su-affine-linear-part";
    case Rule::PinnedLineFamily: return "pinned-line-family";
    case Rule::SuAffineOddPairs: return "su-affine-odd-pairs";
    case Rule::SuAffineFixedBlock: return "su-affine-fixed-block";
  }
  return "?";
}

namespace {

bool sp_even_parity(const NormalFormH& nf) {
  for (const auto& cl : nf.spectrum.classes)
    if (cl.theta != 0.0 && cl.theta != M_PI && cl.multiplicity % 2) return false;
  return true;
}

Verdict classify_sp(const NormalFormH& nf, double tol) {
  Verdict v;
  v.reversible = true;
  if (sp_even_parity(nf)) {
    v.strongly_reversible = true;
    v.reason = Rule::SpStrongEvenClasses;
    v.witness = build_sp_strong(nf, tol);
  } else {
    v.strongly_reversible = false;
    v.reason = Rule::SpStrongOddClass;
    v.witness = build_sp_reverser(nf, tol);
  }
  return v;
}

}  // namespace

Verdict classify_sp_linear(const NormalFormH& nf, double tol) {
  if (nf.tag.affine)
    throw PreconditionViolated("classify_sp_linear: affine tag");
  return classify_sp(nf, tol);
}

Verdict classify_sp_affine(const NormalFormH& nf, double tol) {
  if (!nf.tag.affine)
    throw PreconditionViolated("classify_sp_affine: linear tag");
  return classify_sp(nf, tol);
}

Verdict classify_u(const NormalFormC& nf, double tol) {
  if (nf.tag.family != Family::U)
    throw PreconditionViolated("classify_u: wrong family");
  Verdict v;
  if (nf.self_dual) {
    v.reversible = v.strongly_reversible = true;
    v.reason = Rule::USelfDual;
    v.witness = build_u_strong(nf, tol);
  } else {
    v.reason = Rule::UNotSelfDual;
  }
  return v;
}

Verdict classify_su_linear(const NormalFormC& nf, double tol) {
  if (nf.tag.family != Family::SU || nf.tag.affine)
    throw PreconditionViolated("classify_su_linear: wrong tag");
  Verdict v;
  if (!nf.self_dual) {
    v.reason = Rule::SuLinearNotSelfDual;
    return v;
  }
  v.reversible = true;
  const bool mod4_exception = nf.s == 0 && nf.t == 0 && nf.tag.n % 4 == 2;
  if (mod4_exception) {
    v.reason = Rule::SuLinearMod4Exception;
    v.witness = build_su_reverser(nf, tol);
    v.obstruction = det_obstruction(nf, tol);
  } else {
    v.strongly_reversible = true;
    v.reason = Rule::SuLinearSelfDual;
    v.witness = build_su_strong(nf, tol);
  }
  return v;
}

bool exceptional_family_detect(const NormalFormC& nf, double tol) {
  if (nf.tag.family != Family::SU) return false;
  return nf.self_dual && nf.s == 0 && nf.t == 1 &&
         std::abs(nf.v[nf.tag.n - 1]) > tol && nf.pairs % 2 == 0;
}

Verdict classify_su_affine(const NormalFormC& nf, double tol) {
  if (nf.tag.family != Family::SU || !nf.tag.affine)
    throw PreconditionViolated("classify_su_affine: wrong tag");
  const int n = nf.tag.n;
  Verdict v;

  if (n == 1) {
    // SU(1) is trivial; (1, v) is conjugate only to itself.
    if (max_abs(nf.v) <= tol) {
      v.reversible = v.strongly_reversible = true;
      v.reason = Rule::Su1ZeroTranslation;
      v.witness = verify_witness(nf.reconstruct_original(),
                                 IsometryC::identity(nf.tag), tol);
    } else {
      v.reason = Rule::Su1NonzeroTranslation;
    }
    return v;
  }

  if (!nf.self_dual) {
    v.reason = Rule::SuAffineNotSelfDual;
    return v;
  }
  v.reversible = true;

  if (nf.s >= 1) {
    v.strongly_reversible = true;
    v.reason = Rule::SuAffineMinusOneBlock;
    v.witness = build_su_strong(nf, tol);
    return v;
  }

  if (nf.t == 0) {
    if (n % 4 == 2) {
      v.reason = Rule::SuAffineMod4Exception;
      v.witness = build_su_reverser(nf, tol);
      v.obstruction = det_obstruction(nf, tol);
    } else {
      v.strongly_reversible = true;
      v.reason = Rule::SuAffineLinearPart;
      v.witness = build_su_strong(nf, tol);
    }
    return v;
  }

  const bool pinned = nf.t == 1 && std::abs(nf.v[n - 1]) > tol;
  if (pinned) {
    if (nf.pairs % 2 == 0) {
      v.reason = Rule::PinnedLineFamily;
      v.witness = build_su_reverser(nf, tol);
      v.obstruction = det_obstruction(nf, tol);
    } else {
      v.strongly_reversible = true;
      v.reason = Rule::SuAffineOddPairs;
      v.witness = build_su_strong(nf, tol);
    }
    return v;
  }

  v.strongly_reversible = true;
  v.reason = Rule::SuAffineFixedBlock;
  v.witness = build_su_strong(nf, tol);
  return v;
}

namespace {

template <class S>
Verdict decide_typed(const AffineMap<S>& g, const DecideOptions& opt) {
  require_membership(g, opt.tol);
  if (distance(g, AffineMap<S>::identity(g.tag)) <= opt.tol * g.tag.n) {
    Verdict v;
    v.reversible = v.strongly_reversible = true;
    v.reason = Rule::Identity;
    v.witness = verify_witness(g, AffineMap<S>::identity(g.tag), opt.tol);
    return v;
  }
  NormalForm<S> nf = normalize(g, opt.tol);
  Verdict v;
  if constexpr (std::is_same_v<S, Quaternion>) {
    v = g.tag.affine ? classify_sp_affine(nf, opt.tol)
                     : classify_sp_linear(nf, opt.tol);
  } else {
    if (g.tag.family == Family::U)
      v = classify_u(nf, opt.tol);
    else
      v = g.tag.affine ? classify_su_affine(nf, opt.tol)
                       : classify_su_linear(nf, opt.tol);
  }
  // Re-measure the witness against the element as given, not the
  // reconstruction the builders saw.
  if (v.witness) {
    const auto& h = std::get<AffineMap<S>>(v.witness->h);
    v.witness = verify_witness(g, h, opt.tol);
  }
  return v;
}

}  // namespace

Verdict decide(const AnyIsometry& g, const DecideOptions& opt) {
  return std::visit([&](const auto& e) { return decide_typed(e, opt); }, g);
}

}  // namespace isorev
