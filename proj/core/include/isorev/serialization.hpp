#pragma once

#include <string>

#include "isorev/classify.hpp"
#include "isorev/normal_form.hpp"

namespace isorev {

// JSON wire formats.  Scalars are arrays of doubles: complex [re, im],
// quaternion [a0, a1, a2, a3].  An isometry is
//   {"group": "sp"|"u"|"su", "affine": bool, "n": int,
//    "linear": [[scalar, ...], ...], "translation": [scalar, ...]}
// with "translation" optional when the tag is linear.  Doubles are written
// with shortest round-trip precision, so decode(encode(g)) == g exactly.

std::string isometry_to_json(const AnyIsometry& g, int indent = 2);

// Throws ParseError on malformed text, wrong shapes, or scalar arrays that
// do not match the group's scalar type.
AnyIsometry isometry_from_json(const std::string& text);

// Reads and parses a file; throws ParseError when unreadable.
AnyIsometry load_isometry(const std::string& path);

// Verdict output:
//   {"reversible": bool, "strongly_reversible": bool, "reason": str,
//    "witness"?: isometry, "witness_is_involution": bool,
//    "residuals": {"conjugation": x, "involution": x},
//    "obstruction"?: {"forced_det": +-1,
//                     "trace": [{"kind": str, "count": int, "factor": +-1}]}}
std::string verdict_to_json(const Verdict& v, bool emit_witness = true,
                            int indent = 2);

std::string normal_form_to_json(const NormalFormC& nf, int indent = 2);
std::string normal_form_to_json(const NormalFormH& nf, int indent = 2);

}  // namespace isorev
