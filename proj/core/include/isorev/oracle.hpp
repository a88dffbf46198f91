#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "isorev/reverser.hpp"

namespace isorev {

// Residual bound for accepting a brute-search candidate.
inline constexpr double kSearchTol = 1e-7;

// Deterministic generator: a fixed seed reproduces the same stream on any
// platform with the same standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(mix(seed)) {}

  double normal() { return normal_(eng_); }
  double uniform() { return uniform_(eng_); }
  std::uint64_t u64() { return eng_(); }
  int sign() { return eng_() & 1 ? 1 : -1; }
  cplx cnormal() { return cplx(normal(), normal()); }
  Quaternion qnormal() {
    return Quaternion(normal(), normal(), normal(), normal());
  }
  std::mt19937_64& raw() { return eng_; }

  // Splitmix step, used to derive independent per-trial streams.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Haar-distributed unitary (Ginibre + QR with phase-fixed R diagonal).
MatC random_unitary(int n, Rng& rng);
// Haar unitary with one column rephased so the determinant is 1.
MatC random_special_unitary(int n, Rng& rng);
// Quaternionic unitary from Gaussian entries and two-pass Gram-Schmidt.
MatH random_sp_unitary(int n, Rng& rng);
// Nearest unitary in Frobenius norm (polar factor).
MatC nearest_unitary(const MatC& m);

// Random element of the tagged group; with `planted`, the linear part is
// U D U* for the diagonal D realizing the given spectrum (angles in [0,pi]
// for Sp classes, signed angles for complex).  Affine tags get a standard
// normal translation.  Throws PreconditionViolated when a planted SU
// spectrum has determinant != 1.
AnyIsometry random_group_element(GroupTag tag, std::uint64_t seed,
                                 const std::optional<Spectrum>& planted = {});

// Which constraints a searched conjugator must satisfy.  Conjugation
// reversal and unitarity are always enforced; the translation flip
// B v = -v is part of the conjugation equation for the affine element.
struct ReverserConstraints {
  bool involution = false;
  bool det_one = false;  // SU membership of the witness
  double accept_tol = kSearchTol;
};

// Structure of {B : B D = D^-1 B} for a diagonal unitary D: the only free
// entries sit in blocks coupling a class to the class of inverted
// eigenvalues.  Sampling respects this sparsity, so candidates satisfy the
// commutation identity exactly and only the discrete constraints
// (involution, determinant) remain to be tested.
struct ReverserBlock {
  enum class Kind {
    PairCoupling,    // complex: swap-coupling of a (theta, -theta) class pair
    FullBlock,       // complex: unitary block on a +-1 class
    ComplexJLines,   // quaternionic rotation class: entries in C j
    FullQuaternion,  // quaternionic +-1 class: full Sp block
  };
  Kind kind = Kind::FullBlock;
  double angle = 0.0;
  std::vector<int> coords;         // class coordinates
  std::vector<int> mirror_coords;  // PairCoupling: the -theta coordinates
  bool carries_translation = false;
  int free_real_params = 0;
};

struct ReverserSpace {
  bool feasible = true;  // false when some class has no inverse partner
  std::vector<ReverserBlock> blocks;
  int free_real_params = 0;
  std::vector<std::string> constraints;
};

ReverserSpace reverser_space(const VecC& diag, const VecC& v,
                             const ReverserConstraints& cons);
ReverserSpace reverser_space(const VecH& diag, const VecH& v,
                             const ReverserConstraints& cons);

// Randomized search for a reversing conjugator of the diagonal model
// (D, v).  Samples the reverser space blockwise (unitary blocks from
// Haar/polar corrections, sign patterns uniformly), tests the remaining
// constraints, and returns the first certified witness.  Deterministic in
// `seed`; per-trial streams are independent.
struct SearchOutcome {
  bool found = false;
  std::optional<ReverserWitness> witness;
  long trials_used = 0;
  ReverserSpace space;
};

SearchOutcome brute_reverser_search(const MatC& diag_a, const VecC& v,
                                    GroupTag tag,
                                    const ReverserConstraints& cons,
                                    long trials, std::uint64_t seed);
SearchOutcome brute_reverser_search(const MatH& diag_a, const VecH& v,
                                    GroupTag tag,
                                    const ReverserConstraints& cons,
                                    long trials, std::uint64_t seed);

// Replayable bookkeeping showing the determinant of every involutive
// reverser is forced: one step per conjugate-pair class (factor (-1)^mult)
// plus one for a sign pinned by a nonzero translation on a single fixed
// line.  A certificate is produced only when the forced value is -1.
struct TraceStep {
  std::string kind;
  int count = 0;
  int factor = 1;
};

struct ObstructionCertificate {
  int forced_det = 1;
  std::vector<TraceStep> trace;

  int replay() const {
    int d = 1;
    for (const auto& s : trace) d *= s.factor;
    return d;
  }
};

// For a self-dual SU normal form: detects when every involutive reverser
// candidate has its determinant forced (no free sign remains: s = 0 and
// the fixed block is empty or a single pinned line) and that value is -1.
std::optional<ObstructionCertificate> det_obstruction(const NormalFormC& nf,
                                                      double tol);

// Spectral necessary-and-sufficient reversibility test for linear parts:
// always true over the quaternions, self-duality over the complexes.
bool spectrum_oracle_reversible(const MatC& a, GroupTag tag, double tol);
bool spectrum_oracle_reversible(const MatH& a, GroupTag tag, double tol);

}  // namespace isorev
