// Command line front end: classify elements of the Hermitian isometry
// groups, verify reversing conjugators, generate sample inputs, and run
// the library's property suites.
//
// Exit codes: 0 success, 1 verification or internal failure, 2 malformed
// input or invalid parameters, 3 group membership failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "isorev/classify.hpp"
#include "isorev/normal_form.hpp"
#include "isorev/oracle.hpp"
#include "isorev/selftest.hpp"
#include "isorev/serialization.hpp"

namespace {

using namespace isorev;

void require_membership_any(const AnyIsometry& g, double tol) {
  std::visit([&](const auto& e) { require_membership(e, tol); }, g);
}

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNotInGroup = 3;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text << "\n";
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("ISOREV_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError("ISOREV_SEED must be an unsigned integer");
    }
  }
  return cli_seed;
}

Family parse_family(const std::string& group) {
  if (group == "sp") return Family::Sp;
  if (group == "u") return Family::U;
  if (group == "su") return Family::SU;
  throw ParseError("--group must be one of sp, u, su");
}

// Reversibility of an affine isometry forces a self-dual linear spectrum,
// and for linear elements the spectral condition is exact.  The crosscheck
// reports both values and flags the appropriate implication.
struct OracleCheck {
  bool spectrum_reversible = false;
  bool agrees = false;
};

OracleCheck oracle_crosscheck(const AnyIsometry& g, const Verdict& v,
                              double tol) {
  OracleCheck oc;
  GroupTag tag = tag_of(g);
  oc.spectrum_reversible = std::visit(
      [&](const auto& e) {
        return spectrum_oracle_reversible(e.linear, tag, tol);
      },
      g);
  oc.agrees = tag.affine ? (!v.reversible || oc.spectrum_reversible)
                         : (v.reversible == oc.spectrum_reversible);
  return oc;
}

int run_classify(const std::string& input, const std::string& output,
                 double tol, bool emit_witness, bool oracle) {
  AnyIsometry g = load_isometry(input);
  require_membership_any(g, tol);
  DecideOptions opt;
  opt.tol = tol;
  Verdict v = decide(g, opt);
  std::string text = verdict_to_json(v, emit_witness);
  if (oracle) {
    OracleCheck oc = oracle_crosscheck(g, v, tol);
    // splice the crosscheck into the top-level object
    std::string patch = std::string(",\n  \"oracle\": {\n") +
                        "    \"spectrum_reversible\": " +
                        (oc.spectrum_reversible ? "true" : "false") +
                        ",\n    \"agrees\": " + (oc.agrees ? "true" : "false") +
                        "\n  }\n}";
    text = text.substr(0, text.rfind('\n')) + patch;
    write_output(text, output);
    return oc.agrees ? kExitOk : kExitFailure;
  }
  write_output(text, output);
  return kExitOk;
}

int run_verify(const std::string& input, const std::string& witness_path,
               const std::string& output, double tol) {
  AnyIsometry g = load_isometry(input);
  AnyIsometry h = load_isometry(witness_path);
  require_membership_any(g, tol);
  require_membership_any(h, tol);
  if (!(tag_of(g) == tag_of(h)))
    throw TagMismatch("element and witness live in different groups");

  ReverserWitness w = std::visit(
      [&](const auto& ge) {
        using T = std::decay_t<decltype(ge)>;
        return verify_witness(ge, std::get<T>(h), tol);
      },
      g);
  const int n = tag_of(g).n;
  const bool valid = w.residual_conj <= tol * n && w.det_ok;
  char buf[192];
  std::snprintf(buf, sizeof buf,
                "{\n  \"valid\": %s,\n  \"is_involution\": %s,\n"
                "  \"residuals\": {\n    \"conjugation\": %.17g,\n"
                "    \"involution\": %.17g\n  }\n}",
                valid ? "true" : "false", w.is_involution ? "true" : "false",
                w.residual_conj, w.residual_inv);
  write_output(buf, output);
  return valid ? kExitOk : kExitFailure;
}

Spectrum random_spectrum(Family family, int n, Rng& rng) {
  Spectrum sp;
  int remaining = n;
  // Conjugate pairs first for the complex families so an SU determinant
  // comes out 1 exactly; odd leftovers become fixed eigenvalues.
  if (family == Family::Sp) {
    while (remaining > 0) {
      int m = 1 + static_cast<int>(rng.u64() % 2);
      m = std::min(m, remaining);
      double roll = rng.uniform();
      double theta = roll < 0.1   ? 0.0
                     : roll < 0.2 ? M_PI
                                  : 0.2 + 2.7 * rng.uniform();
      sp.classes.push_back({theta, m});
      remaining -= m;
    }
  } else {
    while (remaining >= 2 && (remaining > 2 || rng.uniform() < 0.8)) {
      int m = 1 + static_cast<int>(rng.u64() % 2);
      m = std::min(m, remaining / 2);
      double theta = 0.2 + 2.7 * rng.uniform();
      sp.classes.push_back({theta, m});
      sp.classes.push_back({-theta, m});
      remaining -= 2 * m;
    }
    while (remaining > 0) {
      // fixed eigenvalues; -1 only in pairs so det stays 1 for SU
      if (family == Family::U && remaining >= 2 && rng.uniform() < 0.3) {
        sp.classes.push_back({M_PI, 1});
        --remaining;
      } else if (remaining >= 2 && rng.uniform() < 0.3) {
        sp.classes.push_back({M_PI, 2});
        remaining -= 2;
      } else {
        sp.classes.push_back({0.0, 1});
        --remaining;
      }
    }
  }
  for (const auto& cl : sp.classes) {
    if (cl.theta == 0.0) {
      sp.t += cl.multiplicity;
      sp.has_plus_one = true;
    } else if (cl.theta == M_PI) {
      sp.s += cl.multiplicity;
      sp.has_minus_one = true;
    } else {
      sp.r += cl.multiplicity;
    }
  }
  return sp;
}

// Affine SU element with pinned translation on a fixed line and an even
// number of distinct rotation pairs: reversible, but every reverser has
// determinant -1, so none lies in the group and none is an involution.
AnyIsometry exceptional_element(int n, std::uint64_t seed) {
  if (n < 5 || n % 4 != 1)
    throw ParseError(
        "--family exceptional needs --group su, affine, and n = 4k + 1 >= 5");
  Rng rng(seed);
  const int pairs = (n - 1) / 2;
  MatC d(n);
  for (int p = 0; p < pairs; ++p) {
    double theta = (0.3 + 2.4 * (p + rng.uniform())) / pairs;
    d(2 * p, 2 * p) = unit_complex_angle(theta);
    d(2 * p + 1, 2 * p + 1) = unit_complex_angle(-theta);
  }
  d(n - 1, n - 1) = cplx(1.0, 0.0);
  VecC v(n, cplx(0.0));
  v[n - 1] = cplx(1.0, 0.0);
  GroupTag tag{Family::SU, true, n};
  MatC q = random_special_unitary(n, rng);
  return IsometryC(tag, q * d * adjoint(q), q * v);
}

int run_generate(const std::string& group, int n, bool affine,
                 const std::string& family, std::uint64_t seed,
                 const std::string& output) {
  if (n < 1) throw ParseError("--n must be a positive integer");
  Family fam = parse_family(group);
  GroupTag tag{fam, affine, n};
  AnyIsometry g = [&] {
    if (family == "random") return random_group_element(tag, seed);
    if (family == "planted-spectrum") {
      Rng rng(Rng::mix(seed) ^ 0x5eed);
      return random_group_element(tag, seed, random_spectrum(fam, n, rng));
    }
    if (family == "exceptional") {
      if (fam != Family::SU || !affine)
        throw ParseError(
            "--family exceptional needs --group su, affine, and n = 4k + 1 "
            ">= 5");
      return exceptional_element(n, seed);
    }
    throw ParseError(
        "--family must be one of random, planted-spectrum, exceptional");
  }();
  write_output(isometry_to_json(g), output);
  return kExitOk;
}

int run_selftest_cmd(int n_max, int trials, std::uint64_t seed) {
  SelftestOptions opt;
  opt.n_max = n_max;
  opt.trials = trials;
  opt.seed = seed;
  return run_selftest(opt, std::cout).ok() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Reversibility and strong reversibility in Hermitian isometry groups"};
  app.require_subcommand(1);

  std::string input, witness, output, group = "su", family = "random";
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int n = 1, n_max = 5, trials = 200;
  bool affine = false, emit_witness = true, oracle = false;

  auto* classify = app.add_subcommand(
      "classify", "Decide reversibility of a JSON-encoded isometry");
  classify->add_option("--input", input, "isometry JSON file")->required();
  classify->add_option("--output", output, "write the verdict here");
  classify->add_option("--tol", tol, "verification tolerance");
  classify->add_flag("--emit-witness,!--no-emit-witness", emit_witness,
                     "include the witness in the verdict (default on)");
  classify->add_flag("--oracle", oracle,
                     "crosscheck against the spectral oracle");

  auto* verify = app.add_subcommand(
      "verify", "Check a claimed reversing conjugator for an element");
  verify->add_option("--input", input, "isometry JSON file")->required();
  verify->add_option("--witness", witness, "conjugator JSON file")->required();
  verify->add_option("--output", output, "write the result here");
  verify->add_option("--tol", tol, "verification tolerance");

  auto* generate =
      app.add_subcommand("generate", "Emit a sample group element as JSON");
  generate->add_option("--group", group, "sp, u, or su")->required();
  generate->add_option("--n", n, "dimension")->required();
  generate->add_flag("--affine", affine, "include a random translation");
  generate->add_option("--family", family,
                       "random, planted-spectrum, or exceptional");
  generate->add_option("--seed", seed, "generator seed");
  generate->add_option("--output", output, "write the element here");

  auto* selftest =
      app.add_subcommand("selftest", "Run the library's property suites");
  selftest->add_option("--n-max", n_max, "largest dimension to exercise");
  selftest->add_option("--trials", trials, "iterations per suite");
  selftest->add_option("--seed", seed, "suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (classify->parsed())
      return run_classify(input, output, tol, emit_witness, oracle);
    if (verify->parsed()) return run_verify(input, witness, output, tol);
    if (generate->parsed())
      return run_generate(group, n, affine, family, effective_seed(seed),
                          output);
    return run_selftest_cmd(n_max, trials, effective_seed(seed));
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const TagMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const NotInGroup& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotInGroup;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
