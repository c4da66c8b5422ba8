#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "greenberg/filtration.hpp"
#include "greenberg/flag.hpp"
#include "greenberg/transporter.hpp"

namespace greenberg {

enum class Verdict { Pass, Fail, HypothesisViolation };

std::string verdict_string(Verdict v);

struct SuiteResult {
  std::string suite;
  std::string group_name;
  std::string ring_spec;
  unsigned q = 0;
  unsigned r = 0;
  Verdict verdict = Verdict::Fail;
  std::vector<std::string> witnesses;            // serialized matrices
  std::map<std::string, std::uint64_t> sizes;    // named counts, key-sorted
  std::int64_t millis = 0;
};

struct SuiteOptions {
  std::uint64_t guard = 10000000;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  unsigned trials = 50;
};

/// Residue-field size below which a failed conclusion is blamed on the
/// hypothesis (too-small field) rather than reported as a defect: the
/// diagonal torus stops separating at q = 2 for GL and at q <= 3 for SL.
unsigned small_q_threshold(Ambient a);

/// Torus checks: centralizer of T(A) equals T(A), its normalizer equals the
/// monomial pattern, the identity-component slice of the normalizer is
/// T(A), and the normalizer quotient has Weyl order n!.
SuiteResult cartan_suite(Ambient a, unsigned n, Ring A, const SuiteOptions& opts = {});

/// Sampled pairs g, g': the conjugates g T g^{-1} and g' T g'^{-1} coincide
/// exactly when g'^{-1} g lands in the computed normalizer.
SuiteResult torus_injectivity_suite(Ambient a, unsigned n, Ring A, unsigned samples,
                                    const SuiteOptions& opts = {});

/// Self-normalization of the parabolic of the given shape, taken as the
/// full reduction preimage of the residue parabolic. The plain pattern
/// points are also measured and recorded when feasible.
SuiteResult parabolic_selfnorm_suite(Ambient a, unsigned n, Ring A, std::vector<unsigned> shape,
                                     const SuiteOptions& opts = {});

/// Hidden-conjugator trials: present h B h^{-1} through generators and an
/// oracle only, recover its flag, build a transporter, certify it; against
/// an exhaustive transporter search whenever the group is small enough.
SuiteResult borel_conjugacy_suite(Ambient a, unsigned n, Ring A, unsigned trials,
                                  const SuiteOptions& opts = {});

}  // namespace greenberg
