#include "greenberg/suites.hpp"

#include <algorithm>
#include <chrono>

namespace greenberg {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

std::uint64_t to_u64(const mpz_class& v) {
  return v.fits_ulong_p() ? static_cast<std::uint64_t>(v.get_ui()) : 0;
}

SuiteResult make_result(const std::string& suite, Ambient a, unsigned n, const Ring& A) {
  SuiteResult res;
  res.suite = suite;
  res.group_name = (a == Ambient::GL ? "GL" : "SL") + std::to_string(n);
  res.ring_spec = A->spec_string();
  res.q = A->residue_q();
  res.r = A->length();
  return res;
}

// First element of `big` missing from `small`, in canonical order.
std::string first_extra(const PointSet& big, const PointSet& small) {
  for (const Matrix& m : big.elements())
    if (!small.contains(m)) return m.serialize();
  return "";
}

}  // namespace

std::string verdict_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::HypothesisViolation:
      return "hypothesis-violation";
  }
  return "fail";
}

unsigned small_q_threshold(Ambient a) { return a == Ambient::GL ? 3 : 4; }

SuiteResult cartan_suite(Ambient a, unsigned n, Ring A, const SuiteOptions& opts) {
  const auto start = Clock::now();
  SuiteResult res = make_result("cartan", a, n, A);
  Rng rng(opts.seed);
  ScanOptions scan{opts.guard, opts.workers, opts.seed};

  GroupPattern group = GroupPattern::ambient_group(a, A, n);
  PointSet G = PointSet::whole_group(group);
  PointSet T = PointSet::from_pattern(GroupPattern::diagonal_torus(a, A, n), opts.guard, rng);
  PointSet C = centralizer_points(G, T, scan);
  PointSet N = normalizer_points(G, T, scan);
  PointSet M =
      PointSet::from_pattern(scheme_normalizer_torus(a, n, A), opts.guard, rng);
  PointSet component =
      component_points(N, GroupPattern::diagonal_torus(a, A->reduced_ring(1), n), rng);

  const bool centralizer_ok = C.set_equal(T);
  const bool normalizer_ok = N.set_equal(M);
  const bool component_ok = component.set_equal(T);
  const mpz_class weyl_expected = [&] {
    mpz_class f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
  }();
  const bool weyl_ok = N.order() == weyl_expected * T.order();
  // a Cartan candidate must at least be abelian
  bool abelian_ok = true;
  for (const Matrix& x : T.elements()) {
    for (const Matrix& y : T.elements())
      if (!(x * y == y * x)) abelian_ok = false;
    if (!abelian_ok) break;
  }

  res.sizes["order_G"] = to_u64(group.order());
  res.sizes["torus"] = T.size();
  res.sizes["centralizer"] = C.size();
  res.sizes["normalizer"] = N.size();
  res.sizes["monomial"] = M.size();
  res.sizes["component"] = component.size();
  res.sizes["weyl_quotient"] = static_cast<std::uint64_t>(N.size() / T.size());

  if (centralizer_ok && normalizer_ok && component_ok && weyl_ok && abelian_ok) {
    res.verdict = Verdict::Pass;
  } else if (abelian_ok && res.q < small_q_threshold(a) && T.subset_of(C) && M.subset_of(N)) {
    // documented small-field degeneration: both discrepancies point outward
    res.verdict = Verdict::HypothesisViolation;
    if (!centralizer_ok) res.witnesses.push_back(first_extra(C, T));
    if (!normalizer_ok) res.witnesses.push_back(first_extra(N, M));
  } else {
    res.verdict = Verdict::Fail;
    if (!centralizer_ok) res.witnesses.push_back(first_extra(C, T));
    if (!normalizer_ok) res.witnesses.push_back(first_extra(N, M));
    if (!component_ok) res.witnesses.push_back(first_extra(component, T));
  }
  res.millis = elapsed_ms(start);
  return res;
}

SuiteResult torus_injectivity_suite(Ambient a, unsigned n, Ring A, unsigned samples,
                                    const SuiteOptions& opts) {
  const auto start = Clock::now();
  SuiteResult res = make_result("torus-injectivity", a, n, A);
  Rng rng(opts.seed);
  ScanOptions scan{opts.guard, opts.workers, opts.seed};

  GroupPattern group = GroupPattern::ambient_group(a, A, n);
  PointSet G = PointSet::whole_group(group);
  PointSet T = PointSet::from_pattern(GroupPattern::diagonal_torus(a, A, n), opts.guard, rng);
  PointSet N = normalizer_points(G, T, scan);

  unsigned passed = 0;
  for (unsigned s = 0; s < samples; ++s) {
    const Matrix g = group.random_element(rng);
    const Matrix g2 = group.random_element(rng);
    const bool same_conjugate = conj_set(g, T).set_equal(conj_set(g2, T));
    const bool in_normalizer = N.contains(mat_inv(g2) * g);
    if (same_conjugate == in_normalizer) {
      ++passed;
    } else if (res.witnesses.size() < 2) {
      res.witnesses.push_back(g.serialize());
      res.witnesses.push_back(g2.serialize());
    }
  }
  res.sizes["torus"] = T.size();
  res.sizes["normalizer"] = N.size();
  res.sizes["samples"] = samples;
  res.sizes["agreed"] = passed;
  res.verdict = passed == samples ? Verdict::Pass : Verdict::Fail;
  res.millis = elapsed_ms(start);
  return res;
}

SuiteResult parabolic_selfnorm_suite(Ambient a, unsigned n, Ring A, std::vector<unsigned> shape,
                                     const SuiteOptions& opts) {
  const auto start = Clock::now();
  std::string shape_str;
  for (unsigned b : shape) shape_str += (shape_str.empty() ? "" : ",") + std::to_string(b);
  SuiteResult res = make_result("parabolic(" + shape_str + ")", a, n, A);
  Rng rng(opts.seed);
  ScanOptions scan{opts.guard, opts.workers, opts.seed};

  GroupPattern group = GroupPattern::ambient_group(a, A, n);
  PointSet G = PointSet::whole_group(group);
  GroupPattern parabolic = GroupPattern::std_parabolic(a, A, n, std::move(shape));

  // The subgroup under test is the full preimage of the residue parabolic
  // (for r = 1 that is the parabolic itself).
  GroupPattern strict =
      A->length() == 1
          ? parabolic
          : GroupPattern::full_preimage(a, A, parabolic.residue_version());
  PointSet H = PointSet::from_pattern(strict, opts.guard, rng);
  PointSet N = normalizer_points(G, H, scan);

  res.sizes["order_G"] = to_u64(group.order());
  res.sizes["strict_parabolic"] = H.size();
  res.sizes["strict_normalizer"] = N.size();

  // Empirical record of the plain pattern points alongside, when feasible.
  try {
    PointSet P = PointSet::from_pattern(parabolic, opts.guard, rng);
    PointSet NP = normalizer_points(G, P, scan);
    res.sizes["pattern_parabolic"] = P.size();
    res.sizes["pattern_normalizer"] = NP.size();
  } catch (const SizeGuardError&) {
    // skip the side measurement for large instances
  }

  const bool ok = N.set_equal(H);
  if (ok) {
    res.verdict = Verdict::Pass;
  } else if (res.q < small_q_threshold(a) && H.subset_of(N)) {
    res.verdict = Verdict::HypothesisViolation;
    res.witnesses.push_back(first_extra(N, H));
  } else {
    res.verdict = Verdict::Fail;
    res.witnesses.push_back(first_extra(N, H));
  }
  res.millis = elapsed_ms(start);
  return res;
}

SuiteResult borel_conjugacy_suite(Ambient a, unsigned n, Ring A, unsigned trials,
                                  const SuiteOptions& opts) {
  const auto start = Clock::now();
  SuiteResult res = make_result("borel", a, n, A);
  Rng rng(opts.seed);
  ScanOptions scan{opts.guard, opts.workers, opts.seed};
  FlagOptions fopts{opts.guard, opts.seed};

  GroupPattern group = GroupPattern::ambient_group(a, A, n);
  GroupPattern borel = GroupPattern::std_borel(a, A, n);
  const std::vector<Matrix> std_gens = borel.generators();
  const bool brute_feasible = group.order() <= 10000;

  PointSet Gpts = brute_feasible
                      ? PointSet::from_pattern(group, opts.guard, rng)
                      : PointSet::whole_group(group);
  PointSet Bpts = brute_feasible ? PointSet::from_pattern(borel, opts.guard, rng)
                                 : PointSet::whole_group(borel);

  unsigned ok_trials = 0;
  for (unsigned t = 0; t < trials; ++t) {
    const Matrix h = group.random_element(rng);
    const Matrix hi = mat_inv(h);

    // B' = h B h^{-1}, presented without revealing h: generators plus a
    // membership oracle only.
    std::vector<Matrix> conj_gens;
    conj_gens.reserve(std_gens.size());
    for (const Matrix& s : std_gens) conj_gens.push_back(h * s * hi);
    GroupPattern borel_copy = borel;
    auto oracle = [borel_copy, h, hi](const Matrix& m) { return borel_copy.contains(hi * m * h); };
    PointSet hidden = PointSet::intensional(group, conj_gens, oracle, borel.order());

    bool trial_ok = true;
    try {
      const Flag f = recover_flag(hidden, fopts);
      const Matrix g = flag_transporter(std_flag(a, A, n), f);
      const Matrix gi = mat_inv(g);
      if (a == Ambient::SL && det(g) != A->one()) trial_ok = false;
      for (const Matrix& s : std_gens)
        if (!hidden.contains(g * s * gi)) trial_ok = false;
      for (const Matrix& b : conj_gens)
        if (!borel.contains(gi * b * g)) trial_ok = false;

      if (trial_ok && brute_feasible) {
        PointSet Z = conj_set(h, Bpts);
        PointSet transporter = transporter_points(Gpts, Bpts, Z, scan);
        if (transporter.size() == 0 || !transporter.contains(g)) trial_ok = false;
        // a nonempty transporter is one coset each way: N(Z) rep = rep N(Y)
        std::vector<Matrix> zgens;
        for (const Matrix& s : std_gens) zgens.push_back(h * s * hi);
        PointSet Zsub = PointSet::subgroup(Gpts.group(), Z.elements(), zgens, rng);
        PointSet NZ = normalizer_points(Gpts, Zsub, scan);
        PointSet NY = normalizer_points(Gpts, Bpts, scan);
        if (transporter.size() != NZ.size() || transporter.size() != NY.size()) trial_ok = false;
        const Matrix rep = transporter.elements().front();
        const Matrix rep_inv = mat_inv(rep);
        for (const Matrix& m : transporter.elements())
          if (!NZ.contains(m * rep_inv) || !NY.contains(rep_inv * m)) trial_ok = false;
      }
    } catch (const NotBorelError& e) {
      trial_ok = false;
      res.witnesses.push_back(e.witness());
    }
    if (trial_ok)
      ++ok_trials;
    else if (res.witnesses.size() < 3)
      res.witnesses.push_back(h.serialize());
  }

  res.sizes["borel"] = to_u64(borel.order());
  res.sizes["order_G"] = to_u64(group.order());
  res.sizes["trials"] = trials;
  res.sizes["certified"] = ok_trials;
  res.verdict = ok_trials == trials ? Verdict::Pass : Verdict::Fail;
  res.millis = elapsed_ms(start);
  return res;
}

}  // namespace greenberg
