// Acceptance harness: one criterion per function, one pass/fail line each,
// wall-clock budgets enforced. Exit 0 only if every criterion holds.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <sys/wait.h>
#include <vector>

#include "greenberg/report.hpp"

using namespace greenberg;

namespace {

constexpr std::uint64_t kGuard = 10000000;

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<void(std::string&)> body;  // throws or appends detail on failure
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// ---- 1. Witt conformance --------------------------------------------------

void criterion_witt(std::string& detail) {
  // ghost identities, symbolically, p in {2,3,5}, depth <= 3
  for (unsigned p : {2u, 3u, 5u})
    for (unsigned n = 0; n <= 3; ++n) {
      auto t = WittTable::make(p, n);
      GhostCheck check = t->verify_ghost_identities();
      require(check.ok, "ghost identity failed: " + check.first_failure);
    }

  // W_r(F_p) is Z/p^r via the Teichmuller expansion, exhaustively
  for (auto [p, r] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}}) {
    Ring A = LocalRing::make(RingFamily::Unramified, FiniteField::make(p, 1), r);
    const std::uint64_t mod = upow(p, r);
    auto tau = [&](std::uint64_t a) {
      std::uint64_t acc = 1 % mod;
      for (std::uint64_t i = 0; i < upow(p, r - 1); ++i) acc = acc * a % mod;
      return acc;
    };
    auto phi = [&](ring_code x) {
      std::uint64_t total = 0, pi = 1;
      for (ff_elt d : A->digits(x)) {
        total = (total + tau(d) * pi) % mod;
        pi *= p;
      }
      return total;
    };
    std::set<std::uint64_t> image;
    for (ring_code x = 0; x < A->cardinality(); ++x) image.insert(phi(x));
    require(image.size() == mod, "Teichmuller expansion is not bijective");
    for (ring_code x = 0; x < A->cardinality(); ++x)
      for (ring_code y = 0; y < A->cardinality(); ++y) {
        require(phi(A->add(x, y)) == (phi(x) + phi(y)) % mod, "additive mismatch");
        require(phi(A->mul(x, y)) == phi(x) * phi(y) % mod, "multiplicative mismatch");
      }
  }
  detail = "ghost identities p in {2,3,5} depth <= 3; W_r(F_p) = Z/p^r for 4 pairs";
}

// ---- 2. Order formula -----------------------------------------------------

void criterion_orders(std::string& detail) {
  struct Row {
    const char* ring;
    Ambient amb;
    unsigned n;
    std::uint64_t expect;
  };
  for (const Row& row : {Row{"F3[t]/t^2", Ambient::GL, 2, 3888},
                         Row{"F2[t]/t^2", Ambient::GL, 3, 86016},
                         Row{"Z/4", Ambient::SL, 2, 48},
                         Row{"Z/8", Ambient::GL, 2, 1536}}) {
    auto A = LocalRing::parse(row.ring);
    auto G = GroupPattern::ambient_group(row.amb, A, row.n);
    require(G.order() == row.expect, std::string("closed form off for ") + row.ring);
    const auto elems = G.enumerate_elements(kGuard);
    require(elems.size() == row.expect,
            "enumeration count " + std::to_string(elems.size()) + " != " +
                std::to_string(row.expect) + " for " + row.ring);
    // q^{(r-1) dim} * |G(F_q)| recomputed from the residue enumeration
    auto residue = GroupPattern::ambient_group(row.amb, A->reduced_ring(1), row.n);
    const std::uint64_t base_count = residue.enumerate_elements(kGuard).size();
    const std::uint64_t layers =
        upow(A->residue_q(), (A->length() - 1) * ambient_dim(row.amb, row.n));
    require(base_count * layers == row.expect, "structure factorization mismatch");
  }
  detail = "3888 / 86016 / 48 / 1536, each = q^{(r-1)dim} |G(F_q)| by enumeration";
}

// ---- 3. Smoothness shadow -------------------------------------------------

void criterion_smoothness(std::string& detail) {
  Rng rng(0);
  for (const char* spec : {"F3[t]/t^2", "Z/9"}) {
    auto A = LocalRing::parse(spec);
    for (Ambient amb : {Ambient::GL, Ambient::SL}) {
      auto G = GroupPattern::ambient_group(amb, A, 2);
      std::map<std::string, std::uint64_t> fibers;
      for (const Matrix& g : G.enumerate_elements(kGuard)) ++fibers[g.reduced(1).serialize()];
      const std::uint64_t expect = upow(A->residue_q(), ambient_dim(amb, 2));
      for (const auto& [img, count] : fibers)
        require(count == expect, "unequal fiber in " + std::string(spec));
      auto residue = GroupPattern::ambient_group(amb, A->reduced_ring(1), 2);
      require(fibers.size() == residue.order(), "fiber count mismatch");

      for (int s = 0; s < 500; ++s) {
        Matrix m = G.random_element(rng);
        Matrix down = m.reduced(1);
        Matrix up = lift_point(down, amb, A);
        require(up.reduced(1) == down, "lift does not round-trip");
        require(G.contains(up), "lift left the group");
      }
    }
  }
  detail = "all reduction fibers have size q^dim on GL2/SL2 over F3[t]/t^2 and Z/9; 500 lifts";
}

// ---- 4. Scheme normalizer = set normalizer --------------------------------

void criterion_normalizer(std::string& detail) {
  Rng rng(0);
  ScanOptions scan;
  for (const char* spec : {"F3[t]/t^2", "Z/9"}) {
    auto A = LocalRing::parse(spec);
    for (unsigned n : {2u, 3u}) {
      PointSet G = PointSet::whole_group(GroupPattern::general_linear(A, n));
      PointSet T =
          PointSet::from_pattern(GroupPattern::diagonal_torus(Ambient::GL, A, n), kGuard, rng);
      PointSet N = normalizer_points(G, T, scan);
      PointSet M = PointSet::from_pattern(scheme_normalizer_torus(Ambient::GL, n, A), kGuard, rng);
      require(N.set_equal(M), "normalizer != monomial for GL" + std::to_string(n) + " over " +
                                  spec);
    }
  }
  detail = "monomial pattern = brute-force torus normalizer, GL2/GL3 over F3[t]/t^2 and Z/9";
}

// ---- 5. Cartan suite ------------------------------------------------------

void criterion_cartan(std::string& detail) {
  SuiteOptions opts;
  for (const char* spec : {"F3[t]/t^1", "F3[t]/t^2"}) {
    for (unsigned n : {2u, 3u}) {
      SuiteResult r = cartan_suite(Ambient::GL, n, LocalRing::parse(spec), opts);
      require(r.verdict == Verdict::Pass,
              "cartan not passing for GL" + std::to_string(n) + " over " + spec);
      std::uint64_t weyl = 1;
      for (unsigned i = 2; i <= n; ++i) weyl *= i;
      require(r.sizes.at("weyl_quotient") == weyl, "Weyl quotient wrong");
    }
  }
  SuiteResult degenerate = cartan_suite(Ambient::GL, 2, LocalRing::parse("F2[t]/t^2"), opts);
  require(degenerate.verdict == Verdict::HypothesisViolation,
          "expected hypothesis-violation at q = 2");
  require(degenerate.sizes.at("centralizer") == 16 && degenerate.sizes.at("torus") == 4,
          "documented 16-vs-4 discrepancy missing");
  detail = "pass at q = 3 (r = 1, 2; n = 2, 3); 16-vs-4 hypothesis-violation at q = 2";
}

// ---- 6. Unipotent radical shadow -------------------------------------------

void criterion_radical(std::string& detail) {
  Rng rng(0);
  FiltrationOptions fopts;

  auto f3t2 = LocalRing::parse("F3[t]/t^2");
  PointSet G1 = PointSet::from_pattern(GroupPattern::general_linear(f3t2, 2), kGuard, rng);
  PointSet Op1 = largest_normal_p_subgroup(G1, fopts);
  PointSet K1 = PointSet::from_pattern(
      GroupPattern::congruence_kernel(Ambient::GL, f3t2, 2, 1), kGuard, rng);
  require(Op1.size() == 81 && Op1.set_equal(K1), "O_p != kernel for GL2 over F3[t]/t^2");

  auto z4 = LocalRing::parse("Z/4");
  PointSet G2 = PointSet::from_pattern(GroupPattern::special_linear(z4, 2), kGuard, rng);
  PointSet Op2 = largest_normal_p_subgroup(G2, fopts);
  PointSet K2 = PointSet::from_pattern(
      GroupPattern::congruence_kernel(Ambient::SL, z4, 2, 1), kGuard, rng);
  require(Op2.size() == 8 && Op2.set_equal(K2), "O_p != kernel for SL2 over Z/4");

  for (const char* spec : {"F2[t]/t^2", "F3[t]/t^2"}) {
    auto A = LocalRing::parse(spec);
    require(borel_preimage_check(GroupPattern::general_linear(A, 2),
                                 GroupPattern::std_borel(Ambient::GL, A, 2), fopts),
            "Borel preimage identity failed over " + std::string(spec));
  }
  detail = "O_p oracle returns the kernels (81 and 8); B G^1 = preimage at q in {2,3}";
}

// ---- 7. Parabolic / Borel conjugacy ----------------------------------------

void criterion_parabolic_borel(std::string& detail) {
  SuiteOptions opts;
  auto f2t2 = LocalRing::parse("F2[t]/t^2");

  SuiteResult p1 = parabolic_selfnorm_suite(Ambient::GL, 2, f2t2, {1, 1}, opts);
  require(p1.verdict == Verdict::Pass, "GL2 Borel self-normalization failed");
  SuiteResult p2 = parabolic_selfnorm_suite(Ambient::GL, 3, f2t2, {1, 1, 1}, opts);
  require(p2.verdict == Verdict::Pass, "GL3 (1,1,1) self-normalization failed");
  SuiteResult p3 = parabolic_selfnorm_suite(Ambient::GL, 3, f2t2, {2, 1}, opts);
  require(p3.verdict == Verdict::Pass, "GL3 (2,1) self-normalization failed");

  SuiteResult b1 = borel_conjugacy_suite(Ambient::SL, 2, LocalRing::parse("Z/4"), 50, opts);
  require(b1.verdict == Verdict::Pass && b1.sizes.at("certified") == 50,
          "SL2/Z4 conjugacy trials failed");
  SuiteResult b2 = borel_conjugacy_suite(Ambient::GL, 3, LocalRing::parse("Z/8"), 50, opts);
  require(b2.verdict == Verdict::Pass && b2.sizes.at("certified") == 50,
          "GL3/Z8 conjugacy trials failed");
  detail = "self-normalizing strict parabolics over F2[t]/t^2; 50/50 + 50/50 conjugacy trials";
}

// ---- 8. Torus injectivity ---------------------------------------------------

void criterion_injectivity(std::string& detail) {
  SuiteOptions opts;
  for (const char* spec : {"F3[t]/t^2", "Z/9"}) {
    SuiteResult r = torus_injectivity_suite(Ambient::GL, 2, LocalRing::parse(spec), 500, opts);
    require(r.verdict == Verdict::Pass && r.sizes.at("agreed") == 500,
            "sampled pair disagreed over " + std::string(spec));
  }
  detail = "500/500 sampled pairs on GL2 over F3[t]/t^2 and Z/9";
}

// ---- 9. Determinism ---------------------------------------------------------

std::string run_cli_capture(const std::string& args, int& exit_code) {
  const std::string cmd = std::string(GREENBERG_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  char buf[4096];
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Failure("cannot spawn the CLI");
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

void criterion_determinism(std::string& detail) {
  int code1 = 0, code2 = 0, code3 = 0;
  const std::string first = run_cli_capture("verify --all --format json --workers 1", code1);
  const std::string second = run_cli_capture("verify --all --format json --workers 1", code2);
  const std::string many = run_cli_capture("verify --all --format json --workers 4", code3);
  require(code1 == 0 && code2 == 0 && code3 == 0, "verify --all did not exit 0");
  require(first == second, "two identical runs differ");
  require(first == many, "worker count changed the report");
  require(!first.empty(), "empty report");
  detail = "verify --all byte-identical across reruns and 1-vs-4 workers";
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"witt conformance", 5.0, criterion_witt},
      {"order formula", 30.0, criterion_orders},
      {"smoothness shadow", 10.0, criterion_smoothness},
      {"scheme-vs-set normalizer", 60.0, criterion_normalizer},
      {"cartan suite", 60.0, criterion_cartan},
      {"unipotent radical shadow", 30.0, criterion_radical},
      {"parabolic / borel conjugacy", 120.0, criterion_parabolic_borel},
      {"torus injectivity", 30.0, criterion_injectivity},
      {"determinism", 600.0, criterion_determinism},
  };

  bool all_ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    std::string reason;
    try {
      criteria[i].body(detail);
    } catch (const std::exception& e) {
      ok = false;
      reason = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && secs > criteria[i].budget_seconds) {
      ok = false;
      reason = "budget exceeded: " + std::to_string(secs) + " s > " +
               std::to_string(criteria[i].budget_seconds) + " s";
    }
    all_ok = all_ok && ok;
    std::ostringstream line;
    line << "[" << (i + 1) << "/9] " << (ok ? "PASS" : "FAIL") << "  " << criteria[i].name << " ("
         << std::fixed;
    line.precision(2);
    line << secs << " s)";
    if (ok && !detail.empty()) line << " -- " << detail;
    if (!ok) line << " -- " << reason;
    std::cout << line.str() << std::endl;
  }
  return all_ok ? 0 : 1;
}
