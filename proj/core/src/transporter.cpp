#include "greenberg/transporter.hpp"

#include <algorithm>

#include "greenberg/parallel.hpp"

namespace greenberg {

namespace {

const std::vector<Matrix>& gens_or_elements(const PointSet& S) {
  return S.generators().empty() ? S.elements() : S.generators();
}

// Scan an explicit candidate list for the predicate; deterministic parallel
// merge in chunk order.
std::vector<Matrix> scan_candidates(const std::vector<Matrix>& candidates,
                                    const std::function<bool(const Matrix&)>& pred,
                                    unsigned workers) {
  std::vector<std::vector<Matrix>> per_chunk(64);
  parallel_chunks(candidates.size(), workers, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
    auto& out = per_chunk[chunk];
    for (std::size_t i = lo; i < hi; ++i)
      if (pred(candidates[i])) out.push_back(candidates[i]);
  });
  std::vector<Matrix> out;
  for (auto& c : per_chunk) out.insert(out.end(), c.begin(), c.end());
  return out;
}

// All elements of the ambient group reducing into `residue_members`:
// digit extensions of each member, det-filtered for SL.
std::vector<Matrix> preimage_candidates(const GroupPattern& group,
                                        const std::vector<Matrix>& residue_members,
                                        std::uint64_t guard) {
  const Ring ring = group.ring_ref();
  const LocalRing* A = ring.get();
  const unsigned n = group.dim();
  const unsigned q = A->residue_q();
  const std::uint32_t ext = A->cardinality() / q;

  mpz_class raw = static_cast<unsigned long>(residue_members.size());
  for (unsigned i = 0; i < n * n; ++i) raw *= ext;
  if (raw > guard) throw SizeGuardError("normalizer candidate scan", raw.get_str(), guard);

  std::vector<Matrix> out;
  out.reserve(raw.get_ui());
  for (const Matrix& base : residue_members) {
    std::vector<std::uint32_t> idx(n * n, 0);
    Matrix m(A, n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) m.set(i, j, base.at(i, j));
    for (;;) {
      if (group.ambient() == Ambient::GL || det(m) == A->one()) out.push_back(m);
      bool advanced = false;
      unsigned p = n * n;
      while (p-- > 0) {
        if (++idx[p] < ext) {
          m.set(p / n, p % n, base.at(p / n, p % n) + idx[p] * q);
          advanced = true;
          break;
        }
        idx[p] = 0;
        m.set(p / n, p % n, base.at(p / n, p % n));
      }
      if (!advanced) break;
    }
  }
  return out;
}

enum class TestKind { Normalize, Centralize };

// Core scan shared by normalizer and centralizer.
std::vector<Matrix> stabilizer_scan(const PointSet& Gpts, const PointSet& H, TestKind kind,
                                    const ScanOptions& opts) {
  const std::uint64_t h_limit =
      H.order().fits_ulong_p() ? H.order().get_ui() + 1 : opts.guard;
  const std::vector<Matrix> hgens = trim_generators(gens_or_elements(H), h_limit);
  auto pred = [&](const Matrix& g) {
    if (kind == TestKind::Centralize) {
      for (const Matrix& h : hgens)
        if (!(g * h == h * g)) return false;
      return true;
    }
    const Matrix gi = mat_inv(g);
    for (const Matrix& h : hgens)
      if (!H.contains(g * h * gi)) return false;
    return true;
  };

  if (Gpts.extensional()) return scan_candidates(Gpts.elements(), pred, opts.workers);

  // Intensional whole group: scan directly when small enough, otherwise
  // restrict candidates through the residue field.
  if (!Gpts.origin()) throw Error("intensional scan set carries no defining pattern");
  const GroupPattern& group = *Gpts.origin();
  if (group.order() <= opts.guard)
    return scan_candidates(group.enumerate_elements(opts.guard), pred, opts.workers);

  const Ring ring = group.ring_ref();
  if (ring->length() == 1)
    throw SizeGuardError("group scan over the residue field", group.order().get_str(), opts.guard);

  Rng rng(opts.seed);
  PointSet Hbar = reduce_set(H, 1);
  GroupPattern residue_group = GroupPattern::ambient_group(group.ambient(), ring->reduced_ring(1),
                                                           group.dim());
  PointSet Gbar = PointSet::whole_group(residue_group);
  std::vector<Matrix> base = stabilizer_scan(Gbar, Hbar, kind, opts);
  std::vector<Matrix> candidates = preimage_candidates(group, base, opts.guard);
  return scan_candidates(candidates, pred, opts.workers);
}

}  // namespace

PointSet transporter_points(const PointSet& Gpts, const PointSet& Y, const PointSet& Z,
                            const ScanOptions& opts) {
  if (!(Y.group() == Gpts.group()) || !(Z.group() == Gpts.group()))
    throw MismatchError("transporter arguments live in different ambient groups");
  if (Gpts.extensional() && Gpts.order() > opts.guard)
    throw SizeGuardError("transporter scan", Gpts.order().get_str(), opts.guard);

  // Conjugation is injective, so g<Y>g^{-1} is a subgroup of the same order;
  // generator containment in Z plus |Y| = |Z| gives set equality.
  if (Y.order() != Z.order()) return PointSet::plain(Gpts.group(), {});

  const std::uint64_t y_limit =
      Y.order().fits_ulong_p() ? Y.order().get_ui() + 1 : opts.guard;
  const std::vector<Matrix> ygens = trim_generators(gens_or_elements(Y), y_limit);
  auto pred = [&](const Matrix& g) {
    const Matrix gi = mat_inv(g);
    for (const Matrix& y : ygens)
      if (!Z.contains(g * y * gi)) return false;
    return true;
  };
  if (!Gpts.extensional() && !Gpts.origin())
    throw Error("intensional scan set carries no defining pattern");
  std::vector<Matrix> found =
      Gpts.extensional()
          ? scan_candidates(Gpts.elements(), pred, opts.workers)
          : scan_candidates(Gpts.origin()->enumerate_elements(opts.guard), pred, opts.workers);
  return PointSet::plain(Gpts.group(), std::move(found));
}

PointSet normalizer_points(const PointSet& Gpts, const PointSet& H, const ScanOptions& opts) {
  Rng rng(opts.seed);
  std::vector<Matrix> found = stabilizer_scan(Gpts, H, TestKind::Normalize, opts);
  std::vector<Matrix> gens = found.empty() ? std::vector<Matrix>{} : minimal_generators(found);
  return PointSet::subgroup(Gpts.group(), std::move(found), std::move(gens), rng);
}

PointSet centralizer_points(const PointSet& Gpts, const PointSet& H, const ScanOptions& opts) {
  Rng rng(opts.seed);
  std::vector<Matrix> found = stabilizer_scan(Gpts, H, TestKind::Centralize, opts);
  std::vector<Matrix> gens = found.empty() ? std::vector<Matrix>{} : minimal_generators(found);
  return PointSet::subgroup(Gpts.group(), std::move(found), std::move(gens), rng);
}

GroupPattern scheme_normalizer_torus(Ambient kind, unsigned n, Ring A) {
  return GroupPattern::monomial(kind, std::move(A), n);
}

}  // namespace greenberg
