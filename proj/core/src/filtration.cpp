#include "greenberg/filtration.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>

namespace greenberg {

namespace {

using KeySet = std::unordered_set<Matrix::Key, Matrix::KeyHash>;

bool is_p_element(const Matrix& x, unsigned p, const mpz_class& group_order) {
  // x has p-power order iff x^(p^K) = 1 with p^K >= |group|
  Matrix y = x;
  mpz_class bound = 1;
  while (bound < group_order) {
    if (y.is_identity()) return true;
    y = mat_pow(y, p);
    bound *= p;
  }
  return y.is_identity();
}

// Subgroup generated by `gens` if its order stays within `limit`.
std::optional<std::vector<Matrix>> bounded_closure(const std::vector<Matrix>& gens,
                                                   std::size_t limit) {
  const Matrix id = Matrix::identity(gens.at(0).ring(), gens.at(0).dim());
  std::vector<Matrix> out{id};
  KeySet seen{id.key()};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const Matrix& g : gens) {
      Matrix y = out[i] * g;
      if (seen.insert(y.key()).second) {
        if (out.size() + 1 > limit) return std::nullopt;
        out.push_back(std::move(y));
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Filtration Filtration::compute(const GroupPattern& group, const FiltrationOptions& opts) {
  Filtration f(group);
  Rng rng(opts.seed);
  const Ring ring = group.ring_ref();
  const unsigned r = ring->length();
  const unsigned q = ring->residue_q();
  const unsigned dim = ambient_dim(group.ambient(), group.dim());

  for (unsigned level = 1; level <= r; ++level) {
    GroupPattern k = GroupPattern::congruence_kernel(group.ambient(), ring, group.dim(), level);
    PointSet pts = PointSet::from_pattern(k, opts.guard, rng);
    // kernel order formula; enumeration already cross-checked the closed form
    mpz_class expected;
    mpz_ui_pow_ui(expected.get_mpz_t(), q, std::uint64_t(r - level) * dim);
    if (pts.order() != expected)
      throw InternalError("kernel order mismatch at level " + std::to_string(level));
    f.kernels_.push_back(std::move(pts));
  }

  // Normality of each kernel: conjugate kernel generators by group elements
  // (all of them when the group is small, a sample otherwise).
  {
    const mpz_class g_order = group.order();
    std::vector<Matrix> conjugators;
    if (g_order <= 100000 && g_order <= opts.guard) {
      conjugators = group.enumerate_elements(opts.guard);
    } else {
      for (unsigned s = 0; s < opts.samples; ++s) conjugators.push_back(group.random_element(rng));
    }
    for (unsigned level = 1; level <= r; ++level) {
      GroupPattern k = GroupPattern::congruence_kernel(group.ambient(), ring, group.dim(), level);
      for (const Matrix& g : conjugators) {
        const Matrix gi = mat_inv(g);
        for (const Matrix& x : k.generators())
          if (!k.contains(g * x * gi))
            throw InternalError("congruence kernel not normal; conjugator " + g.serialize());
      }
    }
  }

  // Layer structure: order q^dim, exponent p, abelian modulo the next level.
  for (unsigned level = 1; level <= r; ++level) {
    FiltrationLevel info;
    info.level = level;
    info.kernel_order = f.kernels_[level - 1].order();
    if (level < r) {
      const PointSet& big = f.kernels_[level - 1];
      const GroupPattern next =
          GroupPattern::congruence_kernel(group.ambient(), ring, group.dim(), level + 1);
      info.layer_order = big.order() / f.kernels_[level].order();

      const unsigned p = ring->base().p();
      const auto& elems = big.elements();
      bool ok = true;
      if (elems.size() * elems.size() <= 1000000) {
        for (const Matrix& x : elems) {
          if (!next.contains(mat_pow(x, p))) ok = false;
          for (const Matrix& y : elems)
            if (!next.contains(x * y * mat_inv(x) * mat_inv(y))) ok = false;
          if (!ok) break;
        }
      } else {
        for (unsigned s = 0; s < opts.samples && ok; ++s) {
          const Matrix& x = elems[rng.below(elems.size())];
          const Matrix& y = elems[rng.below(elems.size())];
          if (!next.contains(mat_pow(x, p))) ok = false;
          if (!next.contains(x * y * mat_inv(x) * mat_inv(y))) ok = false;
        }
      }
      info.elementary_abelian = ok;
      if (!ok)
        throw InternalError("filtration layer " + std::to_string(level) +
                            " is not elementary abelian");
    } else {
      info.layer_order = info.kernel_order;  // G^r is trivial
      info.elementary_abelian = true;
    }
    f.levels_.push_back(std::move(info));
  }
  return f;
}

bool layer_iso_check(const Filtration& f, unsigned level, const FiltrationOptions& opts) {
  const GroupPattern& group = f.group();
  const Ring ring = group.ring_ref();
  const unsigned r = ring->length();
  if (r < 2 || level != r - 1)
    throw Error("layer isomorphism check applies to the top layer r-1 only");
  const FiniteField& k = ring->base();
  const unsigned n = group.dim();
  const bool sl = group.ambient() == Ambient::SL;

  // Additive n x n matrices over the residue field (trace 0 for SL), mapped
  // through X -> I + pi^(r-1) X.
  const PointSet& target = f.kernel(level);
  std::vector<std::vector<ff_elt>> additive;
  {
    const unsigned free_slots = sl ? n * n - 1 : n * n;
    std::vector<ff_elt> x(n * n, 0);
    std::uint64_t count = 1;
    for (unsigned i = 0; i < free_slots; ++i) count *= k.q();
    for (std::uint64_t v = 0; v < count; ++v) {
      std::uint64_t rest = v;
      for (unsigned slot = 0; slot < n * n; ++slot) {
        if (sl && slot == n * n - 1) continue;  // carries -trace below
        x[slot] = static_cast<ff_elt>(rest % k.q());
        rest /= k.q();
      }
      if (sl) {
        ff_elt tr = 0;
        for (unsigned i = 0; i + 1 < n; ++i) tr = k.add(tr, x[i * n + i]);
        x[n * n - 1] = k.neg(tr);
      }
      additive.push_back(x);
    }
  }

  auto embed = [&](const std::vector<ff_elt>& x) {
    Matrix m = Matrix::identity(ring.get(), n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) {
        ring_code v = ring->layer_embed(level, x[i * n + j]);
        if (i == j) v = ring->add(ring->one(), v);
        m.set(i, j, v);
      }
    return m;
  };

  // Bijection: distinct images, all inside the kernel, count matches.
  KeySet image;
  for (const auto& x : additive) {
    Matrix m = embed(x);
    if (!target.contains(m)) return false;
    image.insert(m.key());
  }
  if (image.size() != additive.size() || image.size() != target.size()) return false;

  // Homomorphism: addition maps to multiplication.
  Rng rng(opts.seed);
  auto check_pair = [&](const std::vector<ff_elt>& a, const std::vector<ff_elt>& b) {
    std::vector<ff_elt> sum(n * n);
    for (unsigned s = 0; s < n * n; ++s) sum[s] = k.add(a[s], b[s]);
    return embed(a) * embed(b) == embed(sum);
  };
  if (additive.size() * additive.size() <= 1000000) {
    for (const auto& a : additive)
      for (const auto& b : additive)
        if (!check_pair(a, b)) return false;
  } else {
    for (unsigned s = 0; s < 2000; ++s)
      if (!check_pair(additive[rng.below(additive.size())], additive[rng.below(additive.size())]))
        return false;
  }
  return true;
}

PointSet component_points(const PointSet& S, const GroupPattern& residue_component, Rng& rng) {
  const Ring ring = S.group().ring_ref();
  if (residue_component.ring() != ring->reduced_ring(1).get())
    throw MismatchError("identity-component pattern must live over the residue field");
  std::vector<Matrix> kept;
  for (const Matrix& m : S.elements())
    if (residue_component.contains(m.reduced(1))) kept.push_back(m);
  std::vector<Matrix> gens = kept.empty() ? std::vector<Matrix>{} : minimal_generators(kept);
  return PointSet::subgroup(S.group(), std::move(kept), std::move(gens), rng);
}

PointSet unipotent_radical_points(const GroupPattern& group, const GroupPattern& residue_radical,
                                  const FiltrationOptions& opts) {
  Rng rng(opts.seed);
  const Ring ring = group.ring_ref();
  if (ring->length() == 1)
    return PointSet::from_pattern(residue_radical, opts.guard, rng);
  GroupPattern pre = GroupPattern::full_preimage(group.ambient(), ring, residue_radical);
  return PointSet::from_pattern(pre, opts.guard, rng);
}

PointSet largest_normal_p_subgroup(const PointSet& S, const FiltrationOptions& opts) {
  if (S.order() > 100000)
    throw SizeGuardError("largest_normal_p_subgroup input", S.order().get_str(), 100000);
  Rng rng(opts.seed);
  const auto& elems = S.elements();
  const Ring ring = S.group().ring_ref();
  const unsigned p = ring->base().p();
  const mpz_class s_order = S.order();

  // No normal p-subgroup is bigger than the p-part of |S|.
  std::size_t p_part = 1;
  {
    mpz_class rest = s_order;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= p;
      p_part *= p;
    }
  }

  // Seed: congruence kernel intersected with S, verified to be a normal
  // p-subgroup rather than assumed.
  std::vector<Matrix> current{Matrix::identity(elems.at(0).ring(), elems.at(0).dim())};
  if (ring->length() > 1) {
    GroupPattern k1 =
        GroupPattern::congruence_kernel(S.group().ambient(), ring, S.group().dim(), 1);
    std::vector<Matrix> seed;
    for (const Matrix& x : elems)
      if (k1.contains(x)) seed.push_back(x);
    bool seed_ok = !seed.empty();
    for (const Matrix& x : seed)
      if (!is_p_element(x, p, s_order)) seed_ok = false;
    if (seed_ok) {
      for (const Matrix& g : minimal_generators(seed)) {
        for (const Matrix& s : elems)
          if (!std::binary_search(seed.begin(), seed.end(), conj(s, g))) {
            seed_ok = false;
            break;
          }
        if (!seed_ok) break;
      }
    }
    if (seed_ok && seed.size() > 1) current = seed;  // subset of sorted stays sorted
  }

  auto in_current = [&](const Matrix& m) {
    return std::binary_search(current.begin(), current.end(), m);
  };

  KeySet processed;
  for (const Matrix& x : elems) {
    if (!is_p_element(x, p, s_order)) continue;
    if (in_current(x) || processed.count(x.key())) continue;

    // conjugacy class of x; the normal closure contains it whole
    std::vector<Matrix> cls;
    KeySet cls_keys;
    bool small = true;
    for (const Matrix& s : elems) {
      Matrix y = conj(s, x);
      if (cls_keys.insert(y.key()).second) {
        cls.push_back(std::move(y));
        if (cls.size() > p_part) {
          small = false;
          break;
        }
      }
    }
    for (const Matrix& y : cls) processed.insert(y.key());
    if (!small) continue;

    auto closure = bounded_closure(cls, p_part);
    if (!closure) continue;  // normal closure is not a p-group
    bool all_p = true;
    for (const Matrix& y : *closure)
      if (!is_p_element(y, p, s_order)) {
        all_p = false;
        break;
      }
    if (!all_p) continue;

    // product of two normal p-subgroups is one again
    std::vector<Matrix> seeds = current;
    seeds.insert(seeds.end(), closure->begin(), closure->end());
    auto merged = bounded_closure(seeds, p_part);
    if (!merged)
      throw InternalError("product of normal p-subgroups exceeded the p-part of the order");
    current = std::move(*merged);
  }

  std::vector<Matrix> gens = minimal_generators(current);
  return PointSet::subgroup(S.group(), std::move(current), std::move(gens), rng);
}

bool borel_preimage_check(const GroupPattern& group, const GroupPattern& borel,
                          const FiltrationOptions& opts) {
  Rng rng(opts.seed);
  const Ring ring = group.ring_ref();
  PointSet b = PointSet::from_pattern(borel, opts.guard, rng);
  if (ring->length() == 1) return true;  // B * 1 = B matches its own preimage

  GroupPattern k1 = GroupPattern::congruence_kernel(group.ambient(), ring, group.dim(), 1);
  PointSet kern = PointSet::from_pattern(k1, opts.guard, rng);

  std::vector<Matrix> product;
  product.reserve(b.size() * kern.size());
  for (const Matrix& x : b.elements())
    for (const Matrix& y : kern.elements()) product.push_back(x * y);
  std::sort(product.begin(), product.end());
  product.erase(std::unique(product.begin(), product.end()), product.end());

  GroupPattern pre = GroupPattern::full_preimage(group.ambient(), ring, borel.residue_version());
  std::vector<Matrix> preimage = pre.enumerate_elements(opts.guard);
  return product == preimage;
}

}  // namespace greenberg
