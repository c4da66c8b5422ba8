#include "greenberg/point_set.hpp"

#include <algorithm>
#include <unordered_set>

namespace greenberg {

namespace {

constexpr std::size_t kFullClosureLimit = 10000;
constexpr unsigned kClosureSamples = 1000;

using KeySet = std::unordered_set<Matrix::Key, Matrix::KeyHash>;

void sort_dedup(std::vector<Matrix>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool sorted_contains(const std::vector<Matrix>& v, const Matrix& m) {
  auto it = std::lower_bound(v.begin(), v.end(), m);
  return it != v.end() && *it == m;
}

// Closure under product and inverse: every pair up to the full-check limit,
// random probes above it. Membership is a key-hash lookup.
void verify_closure(const std::vector<Matrix>& v, Rng& rng) {
  if (v.empty()) throw Error("point set is empty; a subgroup contains at least the identity");
  KeySet seen;
  seen.reserve(v.size() * 2);
  for (const Matrix& m : v) seen.insert(m.key());
  auto member = [&](const Matrix& m) { return seen.count(m.key()) != 0; };

  if (v.size() <= kFullClosureLimit) {
    for (const Matrix& a : v) {
      if (!member(mat_inv(a)))
        throw Error("point set not closed under inversion; witness " + a.serialize());
      for (const Matrix& b : v)
        if (!member(a * b))
          throw Error("point set not closed under product; witness " + (a * b).serialize());
    }
  } else {
    for (unsigned t = 0; t < kClosureSamples; ++t) {
      const Matrix& a = v[rng.below(v.size())];
      const Matrix& b = v[rng.below(v.size())];
      if (!member(a * b))
        throw Error("point set not closed under product; witness " + (a * b).serialize());
      if (!member(mat_inv(a)))
        throw Error("point set not closed under inversion; witness " + a.serialize());
    }
  }
}

}  // namespace

PointSet PointSet::subgroup(GroupPattern group, std::vector<Matrix> elements,
                            std::vector<Matrix> generators, Rng& rng) {
  PointSet s(std::move(group));
  sort_dedup(elements);
  s.elements_ = std::move(elements);
  s.generators_ = std::move(generators);
  verify_closure(s.elements_, rng);
  return s;
}

PointSet PointSet::plain(GroupPattern group, std::vector<Matrix> elements,
                         std::vector<Matrix> generators) {
  PointSet s(std::move(group));
  sort_dedup(elements);
  s.elements_ = std::move(elements);
  s.generators_ = std::move(generators);
  return s;
}

PointSet PointSet::from_pattern(const GroupPattern& pattern, std::uint64_t guard, Rng& rng) {
  PointSet s(pattern.ambient_pattern());
  s.origin_ = pattern;
  s.elements_ = pattern.enumerate_elements(guard);
  s.generators_ = pattern.generators();
  verify_closure(s.elements_, rng);
  return s;
}

PointSet PointSet::whole_group(GroupPattern group) {
  PointSet s(group);
  s.extensional_ = false;
  s.origin_ = group;
  s.generators_ = group.generators();
  GroupPattern inner = std::move(group);
  s.oracle_ = [inner](const Matrix& m) { return inner.contains(m); };
  s.order_ = inner.order();
  return s;
}

PointSet PointSet::intensional(GroupPattern group, std::vector<Matrix> generators, Oracle oracle,
                               mpz_class order) {
  PointSet s(std::move(group));
  s.extensional_ = false;
  s.generators_ = std::move(generators);
  s.oracle_ = std::move(oracle);
  s.order_ = std::move(order);
  return s;
}

const std::vector<Matrix>& PointSet::elements() const {
  if (!extensional_) throw Error("point set is intensional; no element list available");
  return elements_;
}

bool PointSet::contains(const Matrix& m) const {
  if (extensional_) return sorted_contains(elements_, m);
  return oracle_(m);
}

mpz_class PointSet::order() const {
  if (extensional_) return mpz_class(static_cast<unsigned long>(elements_.size()));
  if (order_) return *order_;
  throw Error("intensional point set has unknown order");
}

bool PointSet::set_equal(const PointSet& o) const {
  return elements() == o.elements();
}

bool PointSet::subset_of(const PointSet& o) const {
  for (const Matrix& m : elements())
    if (!o.contains(m)) return false;
  return true;
}

PointSet conj_set(const Matrix& g, const PointSet& S) {
  const Matrix gi = mat_inv(g);
  std::vector<Matrix> out;
  out.reserve(S.size());
  for (const Matrix& x : S.elements()) out.push_back(g * x * gi);
  PointSet r = PointSet::plain(S.group(), std::move(out));
  if (r.size() != S.size()) throw InternalError("conjugation collapsed a point set");
  return r;
}

std::vector<Matrix> generated_subgroup(const std::vector<Matrix>& gens, std::uint64_t limit) {
  if (gens.empty()) throw Error("generated_subgroup needs at least one generator");
  const Matrix id = Matrix::identity(gens[0].ring(), gens[0].dim());
  std::vector<Matrix> out{id};
  KeySet seen{id.key()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const Matrix& g : gens) {
      Matrix y = out[i] * g;
      if (seen.insert(y.key()).second) {
        out.push_back(std::move(y));
        if (out.size() > limit)
          throw SizeGuardError("generated subgroup", "> " + std::to_string(limit), limit);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Matrix> minimal_generators(const std::vector<Matrix>& elements) {
  std::vector<Matrix> gens;
  KeySet closed;
  const Matrix id = Matrix::identity(elements.at(0).ring(), elements.at(0).dim());
  closed.insert(id.key());
  for (const Matrix& x : elements) {
    if (closed.count(x.key())) continue;
    gens.push_back(x);
    for (const Matrix& m : generated_subgroup(gens, elements.size())) closed.insert(m.key());
    if (closed.size() == elements.size()) break;
  }
  if (gens.empty()) gens.push_back(id);
  return gens;
}

std::vector<Matrix> trim_generators(const std::vector<Matrix>& gens, std::uint64_t limit) {
  std::vector<Matrix> kept;
  KeySet closed;
  if (gens.empty()) return kept;
  closed.insert(Matrix::identity(gens[0].ring(), gens[0].dim()).key());
  for (const Matrix& g : gens) {
    if (closed.count(g.key())) continue;
    kept.push_back(g);
    for (const Matrix& m : generated_subgroup(kept, limit)) closed.insert(m.key());
  }
  if (kept.empty()) kept.push_back(Matrix::identity(gens[0].ring(), gens[0].dim()));
  return kept;
}

PointSet reduce_set(const PointSet& S, unsigned r2) {
  std::vector<Matrix> out;
  out.reserve(S.size());
  for (const Matrix& m : S.elements()) out.push_back(m.reduced(r2));
  std::vector<Matrix> gens;
  for (const Matrix& g : S.generators()) gens.push_back(g.reduced(r2));
  GroupPattern reduced_group = GroupPattern::ambient_group(
      S.group().ambient(), S.group().ring()->reduced_ring(r2), S.group().dim());
  // image of a subgroup under a homomorphism is a subgroup; mapped
  // generators generate the image
  return PointSet::plain(std::move(reduced_group), std::move(out), std::move(gens));
}

}  // namespace greenberg
