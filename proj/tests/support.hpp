#pragma once

// Shared test oracles, kept independent of the code paths they check.

#include <algorithm>
#include <set>
#include <vector>

#include "greenberg/point_set.hpp"

namespace testsupport {

using namespace greenberg;

// Plain odometer over every matrix (not just group members) in canonical
// order; the reference for enumeration order and membership filters.
inline std::vector<Matrix> all_matrices_filtered(const LocalRing* A, unsigned n,
                                                 const std::function<bool(const Matrix&)>& keep) {
  std::vector<Matrix> out;
  const std::uint64_t card = A->cardinality();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n * n; ++i) total *= card;
  for (std::uint64_t v = 0; v < total; ++v) {
    Matrix m(A, n);
    std::uint64_t rest = v;
    for (unsigned p = n * n; p-- > 0;) {
      m.set(p / n, p % n, A->by_rank(static_cast<std::uint32_t>(rest % card)));
      rest /= card;
    }
    if (keep(m)) out.push_back(m);
  }
  return out;
}

// Every subgroup of a small group, by breadth-first closure extension.
inline std::vector<std::vector<Matrix>> all_subgroups(const std::vector<Matrix>& elements) {
  using Key = std::vector<std::string>;
  auto key_of = [](const std::vector<Matrix>& v) {
    Key k;
    for (const auto& m : v) k.push_back(m.serialize());
    return k;
  };
  std::set<Key> seen;
  std::vector<std::vector<Matrix>> out;
  std::vector<std::vector<Matrix>> queue;
  std::vector<Matrix> trivial{Matrix::identity(elements[0].ring(), elements[0].dim())};
  queue.push_back(trivial);
  seen.insert(key_of(trivial));
  while (!queue.empty()) {
    std::vector<Matrix> sub = queue.back();
    queue.pop_back();
    out.push_back(sub);
    for (const Matrix& x : elements) {
      if (std::binary_search(sub.begin(), sub.end(), x)) continue;
      std::vector<Matrix> gens = sub;
      gens.push_back(x);
      std::vector<Matrix> bigger = generated_subgroup(gens, elements.size());
      Key k = key_of(bigger);
      if (seen.insert(k).second) queue.push_back(bigger);
    }
  }
  return out;
}

inline bool is_normal_in(const std::vector<Matrix>& sub, const std::vector<Matrix>& group) {
  for (const Matrix& g : group) {
    const Matrix gi = mat_inv(g);
    for (const Matrix& h : sub)
      if (!std::binary_search(sub.begin(), sub.end(), g * h * gi)) return false;
  }
  return true;
}

inline bool is_p_power(std::size_t n, unsigned p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

// Cofactor-expansion determinant, the independent oracle for small n.
inline ring_code det_cofactor(const Matrix& m) {
  const LocalRing& A = *m.ring();
  const unsigned n = m.dim();
  if (n == 1) return m.at(0, 0);
  ring_code acc = 0;
  for (unsigned j = 0; j < n; ++j) {
    Matrix minor(m.ring(), n - 1);
    for (unsigned i = 1; i < n; ++i) {
      unsigned cc = 0;
      for (unsigned c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.set(i - 1, cc++, m.at(i, c));
      }
    }
    ring_code term = A.mul(m.at(0, j), det_cofactor(minor));
    if (j % 2 == 1) term = A.neg(term);
    acc = A.add(acc, term);
  }
  return acc;
}

}  // namespace testsupport
