#include "greenberg/flag.hpp"

#include <algorithm>
#include <optional>

namespace greenberg {

namespace {

using FVec = std::vector<ff_elt>;

// --- small dense linear algebra over F_q ---

// Reduced row echelon form in place; returns pivot column per row.
std::vector<unsigned> rref(std::vector<FVec>& rows, const FiniteField& k) {
  std::vector<unsigned> pivots;
  if (rows.empty()) return pivots;
  const unsigned ncols = static_cast<unsigned>(rows[0].size());
  unsigned rank = 0;
  for (unsigned col = 0; col < ncols && rank < rows.size(); ++col) {
    unsigned sel = rank;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    const ff_elt inv = k.inv(rows[rank][col]);
    for (auto& x : rows[rank]) x = k.mul(x, inv);
    for (unsigned rr = 0; rr < rows.size(); ++rr) {
      if (rr == rank || rows[rr][col] == 0) continue;
      const ff_elt f = rows[rr][col];
      for (unsigned cc = 0; cc < ncols; ++cc)
        rows[rr][cc] = k.sub(rows[rr][cc], k.mul(f, rows[rank][cc]));
    }
    pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank, FVec());
  return pivots;
}

// Basis of the null space of the stacked rows.
std::vector<FVec> nullspace(std::vector<FVec> rows, unsigned ncols, const FiniteField& k) {
  std::vector<unsigned> pivots = rref(rows, k);
  std::vector<bool> is_pivot(ncols, false);
  for (unsigned c : pivots) is_pivot[c] = true;
  std::vector<FVec> basis;
  for (unsigned free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    FVec v(ncols, 0);
    v[free] = 1;
    for (unsigned rr = 0; rr < pivots.size(); ++rr)
      v[pivots[rr]] = k.neg(rows[rr][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// One solution of rows * x = rhs (free variables zero), or nullopt.
std::optional<FVec> solve_linear(std::vector<FVec> rows, std::vector<ff_elt> rhs, unsigned ncols,
                                 const FiniteField& k) {
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(rhs[i]);
  std::vector<unsigned> pivots = rref(rows, k);
  FVec x(ncols, 0);
  for (unsigned rr = 0; rr < pivots.size(); ++rr) {
    if (pivots[rr] == ncols) return std::nullopt;  // pivot in the rhs column
    x[pivots[rr]] = rows[rr][ncols];
  }
  return x;
}

// Lexicographic order on coordinate vectors, entry 0 first.
bool vec_less(const FVec& a, const FVec& b) { return a < b; }

bool is_zero_vec(const FVec& v) {
  for (ff_elt x : v)
    if (x) return false;
  return true;
}

// --- residue-flag machinery ---

// Matrix-vector product over the residue field.
FVec apply(const Matrix& m, const FVec& v, const FiniteField& k) {
  const unsigned n = m.dim();
  FVec out(n, 0);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      out[i] = k.add(out[i], k.mul(static_cast<ff_elt>(m.at(i, j)), v[j]));
  return out;
}

struct ResidueChain {
  std::vector<FVec> columns;  // adapted basis columns over k
};

// Iterated fixed spaces of the unipotent part on successive quotients.
// Each step picks the lexicographically smallest vector satisfying it.
ResidueChain residue_flag_chain(const std::vector<Matrix>& unipotents, unsigned n,
                                const FiniteField& k) {
  ResidueChain chain;
  std::vector<FVec> echelon;          // rref basis of the current span
  std::vector<unsigned> pivot_cols;   // pivots of the echelon rows

  auto reduce_mod_span = [&](FVec v) {
    for (std::size_t rr = 0; rr < echelon.size(); ++rr) {
      const ff_elt f = v[pivot_cols[rr]];
      if (f == 0) continue;
      for (unsigned c = 0; c < n; ++c) v[c] = k.sub(v[c], k.mul(f, echelon[rr][c]));
    }
    return v;
  };

  for (unsigned step = 0; step < n; ++step) {
    std::vector<unsigned> free_cols;
    for (unsigned c = 0; c < n; ++c)
      if (std::find(pivot_cols.begin(), pivot_cols.end(), c) == pivot_cols.end())
        free_cols.push_back(c);
    const unsigned dim_q = static_cast<unsigned>(free_cols.size());

    // (action - id) on quotient coordinates, stacked over all unipotents
    std::vector<FVec> constraint;
    for (const Matrix& u : unipotents) {
      // columns of the quotient action
      std::vector<FVec> qcols(dim_q);
      for (unsigned ci = 0; ci < dim_q; ++ci) {
        FVec e(n, 0);
        e[free_cols[ci]] = 1;
        FVec w = reduce_mod_span(apply(u, e, k));
        FVec qc(dim_q, 0);
        for (unsigned ri = 0; ri < dim_q; ++ri) qc[ri] = w[free_cols[ri]];
        qcols[ci] = std::move(qc);
      }
      for (unsigned ri = 0; ri < dim_q; ++ri) {
        FVec row(dim_q, 0);
        for (unsigned ci = 0; ci < dim_q; ++ci) {
          row[ci] = qcols[ci][ri];
          if (ri == ci) row[ci] = k.sub(row[ci], 1);
        }
        constraint.push_back(std::move(row));
      }
    }
    std::vector<FVec> fixed = nullspace(std::move(constraint), dim_q, k);
    if (fixed.empty())
      throw NotBorelError("no invariant direction at flag step " + std::to_string(step + 1), "");

    // smallest canonical full vector in the fixed space
    std::optional<FVec> best;
    std::vector<unsigned> combo(fixed.size(), 0);
    for (;;) {
      FVec z(dim_q, 0);
      for (std::size_t bi = 0; bi < fixed.size(); ++bi)
        for (unsigned c = 0; c < dim_q; ++c)
          z[c] = k.add(z[c], k.mul(static_cast<ff_elt>(combo[bi]), fixed[bi][c]));
      if (!is_zero_vec(z)) {
        FVec full(n, 0);
        for (unsigned c = 0; c < dim_q; ++c) full[free_cols[c]] = z[c];
        if (!best || vec_less(full, *best)) best = full;
      }
      std::size_t pos = fixed.size();
      bool adv = false;
      while (pos-- > 0) {
        if (++combo[pos] < k.q()) {
          adv = true;
          break;
        }
        combo[pos] = 0;
      }
      if (!adv) break;
    }

    chain.columns.push_back(*best);
    // extend the echelon with the new vector
    FVec red = reduce_mod_span(*best);
    unsigned pc = 0;
    while (pc < n && red[pc] == 0) ++pc;
    if (pc == n) throw InternalError("flag step vector already in the span");
    const ff_elt inv = k.inv(red[pc]);
    for (auto& x : red) x = k.mul(x, inv);
    for (std::size_t rr = 0; rr < echelon.size(); ++rr) {
      const ff_elt f = echelon[rr][pc];
      if (f == 0) continue;
      for (unsigned c = 0; c < n; ++c)
        echelon[rr][c] = k.sub(echelon[rr][c], k.mul(f, red[c]));
    }
    echelon.push_back(std::move(red));
    pivot_cols.push_back(pc);
  }
  return chain;
}

bool upper_triangular(const Matrix& m) {
  for (unsigned i = 0; i < m.dim(); ++i)
    for (unsigned j = 0; j < i; ++j)
      if (m.at(i, j) != 0) return false;
  return true;
}

// The certification both ways: conjugates of the input generators land in
// the standard Borel pattern, and conjugates of the standard generators
// satisfy the input's membership oracle.
bool certify(const Matrix& basis, const PointSet& borel, const GroupPattern& std_borel) {
  const Matrix inv = mat_inv(basis);
  for (const Matrix& g : borel.generators())
    if (!std_borel.contains(inv * g * basis)) return false;
  for (const Matrix& s : std_borel.generators())
    if (!borel.contains(basis * s * inv)) return false;
  return true;
}

// Exhaustive fallback for n = 2 at tiny ring sizes: scan candidate first
// columns in canonical order for a stable line, then complete the basis.
std::optional<Matrix> brute_force_flag_2x2(const PointSet& borel, const GroupPattern& std_borel) {
  const GroupPattern& G = borel.group();
  const LocalRing* A = G.ring();
  if (G.dim() != 2 || std::uint64_t(A->cardinality()) * A->cardinality() > 10000)
    return std::nullopt;

  auto vec_at_rank = [&](std::uint32_t r0, std::uint32_t r1) {
    return std::pair<ring_code, ring_code>{A->by_rank(r0), A->by_rank(r1)};
  };
  for (std::uint32_t r0 = 0; r0 < A->cardinality(); ++r0)
    for (std::uint32_t r1 = 0; r1 < A->cardinality(); ++r1) {
      auto [v0, v1] = vec_at_rank(r0, r1);
      const bool unit0 = A->is_unit(v0), unit1 = A->is_unit(v1);
      if (!unit0 && !unit1) continue;
      bool stable = true;
      for (const Matrix& b : borel.generators()) {
        const ring_code w0 = A->add(A->mul(b.at(0, 0), v0), A->mul(b.at(0, 1), v1));
        const ring_code w1 = A->add(A->mul(b.at(1, 0), v0), A->mul(b.at(1, 1), v1));
        const ring_code lambda =
            unit0 ? A->mul(w0, A->inv_unit(v0)) : A->mul(w1, A->inv_unit(v1));
        if (w0 != A->mul(lambda, v0) || w1 != A->mul(lambda, v1)) {
          stable = false;
          break;
        }
      }
      if (!stable) continue;
      for (std::uint32_t s0 = 0; s0 < A->cardinality(); ++s0)
        for (std::uint32_t s1 = 0; s1 < A->cardinality(); ++s1) {
          auto [w0, w1] = vec_at_rank(s0, s1);
          Matrix m(A, 2);
          m.set(0, 0, v0);
          m.set(1, 0, v1);
          m.set(0, 1, w0);
          m.set(1, 1, w1);
          if (!A->is_unit(det(m))) continue;
          if (certify(m, borel, std_borel)) return m;
        }
    }
  return std::nullopt;
}

}  // namespace

Flag std_flag(Ambient a, Ring ring, unsigned n) {
  return Flag{a, Matrix::identity(ring.get(), n)};
}

PointSet flag_stabilizer(const Flag& f) {
  const Ring ring = f.basis.ring()->reduced_ring(f.basis.ring()->length());
  GroupPattern std_borel = GroupPattern::std_borel(f.ambient, ring, f.dim());
  GroupPattern group = GroupPattern::ambient_group(f.ambient, ring, f.dim());
  const Matrix basis = f.basis;
  const Matrix inv = mat_inv(basis);
  std::vector<Matrix> gens;
  for (const Matrix& s : std_borel.generators()) gens.push_back(basis * s * inv);
  auto oracle = [std_borel, basis, inv](const Matrix& m) {
    return std_borel.contains(inv * m * basis);
  };
  return PointSet::intensional(std::move(group), std::move(gens), std::move(oracle),
                               std_borel.order());
}

Flag recover_flag(const PointSet& borel, const FlagOptions& opts) {
  const GroupPattern& G = borel.group();
  const Ring ring = G.ring_ref();
  const unsigned n = G.dim();
  const unsigned r = ring->length();
  const FiniteField& k = ring->base();
  const GroupPattern std_borel = GroupPattern::std_borel(G.ambient(), ring, n);
  if (borel.generators().empty()) throw Error("flag recovery needs generators");

  // Residue stage: the reduced group, its unipotent part, the fixed-space
  // chain.
  const Ring kring = ring->reduced_ring(1);
  std::vector<Matrix> rgens;
  for (const Matrix& g : borel.generators()) rgens.push_back(g.reduced(1));
  std::vector<Matrix> rgroup = generated_subgroup(rgens, 100000);
  const mpz_class rorder(static_cast<unsigned long>(rgroup.size()));
  std::vector<Matrix> unipotents;
  for (const Matrix& x : rgroup) {
    Matrix y = x;
    mpz_class bound = 1;
    while (bound < rorder && !y.is_identity()) {
      y = mat_pow(y, k.p());
      bound *= k.p();
    }
    if (y.is_identity()) unipotents.push_back(x);
  }

  Matrix basis(kring.get(), n);
  std::string cause;
  try {
    ResidueChain chain = residue_flag_chain(unipotents, n, k);
    for (unsigned j = 0; j < n; ++j)
      for (unsigned i = 0; i < n; ++i) basis.set(i, j, chain.columns[j][i]);
    for (const Matrix& b : rgens)
      if (!upper_triangular(mat_inv(basis) * b * basis))
        throw NotBorelError("reduced generators do not stabilize the residue flag",
                            b.serialize());

    // Lift one length level at a time. Writing the corrected basis as
    // M (I + pi^l C) with C strictly lower over k, the stability defect at
    // level l+1 is linear in C. A point-stable flag at one level can have
    // several stable lifts of which only some extend further (small residue
    // fields leave slack), so walk the whole affine solution space of each
    // level depth-first and certify at the bottom.
    std::vector<std::pair<unsigned, unsigned>> slots;
    for (unsigned a = 0; a < n; ++a)
      for (unsigned c = 0; c < a; ++c) slots.emplace_back(a, c);
    auto slot_index = [&](unsigned a, unsigned c) {
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (slots[s].first == a && slots[s].second == c) return s;
      throw InternalError("bad correction slot");
    };

    std::function<std::optional<Matrix>(unsigned, const Matrix&)> lift_from =
        [&](unsigned level, const Matrix& current) -> std::optional<Matrix> {
      if (level == r) {
        if (certify(current, borel, std_borel)) return current;
        return std::nullopt;
      }
      const Ring next = ring->reduced_ring(level + 1);
      Matrix lifted(next.get(), n);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) lifted.set(i, j, current.at(i, j));  // zero-fill
      const Matrix lifted_inv = mat_inv(lifted);

      std::vector<FVec> rows;
      std::vector<ff_elt> rhs;
      for (const Matrix& gen : borel.generators()) {
        const Matrix d = lifted_inv * gen.reduced(level + 1) * lifted;
        const Matrix dbar = d.reduced(1);
        for (auto [a, c] : slots) {
          const ring_code defect = d.at(a, c);
          if (next->reduce(defect, level) != 0)
            throw NotBorelError("flag stability lost below the correction layer",
                                gen.serialize());
          FVec row(slots.size(), 0);
          // (D kappa)[a][c]: e > c and e >= a
          for (unsigned e = std::max(a, c + 1); e < n; ++e)
            row[slot_index(e, c)] =
                k.add(row[slot_index(e, c)], static_cast<ff_elt>(dbar.at(a, e)));
          // -(kappa D)[a][c]: e < a and e <= c
          for (unsigned e = 0; e <= c; ++e)
            row[slot_index(a, e)] =
                k.sub(row[slot_index(a, e)], static_cast<ff_elt>(dbar.at(e, c)));
          rows.push_back(std::move(row));
          rhs.push_back(k.neg(next->layer_coord(level, defect)));
        }
      }
      auto particular = solve_linear(rows, rhs, static_cast<unsigned>(slots.size()), k);
      if (!particular) return std::nullopt;
      const std::vector<FVec> hom = nullspace(rows, static_cast<unsigned>(slots.size()), k);

      std::vector<unsigned> combo(hom.size(), 0);
      for (;;) {
        FVec sol = *particular;
        for (std::size_t b = 0; b < hom.size(); ++b)
          for (std::size_t s = 0; s < slots.size(); ++s)
            sol[s] = k.add(sol[s], k.mul(static_cast<ff_elt>(combo[b]), hom[b][s]));
        Matrix corr = Matrix::identity(next.get(), n);
        for (std::size_t s = 0; s < slots.size(); ++s)
          corr.set(slots[s].first, slots[s].second, next->layer_embed(level, sol[s]));
        if (auto found = lift_from(level + 1, lifted * corr)) return found;

        std::size_t pos = hom.size();
        bool adv = false;
        while (pos-- > 0) {
          if (++combo[pos] < k.q()) {
            adv = true;
            break;
          }
          combo[pos] = 0;
        }
        if (!adv) return std::nullopt;
      }
    };

    if (auto found = lift_from(1, basis)) return Flag{G.ambient(), *found};
    cause = "no stable flag lift reached certification";
  } catch (const NotBorelError& e) {
    cause = e.what();  // try the exhaustive path below before giving up
  }

  if (auto m = brute_force_flag_2x2(borel, std_borel)) return Flag{G.ambient(), *m};
  throw NotBorelError("input is not a conjugate of the standard Borel (" + cause + ")",
                      borel.generators().front().serialize());
}

Matrix flag_transporter(const Flag& from, const Flag& to) {
  if (from.ring() != to.ring() || from.dim() != to.dim() || from.ambient != to.ambient)
    throw MismatchError("flags live over different rings or dimensions");
  const LocalRing* A = from.ring();
  Matrix target = to.basis;
  if (from.ambient == Ambient::SL) {
    Matrix g = target * mat_inv(from.basis);
    const ring_code fix = A->inv_unit(det(g));
    for (unsigned i = 0; i < target.dim(); ++i) target.set(i, 0, A->mul(target.at(i, 0), fix));
  }
  return target * mat_inv(from.basis);
}

}  // namespace greenberg
