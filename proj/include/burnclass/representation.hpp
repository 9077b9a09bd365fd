#pragma once

// Representations of (subgroups of) a finite group by exact matrices over a
// cyclotomic field, with the right action convention v.g = v * M(g), and the
// linear-algebra operations the arrangement machinery needs: fixed spaces,
// eigenspaces, induced actions on invariant quotients.

#include "cyclo.hpp"
#include "group.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace burn {

struct Representation {
  GroupRef G;            // ambient group the element indices refer to
  Subgroup acting;       // subgroup that acts
  int dim = 0;
  FieldRef F;
  std::vector<Matrix> mats;  // one per element of acting, aligned with acting.elems

  const Matrix& mat(int g) const {
    auto it = std::lower_bound(acting.elems.begin(), acting.elems.end(), g);
    require(it != acting.elems.end() && *it == g, Err::Internal, "element outside acting subgroup");
    return mats[static_cast<size_t>(it - acting.elems.begin())];
  }

  /// Kernel of the linear action.
  Subgroup kernel() const {
    Subgroup k;
    Matrix id = Matrix::identity(dim, F);
    for (size_t i = 0; i < acting.elems.size(); ++i)
      if (mats[i] == id) k.elems.push_back(acting.elems[i]);
    return k;
  }

  bool is_faithful() const { return kernel().order() == 1; }

  /// Elements acting by scalar matrices, with the scalar character.
  std::pair<Subgroup, CharVec> scalar_subgroup() const {
    Subgroup s;
    std::vector<Rat> vals;
    for (size_t i = 0; i < acting.elems.size(); ++i) {
      const Matrix& m = mats[i];
      Cyc d = m.at(0, 0);
      bool scalar = true;
      for (int r = 0; r < dim && scalar; ++r)
        for (int c = 0; c < dim && scalar; ++c) {
          if (r == c)
            scalar = m.at(r, c) == d;
          else
            scalar = m.at(r, c).is_zero();
        }
      if (!scalar) continue;
      // d is a root of unity of order dividing the element order
      int g = acting.elems[i];
      int ord = G->elem_order[g];
      bool found = false;
      for (int k = 0; k < ord && !found; ++k) {
        if (d == Cyc::root_of_unity(F, Rat(k, ord))) {
          s.elems.push_back(g);
          vals.push_back(mod1(Rat(k, ord)));
          found = true;
        }
      }
      require(found, Err::Internal, "scalar is not a root of unity");
    }
    CharVec c;
    c.v = std::move(vals);
    return {s, c};
  }
};

/// Build a representation of G from generator matrices; matrices for all other
/// elements come from the multiplication table, and the homomorphism property
/// is validated on every (element, generator) pair.
inline Representation rep_from_generators(const GroupRef& G, const FieldRef& F, int dim,
                                          const std::vector<int>& gens,
                                          const std::vector<Matrix>& gen_mats) {
  require(gens.size() == gen_mats.size(), Err::ValidationError, "generator/matrix count mismatch");
  Representation rho;
  rho.G = G;
  rho.acting = full_subgroup(*G);
  rho.dim = dim;
  rho.F = F;
  std::vector<Matrix> by_elem(G->n);
  std::vector<bool> have(G->n, false);
  by_elem[G->id] = Matrix::identity(dim, F);
  have[G->id] = true;
  require(closure(*G, gens).order() == G->n, Err::ValidationError,
          "matrices given for a non-generating set");
  std::vector<int> work{G->id};
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    for (size_t i = 0; i < gens.size(); ++i) {
      int y = G->mul[x][gens[i]];
      if (!have[y]) {
        by_elem[y] = by_elem[x] * gen_mats[i];
        have[y] = true;
        work.push_back(y);
      }
    }
  }
  for (int x = 0; x < G->n; ++x)
    for (size_t i = 0; i < gens.size(); ++i) {
      int y = G->mul[x][gens[i]];
      require(by_elem[y] == by_elem[x] * gen_mats[i], Err::ValidationError,
              "matrices do not define a homomorphism");
    }
  rho.mats = std::move(by_elem);
  return rho;
}

inline Representation restrict_rep(const Representation& rho, const Subgroup& s) {
  Representation r;
  r.G = rho.G;
  r.acting = s;
  r.dim = rho.dim;
  r.F = rho.F;
  r.mats.reserve(s.elems.size());
  for (int g : s.elems) r.mats.push_back(rho.mat(g));
  return r;
}

/// v with v.g = v for all g in gamma (generators suffice, we use all elements).
inline Subspace fixed_space(const Representation& rho, const Subgroup& gamma) {
  // stack (M(g) - I) over a generating set; left kernel of the stack
  FieldRef F = rho.F;
  int cols = 0;
  std::vector<const Matrix*> ms;
  for (int g : generating_set(*rho.G, gamma)) {
    if (g == rho.G->id) continue;
    ms.push_back(&rho.mat(g));
    cols += rho.dim;
  }
  if (ms.empty()) return Subspace::full(rho.dim, F);
  Matrix stacked(rho.dim, cols, F);
  int off = 0;
  for (const Matrix* m : ms) {
    for (int i = 0; i < rho.dim; ++i)
      for (int j = 0; j < rho.dim; ++j) {
        Cyc v = m->at(i, j);
        if (i == j) v = v - Cyc::one(F);
        stacked.at(i, off + j) = v;
      }
    off += rho.dim;
  }
  Matrix ker = left_kernel(stacked, F);
  return Subspace::from_rows(rho.dim, std::move(ker));
}

/// v with v.g = zeta^{chi(g)} v for all g in gamma (gamma abelian).
inline Subspace eigenspace(const Representation& rho, const Subgroup& gamma, const CharVec& chi) {
  require(is_abelian(*rho.G, gamma), Err::NotAbelian, "eigenspace needs abelian subgroup");
  FieldRef F = rho.F;
  int cols = 0;
  std::vector<std::pair<const Matrix*, Cyc>> ms;
  for (int g : generating_set(*rho.G, gamma)) {
    if (g == rho.G->id) continue;
    ms.push_back({&rho.mat(g), Cyc::root_of_unity(F, char_value(gamma, chi, g))});
    cols += rho.dim;
  }
  if (ms.empty()) return Subspace::full(rho.dim, F);
  Matrix stacked(rho.dim, cols, F);
  int off = 0;
  for (const auto& [m, lam] : ms) {
    for (int i = 0; i < rho.dim; ++i)
      for (int j = 0; j < rho.dim; ++j) {
        Cyc v = m->at(i, j);
        if (i == j) v = v - lam;
        stacked.at(i, off + j) = v;
      }
    off += rho.dim;
  }
  Matrix ker = left_kernel(stacked, F);
  return Subspace::from_rows(rho.dim, std::move(ker));
}

inline bool subspace_invariant(const Representation& rho, const Subgroup& s, const Subspace& u) {
  for (int g : s.elems) {
    Matrix img = u.basis * rho.mat(g);
    Subspace w = Subspace::from_rows(u.ambient, img);
    if (!(w == u)) return false;
  }
  return true;
}

/// Quotient action together with the complement data needed to lift quotient
/// subspaces back into the ambient space.
struct QuotientPack {
  Representation rep;
  Subspace u;        // the divided-out subspace
  Matrix comp_rows;  // rows of w spanning a complement of u (quotient basis)
};

/// Induced representation of s on w/u for invariant subspaces u <= w.
/// Basis: the rows of w's RREF whose pivot is not a pivot of u.
inline Representation quotient_action(const Representation& rho, const Subgroup& s,
                                      const Subspace& u, const Subspace& w) {
  require(w.contains(u), Err::ValidationError, "quotient needs u <= w");
  require(subspace_invariant(rho, s, u), Err::NotInvariant, "u not invariant");
  require(subspace_invariant(rho, s, w), Err::NotInvariant, "w not invariant");
  FieldRef F = rho.F;
  int qdim = w.dim() - u.dim();
  // pivot columns
  auto pivots_of = [](const Matrix& m) {
    std::vector<int> p;
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j)
        if (!m.at(i, j).is_zero()) {
          p.push_back(j);
          break;
        }
    return p;
  };
  std::vector<int> up = pivots_of(u.basis), wp = pivots_of(w.basis);
  std::vector<int> comp_rows;  // rows of w.basis forming a complement basis mod u
  for (size_t i = 0; i < wp.size(); ++i)
    if (std::find(up.begin(), up.end(), wp[i]) == up.end()) comp_rows.push_back(static_cast<int>(i));
  require(static_cast<int>(comp_rows.size()) == qdim, Err::Internal, "complement extraction failed");

  // Express a vector of w in (u-basis + complement-basis) coordinates:
  // solve x * [u.basis; comp] = v via RREF with augmented identity.
  Matrix bases(u.dim() + qdim, w.ambient, F);
  for (int i = 0; i < u.dim(); ++i)
    for (int j = 0; j < w.ambient; ++j) bases.at(i, j) = u.basis.at(i, j);
  for (int i = 0; i < qdim; ++i)
    for (int j = 0; j < w.ambient; ++j) bases.at(u.dim() + i, j) = w.basis.at(comp_rows[i], j);

  // Precompute a solver: augmented [bases^T | I], RREF; then coordinates of v
  // are read by reducing v against it. Simpler: for each needed v solve the
  // linear system by stacking and reducing. qdim and |s| are tiny.
  auto coords = [&](const std::vector<Cyc>& v) {
    // solve y * bases = v
    Matrix aug(bases.rows + 1, bases.cols, F);
    for (int i = 0; i < bases.rows; ++i)
      for (int j = 0; j < bases.cols; ++j) aug.at(i, j) = bases.at(i, j);
    for (int j = 0; j < bases.cols; ++j) aug.at(bases.rows, j) = v[static_cast<size_t>(j)];
    Matrix ker = left_kernel(aug, F);
    // find kernel row with last coordinate nonzero => y = -row[0..]/row[last]
    for (int r = 0; r < ker.rows; ++r) {
      if (ker.at(r, bases.rows).is_zero()) continue;
      Cyc s0 = -ker.at(r, bases.rows).inv();
      std::vector<Cyc> y;
      y.reserve(static_cast<size_t>(bases.rows));
      for (int i = 0; i < bases.rows; ++i) y.push_back(ker.at(r, i) * s0);
      return y;
    }
    fail(Err::Internal, "vector not in span while forming quotient action");
  };

  Representation q;
  q.G = rho.G;
  q.acting = s;
  q.dim = qdim;
  q.F = F;
  for (int g : s.elems) {
    Matrix m(qdim, qdim, F);
    for (int i = 0; i < qdim; ++i) {
      std::vector<Cyc> img(static_cast<size_t>(w.ambient), Cyc::zero(F));
      for (int j = 0; j < w.ambient; ++j) {
        Cyc acc = Cyc::zero(F);
        for (int c = 0; c < w.ambient; ++c)
          acc = acc + bases.at(u.dim() + i, c) * rho.mat(g).at(c, j);
        img[static_cast<size_t>(j)] = acc;
      }
      std::vector<Cyc> y = coords(img);
      for (int j = 0; j < qdim; ++j) m.at(i, j) = y[static_cast<size_t>(u.dim() + j)];
    }
    q.mats.push_back(std::move(m));
  }
  return q;
}

inline QuotientPack quotient_pack(const Representation& rho, const Subgroup& s, const Subspace& u,
                                  const Subspace& w) {
  QuotientPack p;
  p.rep = quotient_action(rho, s, u, w);
  p.u = u;
  // recompute the complement rows exactly as quotient_action chose them
  auto pivots_of = [](const Matrix& m) {
    std::vector<int> piv;
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j)
        if (!m.at(i, j).is_zero()) {
          piv.push_back(j);
          break;
        }
    return piv;
  };
  std::vector<int> up = pivots_of(u.basis), wp = pivots_of(w.basis);
  Matrix comp(p.rep.dim, w.ambient, rho.F);
  int r = 0;
  for (size_t i = 0; i < wp.size(); ++i) {
    if (std::find(up.begin(), up.end(), wp[i]) != up.end()) continue;
    for (int j = 0; j < w.ambient; ++j) comp.at(r, j) = w.basis.at(static_cast<int>(i), j);
    ++r;
  }
  p.comp_rows = std::move(comp);
  return p;
}

/// Ambient preimage of a quotient subspace: u + (lift of the rows of e).
inline Subspace lift_quotient_subspace(const QuotientPack& p, const Subspace& e) {
  FieldRef F = p.rep.F;
  int ambient = p.comp_rows.cols;
  Matrix rows(e.dim() + p.u.dim(), ambient, F);
  for (int i = 0; i < e.dim(); ++i)
    for (int j = 0; j < ambient; ++j) {
      Cyc acc = Cyc::zero(F);
      for (int c = 0; c < p.rep.dim; ++c) acc = acc + e.basis.at(i, c) * p.comp_rows.at(c, j);
      rows.at(i, j) = acc;
    }
  for (int i = 0; i < p.u.dim(); ++i)
    for (int j = 0; j < ambient; ++j) rows.at(e.dim() + i, j) = p.u.basis.at(i, j);
  return Subspace::from_rows(ambient, std::move(rows));
}

/// Representation of s on an invariant subspace u (in u's RREF basis).
inline Representation subspace_action(const Representation& rho, const Subgroup& s, const Subspace& u) {
  return quotient_action(rho, s, Subspace::zero(u.ambient, rho.F), u);
}

/// The subgroup of s acting by scalars on u, with the scalar character read off
/// (u need not be invariant under all of s; non-preserving elements drop out).
inline std::pair<Subgroup, CharVec> scalar_stabilizer(const Representation& rho, const Subgroup& s,
                                                      const Subspace& u) {
  Subgroup out;
  std::vector<Rat> vals;
  if (u.dim() == 0) {
    CharVec c;
    for (int g : s.elems) {
      out.elems.push_back(g);
      c.v.push_back(Rat(0));
    }
    return {out, c};
  }
  FieldRef F = rho.F;
  for (int g : s.elems) {
    // u.g = lambda * u pointwise: check each basis row maps to lambda * itself
    const Matrix& m = rho.mat(g);
    // candidate lambda from the first basis row: v.g must be proportional to v
    std::vector<Cyc> img(static_cast<size_t>(u.ambient), Cyc::zero(F));
    for (int j = 0; j < u.ambient; ++j) {
      Cyc acc = Cyc::zero(F);
      for (int c = 0; c < u.ambient; ++c) acc = acc + u.basis.at(0, c) * m.at(c, j);
      img[static_cast<size_t>(j)] = acc;
    }
    int piv = -1;
    for (int j = 0; j < u.ambient; ++j)
      if (!u.basis.at(0, j).is_zero()) {
        piv = j;
        break;
      }
    Cyc lam = img[static_cast<size_t>(piv)] * u.basis.at(0, piv).inv();
    bool ok = true;
    for (int r = 0; r < u.dim() && ok; ++r) {
      for (int j = 0; j < u.ambient && ok; ++j) {
        Cyc acc = Cyc::zero(F);
        for (int c = 0; c < u.ambient; ++c) acc = acc + u.basis.at(r, c) * m.at(c, j);
        ok = acc == lam * u.basis.at(r, j);
      }
    }
    if (!ok) continue;
    int ord = rho.G->elem_order[g];
    for (int k = 0; k < ord; ++k)
      if (lam == Cyc::root_of_unity(F, Rat(k, ord))) {
        out.elems.push_back(g);
        vals.push_back(mod1(Rat(k, ord)));
        break;
      }
  }
  CharVec c;
  c.v = std::move(vals);
  return {out, c};
}

/// Eigencharacters of an abelian subgroup on a representation, with their
/// eigenspaces; the direct sum over all characters is the whole space.
inline std::vector<std::pair<CharVec, Subspace>> eigen_decomposition(const Representation& rho,
                                                                     const Subgroup& a) {
  std::vector<std::pair<CharVec, Subspace>> out;
  int total = 0;
  for (const auto& chi : all_chars(*rho.G, a)) {
    Subspace e = eigenspace(rho, a, chi);
    if (e.dim() == 0) continue;
    total += e.dim();
    out.push_back({chi, std::move(e)});
  }
  require(total == rho.dim, Err::Internal, "eigenspaces do not fill the space");
  return out;
}

}  // namespace burn
