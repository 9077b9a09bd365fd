#pragma once

// Constructors for the representations the tool ships with: standard
// permutation representations, sign twists, diagonal representations of
// abelian groups, matrix-born groups (binary lifts in GL_2), and cyclic
// twists 1 (+) V (x) eps.

#include "representation.hpp"

#include <map>
#include <vector>

namespace burn {

/// Re-embed a cyclotomic number into a field whose conductor is a multiple of
/// the source conductor (z_src = z_target^{N_target/N_src}).
inline Cyc embed_cyc(const Cyc& v, const FieldRef& target) {
  int src = v.field()->conductor();
  int dst = target->conductor();
  require(dst % src == 0, Err::Internal, "cannot embed into smaller field");
  Cyc acc = Cyc::zero(target);
  Cyc zr = Cyc::zeta_pow(target, dst / src);
  Cyc pow = Cyc::one(target);
  const Poly& c = v.coeffs();
  for (size_t t = 0; t < c.size(); ++t) {
    if (c[t] != 0) acc = acc + pow * Cyc::from_rat(target, c[t]);
    pow = pow * zr;
  }
  return acc;
}

inline Matrix embed_matrix(const Matrix& m, const FieldRef& target) {
  Matrix r(m.rows, m.cols, target);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = embed_cyc(m.a[i], target);
  return r;
}

inline Representation embed_rep(const Representation& rho, const FieldRef& target) {
  Representation r = rho;
  r.F = target;
  for (auto& m : r.mats) m = embed_matrix(m, target);
  return r;
}

/// lcm of element orders; the conductor every computation over G uses.
inline int computation_conductor(const FiniteGroup& G) {
  long long l = 1;
  for (int o : G.elem_order) l = lllcm(l, o);
  return static_cast<int>(l);
}

/// Standard representation of S_m on the sum-zero subspace of k^m in the basis
/// f_i = e_i - e_{i+1}. Right action: coordinates permute as x.g = (x_{g(i)})_i.
inline Representation standard_rep(const GroupRef& G, int conductor, bool tensor_sign = false) {
  require(G->degree >= 2, Err::ValidationError, "standard rep needs a permutation group");
  int m = G->degree;
  FieldRef F = make_field(conductor);
  int d = m - 1;
  std::vector<Matrix> mats;
  for (int gi : G->generators) {
    const std::vector<int>& p = G->perm[gi];
    std::vector<int> pinv(m);
    for (int i = 0; i < m; ++i) pinv[p[i]] = i;
    int sgn = 1;
    if (tensor_sign) {
      std::vector<bool> seen(m, false);
      for (int i = 0; i < m; ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
          seen[j] = true;
          j = p[j];
          ++len;
        }
        if (len % 2 == 0) sgn = -sgn;
      }
    }
    Matrix mat(d, d, F);
    for (int i = 0; i < d; ++i) {
      int a = pinv[i], b = pinv[i + 1];
      int s = sgn;
      if (a > b) {
        std::swap(a, b);
        s = -s;
      }
      for (int k = a; k < b; ++k) mat.at(i, k) = Cyc::from_rat(F, s);
    }
    mats.push_back(mat);
  }
  return rep_from_generators(G, F, d, G->generators, mats);
}

/// Diagonal representation of an abelian group: generator j acts by
/// diag(e^{2 pi i w[j][0]}, ...).
inline Representation diagonal_rep(const GroupRef& G, int conductor,
                                   const std::vector<std::vector<Rat>>& weights) {
  require(weights.size() == G->generators.size(), Err::ValidationError,
          "one weight row per generator required");
  FieldRef F = make_field(conductor);
  int d = static_cast<int>(weights.front().size());
  std::vector<Matrix> mats;
  for (size_t j = 0; j < weights.size(); ++j) {
    require(static_cast<int>(weights[j].size()) == d, Err::ValidationError, "ragged weight rows");
    Matrix m(d, d, F);
    for (int i = 0; i < d; ++i) m.at(i, i) = Cyc::root_of_unity(F, weights[j][static_cast<size_t>(i)]);
    mats.push_back(m);
  }
  return rep_from_generators(G, F, d, G->generators, mats);
}

/// 1 (+) rho with a trivial first coordinate.
inline Representation one_plus(const Representation& rho) {
  Representation r;
  r.G = rho.G;
  r.acting = rho.acting;
  r.dim = rho.dim + 1;
  r.F = rho.F;
  for (const Matrix& m : rho.mats) {
    Matrix big(r.dim, r.dim, r.F);
    big.at(0, 0) = Cyc::one(r.F);
    for (int i = 0; i < rho.dim; ++i)
      for (int j = 0; j < rho.dim; ++j) big.at(i + 1, j + 1) = m.at(i, j);
    r.mats.push_back(std::move(big));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Matrix-born groups.

struct MatrixGroup {
  GroupRef group;
  Representation rep;
};

/// Enumerate the finite group generated by exact invertible matrices; element
/// order is canonical (sorted by serialized matrix), multiplication by lookup.
inline MatrixGroup group_from_matrices(const FieldRef& F, const std::vector<Matrix>& gens,
                                       int bound = 40000) {
  std::map<std::string, int> index;
  std::vector<Matrix> elems;
  int dim = gens.front().rows;
  Matrix id = Matrix::identity(dim, F);
  elems.push_back(id);
  index[id.str()] = 0;
  std::vector<int> work{0};
  while (!work.empty()) {
    int cur = work.back();
    work.pop_back();
    for (const Matrix& g : gens) {
      Matrix prod = elems[static_cast<size_t>(cur)] * g;
      std::string key = prod.str();
      if (!index.count(key)) {
        require(static_cast<int>(elems.size()) < bound, Err::BoundExceeded,
                "matrix group exceeds bound");
        index[key] = static_cast<int>(elems.size());
        elems.push_back(prod);
        work.push_back(static_cast<int>(elems.size()) - 1);
      }
    }
  }
  // canonical order
  std::vector<int> perm(elems.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::sort(perm.begin(), perm.end(),
            [&](int a, int b) { return elems[static_cast<size_t>(a)].str() < elems[static_cast<size_t>(b)].str(); });
  std::vector<Matrix> sorted;
  std::map<std::string, int> pos;
  for (size_t i = 0; i < perm.size(); ++i) {
    sorted.push_back(elems[static_cast<size_t>(perm[i])]);
    pos[sorted.back().str()] = static_cast<int>(i);
  }
  int n = static_cast<int>(sorted.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = pos.at((sorted[static_cast<size_t>(a)] * sorted[static_cast<size_t>(b)]).str());
  std::vector<int> gen_idx;
  for (const Matrix& g : gens) gen_idx.push_back(pos.at(g.str()));
  GroupRef G = group_from_table(std::move(table), gen_idx);
  MatrixGroup out;
  out.group = G;
  out.rep.G = G;
  out.rep.acting = full_subgroup(*G);
  out.rep.dim = dim;
  out.rep.F = F;
  out.rep.mats = std::move(sorted);
  return out;
}

/// Binary octahedral group in GL_2 over Q(zeta_8): the order-48 lift of the
/// octahedral rotation group; its image in PGL_2 is isomorphic to S4.
inline MatrixGroup binary_octahedral() {
  FieldRef F = make_field(8);
  Cyc z = Cyc::zeta_pow(F, 1);               // zeta_8
  Cyc inv_sqrt2 = (z + Cyc::zeta_pow(F, -1)).inv();  // 1/sqrt(2)
  Matrix a(2, 2, F);                          // diag(zeta_8, zeta_8^-1)
  a.at(0, 0) = z;
  a.at(1, 1) = Cyc::zeta_pow(F, -1);
  Matrix b(2, 2, F);                          // (1/sqrt2) [[1,1],[-1,1]]
  b.at(0, 0) = inv_sqrt2;
  b.at(0, 1) = inv_sqrt2;
  b.at(1, 0) = -inv_sqrt2;
  b.at(1, 1) = inv_sqrt2;
  MatrixGroup g = group_from_matrices(F, {a, b});
  require(g.group->n == 48, Err::Internal, "binary octahedral group has order 48");
  return g;
}

// ---------------------------------------------------------------------------
// Direct products of table-based groups, with embeddings.

struct ProductGroup {
  GroupRef group;
  std::vector<int> emb_a;  // element i of A -> index in product
  std::vector<int> emb_b;
};

inline ProductGroup direct_product(const GroupRef& A, const GroupRef& B) {
  int n = A->n * B->n;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  auto idx = [&](int i, int j) { return i * B->n + j; };
  for (int i = 0; i < A->n; ++i)
    for (int j = 0; j < B->n; ++j)
      for (int k = 0; k < A->n; ++k)
        for (int l = 0; l < B->n; ++l)
          table[idx(i, j)][idx(k, l)] = idx(A->mul[i][k], B->mul[j][l]);
  std::vector<int> gens;
  for (int g : A->generators) gens.push_back(idx(g, B->id));
  for (int g : B->generators) gens.push_back(idx(A->id, g));
  ProductGroup out;
  out.group = group_from_table(std::move(table), gens);
  out.emb_a.resize(A->n);
  for (int i = 0; i < A->n; ++i) out.emb_a[i] = idx(i, B->id);
  out.emb_b.resize(B->n);
  for (int j = 0; j < B->n; ++j) out.emb_b[j] = idx(A->id, j);
  return out;
}

/// Representation of C_m x G' on V (x) eps^e: the cyclic generator acts by the
/// scalar zeta_m^e, inner generators by their matrices.
inline Representation twist_rep(const ProductGroup& P, int cyclic_order, long long exponent,
                                const Representation& inner, int conductor) {
  FieldRef F = make_field(conductor);
  std::vector<int> gens;
  std::vector<Matrix> mats;
  int d = inner.dim;
  // cyclic generator: emb_a of the generator of A (A is cyclic of order m)
  {
    Matrix m(d, d, F);
    for (int i = 0; i < d; ++i) m.at(i, i) = Cyc::root_of_unity(F, Rat(exponent, cyclic_order));
    // the generator of the cyclic factor is its element of full order
    int cg = -1;
    for (int i = 0; i < cyclic_order; ++i)
      if (static_cast<int>(P.emb_a.size()) > i) {
        // find the element of order cyclic_order
      }
    for (size_t i = 0; i < P.emb_a.size(); ++i) {
      int e = P.emb_a[i];
      if (P.group->elem_order[e] == cyclic_order) {
        cg = e;
        break;
      }
    }
    require(cg >= 0, Err::Internal, "cyclic factor generator not found");
    gens.push_back(cg);
    mats.push_back(std::move(m));
  }
  for (int g : inner.G->generators) {
    gens.push_back(P.emb_b[static_cast<size_t>(g)]);
    mats.push_back(embed_matrix(inner.mat(g), F));
  }
  return rep_from_generators(P.group, F, d, gens, mats);
}

}  // namespace burn
