#pragma once

// Stabilizer lattices of a linear action: the affine lattice of subgroups
// fixing subspaces pointwise, and the projective lattice of (subgroup,
// character) pairs fixing subspaces up to scalars. Chains are enumerated up to
// conjugacy together with their stabilizer/character package.

#include "representation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace burn {

/// One lattice element. Affine: (gamma, V_gamma) with eps empty. Projective:
/// (gamma, eps) with the eigenspace; gamma strictly contains the scalar
/// subgroup of the action.
struct LatticeElem {
  Subgroup gamma;
  CharVec eps;     // character of gamma (projective only; empty when affine)
  Subspace space;  // V_gamma resp. V_{gamma,eps}
};

struct Lattice {
  GroupRef G;
  Subgroup acting;          // the subgroup whose action we stratify
  Representation rho;       // its matrices
  bool projective = false;
  Subgroup scalar_sub;      // elements acting by scalars (C); trivial if affine
  CharVec scalar_char;      // its character on V
  std::vector<LatticeElem> elems;              // sorted by (order desc, space key)
  std::vector<std::vector<int>> classes;       // conjugacy classes under acting
  std::vector<int> class_of;
  std::map<std::string, int> by_space_key;
  std::vector<std::vector<int>> image;         // image[i][pos(g)] = index of elems[i].space * g
  std::map<int, int> acting_pos;               // element -> column in image

  int moved_elem(int i, int g) const {
    return image[static_cast<size_t>(i)][static_cast<size_t>(acting_pos.at(g))];
  }

  int find_by_space(const Subspace& s) const {
    auto it = by_space_key.find(s.key());
    return it == by_space_key.end() ? -1 : it->second;
  }
};

namespace detail {

/// Pointwise stabilizer of a subspace together with nothing else (affine rule).
inline Subgroup pointwise_stabilizer(const Representation& rho, const Subgroup& acting,
                                     const Subspace& u) {
  Subgroup out;
  for (int g : acting.elems) {
    bool fixes = true;
    const Matrix& m = rho.mat(g);
    for (int r = 0; r < u.dim() && fixes; ++r)
      for (int j = 0; j < u.ambient && fixes; ++j) {
        Cyc acc = Cyc::zero(rho.F);
        for (int c = 0; c < u.ambient; ++c) acc = acc + u.basis.at(r, c) * m.at(c, j);
        fixes = acc == u.basis.at(r, j);
      }
    if (fixes) out.elems.push_back(g);
  }
  return out;
}

inline void finish_lattice(Lattice& L) {
  std::sort(L.elems.begin(), L.elems.end(), [](const LatticeElem& a, const LatticeElem& b) {
    if (a.gamma.order() != b.gamma.order()) return a.gamma.order() > b.gamma.order();
    return a.space.key() < b.space.key();
  });
  for (size_t i = 0; i < L.elems.size(); ++i) L.by_space_key[L.elems[i].space.key()] = static_cast<int>(i);
  // permutation action of the group on the lattice (U |-> U.g), cached once
  for (size_t p = 0; p < L.acting.elems.size(); ++p) L.acting_pos[L.acting.elems[p]] = static_cast<int>(p);
  L.image.assign(L.elems.size(), std::vector<int>(L.acting.elems.size(), -1));
  for (size_t i = 0; i < L.elems.size(); ++i)
    for (size_t p = 0; p < L.acting.elems.size(); ++p) {
      Matrix img = L.elems[i].space.basis * L.rho.mat(L.acting.elems[p]);
      Subspace moved = Subspace::from_rows(L.elems[i].space.ambient, img);
      int j = L.find_by_space(moved);
      require(j >= 0, Err::Internal, "lattice not closed under the group action");
      L.image[i][p] = j;
    }
  L.class_of.assign(L.elems.size(), -1);
  for (size_t i = 0; i < L.elems.size(); ++i) {
    if (L.class_of[i] >= 0) continue;
    int cls = static_cast<int>(L.classes.size());
    L.classes.push_back({});
    std::set<int> members;
    for (size_t p = 0; p < L.acting.elems.size(); ++p) members.insert(L.image[i][p]);
    for (int m : members) {
      L.class_of[m] = cls;
      L.classes[cls].push_back(m);
    }
  }
}

}  // namespace detail

/// Affine lattice: intersection closure of element fixed spaces; each subspace
/// is paired with its pointwise stabilizer.
inline Lattice stabilizer_lattice(const Representation& rho, const Subgroup& acting) {
  Lattice L;
  L.G = rho.G;
  L.acting = acting;
  L.rho = restrict_rep(rho, acting);
  L.projective = false;
  L.scalar_sub = trivial_subgroup(*rho.G);
  L.scalar_char = char_zero(L.scalar_sub);

  std::map<std::string, Subspace> spaces;
  Subspace whole = Subspace::full(rho.dim, rho.F);
  spaces[whole.key()] = whole;
  for (int g : acting.elems) {
    if (g == rho.G->id) continue;
    Subgroup cyc = closure(*rho.G, {g});
    Subspace f = fixed_space(L.rho, cyc);
    spaces.emplace(f.key(), f);
  }
  // close under intersection
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subspace> cur;
    for (auto& [k, s] : spaces) cur.push_back(s);
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        Subspace x = subspace_intersect(cur[i], cur[j], rho.F);
        if (spaces.emplace(x.key(), x).second) grew = true;
      }
  }
  for (auto& [k, s] : spaces) {
    Subgroup stab = detail::pointwise_stabilizer(L.rho, acting, s);
    LatticeElem e;
    e.gamma = std::move(stab);
    e.space = s;
    // dedupe happens through the space key; the pointwise stabilizer of an
    // intersection-closure member recovers exactly that subspace
    L.elems.push_back(std::move(e));
  }
  detail::finish_lattice(L);
  return L;
}

/// Projective lattice: eigenspace intersection closure; pairs (gamma, eps)
/// with gamma strictly containing the scalar subgroup.
inline Lattice projective_lattice(const Representation& rho, const Subgroup& acting) {
  Lattice L;
  L.G = rho.G;
  L.acting = acting;
  L.rho = restrict_rep(rho, acting);
  L.projective = true;
  auto [csub, cchar] = L.rho.scalar_subgroup();
  L.scalar_sub = csub;
  L.scalar_char = cchar;

  std::map<std::string, Subspace> spaces;
  for (int g : acting.elems) {
    Subgroup cyc = closure(*rho.G, {g});
    if (!is_abelian(*rho.G, cyc)) continue;  // cyclic, always abelian
    for (const auto& chi : all_chars(*rho.G, cyc)) {
      Subspace e = eigenspace(L.rho, cyc, chi);
      if (e.dim() == 0) continue;
      spaces.emplace(e.key(), e);
    }
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subspace> cur;
    for (auto& [k, s] : spaces) cur.push_back(s);
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        Subspace x = subspace_intersect(cur[i], cur[j], rho.F);
        if (x.dim() == 0) continue;
        if (spaces.emplace(x.key(), x).second) grew = true;
      }
  }
  for (auto& [k, s] : spaces) {
    auto [gamma, eps] = scalar_stabilizer(L.rho, acting, s);
    if (gamma.order() <= L.scalar_sub.order()) continue;  // drop the generic pair
    LatticeElem e;
    e.gamma = std::move(gamma);
    e.eps = std::move(eps);
    e.space = s;
    L.elems.push_back(std::move(e));
  }
  detail::finish_lattice(L);
  return L;
}

// ---------------------------------------------------------------------------
// Chains. A chain is a list of lattice element indices with strictly
// increasing subspaces (equivalently strictly decreasing stabilizers), and in
// the projective case compatible characters along the chain.

struct ChainData {
  std::vector<int> elems;          // lattice indices, deepest group first (V_1 smallest space)
  Subgroup normalizer;             // N(Lambda): stabilizes every member (and eps)
  Subgroup delta;                  // generic stratum stabilizer
  CharVec delta_eps;               // projective: character of delta on V_1
  std::vector<CharVec> level_eps;  // characters of delta on V_{i+1}/V_i, i=1..t
  std::vector<CharVec> divisor_chars;  // affine: eps1, eps2-eps1, ...; projective: eps1-eps, ...
};

inline bool chain_step_ok(const Lattice& L, int upper, int lower) {
  // "upper" has bigger group / smaller space;  lower extends the flag
  const LatticeElem& a = L.elems[upper];
  const LatticeElem& b = L.elems[lower];
  if (a.gamma.order() <= b.gamma.order()) return false;
  if (!a.gamma.contains(b.gamma)) return false;
  if (!b.space.contains(a.space)) return false;
  if (a.space == b.space) return false;
  if (L.projective) {
    // character compatibility: eps of the bigger group restricts to the smaller
    CharVec r = char_restrict(a.gamma, a.eps, b.gamma);
    if (!(r == b.eps)) return false;
  }
  return true;
}

/// Data package for a chain (indices ordered by decreasing subgroup order).
inline ChainData chain_data(const Lattice& L, const std::vector<int>& chain) {
  ChainData d;
  d.elems = chain;
  const FiniteGroup& G = *L.G;
  // N(Lambda) = elements of the acting subgroup fixing every member
  // (subgroup + character for the first / all members -- fixing each gamma and
  // the chain character on the top member implies the rest).
  Subgroup n;
  for (int g : L.acting.elems) {
    bool ok = true;
    for (int ci : chain) {
      const LatticeElem& e = L.elems[ci];
      if (conjugate_subgroup(G, e.gamma, g) != e.gamma) {
        ok = false;
        break;
      }
      if (L.projective && !(char_transport(G, e.gamma, e.eps, g) == e.eps)) {
        ok = false;
        break;
      }
    }
    if (ok) n.elems.push_back(g);
  }
  d.normalizer = std::move(n);

  // flag of subspaces V_1 c ... c V_t c V
  std::vector<Subspace> flag;
  for (int ci : chain) flag.push_back(L.elems[ci].space);
  Subspace whole = Subspace::full(L.rho.dim, L.rho.F);

  // delta = subgroup of N acting by scalars on V_1 (projective) or trivially on
  // V_1 (affine), and by scalars on each successive quotient.
  Subgroup delta;
  std::vector<Rat> eps0vals;
  for (int g : d.normalizer.elems) {
    Subgroup single{{g}};
    bool ok = true;
    Rat v0(0);
    {
      Subspace v1 = flag.front();
      auto [sg, sc] = scalar_stabilizer(L.rho, single, v1);
      if (sg.order() == 1) {
        v0 = sc.v[0];
        if (!L.projective && v0 != 0) ok = false;
      } else
        ok = false;
    }
    for (size_t i = 0; ok && i + 1 <= flag.size(); ++i) {
      const Subspace& lo = flag[i];
      const Subspace& hi = (i + 1 < flag.size()) ? flag[i + 1] : whole;
      Representation q = quotient_action(L.rho, single, lo, hi);
      auto [sg, sc] = q.scalar_subgroup();
      if (sg.order() != 1) ok = false;
    }
    if (ok) {
      delta.elems.push_back(g);
      eps0vals.push_back(v0);
    }
  }
  d.delta = std::move(delta);
  d.delta_eps.v = std::move(eps0vals);

  // level characters of delta on the quotients
  for (size_t i = 0; i < flag.size(); ++i) {
    const Subspace& lo = flag[i];
    const Subspace& hi = (i + 1 < flag.size()) ? flag[i + 1] : whole;
    Representation q = quotient_action(L.rho, d.delta, lo, hi);
    auto [sg, sc] = q.scalar_subgroup();
    require(sg == d.delta, Err::Internal, "delta is not scalar on a flag quotient");
    d.level_eps.push_back(sc);
  }
  // divisor characters
  for (size_t i = 0; i < d.level_eps.size(); ++i) {
    CharVec prev = (i == 0) ? (L.projective ? d.delta_eps : char_zero(d.delta)) : d.level_eps[i - 1];
    d.divisor_chars.push_back(char_sub(d.level_eps[i], prev));
  }
  return d;
}

/// All chains of the lattice (lists of element indices, deepest-group first,
/// i.e. increasing subspace dimension). Includes length-1 chains; excludes the
/// empty chain.
inline std::vector<std::vector<int>> all_chains(const Lattice& L) {
  int m = static_cast<int>(L.elems.size());
  std::vector<std::vector<int>> adj(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && chain_step_ok(L, i, j)) adj[i].push_back(j);
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> grow = [&](int last) {
    out.push_back(cur);
    for (int nxt : adj[last]) {
      cur.push_back(nxt);
      grow(nxt);
      cur.pop_back();
    }
  };
  for (int i = 0; i < m; ++i) {
    cur = {i};
    grow(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Map a chain elementwise under the action of g (spaces move by U |-> U.g,
/// i.e. subgroups conjugate by g^{-1}).
inline std::vector<int> conjugate_chain(const Lattice& L, const std::vector<int>& chain, int g) {
  std::vector<int> out;
  out.reserve(chain.size());
  for (int ci : chain) out.push_back(L.moved_elem(ci, g));
  return out;
}

/// Canonical representative of the conjugacy orbit of a chain: the orbit
/// member whose tuple of sorted element lists is lexicographically least.
inline std::vector<int> canonical_chain(const Lattice& L, const std::vector<int>& chain,
                                        const Subgroup& under) {
  std::vector<int> best = chain;
  auto chain_key = [&](const std::vector<int>& c) {
    std::vector<std::vector<int>> key;
    for (int ci : c) key.push_back(L.elems[ci].gamma.elems);
    // tie-break on the character data so distinct pairs with equal groups sort
    for (int ci : c)
      for (const auto& r : L.elems[ci].eps.v) key.push_back({static_cast<int>(numerator(r)), static_cast<int>(denominator(r))});
    return key;
  };
  auto bk = chain_key(best);
  for (int g : under.elems) {
    std::vector<int> c = conjugate_chain(L, chain, g);
    auto k = chain_key(c);
    if (k < bk) {
      best = std::move(c);
      bk = std::move(k);
    }
  }
  return best;
}

struct ChainClasses {
  std::vector<std::vector<int>> reps;  // canonical chains
  std::map<std::vector<int>, int> class_of;   // every chain -> class id
};

inline ChainClasses chain_classes(const Lattice& L) {
  ChainClasses out;
  for (const auto& c : all_chains(L)) {
    if (out.class_of.count(c)) continue;
    std::vector<int> rep = canonical_chain(L, c, L.acting);
    int id;
    auto it = out.class_of.find(rep);
    if (it != out.class_of.end())
      id = it->second;
    else {
      id = static_cast<int>(out.reps.size());
      out.reps.push_back(rep);
      out.class_of[rep] = id;
    }
    out.class_of[c] = id;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Invariant divisors D_1..D_l (conjugacy classes of lattice elements) and the
// chain-class selector J_I.

struct DivisorIndex {
  std::vector<int> class_order;  // lattice class ids, by decreasing |Gamma| then key
};

inline DivisorIndex group_divisors(const Lattice& L) {
  DivisorIndex d;
  std::vector<std::pair<std::pair<int, std::string>, int>> keyed;
  for (size_t c = 0; c < L.classes.size(); ++c) {
    int rep = L.classes[c].front();
    keyed.push_back({{-L.elems[rep].gamma.order(), L.elems[rep].space.key()}, static_cast<int>(c)});
  }
  std::sort(keyed.begin(), keyed.end());
  for (auto& [k, c] : keyed) d.class_order.push_back(c);
  return d;
}

/// Conjugacy classes of chains whose a-th member lies in the a-th listed
/// divisor class. Empty when the requested classes do not have strictly
/// decreasing subgroup orders.
inline std::vector<std::vector<int>> chain_classes_for(const Lattice& L, const ChainClasses& cc,
                                                       const DivisorIndex& d,
                                                       const std::vector<int>& I) {
  std::vector<int> want;  // lattice class ids in chain position order
  for (int i : I) want.push_back(d.class_order.at(static_cast<size_t>(i)));
  for (size_t a = 0; a + 1 < want.size(); ++a) {
    int oa = L.elems[L.classes[want[a]].front()].gamma.order();
    int ob = L.elems[L.classes[want[a + 1]].front()].gamma.order();
    if (oa <= ob) return {};
  }
  std::vector<std::vector<int>> out;
  for (const auto& rep : cc.reps) {
    if (rep.size() != want.size()) continue;
    bool ok = true;
    for (size_t a = 0; a < rep.size() && ok; ++a) ok = L.class_of[rep[a]] == want[a];
    if (ok) out.push_back(rep);
  }
  return out;
}

}  // namespace burn
