#pragma once

// Exact finite-group arithmetic on explicitly enumerated groups: subgroups,
// conjugacy, centralizers, normalizers, character data of abelian subgroups.
// Groups are immutable once built; every operation is a pure function.

#include "common.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace burn {

struct FiniteGroup;
using GroupRef = std::shared_ptr<const FiniteGroup>;

struct FiniteGroup {
  int n = 0;                            // order
  std::vector<std::vector<int>> mul;    // n x n multiplication table
  std::vector<int> inv;
  int id = 0;
  std::vector<int> elem_order;
  std::vector<int> generators;          // indices; generate the group
  int degree = 0;                       // > 0 when born from permutations
  std::vector<std::vector<int>> perm;   // 0-based images, per element

  // Set when this group is a quotient of another one.
  GroupRef parent;
  std::vector<int> parent_to_this;      // size parent->n
  std::vector<int> coset_rep;           // size n, a parent element per coset

  int op(int a, int b) const { return mul[a][b]; }
  int conj(int g, int x) const { return mul[mul[g][x]][inv[g]]; }  // g x g^{-1}

  std::string elem_name(int g) const {
    if (degree > 0) {
      // cycle notation
      std::vector<bool> seen(degree, false);
      std::string s;
      for (int i = 0; i < degree; ++i) {
        if (seen[i] || perm[g][i] == i) continue;
        s += '(';
        int j = i;
        bool first = true;
        while (!seen[j]) {
          seen[j] = true;
          s += (first ? "" : ",") + std::to_string(j + 1);
          first = false;
          j = perm[g][j];
        }
        s += ')';
      }
      return s.empty() ? "e" : s;
    }
    return "g" + std::to_string(g);
  }
};

namespace detail {
inline void finish_group(FiniteGroup& g) {
  g.inv.assign(g.n, -1);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (g.mul[a][b] == g.id) g.inv[a] = b;
  g.elem_order.assign(g.n, 0);
  for (int a = 0; a < g.n; ++a) {
    int x = a, k = 1;
    while (x != g.id) {
      x = g.mul[x][a];
      ++k;
    }
    g.elem_order[a] = k;
  }
}
}  // namespace detail

inline GroupRef group_from_table(std::vector<std::vector<int>> table, std::vector<int> gens = {}) {
  auto g = std::make_shared<FiniteGroup>();
  g->n = static_cast<int>(table.size());
  g->mul = std::move(table);
  g->id = -1;
  for (int e = 0; e < g->n; ++e) {
    bool ok = true;
    for (int a = 0; a < g->n && ok; ++a) ok = g->mul[e][a] == a && g->mul[a][e] == a;
    if (ok) {
      g->id = e;
      break;
    }
  }
  require(g->id >= 0, Err::ValidationError, "multiplication table has no identity");
  for (int a = 0; a < g->n; ++a)
    for (int b = 0; b < g->n; ++b)
      require(g->mul[a][b] >= 0 && g->mul[a][b] < g->n, Err::ValidationError, "table entry out of range");
  detail::finish_group(*g);
  if (gens.empty())
    for (int i = 0; i < g->n; ++i) gens.push_back(i);
  g->generators = std::move(gens);
  return g;
}

/// Group generated by permutations given as 0-based image vectors.
inline GroupRef group_from_perms(int degree, const std::vector<std::vector<int>>& gens,
                                 int max_order = 0) {
  auto g = std::make_shared<FiniteGroup>();
  g->degree = degree;
  std::vector<int> idp(degree);
  for (int i = 0; i < degree; ++i) idp[i] = i;
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>>& elems = g->perm;
  elems.push_back(idp);
  index[idp] = 0;
  std::vector<int> work{0};
  while (!work.empty()) {
    int cur = work.back();
    work.pop_back();
    for (const auto& s : gens) {
      std::vector<int> prod(degree);
      for (int i = 0; i < degree; ++i) prod[i] = elems[cur][s[i]];  // cur after s: (cur*s)(i)=cur(s(i))
      auto it = index.find(prod);
      if (it == index.end()) {
        index[prod] = static_cast<int>(elems.size());
        elems.push_back(prod);
        if (max_order > 0 && static_cast<int>(elems.size()) > max_order)
          fail(Err::BoundExceeded, "group order exceeds configured bound");
        work.push_back(static_cast<int>(elems.size()) - 1);
      }
    }
  }
  // canonical element order: sort images lexicographically (identity first is not
  // guaranteed, so we locate it after sorting)
  std::sort(elems.begin(), elems.end());
  index.clear();
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) index[elems[i]] = i;
  g->n = static_cast<int>(elems.size());
  g->mul.assign(g->n, std::vector<int>(g->n));
  for (int a = 0; a < g->n; ++a)
    for (int b = 0; b < g->n; ++b) {
      std::vector<int> prod(degree);
      for (int i = 0; i < degree; ++i) prod[i] = elems[a][elems[b][i]];
      g->mul[a][b] = index.at(prod);
    }
  g->id = index.at(idp);
  detail::finish_group(*g);
  for (const auto& s : gens) g->generators.push_back(index.at(s));
  return g;
}

inline GroupRef symmetric_group(int m) {
  std::vector<std::vector<int>> gens;
  if (m >= 2) {
    std::vector<int> t(m);
    for (int i = 0; i < m; ++i) t[i] = i;
    std::swap(t[0], t[1]);
    gens.push_back(t);
    std::vector<int> c(m);
    for (int i = 0; i < m; ++i) c[i] = (i + 1) % m;
    gens.push_back(c);
  } else {
    gens.push_back(std::vector<int>{0});
  }
  return group_from_perms(std::max(m, 1), gens);
}

inline GroupRef cyclic_group(int m) {
  std::vector<int> c(m);
  for (int i = 0; i < m; ++i) c[i] = (i + 1) % m;
  return group_from_perms(m, {c});
}

/// Direct product; elements act on the disjoint union of the factors' domains.
inline GroupRef product_group(const GroupRef& a, const GroupRef& b) {
  require(a->degree > 0 && b->degree > 0, Err::ValidationError,
          "product requires permutation-born factors");
  int d = a->degree + b->degree;
  std::vector<std::vector<int>> gens;
  for (int ga : a->generators) {
    std::vector<int> p(d);
    for (int i = 0; i < a->degree; ++i) p[i] = a->perm[ga][i];
    for (int i = 0; i < b->degree; ++i) p[a->degree + i] = a->degree + i;
    gens.push_back(p);
  }
  for (int gb : b->generators) {
    std::vector<int> p(d);
    for (int i = 0; i < a->degree; ++i) p[i] = i;
    for (int i = 0; i < b->degree; ++i) p[a->degree + i] = a->degree + b->perm[gb][i];
    gens.push_back(p);
  }
  return group_from_perms(d, gens);
}

// ---------------------------------------------------------------------------
// Subgroups: canonical form is the sorted element-index list.

struct Subgroup {
  std::vector<int> elems;  // sorted

  int order() const { return static_cast<int>(elems.size()); }
  bool contains(int g) const { return std::binary_search(elems.begin(), elems.end(), g); }
  bool contains(const Subgroup& h) const {
    return std::includes(elems.begin(), elems.end(), h.elems.begin(), h.elems.end());
  }
  friend bool operator==(const Subgroup& x, const Subgroup& y) { return x.elems == y.elems; }
  friend bool operator<(const Subgroup& x, const Subgroup& y) {
    if (x.elems.size() != y.elems.size()) return x.elems.size() < y.elems.size();
    return x.elems < y.elems;
  }
};

inline Subgroup trivial_subgroup(const FiniteGroup& G) { return Subgroup{{G.id}}; }

inline Subgroup full_subgroup(const FiniteGroup& G) {
  Subgroup s;
  s.elems.resize(G.n);
  for (int i = 0; i < G.n; ++i) s.elems[i] = i;
  return s;
}

inline Subgroup closure(const FiniteGroup& G, std::vector<int> gens) {
  std::set<int> have{G.id};
  std::vector<int> work{G.id};
  for (int g : gens)
    if (have.insert(g).second) work.push_back(g);
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    for (int g : gens) {
      int y = G.mul[x][g];
      if (have.insert(y).second) work.push_back(y);
    }
  }
  Subgroup s;
  s.elems.assign(have.begin(), have.end());
  return s;
}

/// Small generating set (greedy; deterministic).
inline std::vector<int> generating_set(const FiniteGroup& G, const Subgroup& h) {
  std::vector<int> gens;
  Subgroup cur{{G.id}};
  for (int x : h.elems) {
    if (cur.contains(x)) continue;
    gens.push_back(x);
    std::vector<int> all = gens;
    cur = closure(G, all);
    if (cur.order() == h.order()) break;
  }
  return gens;
}

inline Subgroup conjugate_subgroup(const FiniteGroup& G, const Subgroup& h, int g) {
  Subgroup r;
  r.elems.reserve(h.elems.size());
  for (int x : h.elems) r.elems.push_back(G.conj(g, x));
  std::sort(r.elems.begin(), r.elems.end());
  return r;
}

inline bool is_abelian(const FiniteGroup& G, const Subgroup& h) {
  for (size_t i = 0; i < h.elems.size(); ++i)
    for (size_t j = i + 1; j < h.elems.size(); ++j)
      if (G.mul[h.elems[i]][h.elems[j]] != G.mul[h.elems[j]][h.elems[i]]) return false;
  return true;
}

inline bool is_cyclic(const FiniteGroup& G, const Subgroup& h) {
  for (int x : h.elems)
    if (G.elem_order[x] == h.order()) return true;
  return false;
}

inline Subgroup intersect_subgroups(const Subgroup& a, const Subgroup& b) {
  Subgroup r;
  std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                        std::back_inserter(r.elems));
  return r;
}

/// Z_G(H) within an ambient subgroup (pass full_subgroup for G itself).
inline Subgroup centralizer(const FiniteGroup& G, const Subgroup& ambient, const Subgroup& h) {
  Subgroup r;
  for (int g : ambient.elems) {
    bool ok = true;
    for (int x : h.elems)
      if (G.mul[g][x] != G.mul[x][g]) {
        ok = false;
        break;
      }
    if (ok) r.elems.push_back(g);
  }
  return r;
}

inline Subgroup normalizer(const FiniteGroup& G, const Subgroup& ambient, const Subgroup& h) {
  Subgroup r;
  for (int g : ambient.elems)
    if (conjugate_subgroup(G, h, g) == h) r.elems.push_back(g);
  return r;
}

/// Lexicographically least conjugate of h under the ambient subgroup.
inline Subgroup canonical_conjugate(const FiniteGroup& G, const Subgroup& ambient, const Subgroup& h) {
  Subgroup best = h;
  for (int g : ambient.elems) {
    Subgroup c = conjugate_subgroup(G, h, g);
    if (c.elems < best.elems) best = c;
  }
  return best;
}

inline bool are_conjugate(const FiniteGroup& G, const Subgroup& ambient, const Subgroup& a,
                          const Subgroup& b) {
  if (a.order() != b.order()) return false;
  for (int g : ambient.elems)
    if (conjugate_subgroup(G, a, g) == b) return true;
  return false;
}

struct SubgroupList {
  std::vector<Subgroup> all;                    // every subgroup, sorted
  std::vector<std::vector<int>> classes;        // conjugacy classes (indices into all)
  std::vector<int> class_of;                    // per subgroup
};

/// All subgroups of G with the conjugacy-class partition. |G| must not exceed
/// the configured bound (BURNCLASS_MAX_GROUP, default 400).
inline const SubgroupList& all_subgroups(const GroupRef& G);

namespace detail {
inline int group_bound() {
  if (const char* s = std::getenv("BURNCLASS_MAX_GROUP")) {
    int v = std::atoi(s);
    if (v > 0) return v;
  }
  return 400;
}

inline SubgroupList compute_all_subgroups(const FiniteGroup& G) {
  require(G.n <= group_bound(), Err::BoundExceeded,
          "group order " + std::to_string(G.n) + " exceeds bound");
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> all;
  Subgroup triv = trivial_subgroup(G);
  seen.insert(triv.elems);
  all.push_back(triv);
  // layer-wise closure: extend each known subgroup by a single element
  size_t next = 0;
  while (next < all.size()) {
    Subgroup h = all[next++];
    for (int g = 0; g < G.n; ++g) {
      if (h.contains(g)) continue;
      std::vector<int> gens = h.elems;
      gens.push_back(g);
      Subgroup bigger = closure(G, gens);
      if (seen.insert(bigger.elems).second) all.push_back(bigger);
    }
  }
  std::sort(all.begin(), all.end());
  SubgroupList out;
  out.all = std::move(all);
  out.class_of.assign(out.all.size(), -1);
  std::map<std::vector<int>, int> pos;
  for (size_t i = 0; i < out.all.size(); ++i) pos[out.all[i].elems] = static_cast<int>(i);
  Subgroup full = full_subgroup(G);
  for (size_t i = 0; i < out.all.size(); ++i) {
    if (out.class_of[i] >= 0) continue;
    int cls = static_cast<int>(out.classes.size());
    out.classes.push_back({});
    std::set<int> members;
    for (int g : full.elems) members.insert(pos.at(conjugate_subgroup(G, out.all[i], g).elems));
    for (int m : members) {
      out.class_of[m] = cls;
      out.classes[cls].push_back(m);
    }
  }
  return out;
}
}  // namespace detail

inline const SubgroupList& all_subgroups(const GroupRef& G) {
  // The cache shares ownership of its keys so a recycled allocation can never
  // alias a dead entry.
  static std::map<const FiniteGroup*, std::pair<GroupRef, SubgroupList>> cache;
  auto it = cache.find(G.get());
  if (it == cache.end())
    it = cache.emplace(G.get(), std::make_pair(G, detail::compute_all_subgroups(*G))).first;
  return it->second.second;
}

// ---------------------------------------------------------------------------
// Characters of abelian subgroups, valued in Q/Z. A character is stored as the
// value vector aligned with the subgroup's sorted element list.

struct CharVec {
  std::vector<Rat> v;  // parallel to carrier.elems

  bool is_zero() const {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }
  friend bool operator==(const CharVec& a, const CharVec& b) { return a.v == b.v; }
  friend bool operator<(const CharVec& a, const CharVec& b) { return a.v < b.v; }
};

inline Rat char_value(const Subgroup& carrier, const CharVec& c, int g) {
  auto it = std::lower_bound(carrier.elems.begin(), carrier.elems.end(), g);
  require(it != carrier.elems.end() && *it == g, Err::Internal, "element outside character carrier");
  return c.v[static_cast<size_t>(it - carrier.elems.begin())];
}

inline CharVec char_zero(const Subgroup& carrier) {
  CharVec c;
  c.v.assign(carrier.elems.size(), Rat(0));
  return c;
}

inline CharVec char_add(const CharVec& a, const CharVec& b) {
  CharVec c;
  c.v.resize(a.v.size());
  for (size_t i = 0; i < a.v.size(); ++i) c.v[i] = mod1(a.v[i] + b.v[i]);
  return c;
}

inline CharVec char_neg(const CharVec& a) {
  CharVec c;
  c.v.resize(a.v.size());
  for (size_t i = 0; i < a.v.size(); ++i) c.v[i] = mod1(-a.v[i]);
  return c;
}

inline CharVec char_sub(const CharVec& a, const CharVec& b) { return char_add(a, char_neg(b)); }

inline CharVec char_scale(const CharVec& a, long long k) {
  CharVec c;
  c.v.resize(a.v.size());
  for (size_t i = 0; i < a.v.size(); ++i) c.v[i] = mod1(Rat(k) * a.v[i]);
  return c;
}

inline CharVec char_restrict(const Subgroup& carrier, const CharVec& c, const Subgroup& sub) {
  CharVec r;
  r.v.reserve(sub.elems.size());
  for (int g : sub.elems) r.v.push_back(char_value(carrier, c, g));
  return r;
}

inline Subgroup char_kernel(const Subgroup& carrier, const CharVec& c) {
  Subgroup k;
  for (size_t i = 0; i < carrier.elems.size(); ++i)
    if (c.v[i] == 0) k.elems.push_back(carrier.elems[i]);
  return k;
}

/// Transport chi on H to a character of gHg^{-1}: chi'(gxg^{-1}) = chi(x).
inline CharVec char_transport(const FiniteGroup& G, const Subgroup& carrier, const CharVec& c, int g) {
  Subgroup target = conjugate_subgroup(G, carrier, g);
  CharVec r;
  r.v.resize(target.elems.size());
  for (size_t i = 0; i < carrier.elems.size(); ++i) {
    int y = G.conj(g, carrier.elems[i]);
    auto it = std::lower_bound(target.elems.begin(), target.elems.end(), y);
    r.v[static_cast<size_t>(it - target.elems.begin())] = c.v[i];
  }
  return r;
}

/// Invariant-factor decomposition of an abelian subgroup with generators.
struct AbelianDual {
  Subgroup h;
  std::vector<int> gens;       // elements of h realizing the decomposition
  std::vector<int> factors;    // d_1 | d_2 | ... (orders in successive quotients)

  int rank() const { return static_cast<int>(gens.size()); }
};

inline AbelianDual abelian_dual(const FiniteGroup& G, const Subgroup& h) {
  require(is_abelian(G, h), Err::NotAbelian, "dual of non-abelian subgroup");
  AbelianDual d;
  d.h = h;
  Subgroup cur{{G.id}};
  while (cur.order() < h.order()) {
    // pick the element of maximal order in h/cur, ties by least index
    int best = -1, best_ord = 0;
    for (int x : h.elems) {
      if (cur.contains(x)) continue;
      int y = x, ord = 1;
      while (!cur.contains(y)) {
        y = G.mul[y][x];
        ++ord;
      }
      if (ord > best_ord) {
        best_ord = ord;
        best = x;
      }
    }
    d.gens.push_back(best);
    d.factors.push_back(best_ord);
    std::vector<int> gens = cur.elems;
    gens.push_back(best);
    cur = closure(G, gens);
  }
  // order so that d_1 | d_2 | ... (ascending)
  std::vector<size_t> idx(d.gens.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return d.factors[a] < d.factors[b]; });
  AbelianDual out;
  out.h = h;
  for (size_t i : idx) {
    out.gens.push_back(d.gens[i]);
    out.factors.push_back(d.factors[i]);
  }
  long long prod = 1;
  for (int f : out.factors) prod *= f;
  require(prod == h.order(), Err::Internal, "invariant factor product mismatch");
  return out;
}

/// Character with value a_i/d_i on the i-th dual generator. Exponents are taken
/// modulo the generator orders; values extend multiplicatively over h.
inline CharVec char_from_exponents(const FiniteGroup& G, const AbelianDual& d,
                                   const std::vector<long long>& exps) {
  require(exps.size() == d.gens.size(), Err::ValidationError, "exponent arity mismatch");
  // express each element of h in terms of the generators by enumeration
  CharVec c = char_zero(d.h);
  std::vector<long long> counter(d.gens.size(), 0);
  // iterate over all exponent tuples; h is small
  size_t total = 1;
  for (int f : d.factors) total *= static_cast<size_t>(f);
  for (size_t t = 0; t < total; ++t) {
    size_t rem = t;
    int g = G.id;
    Rat val(0);
    for (size_t i = 0; i < d.gens.size(); ++i) {
      long long e = static_cast<long long>(rem % d.factors[i]);
      rem /= d.factors[i];
      for (long long k = 0; k < e; ++k) g = G.mul[g][d.gens[i]];
      val += Rat(e * exps[i], d.factors[i]);
    }
    auto it = std::lower_bound(d.h.elems.begin(), d.h.elems.end(), g);
    c.v[static_cast<size_t>(it - d.h.elems.begin())] = mod1(val);
  }
  return c;
}

/// All characters of an abelian subgroup, deterministic order.
inline std::vector<CharVec> all_chars(const FiniteGroup& G, const Subgroup& h) {
  AbelianDual d = abelian_dual(G, h);
  size_t total = 1;
  for (int f : d.factors) total *= static_cast<size_t>(f);
  std::vector<CharVec> out;
  out.reserve(total);
  for (size_t t = 0; t < total; ++t) {
    size_t rem = t;
    std::vector<long long> exps(d.gens.size());
    for (size_t i = 0; i < d.gens.size(); ++i) {
      exps[i] = static_cast<long long>(rem % d.factors[i]);
      rem /= d.factors[i];
    }
    out.push_back(char_from_exponents(G, d, exps));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool chars_generate_dual(const FiniteGroup& G, const Subgroup& h,
                                const std::vector<CharVec>& chars) {
  // characters generate H^vee iff their common kernel is trivial
  Subgroup ker = h;
  for (const auto& c : chars) {
    CharVec r = char_restrict(h, c, ker);
    ker = char_kernel(ker, r);
  }
  return ker.order() == 1;
}

inline Subgroup commutator_subgroup(const FiniteGroup& G, const Subgroup& s) {
  std::vector<int> comms;
  for (int a : s.elems)
    for (int b : s.elems) {
      int c = G.mul[G.mul[G.mul[a][b]][G.inv[a]]][G.inv[b]];
      comms.push_back(c);
    }
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return closure(G, comms);
}

/// All Q/Z-valued characters of a (possibly nonabelian) subgroup: characters of
/// its abelianization pulled back to value vectors on s.
inline std::vector<CharVec> linear_chars_uncached(const FiniteGroup& G, const Subgroup& s) {
  Subgroup comm = commutator_subgroup(G, s);
  // characters of s trivial on comm; enumerate via the quotient structure:
  // brute force over homomorphisms determined on coset representatives is
  // awkward, so use: chars of s = chars chi with chi constant on comm-cosets
  // and additive. We enumerate chars of the abelian quotient via an explicit
  // quotient group on cosets.
  std::vector<int> coset_of(G.n, -1);
  std::vector<int> reps;
  for (int x : s.elems) {
    if (coset_of[x] >= 0) continue;
    int r = static_cast<int>(reps.size());
    for (int c : comm.elems) coset_of[G.mul[x][c]] = r;
    reps.push_back(x);
  }
  int q = static_cast<int>(reps.size());
  std::vector<std::vector<int>> table(q, std::vector<int>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) table[i][j] = coset_of[G.mul[reps[i]][reps[j]]];
  GroupRef Q = group_from_table(std::move(table));
  Subgroup qfull = full_subgroup(*Q);
  std::vector<CharVec> qchars = all_chars(*Q, qfull);
  std::vector<CharVec> out;
  for (const auto& qc : qchars) {
    CharVec c;
    c.v.reserve(s.elems.size());
    for (int x : s.elems) c.v.push_back(qc.v[static_cast<size_t>(coset_of[x])]);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline const std::vector<CharVec>& linear_chars(const FiniteGroup& G, const Subgroup& s) {
  static std::map<std::pair<const FiniteGroup*, std::vector<int>>, std::vector<CharVec>> cache;
  auto key = std::make_pair(&G, s.elems);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(std::move(key), linear_chars_uncached(G, s)).first;
  return it->second;
}

/// Extensions of a character on h to characters of s (h <= s, chi trivial on
/// [s,s] cap h required); deterministic order, empty when none exists.
inline std::vector<CharVec> char_extensions(const FiniteGroup& G, const Subgroup& s,
                                            const Subgroup& h, const CharVec& chi) {
  std::vector<CharVec> out;
  for (const auto& c : linear_chars(G, s))
    if (char_restrict(s, c, h) == chi) out.push_back(c);
  return out;
}

// ---------------------------------------------------------------------------
// Quotient groups G/N with explicit maps.

inline GroupRef quotient_group(const GroupRef& G, const Subgroup& N) {
  if (N.order() == 1) return G;  // identity shortcut keeps contexts stable
  require(normalizer(*G, full_subgroup(*G), N).order() == G->n, Err::ValidationError,
          "quotient by non-normal subgroup");
  std::vector<int> coset_of(G->n, -1);
  std::vector<int> reps;
  for (int x = 0; x < G->n; ++x) {
    if (coset_of[x] >= 0) continue;
    int r = static_cast<int>(reps.size());
    for (int c : N.elems) coset_of[G->mul[x][c]] = r;
    reps.push_back(x);
  }
  int q = static_cast<int>(reps.size());
  std::vector<std::vector<int>> table(q, std::vector<int>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) table[i][j] = coset_of[G->mul[reps[i]][reps[j]]];
  auto g = std::make_shared<FiniteGroup>();
  g->n = q;
  g->mul = std::move(table);
  g->id = coset_of[G->id];
  detail::finish_group(*g);
  for (int i = 0; i < q; ++i) g->generators.push_back(i);
  g->parent = G;
  g->parent_to_this = std::move(coset_of);
  g->coset_rep = std::move(reps);
  return g;
}

inline Subgroup image_subgroup(const FiniteGroup& quotient, const Subgroup& parent_sub) {
  Subgroup r;
  for (int x : parent_sub.elems) r.elems.push_back(quotient.parent_to_this[x]);
  std::sort(r.elems.begin(), r.elems.end());
  r.elems.erase(std::unique(r.elems.begin(), r.elems.end()), r.elems.end());
  return r;
}

inline Subgroup preimage_subgroup(const FiniteGroup& quotient, const Subgroup& quot_sub) {
  Subgroup r;
  for (int x = 0; x < static_cast<int>(quotient.parent_to_this.size()); ++x)
    if (quot_sub.contains(quotient.parent_to_this[x])) r.elems.push_back(x);
  return r;
}

}  // namespace burn
