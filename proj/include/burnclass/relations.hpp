#pragma once

// The defining relations and the integer-lattice equality engine. Reordering
// and conjugation are absorbed by canonicalization; the blow-up relations B1
// and B2 are instantiated over a finite symbol universe and spanned as an
// integer lattice, with class equality decided by Hermite reduction.

#include "symbols.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace burn {

/// B1: the symbol vanishes when two beta entries sum to zero.
inline bool b1_applies(const Symbol& s) {
  for (size_t i = 0; i < s.beta.size(); ++i)
    for (size_t j = i + 1; j < s.beta.size(); ++j)
      if (char_add(s.beta[i], s.beta[j]).is_zero()) return true;
  return false;
}

struct B2Result {
  std::vector<Symbol> theta1;       // zero or two symbols
  std::optional<Symbol> theta2;     // absent when the theta2 case is zero
  bool representable = true;        // false: no character lift for the new variable
};

/// B2 at beta positions (i, j): s = Theta_1 + Theta_2. Theta_2 replaces the
/// stabilizer by ker(b_i - b_j) and adjoins a monomial variable acted on via a
/// character lift of b_i - b_j; when no lift exists inside our descriptor
/// vocabulary the relation is reported non-representable and skipped.
inline B2Result b2_apply(const BurnCtx& ctx, const Symbol& s, size_t i, size_t j) {
  require(i != j && i < s.beta.size() && j < s.beta.size(), Err::IndexMismatch, "bad B2 positions");
  B2Result out;
  const CharVec& b1 = s.beta[i];
  const CharVec& b2 = s.beta[j];
  if (!(b1 == b2)) {
    for (int which = 0; which < 2; ++which) {
      Symbol t = s;
      const CharVec& keep = which == 0 ? b1 : b2;
      const CharVec& other = which == 0 ? b2 : b1;
      t.beta[i] = keep;
      t.beta[j] = char_sub(other, keep);
      std::sort(t.beta.begin(), t.beta.end());
      validate_symbol(ctx, t);
      out.theta1.push_back(std::move(t));
    }
  }
  CharVec b = char_sub(b1, b2);
  if (b.is_zero()) {
    // stabilizer unchanged; drop entry i, adjoin a coordinate with trivial action
    Symbol t = s;
    t.beta.erase(t.beta.begin() + static_cast<long>(i));
    t.K.towers.push_back(char_zero(t.S));
    std::sort(t.beta.begin(), t.beta.end());
    validate_symbol(ctx, t);
    out.theta2 = std::move(t);
    return out;
  }
  Subgroup hbar = char_kernel(s.big, b);
  for (const auto& bk : s.beta)
    if (char_restrict(s.big, bk, hbar).is_zero()) return out;  // theta2 = 0
  std::vector<CharVec> lifts = char_extensions(*ctx.G, s.S, s.big, b);
  if (lifts.empty()) {
    out.representable = false;
    return out;
  }
  Symbol t;
  t.small = s.small;
  t.big = hbar;
  t.S = s.S;
  t.K = s.K;
  t.K.towers.push_back(lifts.front());
  for (size_t k = 0; k < s.beta.size(); ++k) {
    if (k == i) continue;
    t.beta.push_back(char_restrict(s.big, s.beta[k], hbar));
  }
  std::sort(t.beta.begin(), t.beta.end());
  for (const auto& c : s.gamma) t.gamma.push_back(char_restrict(s.big, c, hbar));
  t.prov = s.prov;
  validate_symbol(ctx, t);
  out.theta2 = std::move(t);
  return out;
}

// ---------------------------------------------------------------------------
// Relation lattice.

struct RelationLattice {
  BurnCtx ctx;
  std::vector<CanonicalSymbol> universe;
  std::map<std::string, int> index;
  std::map<int, std::map<int, BigInt>> pivots;  // leading column -> reduced row
  bool complete = true;  // false when some B2 rows were not representable
  size_t row_count = 0;

  int id_of(const std::string& key) const {
    auto it = index.find(key);
    return it == index.end() ? -1 : it->second;
  }

  void insert_row(std::map<int, BigInt> row) {
    ++row_count;
    while (!row.empty()) {
      // drop explicit zeros
      while (!row.empty() && row.begin()->second == 0) row.erase(row.begin());
      if (row.empty()) return;
      int c = row.begin()->first;
      auto it = pivots.find(c);
      if (it == pivots.end()) {
        if (row.begin()->second < 0)
          for (auto& [k, v] : row) v = -v;
        pivots.emplace(c, std::move(row));
        return;
      }
      std::map<int, BigInt>& p = it->second;
      BigInt a = p.at(c), b = row.at(c);
      // extended gcd
      BigInt x0 = 1, y0 = 0, x1 = 0, y1 = 1, r0 = a, r1 = b;
      while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        BigInt x2 = x0 - q * x1, y2 = y0 - q * y1;
        r0 = r1;
        r1 = r2;
        x0 = x1;
        x1 = x2;
        y0 = y1;
        y1 = y2;
      }
      BigInt g = r0, x = x0, y = y0;  // x*a + y*b = g
      std::map<int, BigInt> newp, newrow;
      BigInt ca = a / g, cb = b / g;
      auto acc = [](std::map<int, BigInt>& m, int k, const BigInt& v) {
        if (v == 0) return;
        auto r = m.emplace(k, v);
        if (!r.second) {
          r.first->second += v;
          if (r.first->second == 0) m.erase(r.first);
        }
      };
      for (const auto& [k, v] : p) {
        acc(newp, k, x * v);
        acc(newrow, k, -cb * v);
      }
      for (const auto& [k, v] : row) {
        acc(newp, k, y * v);
        acc(newrow, k, ca * v);
      }
      if (newp.begin()->second < 0)
        for (auto& [k, v] : newp) v = -v;
      it->second = std::move(newp);
      row = std::move(newrow);
    }
  }

  bool member(std::map<int, BigInt> w) const {
    while (!w.empty()) {
      while (!w.empty() && w.begin()->second == 0) w.erase(w.begin());
      if (w.empty()) return true;
      int c = w.begin()->first;
      auto it = pivots.find(c);
      if (it == pivots.end()) return false;
      const BigInt& lead = it->second.at(c);
      if (w.at(c) % lead != 0) return false;
      BigInt q = w.at(c) / lead;
      for (const auto& [k, v] : it->second) {
        auto r = w.emplace(k, -q * v);
        if (!r.second) {
          r.first->second -= q * v;
          if (r.first->second == 0) w.erase(r.first);
        }
      }
    }
    return true;
  }
};

namespace detail {

inline size_t universe_cap() {
  if (const char* s = std::getenv("BURNCLASS_UNIVERSE_CAP")) {
    long v = std::atol(s);
    if (v > 0) return static_cast<size_t>(v);
  }
  return 20000;
}

/// All valid beta multisets of the given length for (small <= big): nonzero
/// characters of big, trivial on small, jointly cutting big down to small.
inline std::vector<std::vector<CharVec>> beta_variations(const BurnCtx& ctx, const Subgroup& small,
                                                         const Subgroup& big, size_t len) {
  std::vector<CharVec> pool;
  for (const auto& c : all_chars(*ctx.G, big)) {
    if (c.is_zero()) continue;
    if (!char_restrict(big, c, small).is_zero()) continue;
    pool.push_back(c);
  }
  std::vector<std::vector<CharVec>> out;
  std::vector<CharVec> cur;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (cur.size() == len) {
      Subgroup ker = big;
      for (const auto& c : cur) ker = char_kernel(ker, char_restrict(big, c, ker));
      if (ker == small) out.push_back(cur);
      return;
    }
    for (size_t p = start; p < pool.size(); ++p) {
      cur.push_back(pool[p]);
      rec(p);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace detail

/// Build the relation lattice over the closure of the seed supports: the
/// universe is closed under B1/B2 outputs, and enriched by all beta variations
/// of each (H, H', Y0, K) combination present (needed so that cancellations
/// that route through neighbouring symbols are visible to the lattice).
inline RelationLattice build_relation_lattice(const BurnCtx& ctx,
                                              const std::vector<const ClassVector*>& seeds,
                                              bool with_variations = true) {
  RelationLattice L;
  L.ctx = ctx;
  auto add_symbol = [&](const CanonicalSymbol& c) -> int {
    auto it = L.index.find(c.key);
    if (it != L.index.end()) return it->second;
    require(L.universe.size() < detail::universe_cap(), Err::UniverseBoundExceeded,
            "relation universe exceeds cap");
    int id = static_cast<int>(L.universe.size());
    L.universe.push_back(c);
    L.index.emplace(c.key, id);
    return id;
  };

  std::vector<int> work;
  for (const ClassVector* s : seeds) {
    require(s->ctx == ctx, Err::ContextMismatch, "seed in wrong context");
    for (const auto& [k, term] : s->terms()) {
      CanonicalSymbol c{term.first, k};
      size_t before = L.universe.size();
      int id = add_symbol(c);
      if (L.universe.size() > before) work.push_back(id);
    }
  }

  std::set<std::string> variation_done;  // per (small,big,S,K,|beta|,gamma)
  size_t wi = 0;
  std::vector<int> prelim = work;
  while (wi < prelim.size()) {
    int id = prelim[wi++];
    CanonicalSymbol cur = L.universe[static_cast<size_t>(id)];
    const Symbol& s = cur.sym;
    if (s.beta.size() < 2) continue;
    if (with_variations) {
      std::string vk = detail::symbol_struct_key(s);
      // strip the beta part from the variation key: keep groups + gamma + desc
      std::string dk = detail::desc_key(ctx, s.S, s.K);
      std::string base;
      {
        Symbol probe = s;
        probe.beta.clear();
        base = detail::symbol_struct_key(probe) + dk + "#" + std::to_string(s.beta.size());
      }
      if (variation_done.insert(base).second) {
        for (auto& beta : detail::beta_variations(ctx, s.small, s.big, s.beta.size())) {
          Symbol v = s;
          v.beta = std::move(beta);
          std::sort(v.beta.begin(), v.beta.end());
          validate_symbol(ctx, v);
          CanonicalSymbol c = canonicalize(ctx, v);
          size_t before = L.universe.size();
          int nid = add_symbol(c);
          if (L.universe.size() > before) prelim.push_back(nid);
        }
      }
    }
    // closure under B2 outputs
    for (size_t i = 0; i < s.beta.size(); ++i)
      for (size_t j = i + 1; j < s.beta.size(); ++j) {
        B2Result r = b2_apply(ctx, s, i, j);
        if (!r.representable) continue;
        auto push = [&](const Symbol& t) {
          CanonicalSymbol c = canonicalize(ctx, t);
          size_t before = L.universe.size();
          int nid = add_symbol(c);
          if (L.universe.size() > before) prelim.push_back(nid);
        };
        for (const Symbol& t : r.theta1) push(t);
        if (r.theta2) push(*r.theta2);
      }
  }

  // relation rows over the closed universe
  for (size_t id = 0; id < L.universe.size(); ++id) {
    const Symbol& s = L.universe[id].sym;
    if (s.beta.size() < 2) continue;
    if (b1_applies(s)) {
      std::map<int, BigInt> row;
      row[static_cast<int>(id)] = 1;
      L.insert_row(std::move(row));
    }
    for (size_t i = 0; i < s.beta.size(); ++i)
      for (size_t j = i + 1; j < s.beta.size(); ++j) {
        B2Result r = b2_apply(ctx, s, i, j);
        if (!r.representable) {
          L.complete = false;
          continue;
        }
        std::map<int, BigInt> row;
        auto acc = [&](const Symbol& t, long long c) {
          CanonicalSymbol cs = canonicalize(ctx, t);
          int tid = L.id_of(cs.key);
          require(tid >= 0, Err::Internal, "B2 output escaped the closed universe");
          row[tid] += c;
          if (row[tid] == 0) row.erase(tid);
        };
        row[static_cast<int>(id)] = 1;
        for (const Symbol& t : r.theta1) acc(t, -1);
        if (r.theta2) acc(*r.theta2, -1);
        L.insert_row(std::move(row));
      }
  }
  return L;
}

inline bool lattice_contains(const RelationLattice& L, const ClassVector& v) {
  std::map<int, BigInt> w;
  for (const auto& [k, term] : v.terms()) {
    int id = L.id_of(k);
    if (id < 0) return false;  // symbol outside the universe cannot cancel
    w[id] = term.second;
  }
  return L.member(std::move(w));
}

// ---------------------------------------------------------------------------
// Incompressibility certificates.

/// Quotient of s by the normal subgroup ker (must be normal in s), as an
/// abstract group for structure tests.
inline GroupRef quotient_of_subgroup(const GroupRef& G, const Subgroup& s, const Subgroup& ker) {
  std::map<int, int> coset_of;
  std::vector<int> reps;
  for (int x : s.elems) {
    if (coset_of.count(x)) continue;
    int r = static_cast<int>(reps.size());
    for (int c : ker.elems) coset_of[G->mul[x][c]] = r;
    reps.push_back(x);
  }
  int q = static_cast<int>(reps.size());
  std::vector<std::vector<int>> table(q, std::vector<int>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) table[i][j] = coset_of.at(G->mul[reps[i]][reps[j]]);
  return group_from_table(std::move(table));
}

inline bool is_dihedral_type(const FiniteGroup& Q) {
  int n = Q.n;
  if (n % 2 != 0) return false;
  int m = n / 2;
  for (int x = 0; x < n; ++x) {
    if (Q.elem_order[x] != m) continue;
    Subgroup c = closure(Q, {x});
    for (int y = 0; y < n; ++y) {
      if (c.contains(y)) continue;
      if (Q.elem_order[y] != 2) continue;
      // y x y^{-1} = x^{-1}
      if (Q.conj(y, x) == Q.inv[x]) return true;
    }
  }
  return false;
}

inline std::multiset<int> order_signature(const FiniteGroup& Q) {
  return std::multiset<int>(Q.elem_order.begin(), Q.elem_order.end());
}

/// Does the abstract group embed into PGL_2 (i.e. act faithfully on P^1)?
/// Cyclic, dihedral (including the Klein group), A4, S4, A5.
inline bool acts_on_p1(const FiniteGroup& Q) {
  for (int x = 0; x < Q.n; ++x)
    if (Q.elem_order[x] == Q.n) return true;  // cyclic
  if (is_dihedral_type(Q)) return true;
  std::multiset<int> sig = order_signature(Q);
  auto mk = [](std::initializer_list<std::pair<int, int>> spec) {
    std::multiset<int> m;
    for (auto [o, c] : spec)
      for (int i = 0; i < c; ++i) m.insert(o);
    return m;
  };
  if (Q.n == 12 && sig == mk({{1, 1}, {2, 3}, {3, 8}})) return true;                 // A4
  if (Q.n == 24 && sig == mk({{1, 1}, {2, 9}, {3, 8}, {4, 6}})) return true;         // S4
  if (Q.n == 60 && sig == mk({{1, 1}, {2, 15}, {3, 20}, {5, 24}})) return true;      // A5
  return false;
}

/// Kernel of the S-action on the field component.
inline Subgroup field_action_kernel(const BurnCtx& ctx, const Symbol& s) {
  GroupRef anchor = anchor_group(ctx.G);
  Subgroup lift = anchor_lift_subgroup(ctx.G, s.S);
  Subgroup ker;
  for (size_t si = 0; si < s.S.elems.size(); ++si) {
    int g = s.S.elems[si];
    bool trivial = true;
    for (const auto& t : s.K.towers)
      if (t.v[si] != 0) trivial = false;
    if (trivial && !s.K.cones.empty()) trivial = false;  // conservative for cones
    if (trivial) {
      int x = anchor_lift_elem(ctx.G, g);
      for (const auto& f : s.K.proj) {
        const Matrix& m = f.mats[static_cast<size_t>(
            std::lower_bound(lift.elems.begin(), lift.elems.end(), x) - lift.elems.begin())];
        // projectively trivial <=> scalar matrix
        Cyc d = m.at(0, 0);
        for (int r = 0; r < f.dim && trivial; ++r)
          for (int c = 0; c < f.dim && trivial; ++c)
            trivial = (r == c) ? (m.at(r, c) == d) : m.at(r, c).is_zero();
      }
    }
    if (trivial) ker.elems.push_back(g);
  }
  return ker;
}

/// The divisor-symbol incompressibility certificate. n = 2: the effective
/// acting group must not be cyclic (all our function fields are rational).
/// n = 3: either the acting group has no faithful P^1-action at all, or the
/// descriptor is a linear P^2 on which some Klein four-subgroup has a fixed
/// point (a faithful Klein action on P^1 never has one).
inline bool is_certified_incompressible(const BurnCtx& ctx, const Symbol& s) {
  require(ctx.I.empty(), Err::UnsupportedDimension, "incompressibility needs an unindexed context");
  require(ctx.n == 2 || ctx.n == 3, Err::UnsupportedDimension,
          "incompressibility implemented for n in {2,3}");
  if (s.K.trdeg() != ctx.n - 1) return false;
  if (s.beta.size() != 1 || s.big.order() == 1) return false;
  if (!is_cyclic(*ctx.G, s.big)) return false;
  if (!s.K.cones.empty()) return false;  // conservative
  Subgroup ker = field_action_kernel(ctx, s);
  GroupRef Y = quotient_of_subgroup(ctx.G, s.S, ker);
  if (ctx.n == 2) {
    // compressible iff Y is cyclic (rational function field in one variable)
    for (int x = 0; x < Y->n; ++x)
      if (Y->elem_order[x] == Y->n) return false;
    return true;
  }
  // n = 3
  if (!acts_on_p1(*Y)) return true;
  // Klein fixed-point discrepancy on a linear P^2
  if (s.K.proj.size() == 1 && s.K.proj[0].dim == 3 && s.K.towers.empty()) {
    GroupRef anchor = anchor_group(ctx.G);
    Subgroup lift = anchor_lift_subgroup(ctx.G, s.S);
    FieldRef F = s.K.proj[0].mats[0].a[0].field();
    Representation rho;
    rho.G = anchor;
    rho.acting = lift;
    rho.dim = 3;
    rho.F = F;
    rho.mats = s.K.proj[0].mats;
    for (const auto& sub : all_subgroups(ctx.G).all) {
      if (!s.S.contains(sub)) continue;
      if (!sub.contains(ker)) continue;
      if (sub.order() != 4 * ker.order()) continue;
      // sub/ker must be a Klein group: exponent 2 in the quotient
      bool klein = true;
      for (int x : sub.elems)
        if (!ker.contains(ctx.G->mul[x][x])) klein = false;
      if (!klein) continue;
      // common eigenline of the lift of sub
      Subgroup plift = anchor_lift_subgroup(ctx.G, sub);
      std::vector<Subspace> parts{Subspace::full(3, F)};
      bool have_line = false;
      // intersect eigenspaces greedily: a Q-fixed point of P(W) is a common
      // eigenline; enumerate eigenchar combinations via successive refinement
      std::function<void(size_t, Subspace)> rec = [&](size_t idx, Subspace cur) {
        if (have_line || cur.dim() == 0) return;
        if (idx == plift.elems.size()) {
          if (cur.dim() >= 1) have_line = true;
          return;
        }
        int x = plift.elems[idx];
        int ord = anchor->elem_order[x];
        for (int k = 0; k < ord; ++k) {
          Subgroup single{{x}};
          CharVec chi;
          chi.v = {mod1(Rat(k, ord))};
          Subspace e = eigenspace(rho, single, chi);
          Subspace cut = subspace_intersect(cur, e, F);
          if (cut.dim() > 0) rec(idx + 1, cut);
        }
      };
      rec(0, Subspace::full(3, F));
      if (have_line) return true;
    }
  }
  return false;
}

/// Projection of a class to its certified-incompressible divisor part.
inline ClassVector incompressible_part(const ClassVector& u) {
  ClassVector out(u.ctx);
  for (const auto& [k, term] : u.terms())
    if (is_certified_incompressible(u.ctx, term.first))
      out.add_canonical(CanonicalSymbol{term.first, k}, term.second);
  return out;
}

// ---------------------------------------------------------------------------
// Verdicts.

enum class Verdict { EqualModRelations, DistinctCertified, DistinctInModel };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::EqualModRelations: return "EqualModRelations";
    case Verdict::DistinctCertified: return "DistinctCertified";
    case Verdict::DistinctInModel: return "DistinctInModel";
  }
  return "?";
}

struct EqualityReport {
  Verdict verdict = Verdict::DistinctInModel;
  std::string note;
  std::vector<std::string> witnesses;  // incompressible keys separating u and v
  size_t universe_size = 0;
  size_t relation_rows = 0;
};

inline EqualityReport classes_equal(const ClassVector& u, const ClassVector& v) {
  require(u.ctx == v.ctx, Err::ContextMismatch, "classes in different ambient groups");
  EqualityReport rep;
  ClassVector diff = class_difference(u, v);
  if (diff.empty()) {
    rep.verdict = Verdict::EqualModRelations;
    rep.note = "identical canonical forms";
    return rep;
  }
  if (u.ctx.I.empty() && (u.ctx.n == 2 || u.ctx.n == 3)) {
    ClassVector iu = incompressible_part(u), iv = incompressible_part(v);
    ClassVector idiff = class_difference(iu, iv);
    if (!idiff.empty()) {
      rep.verdict = Verdict::DistinctCertified;
      rep.note = "incompressible divisor parts differ";
      for (const auto& [k, term] : idiff.terms()) rep.witnesses.push_back(k);
      return rep;
    }
  }
  try {
    RelationLattice L = build_relation_lattice(u.ctx, {&u, &v});
    rep.universe_size = L.universe.size();
    rep.relation_rows = L.row_count;
    if (lattice_contains(L, diff)) {
      rep.verdict = Verdict::EqualModRelations;
      rep.note = L.complete ? "difference lies in the relation lattice"
                            : "difference lies in the (partially instantiated) relation lattice";
    } else {
      rep.verdict = Verdict::DistinctInModel;
      rep.note = "difference not covered by instantiated relations";
    }
  } catch (const Error& e) {
    if (e.code() != Err::UniverseBoundExceeded) throw;
    rep.verdict = Verdict::DistinctInModel;
    rep.note = "relation universe capped before closure";
  }
  return rep;
}

}  // namespace burn
