#pragma once

// Homomorphisms between the indexed groups: psi (shift indexed characters into
// the normal sequence), tau (re-index the line-bundle basis), omega (pass to
// bundle total spaces), eta (quotient out the pairing subgroup), induction,
// and the filtration projections.

#include "relations.hpp"

#include <algorithm>
#include <optional>

namespace burn {

namespace detail {
inline size_t gamma_pos(const BurnCtx& ctx, int index) {
  auto it = std::lower_bound(ctx.I.begin(), ctx.I.end(), index);
  require(it != ctx.I.end() && *it == index, Err::IndexMismatch, "index not in context");
  return static_cast<size_t>(it - ctx.I.begin());
}
}  // namespace detail

/// psi_{I,J}: drop the indices of I \ J, moving their characters into beta and
/// cutting the pairing subgroup by their kernels. A symbol with a vanishing
/// dropped character maps to zero.
inline ClassVector psi(const ClassVector& u, const std::vector<int>& J) {
  const BurnCtx& ctx = u.ctx;
  for (int j : J)
    require(std::binary_search(ctx.I.begin(), ctx.I.end(), j), Err::IndexMismatch,
            "J is not a subset of I");
  BurnCtx out_ctx = make_ctx(ctx.G, ctx.within, ctx.n, J);
  ClassVector out(out_ctx);
  for (const auto& [k, term] : u.terms()) {
    const Symbol& s = term.first;
    Symbol t;
    t.big = s.big;
    t.S = s.S;
    t.K = s.K;
    t.beta = s.beta;
    Subgroup small = s.small;
    bool zero = false;
    for (size_t p = 0; p < ctx.I.size(); ++p) {
      if (std::binary_search(J.begin(), J.end(), ctx.I[p])) {
        t.gamma.push_back(s.gamma[p]);
        if (p < s.prov.size()) t.prov.push_back(s.prov[p]);
        continue;
      }
      if (s.gamma[p].is_zero()) {
        zero = true;
        break;
      }
      small = intersect_subgroups(small, char_kernel(s.big, s.gamma[p]));
      t.beta.push_back(s.gamma[p]);
    }
    if (zero) continue;
    t.small = std::move(small);
    std::sort(t.beta.begin(), t.beta.end());
    validate_symbol(out_ctx, t);
    out.add(t, term.second);
  }
  return out;
}

/// tau_{I,J}: precompose the indexed characters with the basis automorphism
/// that re-sums consecutive line bundles between the retained indices.
inline ClassVector tau(const ClassVector& u, const std::vector<int>& J) {
  const BurnCtx& ctx = u.ctx;
  ClassVector out(ctx);
  for (const auto& [k, term] : u.terms()) {
    const Symbol& s = term.first;
    Symbol t = s;
    t.gamma.clear();
    t.prov.clear();
    for (size_t p = 0; p < ctx.I.size(); ++p) {
      int j = ctx.I[p];
      if (!std::binary_search(J.begin(), J.end(), j)) {
        t.gamma.push_back(s.gamma[p]);
        if (p < s.prov.size()) t.prov.push_back(s.prov[p]);
        continue;
      }
      // sum gamma_i over i in (prev_J(j), j]
      int prev = -1;
      for (int jj : J)
        if (jj < j) prev = std::max(prev, jj);
      CharVec acc = char_zero(s.big);
      int count = 0;
      size_t last_p = p;
      for (size_t q = 0; q < ctx.I.size(); ++q) {
        if (ctx.I[q] > prev && ctx.I[q] <= j) {
          acc = char_add(acc, s.gamma[q]);
          ++count;
          last_p = q;
        }
      }
      t.gamma.push_back(acc);
      GammaProv pr;
      if (count == 1 && last_p < s.prov.size()) pr = s.prov[last_p];
      t.prov.push_back(pr);
    }
    validate_symbol(ctx, t);
    out.add(t, term.second);
  }
  return out;
}

/// omega_{I,J}: pass to the total space of the dropped line bundles. Each drop
/// adjoins the bundle coordinate to the field (a monomial variable when the
/// bundle acts through a character, the tautological cone otherwise) and cuts
/// both subgroups by the kernel of the dropped character. Mirrors the zero
/// case of the blow-up relation: if a beta entry dies on the cut stabilizer
/// the symbol maps to zero.
inline ClassVector omega(const ClassVector& u, const std::vector<int>& J) {
  const BurnCtx& ctx = u.ctx;
  BurnCtx out_ctx = make_ctx(ctx.G, ctx.within, ctx.n, J);
  ClassVector out(out_ctx);
  for (const auto& [k, term] : u.terms()) {
    const Symbol& s = term.first;
    Symbol t;
    t.small = s.small;
    t.big = s.big;
    t.S = s.S;
    t.K = s.K;
    t.beta = s.beta;
    bool zero = false;
    for (size_t p = 0; p < ctx.I.size() && !zero; ++p) {
      if (std::binary_search(J.begin(), J.end(), ctx.I[p])) continue;
      const CharVec& c = s.gamma[p];
      if (c.is_zero()) {
        t.K.towers.push_back(char_zero(t.S));
        continue;
      }
      t.small = intersect_subgroups(t.small, char_kernel(s.big, c));
      t.big = intersect_subgroups(t.big, char_kernel(s.big, c));
      const GammaProv* pr = p < s.prov.size() ? &s.prov[p] : nullptr;
      if (pr && pr->s_char) {
        t.K.towers.push_back(*pr->s_char);
      } else if (pr && pr->taut_factor >= 0) {
        t.K.cones.push_back(pr->taut_factor);
      } else {
        // fall back to a character lift of c when one exists
        std::vector<CharVec> lifts = char_extensions(*ctx.G, s.S, s.big, c);
        require(!lifts.empty(), Err::IndexMismatch,
                "dropped index has no bundle provenance and no character lift");
        t.K.towers.push_back(lifts.front());
      }
    }
    if (zero) continue;
    // restrict remaining data to the cut stabilizer
    Symbol r;
    r.small = t.small;
    r.big = t.big;
    r.S = t.S;
    r.K = t.K;
    for (const auto& b : s.beta) {
      CharVec rb = char_restrict(s.big, b, r.big);
      if (rb.is_zero()) {
        zero = true;
        break;
      }
      r.beta.push_back(rb);
    }
    if (zero) continue;
    for (size_t p = 0; p < ctx.I.size(); ++p) {
      if (!std::binary_search(J.begin(), J.end(), ctx.I[p])) continue;
      r.gamma.push_back(char_restrict(s.big, s.gamma[p], r.big));
      if (p < s.prov.size()) r.prov.push_back(s.prov[p]);
    }
    std::sort(r.beta.begin(), r.beta.end());
    validate_symbol(out_ctx, r);
    out.add(r, term.second);
  }
  return out;
}

/// Induction: reinterpret the class in a larger context subgroup of the same
/// group (the induced-algebra convention makes this the identity on symbol
/// data; only canonicalization changes).
inline ClassVector induct(const ClassVector& u, const Subgroup& bigger_within) {
  require(bigger_within.contains(u.ctx.within), Err::ContextMismatch,
          "induction target must contain the source subgroup");
  BurnCtx out_ctx = make_ctx(u.ctx.G, bigger_within, u.ctx.n, u.ctx.I);
  ClassVector out(out_ctx);
  for (const auto& [k, term] : u.terms()) out.add(term.first, term.second);
  return out;
}

/// Transport a whole class by conjugation (used when recursion data is stored
/// for one chain representative but needed at a conjugate).
inline ClassVector transport_class(const ClassVector& u, int g) {
  ClassVector out(u.ctx);
  for (const auto& [k, term] : u.terms()) out.add(transport_symbol(u.ctx, term.first, g), term.second);
  return out;
}

// ---------------------------------------------------------------------------
// eta: quotient by the pairing subgroup.

struct EtaTarget {
  GroupRef Z;      // Z_G(H)/H as an explicit group
  BurnCtx ctx;
};

/// Group object for a subgroup (element indices renumbered, parent link kept).
inline GroupRef group_of_subgroup(const GroupRef& G, const Subgroup& s) {
  if (s.order() == G->n) return G;
  int q = s.order();
  std::vector<std::vector<int>> table(q, std::vector<int>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      int prod = G->mul[s.elems[static_cast<size_t>(i)]][s.elems[static_cast<size_t>(j)]];
      auto it = std::lower_bound(s.elems.begin(), s.elems.end(), prod);
      table[i][j] = static_cast<int>(it - s.elems.begin());
    }
  auto g = std::make_shared<FiniteGroup>();
  g->n = q;
  g->mul = std::move(table);
  auto idit = std::lower_bound(s.elems.begin(), s.elems.end(), G->id);
  g->id = static_cast<int>(idit - s.elems.begin());
  detail::finish_group(*g);
  for (int i = 0; i < q; ++i) g->generators.push_back(i);
  g->parent = G;
  g->parent_to_this.assign(G->n, -1);
  for (int i = 0; i < q; ++i) g->parent_to_this[s.elems[static_cast<size_t>(i)]] = i;
  g->coset_rep = s.elems;
  return g;
}

/// eta_I on Burn_{n,I}(G, H): (H <= H', Z' on K, beta, gamma) maps to
/// (H'/H, Z' on K, beta) in Burn_{n-|I|}(Z_G(H)/H).
inline std::pair<ClassVector, EtaTarget> eta(const ClassVector& u, const Subgroup& H) {
  const BurnCtx& ctx = u.ctx;
  require(!ctx.I.empty(), Err::IndexMismatch, "eta needs a nonempty index set");
  Subgroup zsub = centralizer(*ctx.G, ctx.within, H);
  GroupRef zg = group_of_subgroup(ctx.G, zsub);
  Subgroup h_in_z;
  for (int x : H.elems)
    h_in_z.elems.push_back(zg.get() == ctx.G.get() ? x : zg->parent_to_this[static_cast<size_t>(x)]);
  std::sort(h_in_z.elems.begin(), h_in_z.elems.end());
  GroupRef Z = quotient_group(zg, h_in_z);
  EtaTarget tgt;
  tgt.Z = Z;
  tgt.ctx = make_ctx(Z, full_subgroup(*Z), ctx.n - static_cast<int>(ctx.I.size()), {});
  ClassVector out(tgt.ctx);
  // identity-aware maps: group_of_subgroup / quotient_group may return their
  // inputs unchanged, in which case the parent tables are absent
  auto to_zg = [&](int x) {
    if (zg.get() == ctx.G.get()) return x;
    int m = zg->parent_to_this[static_cast<size_t>(x)];
    require(m >= 0, Err::Internal, "symbol data outside the centralizer");
    return m;
  };
  auto z_rep_in_g = [&](int e) {
    int z = (Z.get() == zg.get()) ? e : Z->coset_rep[static_cast<size_t>(e)];
    return (zg.get() == ctx.G.get()) ? z : zg->coset_rep[static_cast<size_t>(z)];
  };
  auto push_down = [&](const Subgroup& s) {
    Subgroup mid;
    for (int x : s.elems) mid.elems.push_back(to_zg(x));
    std::sort(mid.elems.begin(), mid.elems.end());
    if (Z.get() == zg.get()) return mid;
    return image_subgroup(*Z, mid);
  };
  for (const auto& [k, term] : u.terms()) {
    const Symbol& s = term.first;
    require(s.small == H || are_conjugate(*ctx.G, ctx.within, s.small, H), Err::ContextMismatch,
            "class not supported on the requested pairing subgroup");
    Symbol moved = s;
    if (!(s.small == H)) {
      // move the term onto the chosen representative
      bool done = false;
      for (int g : ctx.within.elems) {
        if (conjugate_subgroup(*ctx.G, s.small, g) == H) {
          moved = transport_symbol(ctx, s, g);
          done = true;
          break;
        }
      }
      require(done, Err::Internal, "transport to pairing representative failed");
    }
    Symbol t;
    t.small = trivial_subgroup(*Z);
    t.big = push_down(moved.big);
    t.S = push_down(moved.S);
    t.K.proj = moved.K.proj;  // anchor-level matrices carry over unchanged
    t.K.cones = moved.K.cones;
    for (const auto& tow : moved.K.towers) {
      // towers vanish on big >= H, hence descend along both steps
      CharVec out_t;
      for (int e : t.S.elems) out_t.v.push_back(char_value(moved.S, tow, z_rep_in_g(e)));
      t.K.towers.push_back(out_t);
    }
    for (const auto& b : moved.beta) {
      CharVec nb;
      for (int e : t.big.elems) nb.v.push_back(char_value(moved.big, b, z_rep_in_g(e)));
      t.beta.push_back(nb);
    }
    std::sort(t.beta.begin(), t.beta.end());
    validate_symbol(tgt.ctx, t);
    out.add(t, term.second);
  }
  return {out, tgt};
}

// ---------------------------------------------------------------------------
// Filtration projections.

struct FiltrationSet {
  std::vector<std::pair<Subgroup, Subgroup>> pairs;  // (H, S) with H <= S <= Z(H)

  bool contains(const GroupRef& G, const Subgroup& within, const Subgroup& h,
                const Subgroup& s) const {
    for (int g : within.elems) {
      Subgroup hc = conjugate_subgroup(*G, h, g);
      Subgroup sc = conjugate_subgroup(*G, s, g);
      for (const auto& [ph, ps] : pairs)
        if (ph == hc && ps == sc) return true;
    }
    return false;
  }
};

/// Strict closure condition enabling the reduced presentation: for (H, S) in
/// the set and g in S, the pair obtained by absorbing g into the stabilizer
/// must again lie in the set. Not every useful filtration satisfies it (the
/// n-dimensional-part extraction does not), so the projection itself only
/// requires closure under conjugation.
inline void validate_filtration_strict(const BurnCtx& ctx, const FiltrationSet& F) {
  for (const auto& [h, s] : F.pairs) {
    for (int g : s.elems) {
      std::vector<int> gens = h.elems;
      gens.push_back(g);
      Subgroup h2 = closure(*ctx.G, gens);
      Subgroup z2 = centralizer(*ctx.G, ctx.within, h2);
      Subgroup s2cap = intersect_subgroups(s, z2);
      std::vector<int> s2gens = s2cap.elems;
      for (int x : h2.elems) s2gens.push_back(x);
      Subgroup s2 = closure(*ctx.G, s2gens);
      require(F.contains(ctx.G, ctx.within, h2, s2), Err::FiltrationNotClosed,
              "filtration set not closed under stabilizer absorption");
    }
  }
}

inline void validate_filtration_conjugation(const BurnCtx& ctx, const FiltrationSet& F) {
  for (const auto& [h, s] : F.pairs)
    for (int g : ctx.within.elems) {
      Subgroup hc = conjugate_subgroup(*ctx.G, h, g);
      Subgroup sc = conjugate_subgroup(*ctx.G, s, g);
      bool found = false;
      for (const auto& [ph, ps] : F.pairs)
        if (ph == hc && ps == sc) found = true;
      require(found, Err::FiltrationNotClosed, "filtration set not closed under conjugation");
    }
}

inline ClassVector project_filtration(const ClassVector& u, const FiltrationSet& F) {
  validate_filtration_conjugation(u.ctx, F);
  ClassVector out(u.ctx);
  for (const auto& [k, term] : u.terms()) {
    const Symbol& s = term.first;
    if (F.contains(u.ctx.G, u.ctx.within, s.big, s.S))
      out.add_canonical(CanonicalSymbol{term.first, k}, term.second);
  }
  return out;
}

/// Product with a trivially acted projective line (the No-Name direction).
inline ClassVector times_trivial_line(const ClassVector& u) {
  BurnCtx out_ctx = make_ctx(u.ctx.G, u.ctx.within, u.ctx.n + 1, u.ctx.I);
  ClassVector out(out_ctx);
  for (const auto& [k, term] : u.terms()) {
    Symbol t = term.first;
    t.K.towers.push_back(char_zero(t.S));
    validate_symbol(out_ctx, t);
    out.add(t, term.second);
  }
  return out;
}

}  // namespace burn
