#pragma once

// Fixed loci on (products of) projective wonderful models, described purely
// combinatorially: a piece is a tuple of per-factor chains plus eigencharacter
// choices along the flag levels; pieces glue across a boundary divisor exactly
// when its character restricts trivially to the acting subgroup. Component
// data (function-field descriptor, normal characters, line-bundle characters)
// is read off the shallowest piece of each glue class.

#include "arrangement.hpp"
#include "symbols.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace burn {

struct ModelFactor {
  Representation rep;  // of the model group N on W_f
  Lattice lattice;     // projective lattice of this factor
  // memoized flag quotients, keyed by (subgroup, chain)
  std::shared_ptr<std::map<std::string, std::vector<QuotientPack>>> pack_cache =
      std::make_shared<std::map<std::string, std::vector<QuotientPack>>>();
};

struct ProductModel {
  GroupRef G;          // master group (context for all subgroup data)
  Subgroup N;          // acting subgroup
  std::vector<ModelFactor> factors;
  Subgroup delta;              // generic stabilizer: scalar on every factor
  std::vector<CharVec> delta_factor_chars;  // per factor, the scalar char of delta
  int dim = 0;                 // sum of (dim W_f - 1)

  int factor_count() const { return static_cast<int>(factors.size()); }
};

inline ProductModel make_product_model(const GroupRef& G, const Subgroup& N,
                                       const std::vector<Representation>& factor_reps) {
  ProductModel m;
  m.G = G;
  m.N = N;
  for (const auto& rho : factor_reps) {
    ModelFactor f;
    f.rep = restrict_rep(rho, N);
    f.lattice = projective_lattice(rho, N);
    m.dim += rho.dim - 1;
    m.factors.push_back(std::move(f));
  }
  Subgroup delta;
  std::vector<std::vector<Rat>> vals(m.factors.size());
  for (int g : N.elems) {
    bool ok = true;
    std::vector<Rat> row;
    for (const auto& f : m.factors) {
      Subgroup single{{g}};
      auto [sg, sc] = scalar_stabilizer(f.rep, single, Subspace::full(f.rep.dim, f.rep.F));
      if (sg.order() != 1) {
        ok = false;
        break;
      }
      row.push_back(sc.v[0]);
    }
    if (!ok) continue;
    delta.elems.push_back(g);
    for (size_t fi = 0; fi < row.size(); ++fi) vals[fi].push_back(row[fi]);
  }
  m.delta = std::move(delta);
  require(is_abelian(*G, m.delta), Err::AssumptionViolated, "generic stabilizer not abelian");
  for (auto& v : vals) {
    CharVec c;
    c.v = std::move(v);
    m.delta_factor_chars.push_back(std::move(c));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Pieces.

struct Piece {
  std::vector<std::vector<int>> chains;       // per factor: lattice element ids
  std::vector<std::vector<CharVec>> levels;   // per factor: A-chars per flag level
};

inline std::string piece_key(const Piece& p) {
  std::string s;
  for (size_t f = 0; f < p.chains.size(); ++f) {
    s += "f" + std::to_string(f) + "[";
    for (int c : p.chains[f]) s += std::to_string(c) + ",";
    s += "|";
    for (const auto& l : p.levels[f]) s += detail::char_str(l) + ";";
    s += "]";
  }
  return s;
}

namespace fl_detail {

inline bool fixes_pair(const Lattice& L, int elem, int g) {
  const LatticeElem& e = L.elems[static_cast<size_t>(elem)];
  if (conjugate_subgroup(*L.G, e.gamma, g) != e.gamma) return false;
  if (L.projective && !(char_transport(*L.G, e.gamma, e.eps, g) == e.eps)) return false;
  return true;
}

/// Quotient packs along the flag of a chain, for a subgroup preserving the
/// chain spaces. The quotient coordinates depend only on the spaces, so packs
/// built for different subgroups are compatible.
inline const std::vector<QuotientPack>& chain_packs(const ModelFactor& f, const Subgroup& s,
                                                    const std::vector<int>& chain) {
  std::string key;
  for (int e : s.elems) key += std::to_string(e) + ",";
  key += "|";
  for (int c : chain) key += std::to_string(c) + ",";
  auto it = f.pack_cache->find(key);
  if (it != f.pack_cache->end()) return it->second;
  std::vector<QuotientPack> out;
  FieldRef F = f.rep.F;
  Subspace prev = Subspace::zero(f.rep.dim, F);
  for (size_t i = 0; i <= chain.size(); ++i) {
    Subspace next = (i < chain.size()) ? f.lattice.elems[static_cast<size_t>(chain[i])].space
                                       : Subspace::full(f.rep.dim, F);
    out.push_back(quotient_pack(f.rep, s, prev, next));
    prev = next;
  }
  return f.pack_cache->emplace(std::move(key), std::move(out)).first->second;
}

/// The lattice pair (or bottom) matching the scalar stabilizer of an ambient
/// subspace; -2 encodes the bottom (scalar subgroup only), -1 a non-element.
/// The scalar stabilizer of a subspace equals the pair of the minimal lattice
/// element whose eigenspace contains it (the containing elements are closed
/// under intersection); when none does, it is the bottom pair.
inline int sigma_pair_id(const ModelFactor& f, const Subgroup& N, const Subspace& amb) {
  (void)N;
  int best = -2;
  int best_dim = f.rep.dim + 1;
  for (size_t i = 0; i < f.lattice.elems.size(); ++i) {
    const LatticeElem& e = f.lattice.elems[i];
    if (e.space.dim() < amb.dim()) continue;
    if (e.space.dim() >= best_dim) continue;
    if (e.space.contains(amb)) {
      best = static_cast<int>(i);
      best_dim = e.space.dim();
    }
  }
  return best;
}

/// Eigenspace of chi in a pack's quotient for the subgroup A.
inline Subspace pack_eigenspace(const QuotientPack& pack, const Subgroup& A, const CharVec& chi) {
  Representation r = restrict_rep(pack.rep, A);
  return eigenspace(r, A, chi);
}

}  // namespace fl_detail

/// All valid A-fixed pieces of the model (A abelian, contains the generic
/// stabilizer, inside N).
inline std::vector<Piece> enumerate_pieces(const ProductModel& M, const Subgroup& A) {
  require(is_abelian(*M.G, A), Err::NotAbelian, "fixed loci of abelian subgroups only");
  require(M.N.contains(A), Err::NotContainingGenericStabilizer, "subgroup outside the model group");
  require(A.contains(M.delta), Err::NotContainingGenericStabilizer,
          "subgroup must contain the generic stabilizer");
  std::vector<std::vector<std::pair<std::vector<int>, std::vector<std::vector<CharVec>>>>> menu;
  for (const auto& f : M.factors) {
    std::vector<std::pair<std::vector<int>, std::vector<std::vector<CharVec>>>> choices;
    std::vector<std::vector<int>> chains = all_chains(f.lattice);
    chains.push_back({});
    for (const auto& chain : chains) {
      bool ok = true;
      for (int ci : chain)
        for (int a : A.elems) ok = ok && fl_detail::fixes_pair(f.lattice, ci, a);
      if (!ok) continue;
      auto packs = fl_detail::chain_packs(f, A, chain);
      std::vector<std::vector<CharVec>> opts(packs.size());
      bool any = true;
      for (size_t l = 0; l < packs.size() && any; ++l) {
        for (const auto& [chi, e] : eigen_decomposition(packs[l].rep, A)) {
          Subspace amb = lift_quotient_subspace(packs[l], e);
          int want = (l < chain.size()) ? chain[l] : -2;
          if (fl_detail::sigma_pair_id(f, M.N, amb) == want) opts[l].push_back(chi);
        }
        if (opts[l].empty()) any = false;
      }
      if (!any) continue;
      std::vector<std::vector<CharVec>> tuples{{}};
      for (size_t l = 0; l < opts.size(); ++l) {
        std::vector<std::vector<CharVec>> next;
        for (const auto& t : tuples)
          for (const auto& c : opts[l]) {
            auto u = t;
            u.push_back(c);
            next.push_back(std::move(u));
          }
        tuples = std::move(next);
      }
      choices.push_back({chain, std::move(tuples)});
    }
    menu.push_back(std::move(choices));
  }
  std::vector<Piece> out;
  std::function<void(size_t, Piece&)> rec = [&](size_t f, Piece& acc) {
    if (f == M.factors.size()) {
      out.push_back(acc);
      return;
    }
    for (const auto& [chain, tuples] : menu[f])
      for (const auto& t : tuples) {
        acc.chains.push_back(chain);
        acc.levels.push_back(t);
        rec(f + 1, acc);
        acc.chains.pop_back();
        acc.levels.pop_back();
      }
  };
  Piece acc;
  rec(0, acc);
  return out;
}

/// One-step gluing: remove chain element at position pos of factor f when the
/// two adjacent level characters agree on A.
inline std::optional<Piece> glue_up(const Piece& p, size_t f, size_t pos) {
  if (!(p.levels[f][pos] == p.levels[f][pos + 1])) return std::nullopt;
  Piece q = p;
  q.chains[f].erase(q.chains[f].begin() + static_cast<long>(pos));
  q.levels[f].erase(q.levels[f].begin() + static_cast<long>(pos + 1));
  return q;
}

struct ComponentRecord {
  Piece shallow;
  Subgroup gen_stab;
  int dim = 0;
  int piece_count = 0;
};

namespace fl_detail {

/// Elements of N preserving every chain pair of the piece.
inline Subgroup chain_stabilizer(const ProductModel& M, const Piece& p) {
  Subgroup out;
  for (int g : M.N.elems) {
    bool ok = true;
    for (size_t f = 0; f < M.factors.size() && ok; ++f)
      for (int ci : p.chains[f]) ok = ok && fixes_pair(M.factors[f].lattice, ci, g);
    if (ok) out.elems.push_back(g);
  }
  return out;
}

/// Generic stabilizer of a piece: inside the chain stabilizer, the elements
/// acting by a scalar on every chosen level eigenspace.
inline Subgroup piece_generic_stabilizer(const ProductModel& M, const Subgroup& A, const Piece& p) {
  Subgroup nchain = chain_stabilizer(M, p);
  Subgroup out;
  std::vector<std::vector<QuotientPack>> packs;
  for (size_t f = 0; f < M.factors.size(); ++f)
    packs.push_back(chain_packs(M.factors[f], nchain, p.chains[f]));
  for (int g : nchain.elems) {
    bool ok = true;
    Subgroup single{{g}};
    for (size_t f = 0; f < M.factors.size() && ok; ++f)
      for (size_t l = 0; l < packs[f].size() && ok; ++l) {
        Subspace e = pack_eigenspace(packs[f][l], A, p.levels[f][l]);
        Representation gr = restrict_rep(packs[f][l].rep, single);
        auto [sg, sc] = scalar_stabilizer(gr, single, e);
        ok = sg.order() == 1;
      }
    if (ok) out.elems.push_back(g);
  }
  return out;
}

}  // namespace fl_detail

/// Components of the A-fixed locus: glue classes of pieces, each represented
/// by its unique shallowest member.
inline std::vector<ComponentRecord> fixed_components(const ProductModel& M, const Subgroup& A) {
  std::vector<Piece> pieces = enumerate_pieces(M, A);
  std::map<std::string, int> index;
  for (size_t i = 0; i < pieces.size(); ++i) index[piece_key(pieces[i])] = static_cast<int>(i);
  std::vector<int> parent(pieces.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (size_t i = 0; i < pieces.size(); ++i)
    for (size_t f = 0; f < pieces[i].chains.size(); ++f)
      for (size_t pos = 0; pos < pieces[i].chains[f].size(); ++pos) {
        auto up = glue_up(pieces[i], f, pos);
        if (!up) continue;
        auto it = index.find(piece_key(*up));
        if (it != index.end()) parent[static_cast<size_t>(find(static_cast<int>(i)))] = find(it->second);
      }
  std::map<int, std::vector<int>> comps;
  for (size_t i = 0; i < pieces.size(); ++i)
    comps[find(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::vector<ComponentRecord> out;
  for (auto& [root, members] : comps) {
    auto total_len = [&](int i) {
      size_t t = 0;
      for (const auto& c : pieces[static_cast<size_t>(i)].chains) t += c.size();
      return t;
    };
    int best = members.front();
    for (int m : members)
      if (total_len(m) < total_len(best)) best = m;
    int ties = 0;
    for (int m : members) ties += total_len(m) == total_len(best) ? 1 : 0;
    require(ties == 1, Err::Internal, "component has no unique shallowest piece");
    ComponentRecord rec;
    rec.shallow = pieces[static_cast<size_t>(best)];
    rec.piece_count = static_cast<int>(members.size());
    rec.gen_stab = fl_detail::piece_generic_stabilizer(M, A, rec.shallow);
    int d = 0;
    for (size_t f = 0; f < rec.shallow.levels.size(); ++f) {
      auto packs = fl_detail::chain_packs(M.factors[f], A, rec.shallow.chains[f]);
      for (size_t l = 0; l < packs.size(); ++l)
        d += fl_detail::pack_eigenspace(packs[l], A, rec.shallow.levels[f][l]).dim() - 1;
    }
    rec.dim = d;
    out.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Class assembly.

/// Conjugate a piece by an element of N: chains map to conjugated lattice
/// elements and the level characters are transported along the conjugation of
/// the acting subgroup.
inline Piece conjugate_piece(const ProductModel& M, const Piece& p, const Subgroup& A, int g) {
  Piece q = p;
  // V.g = V_{g^{-1} Gamma g}: the chain map conjugates subgroups by g^{-1},
  // so the characters must be transported the same way
  for (size_t f = 0; f < p.chains.size(); ++f) {
    q.chains[f] = conjugate_chain(M.factors[f].lattice, p.chains[f], g);
    for (auto& chi : q.levels[f]) chi = char_transport(*M.G, A, chi, M.G->inv[g]);
  }
  return q;
}

/// The indexed class of the product model with the twisted tautological-bundle
/// basis (sign = -1 for O(-1), +1 for the dual variant). The class lives in
/// Burn_{n, I}(N, delta) where n = dim + |I| and I = {0, .., #factors-1}.
inline ClassVector assemble_class(const ProductModel& M, int sign = -1) {
  std::vector<int> I(M.factors.size());
  for (size_t i = 0; i < I.size(); ++i) I[i] = static_cast<int>(i);
  BurnCtx ctx = make_ctx(M.G, M.N, M.dim + static_cast<int>(I.size()), I);
  ClassVector out(ctx);

  // Lemma-style precondition: the twisted pairing on delta generates its dual
  {
    std::vector<CharVec> pairing;
    for (size_t j = 0; j < M.factors.size(); ++j) {
      CharVec c = M.delta_factor_chars[j];
      if (j > 0) c = char_sub(c, M.delta_factor_chars[j - 1]);
      pairing.push_back(c);
    }
    require(chars_generate_dual(*M.G, M.delta, pairing), Err::AssumptionViolated,
            "line-bundle characters do not generate the dual of the generic stabilizer");
  }

  Subgroup zdelta = centralizer(*M.G, M.N, M.delta);
  // abelian subgroups delta <= A <= Z_N(delta), up to Z_N(delta)-conjugacy
  std::vector<Subgroup> reps;
  {
    std::set<std::vector<int>> seen;
    for (const auto& s : all_subgroups(M.G).all) {
      if (!zdelta.contains(s) || !s.contains(M.delta)) continue;
      if (!is_abelian(*M.G, s)) continue;
      Subgroup canon = canonical_conjugate(*M.G, zdelta, s);
      if (seen.insert(canon.elems).second) reps.push_back(canon);
    }
  }

  for (const Subgroup& A : reps) {
    std::vector<ComponentRecord> comps = fixed_components(M, A);
    // Keep components with generic stabilizer exactly A, one symbol per orbit
    // under the transporters normalizing A. (Together with the outer sum over
    // subgroup classes this enumerates the G-orbits of fixed components; the
    // pairing bookkeeping of the centralizer presentation is absorbed by the
    // conjugation relation.)
    Subgroup za = centralizer(*M.G, M.N, A);
    Subgroup ta = normalizer(*M.G, M.N, A);
    std::map<std::string, const ComponentRecord*> by_key;
    for (const auto& c : comps)
      if (c.gen_stab == A) by_key[piece_key(c.shallow)] = &c;
    std::set<std::string> used;
    for (const auto& [key, rec] : by_key) {
      if (used.count(key)) continue;
      for (int z : ta.elems) {
        std::string moved = piece_key(conjugate_piece(M, rec->shallow, A, z));
        require(by_key.count(moved), Err::Internal, "component orbit left the component list");
        used.insert(moved);
      }

      // --- symbol data off the shallowest piece
      const Piece& sp = rec->shallow;
      Subgroup S = intersect_subgroups(za, fl_detail::chain_stabilizer(M, sp));
      Symbol sym;
      sym.small = M.delta;
      sym.big = A;
      sym.S = S;
      std::vector<CharVec> gamma_raw;  // per factor: level-0 character of A
      int level0_factor_index = -1;    // descriptor factor carrying (f=0, l=0)
      std::optional<CharVec> level0_line_char;
      for (size_t f = 0; f < M.factors.size(); ++f) {
        auto packs = fl_detail::chain_packs(M.factors[f], S, sp.chains[f]);
        gamma_raw.push_back(sp.levels[f][0]);
        for (size_t l = 0; l < packs.size(); ++l) {
          const CharVec& chi = sp.levels[f][l];
          Subspace e = fl_detail::pack_eigenspace(packs[l], A, chi);
          // normal characters within the level
          for (const auto& [chi2, e2] : eigen_decomposition(restrict_rep(packs[l].rep, A), A)) {
            if (chi2 == chi) continue;
            CharVec diff = char_sub(chi2, chi);
            for (int m = 0; m < e2.dim(); ++m) sym.beta.push_back(diff);
          }
          // divisor character of the chain element below this level
          if (l < sp.chains[f].size())
            sym.beta.push_back(char_sub(sp.levels[f][l + 1], sp.levels[f][l]));
          // projective factor of the descriptor
          if (e.dim() >= 2) {
            ProjFactor pf;
            pf.dim = e.dim();
            Representation se = subspace_action(packs[l].rep, S, e);
            for (int g : S.elems) pf.mats.push_back(se.mat(g));
            if (f == 0 && l == 0) level0_factor_index = static_cast<int>(sym.K.proj.size());
            sym.K.proj.push_back(std::move(pf));
          } else if (f == 0 && l == 0) {
            // one-dimensional: the tautological fiber is a monomial coordinate
            Representation se = subspace_action(packs[l].rep, S, e);
            auto [sg, sc] = se.scalar_subgroup();
            require(sg == S, Err::Internal, "line not scaled by the component stabilizer");
            level0_line_char = sc;
          }
        }
      }
      // normalize the descriptor; remap the tautological factor reference
      DescNormalization norm = normalize_desc(ctx, S, sym.K);
      GammaProv prov0;
      if (level0_factor_index >= 0) {
        int ni = norm.new_index[static_cast<size_t>(level0_factor_index)];
        if (ni >= 0)
          prov0.taut_factor = ni;
        else
          prov0.s_char = norm.line_char[static_cast<size_t>(level0_factor_index)];
      } else {
        prov0.s_char = level0_line_char;
      }
      // twisted gamma
      for (size_t j = 0; j < gamma_raw.size(); ++j) {
        CharVec c = gamma_raw[j];
        if (j > 0) c = char_sub(c, gamma_raw[j - 1]);
        if (sign > 0) c = char_neg(c);
        sym.gamma.push_back(c);
        GammaProv p;
        if (j == 0 && sign < 0) p = prov0;
        sym.prov.push_back(p);
      }
      std::sort(sym.beta.begin(), sym.beta.end());
      validate_symbol(ctx, sym);
      out.add(sym, 1);
    }
  }
  return out;
}

}  // namespace burn
