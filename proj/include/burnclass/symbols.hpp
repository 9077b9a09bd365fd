#pragma once

// The symbol calculus. A symbol is (H <= H', Y0 acting on K, beta, gamma):
// abelian subgroups H <= H' of the context group, a field component K with the
// subgroup Y0 = S/H' acting (the full Galois algebra being induced), a
// character sequence beta of H' trivial on H, and an indexed character tuple
// gamma. Unindexed symbols are the empty-index case with H trivial.
//
// Canonicalization absorbs the reordering and conjugation relations: beta is a
// multiset and the stored representative minimizes a total serialization order
// over the context's conjugation action.

#include "group.hpp"
#include "representation.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace burn {

/// Ambient Burnside group: context group (possibly a quotient), the subgroup
/// whose action is being classified, total dimension, and the index set.
struct BurnCtx {
  GroupRef G;
  Subgroup within;
  int n = 0;
  std::vector<int> I;  // sorted index set; empty = plain Burn_n

  std::string key() const {
    std::ostringstream os;
    os << G.get() << "|n" << n << "|W";
    for (int e : within.elems) os << e << ",";
    os << "|I";
    for (int i : I) os << i << ",";
    return os.str();
  }
  friend bool operator==(const BurnCtx& a, const BurnCtx& b) {
    return a.G.get() == b.G.get() && a.within == b.within && a.n == b.n && a.I == b.I;
  }
};

inline BurnCtx make_ctx(const GroupRef& G, const Subgroup& within, int n, std::vector<int> I = {}) {
  BurnCtx c;
  c.G = G;
  c.within = within;
  c.n = n;
  c.I = std::move(I);
  return c;
}

/// Root of the quotient chain: the group whose elements carry honest matrices.
inline GroupRef anchor_group(const GroupRef& G) {
  GroupRef a = G;
  while (a->parent) a = a->parent;
  return a;
}

/// Lift a context element to the anchor group (any coset representative; the
/// quotient kernels are central so conjugation is independent of the choice).
inline int anchor_lift_elem(const GroupRef& G, int g) {
  GroupRef cur = G;
  int x = g;
  while (cur->parent) {
    x = cur->coset_rep[static_cast<size_t>(x)];
    cur = cur->parent;
  }
  return x;
}

/// Preimage of a context subgroup in the anchor group.
inline Subgroup anchor_lift_subgroup(const GroupRef& G, const Subgroup& s) {
  if (!G->parent) return s;
  Subgroup up = preimage_subgroup(*G, s);
  return anchor_lift_subgroup(G->parent, up);
}

/// Push a character of the anchor-lift down to the context subgroup; the
/// character must vanish on the kernel of the projection (checked).
inline CharVec descend_char(const GroupRef& G, const Subgroup& lift, const CharVec& c,
                            const Subgroup& s) {
  CharVec out;
  out.v.reserve(s.elems.size());
  for (int g : s.elems) {
    int x = anchor_lift_elem(G, g);
    out.v.push_back(char_value(lift, c, x));
  }
  // consistency: all preimages of the identity must take value zero
  int idl = anchor_lift_elem(G, G->id);
  (void)idl;
  return out;
}

// ---------------------------------------------------------------------------
// Field descriptors.

/// A projective factor P(W): matrices of the anchor lift of S on W. The
/// projective action of S is what the descriptor means; global scalars are
/// quotiented by the equivalence (W ~ W (x) character).
struct ProjFactor {
  int dim = 0;
  std::vector<Matrix> mats;  // aligned with lift(S).elems
};

struct FieldDesc {
  std::vector<ProjFactor> proj;   // dim >= 2, projectively non-abelian image
  std::vector<CharVec> towers;    // chars of S: monomial coordinates
  std::vector<int> cones;         // indices into proj: tautological affine cones

  int trdeg() const {
    int d = 0;
    for (const auto& f : proj) d += f.dim - 1;
    d += static_cast<int>(towers.size());
    d += static_cast<int>(cones.size());
    return d;
  }
  bool is_point() const { return proj.empty() && towers.empty() && cones.empty(); }
};

/// Provenance of an indexed character: how the corresponding line bundle acts
/// on the symbol's field, when known. Consumed by the total-space maps.
struct GammaProv {
  std::optional<CharVec> s_char;  // char of S: the bundle is monomial on K
  int taut_factor = -1;           // the bundle is the tautological one of proj[i]
};

struct Symbol {
  Subgroup small;               // pairing subgroup H (trivial when unindexed)
  Subgroup big;                 // stabilizer H'
  Subgroup S;                   // component stabilizer: big <= S <= Z(big)
  FieldDesc K;
  std::vector<CharVec> beta;    // chars of big; stored sorted
  std::vector<CharVec> gamma;   // chars of big; index-set order
  std::vector<GammaProv> prov;  // parallel to gamma (may be empty)
};

namespace detail {

inline std::string char_str(const CharVec& c) {
  std::string s;
  for (const auto& r : c.v) s += rat_str(r) + ",";
  return s;
}

/// Eigenline decomposition of the lift-subgroup action on a factor; empty when
/// the image is not simultaneously diagonalizable (projectively nonabelian).
inline std::vector<CharVec> eigenline_chars(const GroupRef& anchor, const Subgroup& lift,
                                            const ProjFactor& f, const FieldRef& F) {
  Representation rho;
  rho.G = anchor;
  rho.acting = lift;
  rho.dim = f.dim;
  rho.F = F;
  rho.mats = f.mats;
  std::vector<Subspace> parts{Subspace::full(f.dim, F)};
  for (size_t ei = 0; ei < lift.elems.size(); ++ei) {
    int x = lift.elems[ei];
    int ord = anchor->elem_order[x];
    std::vector<Subspace> next;
    for (const auto& p : parts) {
      int covered = 0;
      for (int k = 0; k < ord; ++k) {
        Subgroup single{{x}};
        CharVec chi;
        chi.v = {mod1(Rat(k, ord))};
        Subspace e = eigenspace(rho, single, chi);
        Subspace cut = subspace_intersect(p, e, F);
        if (cut.dim() == 0) continue;
        covered += cut.dim();
        next.push_back(cut);
      }
      if (covered != p.dim()) return {};  // not diagonalizable on this part
    }
    parts = std::move(next);
  }
  for (const auto& p : parts)
    if (p.dim() != 1) return {};
  // sort lines canonically and read off their characters
  std::sort(parts.begin(), parts.end());
  std::vector<CharVec> out;
  for (const auto& line : parts) {
    CharVec chi;
    chi.v.reserve(lift.elems.size());
    for (int x : lift.elems) {
      Subgroup single{{x}};
      auto [sg, sc] = scalar_stabilizer(rho, single, line);
      require(sg.order() == 1, Err::Internal, "eigenline not scaled by lift element");
      chi.v.push_back(sc.v[0]);
    }
    out.push_back(std::move(chi));
  }
  return out;
}

/// Canonical form of a tower tuple under GL_d(Z): lexicographic minimum of the
/// orbit under swaps, negation and single additions, found by closure. The
/// orbit lives inside the finite group generated by the entries.
inline std::vector<CharVec> gl_canonical_towers(std::vector<CharVec> t) {
  if (t.empty()) return t;
  auto key = [](const std::vector<CharVec>& v) {
    std::string s;
    for (const auto& c : v) s += char_str(c) + ";";
    return s;
  };
  static std::map<std::string, std::vector<CharVec>> memo;
  std::string start = key(t);
  auto it = memo.find(start);
  if (it != memo.end()) return it->second;

  std::set<std::string> seen;
  std::vector<std::vector<CharVec>> work{t};
  seen.insert(start);
  std::vector<CharVec> best = t;
  std::string best_key = start;
  const size_t cap = 60000;
  while (!work.empty() && seen.size() < cap) {
    std::vector<CharVec> cur = work.back();
    work.pop_back();
    auto push = [&](std::vector<CharVec> nxt) {
      std::string k = key(nxt);
      if (seen.insert(k).second) {
        if (k < best_key) {
          best_key = k;
          best = nxt;
        }
        work.push_back(std::move(nxt));
      }
    };
    size_t d = cur.size();
    for (size_t i = 0; i < d; ++i) {
      auto neg = cur;
      neg[i] = char_neg(neg[i]);
      push(std::move(neg));
      for (size_t j = 0; j < d; ++j) {
        if (i == j) continue;
        auto add = cur;
        add[i] = char_add(add[i], cur[j]);
        push(std::move(add));
        if (i < j) {
          auto sw = cur;
          std::swap(sw[i], sw[j]);
          push(std::move(sw));
        }
      }
    }
  }
  memo[start] = best;
  // also memoize every visited state? keep only the start to bound memory
  return best;
}

}  // namespace detail

/// Normalize a descriptor in place: point factors are dropped, projectively
/// abelian factors become monomial towers, factor order is irrelevant (sorted
/// at serialization). Returns, per original factor index, the new index, or -1
/// when the factor was removed (its first eigenline character is then reported
/// through line_char for provenance).
struct DescNormalization {
  std::vector<int> new_index;
  std::vector<std::optional<CharVec>> line_char;  // S-char of a removed factor's first line
};

inline DescNormalization normalize_desc(const BurnCtx& ctx, const Subgroup& S, FieldDesc& K) {
  GroupRef anchor = anchor_group(ctx.G);
  Subgroup lift = anchor_lift_subgroup(ctx.G, S);
  FieldRef F;
  for (const auto& f : K.proj)
    if (!f.mats.empty() && !f.mats[0].a.empty()) F = f.mats[0].a[0].field();
  DescNormalization out;
  std::vector<ProjFactor> kept;
  for (size_t i = 0; i < K.proj.size(); ++i) {
    const ProjFactor& f = K.proj[i];
    std::vector<CharVec> lines = detail::eigenline_chars(anchor, lift, f, F);
    if (lines.empty()) {
      out.new_index.push_back(static_cast<int>(kept.size()));
      out.line_char.push_back(std::nullopt);
      kept.push_back(f);
      continue;
    }
    // abelian image: towers from the character differences, factor removed
    CharVec first = lines.front();
    for (size_t l = 1; l < lines.size(); ++l) {
      CharVec diff = char_sub(lines[l], first);
      K.towers.push_back(descend_char(ctx.G, lift, diff, S));
    }
    out.new_index.push_back(-1);
    out.line_char.push_back(descend_char(ctx.G, lift, first, S));
  }
  std::vector<int> new_cones;
  for (int c : K.cones) {
    require(out.new_index[static_cast<size_t>(c)] >= 0, Err::Internal,
            "cone over a factor that was monomialized");
    new_cones.push_back(out.new_index[static_cast<size_t>(c)]);
  }
  K.proj = std::move(kept);
  K.cones = std::move(new_cones);
  return out;
}

// ---------------------------------------------------------------------------
// Validation.

inline void validate_symbol(const BurnCtx& ctx, const Symbol& s) {
  const FiniteGroup& G = *ctx.G;
  require(ctx.within.contains(s.S), Err::MalformedSymbol, "S outside context subgroup");
  require(s.S.contains(s.big) && s.big.contains(s.small), Err::MalformedSymbol,
          "subgroup chain violated");
  require(is_abelian(G, s.big), Err::MalformedSymbol, "stabilizer not abelian");
  require(centralizer(G, s.S, s.big) == s.S, Err::MalformedSymbol,
          "component stabilizer does not centralize H'");
  // beta: nonzero on big, trivial on small, joint kernel exactly small
  Subgroup ker = s.big;
  for (const auto& b : s.beta) {
    require(!b.is_zero(), Err::MalformedSymbol, "zero entry in beta");
    require(char_restrict(s.big, b, s.small).is_zero(), Err::MalformedSymbol,
            "beta entry nontrivial on the pairing subgroup");
    ker = char_kernel(ker, char_restrict(s.big, b, ker));
  }
  require(ker == s.small, Err::MalformedSymbol, "beta does not cut the stabilizer to H");
  // gamma: restrictions generate H^vee
  require(s.gamma.size() == ctx.I.size(), Err::MalformedSymbol, "gamma arity mismatch");
  Subgroup gker = s.small;
  for (const auto& c : s.gamma) gker = char_kernel(gker, char_restrict(s.big, c, gker));
  require(gker.order() == 1, Err::MalformedSymbol, "gamma restrictions do not generate");
  // field: towers vanish on big, factors are big-scalar
  for (const auto& t : s.K.towers)
    require(char_restrict(s.S, t, s.big).is_zero(), Err::MalformedSymbol,
            "tower coordinate moved by the stabilizer");
  require(s.K.trdeg() + static_cast<int>(s.beta.size()) + static_cast<int>(ctx.I.size()) == ctx.n,
          Err::MalformedSymbol, "dimension bookkeeping failed");
}

// ---------------------------------------------------------------------------
// Transport and canonicalization.

inline FieldDesc transport_desc(const BurnCtx& ctx, const Subgroup& S, const FieldDesc& K, int g) {
  FieldDesc out;
  out.cones = K.cones;
  GroupRef anchor = anchor_group(ctx.G);
  Subgroup lift = anchor_lift_subgroup(ctx.G, S);
  int ga = anchor_lift_elem(ctx.G, g);
  Subgroup Sg = conjugate_subgroup(*ctx.G, S, g);
  Subgroup lift_g = anchor_lift_subgroup(ctx.G, Sg);
  for (const auto& f : K.proj) {
    ProjFactor nf;
    nf.dim = f.dim;
    nf.mats.reserve(lift_g.elems.size());
    for (int x : lift_g.elems) {
      int y = anchor->mul[anchor->mul[anchor->inv[ga]][x]][ga];  // g^{-1} x g
      auto it = std::lower_bound(lift.elems.begin(), lift.elems.end(), y);
      require(it != lift.elems.end() && *it == y, Err::Internal, "transport left the lift");
      nf.mats.push_back(f.mats[static_cast<size_t>(it - lift.elems.begin())]);
    }
    out.proj.push_back(std::move(nf));
  }
  for (const auto& t : K.towers) out.towers.push_back(char_transport(*ctx.G, S, t, g));
  return out;
}

inline Symbol transport_symbol(const BurnCtx& ctx, const Symbol& s, int g) {
  const FiniteGroup& G = *ctx.G;
  Symbol out;
  out.small = conjugate_subgroup(G, s.small, g);
  out.big = conjugate_subgroup(G, s.big, g);
  out.S = conjugate_subgroup(G, s.S, g);
  out.K = transport_desc(ctx, s.S, s.K, g);
  for (const auto& b : s.beta) out.beta.push_back(char_transport(G, s.big, b, g));
  for (const auto& c : s.gamma) out.gamma.push_back(char_transport(G, s.big, c, g));
  for (const auto& p : s.prov) {
    GammaProv np;
    np.taut_factor = p.taut_factor;
    if (p.s_char) np.s_char = char_transport(G, s.S, *p.s_char, g);
    out.prov.push_back(np);
  }
  return out;
}

namespace detail {

inline std::string desc_key(const BurnCtx& ctx, const Subgroup& S, const FieldDesc& K) {
  GroupRef anchor = anchor_group(ctx.G);
  Subgroup lift = anchor_lift_subgroup(ctx.G, S);
  // factor keys: lambda-minimized trace tables (captures W up to W (x) char)
  std::vector<std::string> fkeys;
  std::vector<CharVec> lchars = lift.order() ? linear_chars(*anchor, lift) : std::vector<CharVec>{};
  for (const auto& f : K.proj) {
    std::string best;
    FieldRef F = f.mats[0].a[0].field();
    std::vector<Cyc> traces;
    traces.reserve(f.mats.size());
    for (const auto& m : f.mats) traces.push_back(m.trace());
    for (const auto& lam : lchars) {
      std::string t = "d" + std::to_string(f.dim) + ":";
      for (size_t i = 0; i < traces.size(); ++i)
        t += (traces[i] * Cyc::root_of_unity(F, lam.v[i])).str() + "|";
      if (best.empty() || t < best) best = t;
    }
    fkeys.push_back(best);
  }
  // stable factor order, cones follow it
  std::vector<size_t> order(fkeys.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fkeys[a] < fkeys[b]; });
  std::vector<int> pos(fkeys.size());
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  std::vector<int> cones;
  for (int c : K.cones) cones.push_back(pos[static_cast<size_t>(c)]);
  std::sort(cones.begin(), cones.end());

  std::string s = "P[";
  for (size_t i : order) s += fkeys[i] + ";";
  s += "]T[";
  for (const auto& t : gl_canonical_towers(K.towers)) s += char_str(t) + ";";
  s += "]C[";
  for (int c : cones) s += std::to_string(c) + ",";
  s += "]";
  return s;
}

inline std::string symbol_struct_key(const Symbol& s) {
  // cheap transport-covariant part (everything except the descriptor)
  std::string out = "h[";
  for (int e : s.small.elems) out += std::to_string(e) + ",";
  out += "]H[";
  for (int e : s.big.elems) out += std::to_string(e) + ",";
  out += "]S[";
  for (int e : s.S.elems) out += std::to_string(e) + ",";
  out += "]b[";
  std::vector<std::string> bs;
  for (const auto& b : s.beta) bs.push_back(char_str(b));
  std::sort(bs.begin(), bs.end());
  for (const auto& b : bs) out += b + ";";
  out += "]g[";
  for (const auto& c : s.gamma) out += char_str(c) + ";";
  out += "]";
  return out;
}

}  // namespace detail

struct CanonicalSymbol {
  Symbol sym;
  std::string key;
};

/// Transport of everything except the field descriptor (which is expensive to
/// copy); used to pre-select canonicalization candidates.
inline Symbol transport_symbol_light(const BurnCtx& ctx, const Symbol& s, int g) {
  const FiniteGroup& G = *ctx.G;
  Symbol out;
  out.small = conjugate_subgroup(G, s.small, g);
  out.big = conjugate_subgroup(G, s.big, g);
  out.S = conjugate_subgroup(G, s.S, g);
  for (const auto& b : s.beta) out.beta.push_back(char_transport(G, s.big, b, g));
  for (const auto& c : s.gamma) out.gamma.push_back(char_transport(G, s.big, c, g));
  return out;
}

/// Canonical representative of the (O)+(C) orbit: beta sorted, then the
/// conjugate minimizing the serialization (cheap part first, descriptor key
/// only among the survivors).
inline CanonicalSymbol canonicalize(const BurnCtx& ctx, Symbol s) {
  std::sort(s.beta.begin(), s.beta.end());
  std::string best_struct;
  std::vector<int> survivors;
  for (int g : ctx.within.elems) {
    Symbol t = transport_symbol_light(ctx, s, g);
    std::sort(t.beta.begin(), t.beta.end());
    std::string k = detail::symbol_struct_key(t);
    if (best_struct.empty() || k < best_struct) {
      best_struct = k;
      survivors.assign(1, g);
    } else if (k == best_struct) {
      survivors.push_back(g);
    }
  }
  CanonicalSymbol out;
  std::string best_desc;
  for (int g : survivors) {
    Symbol t = transport_symbol(ctx, s, g);
    std::sort(t.beta.begin(), t.beta.end());
    std::string dk = detail::desc_key(ctx, t.S, t.K);
    if (best_desc.empty() || dk < best_desc) {
      best_desc = dk;
      out.sym = std::move(t);
    }
  }
  out.key = best_struct + best_desc;
  return out;
}

// ---------------------------------------------------------------------------
// Integer combinations of canonical symbols.

class ClassVector {
 public:
  BurnCtx ctx;

  ClassVector() = default;
  explicit ClassVector(BurnCtx c) : ctx(std::move(c)) {}

  void add(const Symbol& s, long long coeff) {
    if (coeff == 0) return;
    CanonicalSymbol c = canonicalize(ctx, s);
    add_canonical(c, coeff);
  }
  void add_canonical(const CanonicalSymbol& c, long long coeff) {
    auto it = terms_.find(c.key);
    if (it == terms_.end()) {
      if (coeff != 0) terms_.emplace(c.key, std::make_pair(c.sym, coeff));
    } else {
      it->second.second += coeff;
      if (it->second.second == 0) terms_.erase(it);
    }
  }
  void add_all(const ClassVector& other, long long scale = 1) {
    require(ctx == other.ctx, Err::ContextMismatch, "class vectors in different contexts");
    for (const auto& [k, term] : other.terms_) {
      auto it = terms_.find(k);
      if (it == terms_.end()) {
        if (term.second * scale != 0) terms_.emplace(k, std::make_pair(term.first, term.second * scale));
      } else {
        it->second.second += term.second * scale;
        if (it->second.second == 0) terms_.erase(it);
      }
    }
  }

  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::map<std::string, std::pair<Symbol, long long>>& terms() const { return terms_; }

  long long coeff(const std::string& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? 0 : it->second.second;
  }

 private:
  std::map<std::string, std::pair<Symbol, long long>> terms_;
};

inline ClassVector class_difference(const ClassVector& u, const ClassVector& v) {
  ClassVector d(u.ctx);
  d.add_all(u, 1);
  d.add_all(v, -1);
  return d;
}

// Convenience constructors -------------------------------------------------

inline Symbol make_point_symbol(const BurnCtx& ctx, const Subgroup& small, const Subgroup& big,
                                std::vector<CharVec> beta, std::vector<CharVec> gamma = {}) {
  Symbol s;
  s.small = small;
  s.big = big;
  s.S = big;
  s.beta = std::move(beta);
  s.gamma = std::move(gamma);
  validate_symbol(ctx, s);
  return s;
}

/// Monomial symbol: K = k(t_1..t_d) with S acting through the tower characters.
inline Symbol make_monomial_symbol(const BurnCtx& ctx, const Subgroup& small, const Subgroup& big,
                                   const Subgroup& S, std::vector<CharVec> towers,
                                   std::vector<CharVec> beta, std::vector<CharVec> gamma = {}) {
  Symbol s;
  s.small = small;
  s.big = big;
  s.S = S;
  s.K.towers = std::move(towers);
  s.beta = std::move(beta);
  s.gamma = std::move(gamma);
  validate_symbol(ctx, s);
  return s;
}

/// Projective-space symbol: K = k(P(W)) with the anchor lift of S acting by
/// the given matrices (one per lift element, aligned and ordered).
inline Symbol make_projspace_symbol(const BurnCtx& ctx, const Subgroup& small, const Subgroup& big,
                                    const Subgroup& S, int dim, std::vector<Matrix> mats,
                                    std::vector<CharVec> beta, std::vector<CharVec> gamma = {}) {
  Symbol s;
  s.small = small;
  s.big = big;
  s.S = S;
  ProjFactor f;
  f.dim = dim;
  f.mats = std::move(mats);
  s.K.proj.push_back(std::move(f));
  normalize_desc(ctx, S, s.K);
  s.beta = std::move(beta);
  s.gamma = std::move(gamma);
  validate_symbol(ctx, s);
  return s;
}

}  // namespace burn
