#pragma once

// Top-level algorithms: the indexed class of a projectivized representation by
// the direct route (fixed loci on the full wonderful model) and the recursive
// route (stratum-by-stratum, subtracting re-indexed deeper contributions), the
// derived affine / quotient / P(1+V) classes, and comparison verdicts.

#include "fixedlocus.hpp"
#include "maps.hpp"
#include "reps.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace burn {

enum class Route { A, B, Both };

inline Route route_from_env() {
  if (const char* s = std::getenv("BURNCLASS_ROUTE")) {
    std::string v = s;
    if (v == "a" || v == "A") return Route::A;
    if (v == "b" || v == "B") return Route::B;
  }
  return Route::Both;
}

/// Transport a class to a conjugate context subgroup.
inline ClassVector transport_to(const ClassVector& u, int g) {
  BurnCtx ctx = u.ctx;
  ctx.within = conjugate_subgroup(*ctx.G, ctx.within, g);
  ClassVector out(ctx);
  for (const auto& [k, term] : u.terms()) out.add(transport_symbol(ctx, term.first, g), term.second);
  return out;
}

/// Relabel the index set order-preservingly.
inline ClassVector reindex(const ClassVector& u, const std::vector<int>& new_I) {
  require(new_I.size() == u.ctx.I.size(), Err::IndexMismatch, "reindexing arity mismatch");
  BurnCtx ctx = make_ctx(u.ctx.G, u.ctx.within, u.ctx.n, new_I);
  ClassVector out(ctx);
  for (const auto& [k, term] : u.terms()) out.add(term.first, term.second);
  return out;
}

// ---------------------------------------------------------------------------
// Route B: the stratum recursion.

class RouteB {
 public:
  RouteB(const GroupRef& G, const Representation& rho)
      : G_(G), rho_(rho), L_(projective_lattice(rho, full_subgroup(*G))), cc_(chain_classes(L_)) {}

  const Lattice& lattice() const { return L_; }
  const ChainClasses& chains() const { return cc_; }

  /// The naive class of the open stratum, with the twisted bundle basis, in
  /// Burn_{n, {0..t}}(N(Lambda)).
  const ClassVector& naive_open(const std::vector<int>& chain) {
    std::vector<int> canon = canonical_chain(L_, chain, L_.acting);
    auto it = memo_.find(canon);
    if (it != memo_.end()) return it->second;

    ChainData cd = chain_data(L_, canon);
    ProductModel M = chain_model(canon, cd);
    ClassVector acc = assemble_class(M, -1);

    // subtract the re-indexed deeper contributions
    for (const auto& super : superchain_reps(canon, cd.normalizer)) {
      ClassVector deep = at_chain(super);
      std::vector<int> J{0};
      for (int ci : canon) {
        auto pos = std::find(super.begin(), super.end(), ci);
        require(pos != super.end(), Err::Internal, "superchain does not contain the chain");
        J.push_back(static_cast<int>(pos - super.begin()) + 1);
      }
      std::sort(J.begin(), J.end());
      ClassVector term = psi(tau(deep, J), J);
      std::vector<int> target(J.size());
      for (size_t i = 0; i < J.size(); ++i) target[i] = static_cast<int>(i);
      term = reindex(term, target);
      term = induct(term, cd.normalizer);
      acc.add_all(term, -1);
    }
    return memo_.emplace(std::move(canon), std::move(acc)).first->second;
  }

  /// The indexed class of P(V) with the tautological bundle.
  ClassVector total() {
    BurnCtx ctx = make_ctx(G_, full_subgroup(*G_), rho_.dim, {0});
    ClassVector out(ctx);
    out.add(generic_symbol(ctx), 1);
    for (const auto& rep : cc_.reps) {
      ClassVector piece = psi(naive_open(rep), {0});
      piece = induct(piece, full_subgroup(*G_));
      out.add_all(piece, 1);
    }
    return out;
  }

  /// The leading term (C <= C, G/C acting on k(P(V)), (), eps).
  Symbol generic_symbol(const BurnCtx& ctx) const {
    Symbol s;
    s.small = L_.scalar_sub;
    s.big = L_.scalar_sub;
    s.S = full_subgroup(*G_);
    ProjFactor f;
    f.dim = rho_.dim;
    for (int g : s.S.elems) f.mats.push_back(rho_.mat(g));
    s.K.proj.push_back(std::move(f));
    DescNormalization norm = normalize_desc(ctx, s.S, s.K);
    s.gamma.push_back(L_.scalar_char);
    GammaProv prov;
    if (norm.new_index[0] >= 0)
      prov.taut_factor = norm.new_index[0];
    else
      prov.s_char = norm.line_char[0];
    s.prov.push_back(prov);
    validate_symbol(ctx, s);
    return s;
  }

 private:
  /// Product model P(V_1) x P(V_2/V_1) x ... x P(V/V_t) for the chain.
  ProductModel chain_model(const std::vector<int>& chain, const ChainData& cd) {
    std::vector<Representation> factors;
    Subspace prev = Subspace::zero(rho_.dim, rho_.F);
    for (size_t i = 0; i <= chain.size(); ++i) {
      Subspace next = (i < chain.size()) ? L_.elems[static_cast<size_t>(chain[i])].space
                                         : Subspace::full(rho_.dim, rho_.F);
      if (next.dim() > prev.dim()) factors.push_back(quotient_action(rho_, cd.normalizer, prev, next));
      prev = next;
    }
    return make_product_model(G_, cd.normalizer, factors);
  }

  /// Strict superchains of the chain, one per N(Lambda)-conjugacy class, each
  /// an actual chain of the lattice containing the given one elementwise.
  std::vector<std::vector<int>> superchain_reps(const std::vector<int>& chain,
                                                const Subgroup& normalizer) {
    std::set<std::vector<int>> classes;
    std::vector<std::vector<int>> out;
    for (const auto& c : all_chains(L_)) {
      if (c.size() <= chain.size()) continue;
      bool contains = true;
      for (int ci : chain)
        contains = contains && std::find(c.begin(), c.end(), ci) != c.end();
      if (!contains) continue;
      std::vector<int> canon = canonical_chain(L_, c, normalizer);
      if (classes.insert(canon).second) out.push_back(canon);
    }
    return out;
  }

  /// naive_open at an arbitrary chain (transported from its canonical class).
  ClassVector at_chain(const std::vector<int>& chain) {
    std::vector<int> canon = canonical_chain(L_, chain, L_.acting);
    const ClassVector& base = naive_open(canon);
    if (canon == chain) return base;
    for (int g : L_.acting.elems) {
      if (conjugate_chain(L_, canon, g) == chain) return transport_to(base, G_->inv[g]);
    }
    fail(Err::Internal, "no transporter onto the requested chain");
  }

  GroupRef G_;
  Representation rho_;
  Lattice L_;
  ChainClasses cc_;
  std::map<std::vector<int>, ClassVector> memo_;
};

// ---------------------------------------------------------------------------
// Pipeline entry points.

struct PVClassResult {
  ClassVector indexed;                   // Burn_{n, {0}}(G)
  std::optional<ClassVector> route_a;    // populated when both routes ran
  std::optional<ClassVector> route_b;
  std::optional<Verdict> routes_agree;
};

inline ClassVector class_pv_indexed_route_a(const GroupRef& G, const Representation& rho,
                                            int sign = -1) {
  ProductModel M = make_product_model(G, full_subgroup(*G), {rho});
  return assemble_class(M, sign);
}

inline PVClassResult class_pv_indexed(const GroupRef& G, const Representation& rho,
                                      Route route = Route::Both) {
  require(rho.is_faithful(), Err::NotFaithful, "projective class needs a faithful representation");
  PVClassResult out;
  if (route == Route::A) {
    out.indexed = class_pv_indexed_route_a(G, rho);
    return out;
  }
  if (route == Route::B) {
    RouteB rb(G, rho);
    out.indexed = rb.total();
    return out;
  }
  out.route_a = class_pv_indexed_route_a(G, rho);
  RouteB rb(G, rho);
  out.route_b = rb.total();
  EqualityReport rep = classes_equal(*out.route_a, *out.route_b);
  out.routes_agree = rep.verdict;
  require(rep.verdict == Verdict::EqualModRelations, Err::AssumptionViolated,
          "route A and route B disagree: " + rep.note);
  out.indexed = *out.route_a;
  return out;
}

/// [V]^naive = omega_0 + psi_0 of the indexed class.
inline ClassVector class_affine_naive(const ClassVector& pv_indexed) {
  ClassVector out = omega(pv_indexed, {});
  out.add_all(psi(pv_indexed, {}), 1);
  return out;
}

/// [P(V) acted by G/C]: eta of the indexed class at the scalar subgroup.
inline std::pair<ClassVector, EtaTarget> class_pv_quotient(const ClassVector& pv_indexed,
                                                           const Subgroup& scalar_sub) {
  return eta(pv_indexed, scalar_sub);
}

/// [P(1 + V)]: omega_0 + psi_0 of the O(-1)-class plus psi_0 of the O(1)-class.
inline ClassVector class_p1_plus_v(const ClassVector& pv_minus, const ClassVector& pv_plus) {
  ClassVector out = omega(pv_minus, {});
  out.add_all(psi(pv_minus, {}), 1);
  out.add_all(psi(pv_plus, {}), 1);
  return out;
}

// ---------------------------------------------------------------------------
// Comparison of actions.

struct CompareEntry {
  std::string name;
  ClassVector cls;
};

struct VerdictReport {
  std::vector<std::pair<std::pair<int, int>, EqualityReport>> pairwise;
  Verdict overall = Verdict::EqualModRelations;  // worst verdict across pairs
};

inline VerdictReport compare_classes(const std::vector<CompareEntry>& entries) {
  VerdictReport rep;
  for (size_t i = 0; i < entries.size(); ++i)
    for (size_t j = i + 1; j < entries.size(); ++j) {
      require(entries[i].cls.ctx == entries[j].cls.ctx, Err::ContextMismatch,
              "comparison across different ambient groups");
      EqualityReport e = classes_equal(entries[i].cls, entries[j].cls);
      if (e.verdict == Verdict::DistinctCertified)
        rep.overall = Verdict::DistinctCertified;
      else if (e.verdict == Verdict::DistinctInModel && rep.overall == Verdict::EqualModRelations)
        rep.overall = Verdict::DistinctInModel;
      rep.pairwise.push_back({{static_cast<int>(i), static_cast<int>(j)}, std::move(e)});
    }
  return rep;
}

}  // namespace burn
