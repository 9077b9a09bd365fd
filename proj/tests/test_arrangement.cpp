#include <catch2/catch_amalgamated.hpp>

#include "burnclass/arrangement.hpp"
#include "burnclass/reps.hpp"

#include <map>
#include <set>

using namespace burn;

namespace {
int bell(int n) {
  // independent oracle for the partition-lattice count
  std::vector<std::vector<long long>> tri(n + 1);
  tri[0] = {1};
  for (int i = 1; i <= n; ++i) {
    tri[i].resize(i + 1);
    tri[i][0] = tri[i - 1][i - 1];
    for (int j = 1; j <= i; ++j) tri[i][j] = tri[i][j - 1] + tri[i - 1][j - 1];
  }
  return static_cast<int>(tri[n][0]);
}

int find_perm(const GroupRef& G, const std::vector<int>& images) {
  for (int g = 0; g < G->n; ++g)
    if (G->perm[g] == images) return g;
  return -1;
}
}  // namespace

TEST_CASE("affine lattice of Sn standard is the partition lattice") {
  for (int n = 2; n <= 5; ++n) {
    GroupRef S = symmetric_group(n);
    Representation rho = standard_rep(S, computation_conductor(*S));
    Lattice L = stabilizer_lattice(rho, full_subgroup(*S));
    CHECK(static_cast<int>(L.elems.size()) == bell(n));
  }
}

TEST_CASE("affine lattice of S4: 15 elements, 4 nontrivial classes") {
  GroupRef S4 = symmetric_group(4);
  Representation rho = standard_rep(S4, 12);
  Lattice L = stabilizer_lattice(rho, full_subgroup(*S4));
  CHECK(L.elems.size() == 15);
  std::multiset<int> nontrivial_orders;
  std::set<int> seen_classes;
  for (size_t i = 0; i < L.elems.size(); ++i) {
    if (L.elems[i].gamma.order() == 1) continue;
    if (seen_classes.insert(L.class_of[i]).second)
      nontrivial_orders.insert(L.elems[i].gamma.order());
  }
  // S4, S2xS2, S3, S2
  CHECK(nontrivial_orders == std::multiset<int>{2, 4, 6, 24});
  CHECK(seen_classes.size() == 4);
}

TEST_CASE("tensoring with sign changes the lattice") {
  GroupRef S4 = symmetric_group(4);
  Representation rho = standard_rep(S4, 12, /*tensor_sign=*/true);
  Lattice L = stabilizer_lattice(rho, full_subgroup(*S4));
  // <(1,2)> stays a stabilizer; S3 drops out since sign is nontrivial on it.
  int t12 = find_perm(S4, {1, 0, 2, 3});
  Subgroup h12 = closure(*S4, {t12});
  bool has_t12 = false, has_s3 = false;
  for (const auto& e : L.elems) {
    if (e.gamma == h12) has_t12 = true;
    if (e.gamma.order() == 6) has_s3 = true;
  }
  CHECK(has_t12);
  CHECK(!has_s3);
  Representation std_rho = standard_rep(S4, 12, false);
  Lattice Lstd = stabilizer_lattice(std_rho, full_subgroup(*S4));
  bool std_has_s3 = false;
  for (const auto& e : Lstd.elems)
    if (e.gamma.order() == 6) std_has_s3 = true;
  CHECK(std_has_s3);
}

TEST_CASE("trivial group affine lattice") {
  GroupRef t = cyclic_group(1);
  FieldRef F = make_field(1);
  Matrix id = Matrix::identity(2, F);
  Representation rho = rep_from_generators(t, F, 2, t->generators, {id});
  Lattice L = stabilizer_lattice(rho, full_subgroup(*t));
  REQUIRE(L.elems.size() == 1);
  CHECK(L.elems[0].gamma.order() == 1);
  CHECK(L.elems[0].space.dim() == 2);
}

TEST_CASE("Table 1: affine chain classes of the S4 standard representation") {
  GroupRef S4 = symmetric_group(4);
  Representation rho = standard_rep(S4, 12);
  Lattice L = stabilizer_lattice(rho, full_subgroup(*S4));
  ChainClasses cc = chain_classes(L);
  // chains through nontrivial stabilizers only (the trivial element carries no divisor)
  std::vector<std::vector<int>> divisor_chains;
  for (const auto& rep : cc.reps) {
    bool ok = true;
    for (int ci : rep) ok = ok && L.elems[ci].gamma.order() > 1;
    if (ok) divisor_chains.push_back(rep);
  }
  CHECK(divisor_chains.size() == 11);

  std::multiset<std::string> got, want;
  for (const auto& rep : divisor_chains) {
    ChainData d = chain_data(L, rep);
    std::string sig = "t" + std::to_string(rep.size()) + ":";
    for (int ci : rep) sig += std::to_string(L.elems[ci].gamma.order()) + ">";
    sig += "d" + std::to_string(d.delta.order());
    got.insert(sig);
  }
  want = {"t1:24>d1", "t1:4>d2",    "t1:6>d1",     "t1:2>d2",
          "t2:24>4>d2", "t2:24>6>d1", "t2:24>2>d2", "t2:4>2>d4",
          "t2:6>2>d2",  "t3:24>4>2>d4", "t3:24>6>2>d2"};
  CHECK(got == want);

  // the distinguished row: Lambda = (S4 > S2xS2 > S2), Delta = S2 x S2 with
  // characters (0, e2, e1) -- check by explicit values.
  int t12 = find_perm(S4, {1, 0, 2, 3});
  int t34 = find_perm(S4, {0, 1, 3, 2});
  for (const auto& rep : divisor_chains) {
    if (rep.size() != 3) continue;
    ChainData d = chain_data(L, rep);
    if (d.delta.order() != 4) continue;
    REQUIRE(d.level_eps.size() == 3);
    CHECK(d.level_eps[0].is_zero());
    CHECK(!d.level_eps[1].is_zero());
    CHECK(!d.level_eps[2].is_zero());
    CHECK(!(d.level_eps[1] == d.level_eps[2]));
    CHECK(chars_generate_dual(*S4, d.delta, {d.level_eps[1], d.level_eps[2]}));
    Subgroup v = closure(*S4, {t12, t34});
    CHECK(are_conjugate(*S4, full_subgroup(*S4), d.delta, v));
    CHECK(d.divisor_chars[0] == d.level_eps[0]);
    CHECK(d.divisor_chars[1] == char_sub(d.level_eps[1], d.level_eps[0]));
    CHECK(d.divisor_chars[2] == char_sub(d.level_eps[2], d.level_eps[1]));
  }
}

TEST_CASE("Table 2: projective chain classes of the S4 standard representation") {
  GroupRef S4 = symmetric_group(4);
  Representation rho = standard_rep(S4, 12);
  Lattice L = projective_lattice(rho, full_subgroup(*S4));
  CHECK(L.scalar_sub.order() == 1);

  CHECK(L.classes.size() == 7);
  std::multiset<int> class_orders;
  for (const auto& cls : L.classes) class_orders.insert(L.elems[cls.front()].gamma.order());
  // S3(6), S2(2), S2 wr C2 (8), C2(2), C2xS2(4), C3(3), C4(4)
  CHECK(class_orders == std::multiset<int>{6, 2, 8, 2, 4, 3, 4});

  ChainClasses cc = chain_classes(L);
  CHECK(cc.reps.size() == 13);

  std::multiset<std::string> got;
  for (const auto& rep : cc.reps) {
    ChainData d = chain_data(L, rep);
    std::string sig = "t" + std::to_string(rep.size()) + ":";
    for (int ci : rep) sig += std::to_string(L.elems[ci].gamma.order()) + ">";
    sig += "d" + std::to_string(d.delta.order());
    got.insert(sig);
  }
  std::multiset<std::string> want = {
      "t1:6>d1", "t1:2>d2", "t1:8>d2", "t1:2>d2", "t1:4>d2", "t1:3>d1", "t1:4>d1",
      "t2:6>2>d2", "t2:8>2>d4", "t2:8>2>d4", "t2:4>2>d4", "t2:4>2>d4", "t2:4>2>d4"};
  CHECK(got == want);

  // distinguished row: (C4 > C2) with Delta = C4, eps = 1, (eps1, eps2) = (3, 2)
  int four = find_perm(S4, {1, 2, 3, 0});
  Subgroup c4 = closure(*S4, {four});
  bool found = false;
  for (const auto& rep : cc.reps) {
    if (rep.size() != 2) continue;
    ChainData d = chain_data(L, rep);
    if (d.delta.order() != 4 || !is_cyclic(*S4, d.delta)) continue;
    found = true;
    CHECK(are_conjugate(*S4, full_subgroup(*S4), d.delta, c4));
    // on a generator s of Delta: eps(s) = q primitive, eps1(s) = -q, eps2(s) = 2q
    int gen = -1;
    for (int g : d.delta.elems)
      if (S4->elem_order[g] == 4) {
        gen = g;
        break;
      }
    REQUIRE(gen >= 0);
    Rat q = char_value(d.delta, d.delta_eps, gen);
    CHECK(qz_order(q) == 4);
    CHECK(char_value(d.delta, d.level_eps[0], gen) == mod1(-q));
    CHECK(char_value(d.delta, d.level_eps[1], gen) == mod1(Rat(2) * q));
    CHECK(d.divisor_chars[0] == char_sub(d.level_eps[0], d.delta_eps));
    CHECK(d.divisor_chars[1] == char_sub(d.level_eps[1], d.level_eps[0]));
  }
  CHECK(found);

  // row (S2 wr C2 > C2): Delta = normal Klein group, eps = e2,
  // (eps1, eps2) = (e1+e2, e1): eps, eps1, eps2 pairwise distinct nonzero.
  for (const auto& rep : cc.reps) {
    if (rep.size() != 2) continue;
    if (L.elems[rep[0]].gamma.order() != 8) continue;
    ChainData d = chain_data(L, rep);
    if (d.delta_eps.is_zero()) continue;  // the other wreath row has eps = 0
    CHECK(d.delta.order() == 4);
    CHECK(!is_cyclic(*S4, d.delta));
    CHECK(!d.level_eps[0].is_zero());
    CHECK(!d.level_eps[1].is_zero());
    CHECK(!(d.level_eps[0] == d.level_eps[1]));
    CHECK(!(d.delta_eps == d.level_eps[0]));
    CHECK(!(d.delta_eps == d.level_eps[1]));
  }
}

TEST_CASE("projective lattice of a free scalar action is empty") {
  GroupRef c4 = cyclic_group(4);
  Representation rho = diagonal_rep(c4, 4, {{Rat(1, 4), Rat(1, 4)}});
  Lattice L = projective_lattice(rho, full_subgroup(*c4));
  CHECK(L.scalar_sub.order() == 4);
  CHECK(L.elems.empty());
}

TEST_CASE("divisor index and J_I selector") {
  GroupRef S4 = symmetric_group(4);
  Representation rho = standard_rep(S4, 12);
  Lattice L = projective_lattice(rho, full_subgroup(*S4));
  ChainClasses cc = chain_classes(L);
  DivisorIndex di = group_divisors(L);
  CHECK(di.class_order.size() == 7);
  for (size_t i = 0; i < di.class_order.size(); ++i) {
    auto chains = chain_classes_for(L, cc, di, {static_cast<int>(i)});
    for (const auto& c : chains) {
      CHECK(c.size() == 1);
      CHECK(L.class_of[c[0]] == di.class_order[i]);
    }
  }
  int i_wreath = -1, i_c2diag = -1;
  for (size_t i = 0; i < di.class_order.size(); ++i) {
    const LatticeElem& e = L.elems[L.classes[di.class_order[i]].front()];
    if (e.gamma.order() == 8) i_wreath = static_cast<int>(i);
    if (e.gamma.order() == 2 && !e.eps.is_zero()) i_c2diag = static_cast<int>(i);
  }
  REQUIRE(i_wreath >= 0);
  REQUIRE(i_c2diag >= 0);
  auto sel = chain_classes_for(L, cc, di, {i_wreath, i_c2diag});
  CHECK(sel.size() == 1);
  int other2 = -1;
  for (size_t i = 0; i < di.class_order.size(); ++i) {
    const LatticeElem& e = L.elems[L.classes[di.class_order[i]].front()];
    if (e.gamma.order() == 2 && static_cast<int>(i) != i_c2diag) other2 = static_cast<int>(i);
  }
  REQUIRE(other2 >= 0);
  CHECK(chain_classes_for(L, cc, di, {i_c2diag, other2}).empty());
}

TEST_CASE("lattice closure invariants") {
  GroupRef S4 = symmetric_group(4);
  Representation rho = standard_rep(S4, 12);
  for (bool proj : {false, true}) {
    Lattice L = proj ? projective_lattice(rho, full_subgroup(*S4))
                     : stabilizer_lattice(rho, full_subgroup(*S4));
    for (const auto& e : L.elems) {
      if (proj) {
        auto [g, c] = scalar_stabilizer(L.rho, L.acting, e.space);
        CHECK(g == e.gamma);
        CHECK(c == e.eps);
      } else {
        CHECK(detail::pointwise_stabilizer(L.rho, L.acting, e.space) == e.gamma);
      }
    }
    for (size_t i = 0; i < L.elems.size(); ++i)
      for (size_t j = i + 1; j < L.elems.size(); ++j) {
        Subspace x = subspace_intersect(L.elems[i].space, L.elems[j].space, rho.F);
        CHECK((L.find_by_space(x) >= 0 || x.dim() == 0));
      }
  }
}

TEST_CASE("chain data invariants for S4 projective") {
  GroupRef S4 = symmetric_group(4);
  Representation rho = standard_rep(S4, 12);
  Lattice L = projective_lattice(rho, full_subgroup(*S4));
  ChainClasses cc = chain_classes(L);
  for (const auto& rep : cc.reps) {
    ChainData d = chain_data(L, rep);
    CHECK(is_abelian(*S4, d.delta));
    CHECK(d.divisor_chars.size() == rep.size());
    Subgroup z = centralizer(*S4, d.normalizer, d.delta);
    CHECK(z == d.normalizer);
    CHECK(canonical_chain(L, rep, L.acting) == rep);
  }
}
