#include <catch2/catch_amalgamated.hpp>

#include "burnclass/group.hpp"

#include <set>

using namespace burn;

namespace {
// Independent subgroup oracle: grow subgroups by single generators, breadth
// first, with a plain std::set of element lists. Used to freeze expected counts.
std::set<std::vector<int>> oracle_subgroups(const FiniteGroup& G) {
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> work;
  found.insert({G.id});
  work.push_back({G.id});
  while (!work.empty()) {
    std::vector<int> h = work.back();
    work.pop_back();
    for (int g = 0; g < G.n; ++g) {
      std::vector<int> gens = h;
      gens.push_back(g);
      Subgroup s = closure(G, gens);
      if (found.insert(s.elems).second) work.push_back(s.elems);
    }
  }
  return found;
}

int find_perm(const GroupRef& G, const std::vector<int>& images) {
  for (int g = 0; g < G->n; ++g)
    if (G->perm[g] == images) return g;
  return -1;
}
}  // namespace

TEST_CASE("trivial group has only the trivial subgroup") {
  GroupRef t = cyclic_group(1);
  const auto& subs = all_subgroups(t);
  CHECK(subs.all.size() == 1);
  CHECK(subs.classes.size() == 1);
}

TEST_CASE("C6 subgroup lattice is the divisor lattice") {
  GroupRef c6 = cyclic_group(6);
  const auto& subs = all_subgroups(c6);
  CHECK(subs.all.size() == 4);  // orders 1,2,3,6
  std::multiset<int> orders;
  for (const auto& s : subs.all) orders.insert(s.order());
  CHECK(orders == std::multiset<int>{1, 2, 3, 6});
}

TEST_CASE("S4 has 30 subgroups in 11 conjugacy classes") {
  GroupRef s4 = symmetric_group(4);
  auto oracle = oracle_subgroups(*s4);
  CHECK(oracle.size() == 30);  // frozen from the oracle run
  const auto& subs = all_subgroups(s4);
  CHECK(subs.all.size() == 30);
  CHECK(subs.classes.size() == 11);
  // engine list equals oracle list element-wise
  std::set<std::vector<int>> engine;
  for (const auto& s : subs.all) engine.insert(s.elems);
  CHECK(engine == oracle);
}

TEST_CASE("subgroup enumeration is generator-order independent") {
  // same group born from different generator orderings
  GroupRef a = group_from_perms(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
  GroupRef b = group_from_perms(4, {{1, 2, 3, 0}, {1, 0, 2, 3}});
  const auto& sa = all_subgroups(a);
  const auto& sb = all_subgroups(b);
  std::set<std::vector<int>> xa, xb;
  for (const auto& s : sa.all) xa.insert(s.elems);
  for (const auto& s : sb.all) xb.insert(s.elems);
  CHECK(xa == xb);  // element numbering is canonical (sorted image vectors)
}

TEST_CASE("centralizers in S4") {
  GroupRef s4 = symmetric_group(4);
  Subgroup full = full_subgroup(*s4);
  // Z_G(trivial) = G
  CHECK(centralizer(*s4, full, trivial_subgroup(*s4)).order() == 24);
  // Z over <(1,2)(3,4)> has order 8
  int d = find_perm(s4, {1, 0, 3, 2});
  REQUIRE(d >= 0);
  Subgroup diag = closure(*s4, {d});
  Subgroup z = centralizer(*s4, full, diag);
  CHECK(z.order() == 8);
  // Z over <(1,2)> = <(1,2),(3,4)>, order 4  (derived: brute-force commuting test)
  int t12 = find_perm(s4, {1, 0, 2, 3});
  Subgroup h = closure(*s4, {t12});
  Subgroup z2 = centralizer(*s4, full, h);
  CHECK(z2.order() == 4);
  int t34 = find_perm(s4, {0, 1, 3, 2});
  CHECK(z2.contains(t34));
  // H <= Z_G(H) iff H abelian
  for (const auto& s : all_subgroups(s4).all) {
    Subgroup zs = centralizer(*s4, full, s);
    CHECK(zs.contains(s) == is_abelian(*s4, s));
    Subgroup ns = normalizer(*s4, full, s);
    CHECK(ns.contains(zs));
  }
}

TEST_CASE("normalizers in S4") {
  GroupRef s4 = symmetric_group(4);
  Subgroup full = full_subgroup(*s4);
  CHECK(normalizer(*s4, full, full).order() == 24);
  int t12 = find_perm(s4, {1, 0, 2, 3});
  int t34 = find_perm(s4, {0, 1, 3, 2});
  Subgroup v = closure(*s4, {t12, t34});
  CHECK(normalizer(*s4, full, v).order() == 8);  // derived: brute force
}

TEST_CASE("normalizer fixing a character: C4 with primitive character") {
  GroupRef s4 = symmetric_group(4);
  Subgroup full = full_subgroup(*s4);
  int four = find_perm(s4, {1, 2, 3, 0});
  Subgroup c4 = closure(*s4, {four});
  AbelianDual d = abelian_dual(*s4, c4);
  REQUIRE(d.factors == std::vector<int>{4});
  CharVec prim = char_from_exponents(*s4, d, {1});
  // subgroup of N(C4) fixing the primitive character is C4 itself
  Subgroup n = normalizer(*s4, full, c4);
  CHECK(n.order() == 8);
  Subgroup fixing;
  for (int g : n.elems)
    if (char_transport(*s4, c4, prim, g) == prim) fixing.elems.push_back(g);
  CHECK(fixing == c4);
}

TEST_CASE("abelian dual invariant factors") {
  GroupRef c6 = cyclic_group(6);
  AbelianDual d6 = abelian_dual(*c6, full_subgroup(*c6));
  CHECK(d6.factors == std::vector<int>{6});

  GroupRef s4 = symmetric_group(4);
  int t12 = find_perm(s4, {1, 0, 2, 3});
  int t34 = find_perm(s4, {0, 1, 3, 2});
  Subgroup v = closure(*s4, {t12, t34});
  AbelianDual dv = abelian_dual(*s4, v);
  CHECK(dv.factors == std::vector<int>{2, 2});
  // dual has |H| characters forming a nondegenerate pairing
  auto chars = all_chars(*s4, v);
  CHECK(chars.size() == 4);
  for (int x : v.elems) {
    if (x == s4->id) continue;
    bool separated = false;
    for (const auto& c : chars) separated = separated || char_value(v, c, x) != 0;
    CHECK(separated);
  }
}

TEST_CASE("character additivity and transport") {
  GroupRef s4 = symmetric_group(4);
  int t12 = find_perm(s4, {1, 0, 2, 3});
  int t34 = find_perm(s4, {0, 1, 3, 2});
  Subgroup v = closure(*s4, {t12, t34});
  for (const auto& c : all_chars(*s4, v)) {
    for (int a : v.elems)
      for (int b : v.elems)
        CHECK(char_value(v, c, s4->mul[a][b]) == mod1(char_value(v, c, a) + char_value(v, c, b)));
  }
  // transport by (1,3)(2,4) swaps the two transposition factors
  int swapg = find_perm(s4, {2, 3, 0, 1});
  REQUIRE(swapg >= 0);
  AbelianDual dv = abelian_dual(*s4, v);
  CharVec e1 = char_from_exponents(*s4, dv, {1, 0});
  CharVec moved = char_transport(*s4, v, e1, swapg);
  CHECK(conjugate_subgroup(*s4, v, swapg) == v);
  CHECK(moved != e1);
  // conjugation transport is a group action: g then g' equals g'g
  CharVec once = char_transport(*s4, v, e1, t12);
  CharVec twice = char_transport(*s4, conjugate_subgroup(*s4, v, t12), once, swapg);
  CharVec direct = char_transport(*s4, v, e1, s4->mul[swapg][t12]);
  CHECK(twice == direct);
}

TEST_CASE("conjugating a transposition subgroup relabels it") {
  GroupRef s4 = symmetric_group(4);
  int t12 = find_perm(s4, {1, 0, 2, 3});
  int t23 = find_perm(s4, {0, 2, 1, 3});
  Subgroup h = closure(*s4, {t12});
  Subgroup moved = conjugate_subgroup(*s4, h, t23);
  int t13 = find_perm(s4, {2, 1, 0, 3});
  CHECK(moved == closure(*s4, {t13}));
}

TEST_CASE("linear characters of nonabelian subgroups") {
  GroupRef s4 = symmetric_group(4);
  auto chars = linear_chars(*s4, full_subgroup(*s4));
  CHECK(chars.size() == 2);  // trivial and sign
  // extension query: character of <(1,2)> extends to <(1,2),(3,4)> in two ways
  int t12 = find_perm(s4, {1, 0, 2, 3});
  int t34 = find_perm(s4, {0, 1, 3, 2});
  Subgroup h = closure(*s4, {t12});
  Subgroup s = closure(*s4, {t12, t34});
  AbelianDual dh = abelian_dual(*s4, h);
  CharVec prim = char_from_exponents(*s4, dh, {1});
  CHECK(char_extensions(*s4, s, h, prim).size() == 2);
}

TEST_CASE("quotient groups") {
  GroupRef s4 = symmetric_group(4);
  int a = find_perm(s4, {1, 0, 3, 2});
  int b = find_perm(s4, {2, 3, 0, 1});
  Subgroup klein = closure(*s4, {a, b});
  REQUIRE(klein.order() == 4);
  GroupRef q = quotient_group(s4, klein);
  CHECK(q->n == 6);
  // S4 / V4 is isomorphic to S3: nonabelian of order 6
  CHECK(!is_abelian(*q, full_subgroup(*q)));
  // image/preimage round trip
  Subgroup img = image_subgroup(*q, klein);
  CHECK(img.order() == 1);
  Subgroup pre = preimage_subgroup(*q, img);
  CHECK(pre == klein);
  // quotient by trivial returns the same object
  CHECK(quotient_group(s4, trivial_subgroup(*s4)).get() == s4.get());
}

TEST_CASE("product groups") {
  GroupRef g = product_group(cyclic_group(5), symmetric_group(3));
  CHECK(g->n == 30);
  CHECK(g->degree == 8);
}
