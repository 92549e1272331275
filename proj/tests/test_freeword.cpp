#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mubar/freeword.hpp"
#include "mubar/magnus.hpp"

using namespace mubar;

namespace {

GroupWord gw(std::initializer_list<Letter> ls) {
  return GroupWord(std::vector<Letter>(ls));
}

GroupWord random_word(std::mt19937_64& rng, const std::vector<Gen>& gens,
                      int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  std::vector<Letter> raw;
  const int n = len(rng);
  for (int i = 0; i < n; ++i)
    raw.push_back(Letter{gens[pick(rng)], sgn(rng) ? 1 : -1});
  return GroupWord(std::move(raw));
}

const Gen x13 = Gen::strand_pair(1, 3);
const Gen x23 = Gen::strand_pair(2, 3);
const Gen m1 = Gen::meridian(1);
const Gen m2 = Gen::meridian(2);

}  // namespace

TEST_CASE("free reduction") {
  CHECK(gw({{x13, 1}, {x13, -1}}).empty());
  CHECK(gw({{m1, 1}, {m2, 1}, {m2, -1}, {m1, 1}}) == gw({{m1, 1}, {m1, 1}}));
  const GroupWord c = gw({{m1, 1}, {m2, 1}, {m1, -1}, {m2, -1}});
  CHECK(c.size() == 4);  // already reduced
  // idempotent
  CHECK(GroupWord(c.letters()) == c);
}

TEST_CASE("group operations") {
  const GroupWord a = GroupWord::generator(x13);
  const GroupWord b = GroupWord::generator(x23);
  CHECK(commutator(a, b) ==
        gw({{x13, 1}, {x23, 1}, {x13, -1}, {x23, -1}}));
  CHECK(commutator(a, GroupWord{}).empty());
  CHECK(inverse(gw({{m1, 1}, {m2, 1}})) == gw({{m2, -1}, {m1, -1}}));
  CHECK(mul(a, inverse(a)).empty());
}

TEST_CASE("mul associative and reduce idempotent (randomized)") {
  std::mt19937_64 rng(7);
  const std::vector<Gen> gens = {m1, m2, Gen::meridian(3)};
  for (int t = 0; t < 10000; ++t) {
    const GroupWord u = random_word(rng, gens, 6);
    const GroupWord v = random_word(rng, gens, 6);
    const GroupWord w = random_word(rng, gens, 6);
    CHECK(mul(mul(u, v), w) == mul(u, mul(v, w)));
  }
}

TEST_CASE("expand_simple_commutator") {
  SimpleCommutatorSpec borr;
  borr.target = 3;
  borr.levels = {{1, 1, Side::Left}, {2, 1, Side::Left}};
  // levels are innermost-first: base x_13, wrapped by x_23 on the left
  // gives [x23, x13]; the Borromean clasp [x13, x23] is base x_23 wrapped
  // by x_13.
  SimpleCommutatorSpec borr2;
  borr2.target = 3;
  borr2.levels = {{2, 1, Side::Left}, {1, 1, Side::Left}};
  CHECK(expand_simple_commutator(borr2) ==
        commutator(GroupWord::generator(x13), GroupWord::generator(x23)));

  SimpleCommutatorSpec base;
  base.target = 4;
  base.levels = {{2, -1, Side::Left}};
  CHECK(expand_simple_commutator(base) ==
        GroupWord::generator(Gen::strand_pair(2, 4), -1));

  // depth 3, [x14,[x24,x34]] has 10 letters after reduction
  SimpleCommutatorSpec d3;
  d3.target = 4;
  d3.levels = {{3, 1, Side::Left}, {2, 1, Side::Left}, {1, 1, Side::Left}};
  const GroupWord w = expand_simple_commutator(d3);
  const GroupWord expected =
      commutator(GroupWord::generator(Gen::strand_pair(1, 4)),
                 commutator(GroupWord::generator(Gen::strand_pair(2, 4)),
                            GroupWord::generator(Gen::strand_pair(3, 4))));
  CHECK(w == expected);
  CHECK(w.size() == 10);

  SimpleCommutatorSpec bad;
  CHECK_THROWS_AS(expand_simple_commutator(bad), std::invalid_argument);
  bad.target = 3;
  bad.levels = {{3, 1, Side::Left}};
  CHECK_THROWS_AS(expand_simple_commutator(bad), std::invalid_argument);
}

TEST_CASE("lcs_degree") {
  CHECK(lcs_degree(GroupWord{}, 5) == 6);
  const GroupWord c = commutator(GroupWord::generator(x13),
                                 GroupWord::generator(x23));
  CHECK(lcs_degree(c, 4) == 2);
  SimpleCommutatorSpec d3;
  d3.target = 4;
  d3.levels = {{3, 1, Side::Left}, {2, 1, Side::Left}, {1, 1, Side::Left}};
  CHECK(lcs_degree(expand_simple_commutator(d3), 4) == 3);
  CHECK(in_lcs(c, 2));
  CHECK_FALSE(in_lcs(c, 3));
}

TEST_CASE("Witt-Hall identities 2 and 3 hold verbatim") {
  std::mt19937_64 rng(11);
  const std::vector<Gen> gens = {m1, m2, Gen::meridian(3)};
  for (int t = 0; t < 500; ++t) {
    const GroupWord x = random_word(rng, gens, 6);
    const GroupWord y = random_word(rng, gens, 6);
    const GroupWord z = random_word(rng, gens, 6);
    // [x,zy] = [x,z][x,y][[y,x],z]
    CHECK(commutator(x, mul(z, y)) ==
          mul(mul(commutator(x, z), commutator(x, y)),
              commutator(commutator(y, x), z)));
    // [xy,z] = [y,z][[z,y],x][x,z]  (with the left-hand side as it must
    // read for the identity to hold; [x,zy] on the left is false)
    CHECK(commutator(mul(x, y), z) ==
          mul(mul(commutator(y, z), commutator(commutator(z, y), x)),
              commutator(x, z)));
  }
}

TEST_CASE("hall_collect basics") {
  const GroupWord x = GroupWord::generator(m1);
  const GroupWord y = GroupWord::generator(m2);

  auto factors = hall_collect(commutator(x, y), 2);
  REQUIRE(factors.size() == 1);
  CHECK(factors[0].weight == 2);
  CHECK(factors[0].exponent == -1);
  CHECK(factors[0].word == commutator(y, x));  // basis has [m2,m1]

  CHECK(hall_collect(GroupWord{}, 3).empty());

  // w = yx collects to x*y*correction with residual in F_3.
  const GroupWord w = mul(y, x);
  auto f2 = hall_collect(w, 2);
  GroupWord prod;
  for (const auto& f : f2) prod = mul(prod, pow(f.word, f.exponent));
  CHECK(in_lcs(mul(inverse(prod), w), 3));
}

TEST_CASE("hall_collect residual property (randomized)") {
  std::mt19937_64 rng(23);
  const std::vector<Gen> gens = {m1, m2};
  for (int cls = 1; cls <= 4; ++cls) {
    for (int t = 0; t < 25; ++t) {
      const GroupWord w = random_word(rng, gens, 5);
      auto factors = hall_collect(w, cls);
      GroupWord prod;
      int last_weight = 0;
      for (const auto& f : factors) {
        CHECK(f.weight >= last_weight);
        last_weight = f.weight;
        prod = mul(prod, pow(f.word, f.exponent));
      }
      CHECK(in_lcs(mul(inverse(prod), w), cls + 1));
    }
  }
}

TEST_CASE("decompose_to_simple") {
  const GroupWord c = commutator(GroupWord::generator(x13),
                                 GroupWord::generator(x23));
  auto d = decompose_to_simple(c, 2, 2);
  CHECK(d.ok);
  REQUIRE(d.specs.size() == 1);
  CHECK(d.specs[0].depth() == 2);
  GroupWord prod;
  for (const auto& s : d.specs)
    prod = mul(prod, expand_simple_commutator(s));
  CHECK(in_lcs(mul(inverse(prod), c), 3));

  auto e = decompose_to_simple(GroupWord{}, 2, 3);
  CHECK(e.ok);
  CHECK(e.specs.empty());

  // [x13,x23]*[x13^-1,x23] lies in F_3 already; decomposition at level 2
  // contributes nothing at degree 2 and the residual stays in F_3.
  const GroupWord w2 =
      mul(c, commutator(GroupWord::generator(x13, -1),
                        GroupWord::generator(x23)));
  auto d2 = decompose_to_simple(w2, 2, 2);
  CHECK(d2.ok);
  GroupWord prod2;
  for (const auto& s : d2.specs)
    prod2 = mul(prod2, expand_simple_commutator(s));
  CHECK(in_lcs(mul(inverse(prod2), w2), 3));
}

TEST_CASE("decompose handles products of simple commutators at k=4") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    // random product of depth-3 simple commutators on {1,2,3}->4
    std::vector<int> idx = {1, 2, 3};
    std::shuffle(idx.begin(), idx.end(), rng);
    SimpleCommutatorSpec s;
    s.target = 4;
    for (int i = 0; i < 3; ++i)
      s.levels.push_back(SimpleCommutatorLevel{
          idx[i], rng() % 2 ? 1 : -1,
          i > 0 && rng() % 2 ? Side::Right : Side::Left});
    const GroupWord w = expand_simple_commutator(s);
    auto d = decompose_to_simple(w, 3, 3);
    CHECK(d.ok);
    GroupWord prod;
    for (const auto& sp : d.specs)
      prod = mul(prod, expand_simple_commutator(sp));
    CHECK(in_lcs(mul(inverse(prod), w), 4));
  }
}
