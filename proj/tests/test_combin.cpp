#include <doctest.h>

#include "cgc/combin.hpp"

using namespace cgc;
using namespace cgc::combin;

namespace {

SymplecticFn make_sp(const Fq& F, SignedPartition hm, SignedPartition hp,
                     std::vector<std::pair<Poly, Partition>> others = {}) {
  SymplecticFn fn;
  fn.base.set(t_minus_one(F), expand(hm));
  fn.base.set(t_plus_one(F), expand(hp));
  fn.hminus = std::move(hm);
  fn.hplus = std::move(hp);
  for (auto& [k, p] : others) fn.base.set(k, p);
  return fn;
}

}  // namespace

TEST_CASE("partition modification / completion") {
  Partition lam = {4, 3, 3, 2, 1, 1, 1};
  CHECK(modify(lam) == Partition{3, 2, 2, 1});
  CHECK(complete(Partition{2, 1}) == Partition{3, 2});
  CHECK(ncomplete(Partition{3, 2, 2, 1}, 15) == lam);
  CHECK(modify(Partition{}) == Partition{});
  CHECK(ncomplete(Partition{}, 4) == Partition{1, 1, 1, 1});
  CHECK_THROWS_AS(ncomplete(Partition{3, 2}, 5), domain_error);
}

TEST_CASE("partition valued function weight and modification") {
  Fq F3 = Fq::make(3);
  Poly t2pa = {1, 0, 1};  // t^2 - alpha with alpha = 2 a non-square mod 3
  REQUIRE(F3.sign_class(2) == -1);

  PartitionFn mu;
  mu.set(t_minus_one(F3), {3, 2, 1, 1});
  mu.set(t2pa, {2, 2, 1});
  CHECK(weight(mu) == 17);  // 1*(3+2+1+1) + 2*(2+2+1)

  PartitionFn mod = modify(F3, mu);
  CHECK(mod.get(t_minus_one(F3)) == Partition{2, 1});
  CHECK(mod.get(t2pa) == Partition{2, 2, 1});
  CHECK(weight(mod) == 13);

  // 1*(3+2) + 2*(2+2+1) = 15 is the weight of the completion (3,2) side
  PartitionFn comp = complete(F3, mod);
  CHECK(comp.get(t_minus_one(F3)) == Partition{3, 2});
  CHECK(weight(comp) == 15);
  CHECK(ncomplete(F3, mod, 17) == mu);

  CHECK(weight(PartitionFn{}) == 0);
}

TEST_CASE("unipotent split") {
  Fq F3 = Fq::make(3);
  Poly t2pa = {1, 0, 1};
  PartitionFn mu;
  mu.set(t_minus_one(F3), {3, 2, 1, 1});
  mu.set(t2pa, {2, 2, 1});
  auto [e, ne] = unipotent_split(F3, mu);
  CHECK(e.get(t_minus_one(F3)) == Partition{3, 2, 1, 1});
  CHECK(e.factors.size() == 1);
  CHECK(ne.get(t2pa) == Partition{2, 2, 1});
  CHECK(ne.factors.size() == 1);

  auto [e2, ne2] = unipotent_split(F3, e);
  CHECK(e2 == e);
  CHECK(ne2 == PartitionFn{});
  auto [e3, ne3] = unipotent_split(F3, PartitionFn{});
  CHECK(e3 == PartitionFn{});
  CHECK(ne3 == PartitionFn{});
}

TEST_CASE("symplectic function operators") {
  Fq F3 = Fq::make(3);

  SymplecticFn u = make_sp(F3, {{2, 1, +1}}, {});
  CHECK(valid_sp(F3, u));
  CHECK(weight(u) == 2);

  SymplecticFn umod = modify(F3, u);
  CHECK(umod.hminus == SignedPartition{{1, 1, +1}});  // sign travels
  CHECK(weight(umod) == 1);

  // modified validity: even parts at t-1 now carry the constraint
  CHECK(valid_sp(F3, umod, /*modified=*/true));

  SymplecticFn back = ncomplete(F3, umod, 2);
  CHECK(back == u);

  SymplecticFn up2 = ncomplete(F3, umod, 4);
  CHECK(weight(up2) == 4);
  CHECK(up2.hminus == SignedPartition{{1, 2, -1}, {2, 1, +1}});
  CHECK(up2.base.get(t_minus_one(F3)) == Partition{2, 1, 1});
  CHECK(valid_sp(F3, up2));

  // t+1 data is untouched by modification and padding
  SymplecticFn minus_u = make_sp(F3, {}, {{2, 1, -1}});
  CHECK(modify(F3, minus_u) == minus_u);
  SymplecticFn mu_up = ncomplete(F3, modify(F3, minus_u), 4);
  CHECK(mu_up.hplus == SignedPartition{{2, 1, -1}});
  CHECK(mu_up.hminus == SignedPartition{{1, 2, -1}});

  CHECK_THROWS_AS(ncomplete(F3, umod, 1), domain_error);

  // weight of a symplectic fn equals the weight of the underlying fn
  CHECK(weight(u) == weight(u.base));
}

TEST_CASE("symplectic validity rules") {
  Fq F3 = Fq::make(3);
  // odd part with odd multiplicity is invalid
  SymplecticFn bad = make_sp(F3, {{1, 1, -1}}, {});
  CHECK_FALSE(valid_sp(F3, bad));
  // odd part with even multiplicity but sign +1 is invalid
  SymplecticFn bad2 = make_sp(F3, {{1, 2, +1}}, {});
  CHECK_FALSE(valid_sp(F3, bad2));
  SymplecticFn good = make_sp(F3, {{1, 2, -1}}, {});
  std::string why;
  CHECK(valid_sp(F3, good, false, &why));
}

TEST_CASE("type enumeration counts") {
  Fq F3 = Fq::make(3);
  auto gl1 = enumerate_types_gl(F3, 1);
  REQUIRE(gl1.size() == 2);  // lambda(t-1)=(1) and lambda(t-2)=(1)

  Fq F2 = Fq::make(2);
  CHECK(enumerate_types_gl(F2, 2).size() == 3);  // GL_2(2) ~ S_3 has 3 classes

  auto sp2 = enumerate_types_sp(F3, 2);
  CHECK(sp2.size() == 7);  // SL_2(3) has 7 conjugacy classes
  for (const auto& t : sp2) {
    CHECK(valid_sp(F3, t));
    CHECK(weight(t) == 2);
  }
  CHECK(std::adjacent_find(sp2.begin(), sp2.end()) == sp2.end());

  // SL_2(5) has 9 classes; the ninth comes from the merged pair (t-2)(t-3)
  Fq F5 = Fq::make(5);
  CHECK(enumerate_types_sp(F5, 2).size() == 9);

  CHECK_THROWS_AS(enumerate_types_sp(F3, 3), domain_error);  // odd weight
}

TEST_CASE("round trip: modify(ncomplete(x, n)) = x over enumerated types") {
  Fq F3 = Fq::make(3);
  for (const PartitionFn& t : enumerate_types_gl(F3, 3)) {
    PartitionFn x = modify(F3, t);
    for (int n = weight(complete(F3, x)); n <= 5; ++n) {
      CHECK(modify(F3, ncomplete(F3, x, n)) == x);
      CHECK(weight(ncomplete(F3, x, n)) == n);
    }
  }
  for (const SymplecticFn& t : enumerate_types_sp(F3, 4)) {
    SymplecticFn x = modify(F3, t);
    for (int w = weight(complete(F3, x)); w <= 6; w += 2) {
      CHECK(modify(F3, ncomplete(F3, x, w)) == x);
      CHECK(weight(ncomplete(F3, x, w)) == w);
    }
  }
}

TEST_CASE("json schema round trip") {
  Fq F3 = Fq::make(3);
  PartitionFn mu;
  mu.set(t_minus_one(F3), {3, 2, 1, 1});
  mu.set(Poly{1, 0, 1}, {2, 2, 1});
  auto j = to_json(F3, mu);
  CHECK(partition_fn_from_json(F3, j) == mu);

  // integers are reduced mod q on load: [-1, 1] is t-1
  auto j2 = nlohmann::json::parse(R"({"factors":[{"poly":[-1,1],"parts":[2]}]})");
  PartitionFn fn2 = partition_fn_from_json(F3, j2);
  CHECK(fn2.get(t_minus_one(F3)) == Partition{2});

  SymplecticFn u = make_sp(F3, {{1, 2, -1}, {2, 1, +1}}, {{2, 1, -1}},
                           {{Poly{1, 0, 1}, {1}}});
  auto js = to_json(F3, u);
  CHECK(symplectic_fn_from_json(F3, js) == u);

  // signs are mandatory for t-+1 keys in the symplectic schema
  auto j3 = nlohmann::json::parse(R"({"factors":[{"poly":[2,1],"parts":[2]}]})");
  CHECK_THROWS_AS(symplectic_fn_from_json(F3, j3), domain_error);
}
