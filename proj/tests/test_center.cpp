#include <doctest.h>

#include <random>

#include "cgc/center.hpp"

using namespace cgc;
using namespace cgc::center;
using combin::t_minus_one;
using combin::t_plus_one;

namespace {

Budgets budgets() {
  Budgets b;
  b.workers = 2;
  return b;
}

SymplecticFn sp_mod(const Fq& F, SignedPartition hm, SignedPartition hp) {
  SymplecticFn fn;
  fn.base.set(t_minus_one(F), combin::expand(hm));
  fn.base.set(t_plus_one(F), combin::expand(hp));
  fn.hminus = std::move(hm);
  fn.hplus = std::move(hp);
  return fn;
}

}  // namespace

TEST_CASE("structure constant against the GL_2(2) brute-force oracle") {
  Fq F2 = Fq::make(2);
  const GroupTable& gl22 = grp::group_table(F2, GroupKind::gl, 2);
  REQUIRE(gl22.order() == 6);  // GL_2(2) ~ S_3

  // oracle: all 36 pairs
  PartitionFn transposition;  // order-2 elements: lambda(t+1) = (2)
  transposition.set(t_minus_one(F2), {2});
  PartitionFn threecycle;
  threecycle.set(Poly{1, 1, 1}, {1});
  Matrix z = classify::build_rep_gl(F2, threecycle);
  uint64_t expect = 0;
  for (PackedCode cx : gl22.elements)
    for (PackedCode cy : gl22.elements) {
      Matrix x = unpack(F2, cx, 2), y = unpack(F2, cy, 2);
      if (classify::gl_type(F2, x) == transposition &&
          classify::gl_type(F2, y) == transposition &&
          mat::mul(F2, x, y) == z)
        ++expect;
    }
  CHECK(expect == 3);

  ModifiedType lam = combin::modify(F2, transposition);
  ModifiedType eta = combin::modify(F2, threecycle);
  CHECK(structure_constant(F2, GroupKind::gl, 2, lam, lam, eta, budgets()) ==
        expect);

  // commutativity and the trivial product
  ModifiedType trivial = PartitionFn{};
  CHECK(structure_constant(F2, GroupKind::gl, 2, trivial, trivial, trivial,
                           budgets()) == 1);
  CHECK(structure_constant(F2, GroupKind::gl, 2, lam, eta, lam, budgets()) ==
        structure_constant(F2, GroupKind::gl, 2, eta, lam, lam, budgets()));
}

TEST_CASE("symplectic stability instance: c(1) = c(2)") {
  Fq F3 = Fq::make(3);
  ModifiedType lam = sp_mod(F3, {{1, 1, +1}}, {});
  // product class of weight 2: try all symplectic types of that weight
  bool any = false;
  for (const SymplecticFn& eta_full : combin::enumerate_types_sp(F3, 2)) {
    ModifiedType eta = combin::modify(F3, eta_full);
    if (combin::weight(std::get<SymplecticFn>(eta)) != 2) continue;
    uint64_t c1 =
        structure_constant(F3, GroupKind::sp, 1, lam, lam, eta, budgets());
    uint64_t c2 =
        structure_constant(F3, GroupKind::sp, 2, lam, lam, eta, budgets());
    CHECK(c1 == c2);
    if (c1 > 0) any = true;
  }
  CHECK(any);
}

TEST_CASE("product expansion and mass conservation") {
  Fq F3 = Fq::make(3);
  ModifiedType trivial = SymplecticFn{};
  ModifiedType u = sp_mod(F3, {{1, 1, +1}}, {});

  Expansion triv = product_expand(F3, GroupKind::sp, 1, trivial, u, budgets());
  REQUIRE(triv.entries.size() == 1);
  CHECK(triv.entries[0].eta == u);
  CHECK(triv.entries[0].constant == 1);
  CHECK(triv.mass_ok);

  Expansion uu = product_expand(F3, GroupKind::sp, 1, u, u, budgets());
  CHECK(uu.class_size_lambda == 4);
  CHECK(uu.class_size_mu == 4);
  CHECK(uu.mass == 16);
  CHECK(uu.mass_ok);

  Expansion filt = filtered_product(F3, GroupKind::sp, 1, u, u, budgets());
  for (const auto& e : filt.entries)
    CHECK(combin::weight(std::get<SymplecticFn>(e.eta)) == 2);
  for (const auto& e : filt.entries) {
    bool found = false;
    for (const auto& fe : uu.entries)
      if (fe.eta == e.eta && fe.constant == e.constant) found = true;
    CHECK(found);
  }
}

TEST_CASE("orbit-sum decomposition agrees with fiber counts") {
  Fq F3 = Fq::make(3);
  ModifiedType trivial = SymplecticFn{};
  ModifiedType u = sp_mod(F3, {{1, 1, +1}}, {});

  StructureReport r0 =
      orbit_sum_check(F3, GroupKind::sp, 1, trivial, u, u, budgets());
  CHECK(r0.orbit_count == 1);
  CHECK(r0.orbit_sum_agrees);
  CHECK(r0.constant == 1);

  for (const SymplecticFn& eta_full : combin::enumerate_types_sp(F3, 2)) {
    ModifiedType eta = combin::modify(F3, eta_full);
    StructureReport r =
        orbit_sum_check(F3, GroupKind::sp, 1, u, u, eta, budgets());
    CHECK(r.orbit_sum_agrees);
    if (r.constant) CHECK(r.orbit_count > 0);
  }
}

TEST_CASE("centralizer growth in Sp") {
  Fq F3 = Fq::make(3);
  Matrix Je = mat::j_block_eps(F3, 2, 1);
  GrowthReport r = growth_check_sp(F3, Je, 1, 2, budgets());
  CHECK(r.in_hypothesis);
  CHECK(r.cent_small == 6);
  CHECK(r.tail_order == 24);
  CHECK(r.d == 1);
  CHECK(r.q_power == 9);
  CHECK(r.pass);

  // negated unipotent: no fixed space, pure tail factor
  Matrix mJe = mat::neg(F3, Je);
  GrowthReport r2 = growth_check_sp(F3, mJe, 1, 2, budgets());
  CHECK(r2.d == 0);
  CHECK(r2.q_power == 1);
  CHECK(r2.in_hypothesis);
  CHECK(r2.pass);

  // the identity is outside the theorem's hypothesis
  GrowthReport r3 =
      growth_check_sp(F3, Matrix::identity(F3, 2), 1, 2, budgets());
  CHECK_FALSE(r3.in_hypothesis);
  CHECK(r3.lhs == 51840);  // centralizer of the identity is everything
}

TEST_CASE("centralizer growth in GL") {
  Fq F3 = Fq::make(3);
  Matrix J = mat::companion(F3, Poly{2, 1}, 2);
  GrowthReport r = growth_check_gl(F3, J, 2, 3, budgets());
  CHECK(r.in_hypothesis);
  CHECK(r.d == 1);
  CHECK(r.pass);

  Matrix C = mat::companion(F3, Poly{1, 0, 1}, 1);  // no eigenvalue 1
  GrowthReport r2 = growth_check_gl(F3, C, 2, 3, budgets());
  CHECK(r2.d == 0);
  CHECK(r2.q_power == 1);
  CHECK(r2.rhs == r2.cent_small * r2.tail_order);
  CHECK(r2.pass);
}

TEST_CASE("intersection growth in Sp") {
  Fq F3 = Fq::make(3);
  Matrix G1 = mat::gram_standard(F3, 1);
  Matrix I2 = Matrix::identity(F3, 2);
  Matrix T = mat::transvection(F3, {1, 0}, 1, G1);

  // U2 = I reduces to the single-centralizer growth
  GrowthReport ri = intersection_growth_check(F3, T, I2, 1, 2, budgets());
  GrowthReport rg = growth_check_sp(F3, T, 1, 2, budgets());
  CHECK(ri.lhs == rg.lhs);
  CHECK(ri.pass == rg.pass);

  // a transvection pair with additive reflection length
  Matrix T2 = mat::transvection(F3, {0, 1}, 1, G1);
  Matrix prod = mat::mul(F3, T, T2);
  REQUIRE(classify::refl_length(F3, prod) == 2);
  GrowthReport r = intersection_growth_check(F3, T, T2, 1, 2, budgets());
  CHECK(r.in_hypothesis);
  CHECK(r.pass);

  // non-additive pairs are flagged, not failed
  Matrix Tinv = mat::inverse(F3, T);
  GrowthReport r2 = intersection_growth_check(F3, T, Tinv, 1, 2, budgets());
  CHECK_FALSE(r2.in_hypothesis);
}

TEST_CASE("normal form fixed-space identities") {
  Fq F3 = Fq::make(3);
  Matrix I2 = Matrix::identity(F3, 2);
  NormalFormReport r = normal_form_fixedspace_check(F3, I2, I2);
  CHECK(r.additive);
  CHECK(r.pass);

  // exhaustive over SL_2(3) x SL_2(3)
  const GroupTable& sl23 = grp::group_table(F3, GroupKind::sp, 1);
  int additive = 0;
  for (PackedCode ca : sl23.elements)
    for (PackedCode cb : sl23.elements) {
      Matrix a = unpack(F3, ca, 2), b = unpack(F3, cb, 2);
      NormalFormReport rr = normal_form_fixedspace_check(F3, a, b);
      CHECK(rr.subadditive);
      if (rr.additive) {
        ++additive;
        CHECK(rr.kernel_identity);
        CHECK(rr.sum_is_whole);
        CHECK(rr.pass);
      }
    }
  CHECK(additive > 0);
}

TEST_CASE("budget guards") {
  Fq F3 = Fq::make(3);
  ModifiedType u = sp_mod(F3, {{1, 1, +1}}, {});
  Budgets tiny;
  tiny.orbit = 1;
  CHECK_THROWS_AS(
      structure_constant(F3, GroupKind::sp, 1, u, u, u, tiny),
      budget_error);
}

TEST_CASE("deterministic report JSON") {
  Fq F3 = Fq::make(3);
  ModifiedType u = sp_mod(F3, {{1, 1, +1}}, {});
  ModifiedType mI = sp_mod(F3, {}, {{1, 2, -1}});
  auto j1 = to_json(F3, structure_report(F3, GroupKind::sp, 1, u, u, mI, budgets()));
  auto j2 = to_json(F3, structure_report(F3, GroupKind::sp, 1, u, u, mI, budgets()));
  CHECK(j1.dump() == j2.dump());
}
