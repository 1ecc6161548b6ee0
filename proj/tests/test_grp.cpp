#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <set>

#include "cgc/grp.hpp"

using namespace cgc;
using namespace cgc::grp;

namespace {

// Exhaustive 2x2 oracles.
uint64_t count_gl2_by_enumeration(const Fq& F) {
  uint64_t count = 0;
  for (FqElem a : F.enumerate())
    for (FqElem b : F.enumerate())
      for (FqElem c : F.enumerate())
        for (FqElem d : F.enumerate())
          if (F.sub(F.mul(a, d), F.mul(b, c)) != 0) ++count;
  return count;
}

uint64_t count_sp1_by_enumeration(const Fq& F) {
  Matrix G = mat::gram_standard(F, 1);
  uint64_t count = 0;
  for (FqElem a : F.enumerate())
    for (FqElem b : F.enumerate())
      for (FqElem c : F.enumerate())
        for (FqElem d : F.enumerate()) {
          Matrix M(2, 2);
          M.at(0, 0) = a;
          M.at(0, 1) = b;
          M.at(1, 0) = c;
          M.at(1, 1) = d;
          if (mat::is_symplectic(F, M, G)) ++count;
        }
  return count;
}

}  // namespace

TEST_CASE("order formulas against enumeration oracles") {
  Fq F3 = Fq::make(3);
  CHECK(order_formula(GroupKind::gl, 2, 3) == 48);
  CHECK(count_gl2_by_enumeration(F3) == 48);
  CHECK(order_formula(GroupKind::sp, 1, 3) == 24);
  CHECK(count_sp1_by_enumeration(F3) == 24);
  CHECK(order_formula(GroupKind::sp, 2, 3) == 51840);
  CHECK(order_formula(GroupKind::gl, 3, 3) == 11232);
  CHECK(order_formula(GroupKind::gl, 4, 2) == 20160);
  CHECK(order_formula(GroupKind::sp, 3, 3) == 9170703360ULL);
}

TEST_CASE("packing round trip") {
  Fq F7 = Fq::make(7);
  std::mt19937 rng(5);
  std::uniform_int_distribution<uint32_t> d(0, 6);
  for (int iter = 0; iter < 100; ++iter) {
    Matrix M(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) M.at(i, j) = d(rng);
    CHECK(unpack(F7, pack(F7, M), 6) == M);
  }
}

TEST_CASE("bfs closure") {
  Fq F3 = Fq::make(3);
  GroupTable trivial = bfs_closure(F3, GroupKind::gl, 2,
                                   {Matrix::identity(F3, 2)}, 1);
  CHECK(trivial.order() == 1);

  GroupTable sl23 =
      bfs_closure(F3, GroupKind::sp, 1, generators(F3, GroupKind::sp, 1), 24);
  CHECK(sl23.order() == 24);

  // wrong expected order is reported as insufficient generators
  CHECK_THROWS_AS(bfs_closure(F3, GroupKind::sp, 1,
                              {Matrix::identity(F3, 2)}, 24),
                  domain_error);
}

TEST_CASE("group tables, closure and random products stay inside") {
  Fq F3 = Fq::make(3);
  const GroupTable& gl23 = group_table(F3, GroupKind::gl, 2);
  CHECK(gl23.order() == 48);

  std::mt19937 rng(17);
  std::uniform_int_distribution<size_t> pick(0, gl23.elements.size() - 1);
  for (int iter = 0; iter < 10000; ++iter) {
    Matrix a = unpack(F3, gl23.elements[pick(rng)], 2);
    Matrix b = unpack(F3, gl23.elements[pick(rng)], 2);
    CHECK(gl23.contains(pack(F3, mat::mul(F3, a, b))));
    CHECK(gl23.contains(pack(F3, mat::inverse(F3, a))));
  }

  // class sizes sum to the group order
  uint64_t total = 0;
  for (const auto& cls : conjugacy_classes(F3, gl23)) total += cls.size;
  CHECK(total == 48);
}

TEST_CASE("conjugation orbits and orbit-stabilizer") {
  Fq F3 = Fq::make(3);
  auto gens = generators(F3, GroupKind::sp, 1);
  CHECK(conj_orbit(F3, Matrix::identity(F3, 2), gens, 100).size() == 1);

  Matrix T = mat::transvection(F3, {1, 0}, 1, mat::gram_standard(F3, 1));
  auto orbit = conj_orbit(F3, T, gens, 1000);

  // oracle: direct scan of SL_2(3) for the conjugates of T
  const GroupTable& sl23 = group_table(F3, GroupKind::sp, 1);
  std::set<std::string> expect;
  for (PackedCode c : sl23.elements) {
    Matrix g = unpack(F3, c, 2);
    Matrix conj = mat::mul(F3, mat::mul(F3, mat::inverse(F3, g), T), g);
    expect.insert(mat::to_text(F3, conj));
  }
  CHECK(orbit.size() == expect.size());
  CHECK(orbit.size() == 4);  // 24 / |centralizer| = 24/6

  uint64_t cent = centralizer_order_scan(F3, sl23, {T});
  CHECK(orbit.size() * cent == sl23.order());

  CHECK_THROWS_AS(conj_orbit(F3, T, gens, 2), budget_error);
}

TEST_CASE("commutant spaces") {
  Fq F3 = Fq::make(3);
  auto full = commutant_basis(F3, {Matrix::identity(F3, 2)});
  CHECK(full.size() == 4);

  Matrix J = mat::companion(F3, Poly{2, 1}, 2);  // regular nilpotent + 1
  auto cj = commutant_basis(F3, {J});
  CHECK(cj.size() == 2);  // commutant of a regular block has dim = size
  for (const Matrix& B : cj)
    CHECK(mat::mul(F3, J, B) == mat::mul(F3, B, J));

  // Schur vanishing between distinct irreducible blocks
  Matrix U(4, 4);
  Matrix A = mat::companion(F3, Poly{2, 1}, 2);
  Matrix B = mat::companion(F3, Poly{1, 0, 1}, 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      U.at(i, j) = A.at(i, j);
      U.at(2 + i, 2 + j) = B.at(i, j);
    }
  for (const Matrix& D : commutant_basis(F3, {U}))
    for (int i = 0; i < 2; ++i)
      for (int j = 2; j < 4; ++j) {
        CHECK(D.at(i, j) == 0);
        CHECK(D.at(j, i) == 0);
      }
}

TEST_CASE("centralizer counting: filter vs scan vs orbit") {
  Fq F3 = Fq::make(3);
  Matrix G1 = mat::gram_standard(F3, 1);
  const GroupTable& sl23 = group_table(F3, GroupKind::sp, 1);

  CHECK(centralizer_order_filtered(F3, {Matrix::identity(F3, 2)}, &G1,
                                   100000000) == 24);
  Matrix Je = mat::j_block_eps(F3, 2, 1);
  CHECK(centralizer_order_filtered(F3, {Je}, &G1, 100000000) == 6);

  for (const auto& cls : conjugacy_classes(F3, sl23)) {
    uint64_t scan = centralizer_order_scan(F3, sl23, {cls.rep});
    uint64_t filt = centralizer_order_filtered(F3, {cls.rep}, &G1, 100000000);
    uint64_t orb = centralizer_order_orbit(F3, GroupKind::sp, 1, cls.rep,
                                           100000);
    CHECK(scan == filt);
    CHECK(scan == orb);
    CHECK(cls.size * scan == sl23.order());
  }

  // GL variants (no gram)
  const GroupTable& gl23 = group_table(F3, GroupKind::gl, 2);
  for (const auto& cls : conjugacy_classes(F3, gl23)) {
    uint64_t scan = centralizer_order_scan(F3, gl23, {cls.rep});
    uint64_t filt =
        centralizer_order_filtered(F3, {cls.rep}, nullptr, 100000000);
    CHECK(scan == filt);
  }
  Fq F5 = Fq::make(5);
  const GroupTable& gl25 = group_table(F5, GroupKind::gl, 2);
  CHECK(gl25.order() == 480);
  auto classes5 = conjugacy_classes(F5, gl25);
  for (size_t i = 0; i < classes5.size(); i += 3) {
    uint64_t scan = centralizer_order_scan(F5, gl25, {classes5[i].rep});
    CHECK(scan == centralizer_order_filtered(F5, {classes5[i].rep}, nullptr,
                                             100000000));
  }

  // tiny budget trips the guard
  CHECK_THROWS_AS(
      centralizer_order_filtered(F3, {Matrix::identity(F3, 2)}, &G1, 10),
      budget_error);
}

TEST_CASE("cache round trip") {
  Fq F3 = Fq::make(3);
  GroupTable sl23 =
      bfs_closure(F3, GroupKind::sp, 1, generators(F3, GroupKind::sp, 1), 24);
  auto dir = std::filesystem::temp_directory_path() / "cgc_test_cache";
  std::filesystem::remove_all(dir);
  std::string path = cache_path(dir.string(), GroupKind::sp, 1, 3);
  save_cache(sl23, path);
  auto loaded = load_cache(path, GroupKind::sp, 1, 3, 2);
  REQUIRE(loaded.has_value());
  CHECK(loaded->elements == sl23.elements);
  CHECK_FALSE(load_cache(path, GroupKind::sp, 2, 3, 4).has_value());
  std::filesystem::remove_all(dir);
}
