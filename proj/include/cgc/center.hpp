#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "cgc/classify.hpp"
#include "cgc/grp.hpp"

namespace cgc::center {

struct Budgets {
  uint64_t orbit = 10'000'000;    // conjugation-orbit element budget
  uint64_t filter = 100'000'000;  // commutant filter: q^dim <= filter
  int workers = 0;                // 0: hardware concurrency
};

/// A modified conjugacy type of either family.
using ModifiedType = std::variant<PartitionFn, SymplecticFn>;

ModifiedType modified_type_from_json(const Fq& F, GroupKind kind,
                                     const nlohmann::json& j);
nlohmann::json modified_type_to_json(const Fq& F, const ModifiedType& t);

/// All modified types realizable at level n (completions of weight <= n for
/// GL, <= 2n for Sp), duplicate free.
std::vector<ModifiedType> modified_types(const Fq& F, GroupKind kind,
                                         uint32_t n);

/// Representative of the n-completion of a modified type.
Matrix realize(const Fq& F, GroupKind kind, uint32_t n, const ModifiedType& t);
/// Conjugacy test against the n-completion of t, by invariants only.
bool has_type(const Fq& F, GroupKind kind, uint32_t n, const Matrix& x,
              const ModifiedType& t);

struct StructureReport {
  GroupKind kind;
  uint32_t q = 0, n = 0;
  ModifiedType lambda, mu, eta;
  uint64_t constant = 0;
  std::string method;
  double timing_ms = 0;  // excluded from JSON: output stays byte-deterministic
  uint64_t orbit_count = 0;       // orbit-sum path only
  bool orbit_sum_agrees = false;  // orbit-sum path only
};
nlohmann::json to_json(const Fq& F, const StructureReport& r);

/// c_{lambda,mu}^{eta}(n) by fiber counting over the lambda-orbit with
/// class membership decided by gl_type/sp_type.
uint64_t structure_constant(const Fq& F, GroupKind kind, uint32_t n,
                            const ModifiedType& lambda, const ModifiedType& mu,
                            const ModifiedType& eta, const Budgets& budgets);
StructureReport structure_report(const Fq& F, GroupKind kind, uint32_t n,
                                 const ModifiedType& lambda,
                                 const ModifiedType& mu,
                                 const ModifiedType& eta,
                                 const Budgets& budgets);

struct ExpansionEntry {
  ModifiedType eta;
  uint64_t constant = 0;
  uint64_t class_size = 0;
};
struct Expansion {
  std::vector<ExpansionEntry> entries;
  uint64_t class_size_lambda = 0;
  uint64_t class_size_mu = 0;
  /// mass check: sum of c * |eta(n)| must equal |lambda(n)| * |mu(n)|
  uint64_t mass = 0;
  bool mass_ok = false;
};
Expansion product_expand(const Fq& F, GroupKind kind, uint32_t n,
                         const ModifiedType& lambda, const ModifiedType& mu,
                         const Budgets& budgets);
/// Restriction of the expansion to ||eta|| = ||lambda|| + ||mu||.
Expansion filtered_product(const Fq& F, GroupKind kind, uint32_t n,
                           const ModifiedType& lambda, const ModifiedType& mu,
                           const Budgets& budgets);

/// Fiber count cross-checked against the orbit decomposition
/// sum |C(x_i y_i)| / |C(x_i) n C(y_i)| over simultaneous-conjugation orbits.
StructureReport orbit_sum_check(const Fq& F, GroupKind kind, uint32_t n,
                                const ModifiedType& lambda,
                                const ModifiedType& mu, const ModifiedType& eta,
                                const Budgets& budgets);

struct GrowthReport {
  uint32_t m = 0, n = 0;
  int d = 0;
  bool in_hypothesis = false;  // no identity block (and rl-additivity for
                               // the intersection variant)
  uint64_t lhs = 0, rhs = 0;
  uint64_t cent_small = 0, tail_order = 0, q_power = 0;
  std::string method;
  bool pass = false;
};
nlohmann::json to_json(const GrowthReport& r);

/// |C_{Sp_n}(U^{^^n})| = |C_{Sp_m}(U)| |Sp_{n-m}| q^{2(n-m)d}.
GrowthReport growth_check_sp(const Fq& F, const Matrix& U, uint32_t m,
                             uint32_t n, const Budgets& budgets);
/// GL variant with |GL_{n-m}| and the same exponent.
GrowthReport growth_check_gl(const Fq& F, const Matrix& U, uint32_t m,
                             uint32_t n, const Budgets& budgets);
/// Intersection variant under rl-additivity, d from the fixed space of U1 U2.
GrowthReport intersection_growth_check(const Fq& F, const Matrix& U1,
                                       const Matrix& U2, uint32_t m,
                                       uint32_t n, const Budgets& budgets);

struct NormalFormReport {
  int rl1 = 0, rl2 = 0, rl12 = 0;
  bool subadditive = false;
  bool additive = false;
  bool kernel_identity = false;  // additive pairs only
  bool sum_is_whole = false;     // additive pairs only
  bool pass = false;
};
/// Fixed-space identities of the normal-form lemma: subadditivity always,
/// and for additive pairs ker(U1-I) n ker(U2-I) = ker(U1U2-I) with
/// V^{U1} + V^{U2} = V.
NormalFormReport normal_form_fixedspace_check(const Fq& F, const Matrix& U1,
                                              const Matrix& U2);

/// Exact centralizer order in the ambient group (Sp rank n or GL n): tries
/// the commutant filter within budget, then orbit-stabilizer.
uint64_t centralizer_order(const Fq& F, GroupKind kind, uint32_t n,
                           const std::vector<Matrix>& mats,
                           const Budgets& budgets, std::string* method_used);

}  // namespace cgc::center
