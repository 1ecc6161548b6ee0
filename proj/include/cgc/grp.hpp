#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cgc/mat.hpp"

namespace cgc {

enum class GroupKind { gl, sp };

std::string kind_name(GroupKind k);

/// Matrix entries packed base q into a 128-bit code, row major. Valid while
/// q^(dim^2) fits into 128 bits, which covers everything at desk scale.
using PackedCode = unsigned __int128;

struct PackedCodeHash {
  size_t operator()(PackedCode c) const {
    uint64_t lo = static_cast<uint64_t>(c);
    uint64_t hi = static_cast<uint64_t>(c >> 64);
    uint64_t h = lo * 0x9e3779b97f4a7c15ULL;
    h ^= hi + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<size_t>(h * 0xff51afd7ed558ccdULL);
  }
};

PackedCode pack(const Fq& F, const Matrix& M);
Matrix unpack(const Fq& F, PackedCode code, int dim);

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fully enumerated finite matrix group, elements in BFS discovery order.
struct GroupTable {
  GroupKind kind;
  uint32_t n = 0;  // rank: matrices are n x n for gl, 2n x 2n for sp
  uint32_t q = 0;
  int dim = 0;
  std::vector<PackedCode> elements;
  std::unordered_map<PackedCode, uint32_t, PackedCodeHash> index;

  uint64_t order() const { return elements.size(); }
  bool contains(PackedCode c) const { return index.count(c) != 0; }
};

namespace grp {

/// |GL_n(q)| or |Sp_n(q)| by the closed forms; throws on uint64 overflow.
uint64_t order_formula(GroupKind kind, uint32_t n, uint32_t q);

/// Generator supply. GL: elementary transvections and dilations. Sp:
/// symplectic transvections with coefficient 1 in every projective direction
/// (these are guaranteed to generate for odd q).
std::vector<Matrix> generators(const Fq& F, GroupKind kind, uint32_t n);

/// BFS closure of a generating set; raises "generators insufficient" when the
/// resulting order does not match the closed form.
GroupTable bfs_closure(const Fq& F, GroupKind kind, uint32_t n,
                       const std::vector<Matrix>& gens,
                       uint64_t expected_order);

/// Enumerate (and cache) the whole group. Cache directory resolution:
/// explicit argument, else $CGC_CACHE, else ".cgc-cache".
const GroupTable& group_table(const Fq& F, GroupKind kind, uint32_t n,
                              const std::string& cache_dir = "");

/// Conjugation orbit of rep under the subgroup generated by gens (the full
/// conjugacy class when gens generate the group). Deterministic BFS order.
std::vector<Matrix> conj_orbit(const Fq& F, const Matrix& rep,
                               const std::vector<Matrix>& gens,
                               uint64_t budget);

/// Basis of the joint commutant {X : UX = XU for all U}. Rows of the result
/// are the vectorized basis matrices; use commutant_to_matrix to reshape.
std::vector<Matrix> commutant_basis(const Fq& F,
                                    const std::vector<Matrix>& mats);

/// Exact count of invertible (and symplectic, when a gram is given) elements
/// of the joint commutant, by enumerating the commutant space. Requires
/// q^dim(commutant) <= budget.
uint64_t centralizer_order_filtered(const Fq& F,
                                    const std::vector<Matrix>& mats,
                                    const Matrix* gram, uint64_t budget);

/// Exact centralizer order via orbit-stabilizer: group order divided by the
/// size of the conjugation orbit under a full generator supply.
uint64_t centralizer_order_orbit(const Fq& F, GroupKind kind, uint32_t n,
                                 const Matrix& rep, uint64_t orbit_budget);

/// Partition a fully enumerated group into conjugacy classes; returns one
/// representative (the first element in packed-code discovery order) per
/// class together with the class size.
struct ClassInfo {
  Matrix rep;
  uint64_t size = 0;
};
std::vector<ClassInfo> conjugacy_classes(const Fq& F, const GroupTable& table);

/// Direct centralizer scan over an enumerated group table.
uint64_t centralizer_order_scan(const Fq& F, const GroupTable& table,
                                const std::vector<Matrix>& mats);

void save_cache(const GroupTable& table, const std::string& path);
std::optional<GroupTable> load_cache(const std::string& path, GroupKind kind,
                                     uint32_t n, uint32_t q, int dim);
std::string cache_path(const std::string& dir, GroupKind kind, uint32_t n,
                       uint32_t q);

}  // namespace grp
}  // namespace cgc
