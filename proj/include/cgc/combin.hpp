#pragma once

#include <json.hpp>
#include <utility>
#include <vector>

#include "cgc/poly.hpp"

namespace cgc {

/// Non-increasing positive parts.
using Partition = std::vector<int>;

/// Partition valued function on the monic irreducibles != t (or on the
/// dual-irreducible keys in the symplectic case). Keys are held in canonical
/// (degree, coefficients) order and never map to the empty partition.
struct PartitionFn {
  std::vector<std::pair<Poly, Partition>> factors;

  Partition get(const Poly& key) const;
  void set(const Poly& key, Partition parts);
  bool operator==(const PartitionFn&) const = default;
  bool operator<(const PartitionFn& o) const { return factors < o.factors; }
};

/// One run of equal parts in a signed partition.
struct SignedEntry {
  int size = 0;
  int mult = 0;
  int sign = +1;
  auto operator<=>(const SignedEntry&) const = default;
};
/// Ascending distinct sizes.
using SignedPartition = std::vector<SignedEntry>;

/// Symplectic (signed) partition valued function: base function on the
/// dual-irreducible keys plus sign data at t-1 and t+1.
struct SymplecticFn {
  PartitionFn base;
  SignedPartition hminus;  // signs at t-1
  SignedPartition hplus;   // signs at t+1
  bool operator==(const SymplecticFn&) const = default;
  bool operator<(const SymplecticFn& o) const;
};

namespace combin {

Poly t_minus_one(const Fq& F);
Poly t_plus_one(const Fq& F);

int weight(const Partition& p);
int length(const Partition& p);
/// Weight of a partition valued function: sum of deg(f) * ||lambda_f||.
int weight(const PartitionFn& fn);
int weight(const SymplecticFn& fn);
int weight(const SignedPartition& sp);

Partition union_parts(const Partition& a, const Partition& b);
std::vector<Partition> partitions_of(int n);

Partition expand(const SignedPartition& sp);
SignedPartition group_signed(const Partition& p, const std::vector<int>& signs);

// Modification strips one box from every part at t-1 (signs travel with their
// parts); completion restores them; the n-completion additionally pads with
// 1-parts (sign -1 in the symplectic case) up to total weight n (2n counts as
// the total here: pass the full target weight).
Partition modify(const Partition& p);
Partition complete(const Partition& p);
Partition ncomplete(const Partition& p, int n);

PartitionFn modify(const Fq& F, const PartitionFn& fn);
PartitionFn complete(const Fq& F, const PartitionFn& fn);
PartitionFn ncomplete(const Fq& F, const PartitionFn& fn, int n);

SymplecticFn modify(const Fq& F, const SymplecticFn& fn);
SymplecticFn complete(const Fq& F, const SymplecticFn& fn);
SymplecticFn ncomplete(const Fq& F, const SymplecticFn& fn, int target_weight);

std::pair<PartitionFn, PartitionFn> unipotent_split(const Fq& F,
                                                    const PartitionFn& fn);

/// Validity of a symplectic function. In a completed (group-level) function
/// odd parts at t-1 and t+1 carry even multiplicity and sign -1; after
/// modification that rule holds for the even parts at t-1 instead.
bool valid_sp(const Fq& F, const SymplecticFn& fn, bool modified = false,
              std::string* why = nullptr);

/// All GL types of the given weight: complete and duplicate free.
std::vector<PartitionFn> enumerate_types_gl(const Fq& F, int weight);
/// All symplectic types of the given (even, full) weight.
std::vector<SymplecticFn> enumerate_types_sp(const Fq& F, int weight);

/// All signed symplectic partitions of weight v.
std::vector<SignedPartition> symplectic_signed_partitions(int v);

nlohmann::json to_json(const Fq& F, const PartitionFn& fn);
nlohmann::json to_json(const Fq& F, const SymplecticFn& fn);
PartitionFn partition_fn_from_json(const Fq& F, const nlohmann::json& j);
SymplecticFn symplectic_fn_from_json(const Fq& F, const nlohmann::json& j);

std::string to_string(const Fq& F, const PartitionFn& fn);
std::string to_string(const Fq& F, const SymplecticFn& fn);

}  // namespace combin
}  // namespace cgc
