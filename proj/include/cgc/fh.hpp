#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "cgc/combin.hpp"

namespace cgc {

/// Permutation of {1..n} as an image array (0-based storage).
struct Perm {
  std::vector<int> img;

  static Perm identity(int n);
  int n() const { return static_cast<int>(img.size()); }
  int apply(int x) const { return img[x]; }
  Perm mul(const Perm& o) const;  // (this*o)(x) = this(o(x))
  Perm inv() const;
  auto operator<=>(const Perm&) const = default;
};

namespace fh {

Partition cycle_type(const Perm& g);
std::set<int> support(const Perm& g);
int refl_length_perm(const Perm& g);
uint64_t centralizer_order(const Partition& type);

/// All permutations of S_n with the given cycle type (type padded to n).
std::vector<Perm> class_of(const Partition& modified, int n);

/// Structure constant c_{lambda,mu}^{eta}(n) of Z(Z[S_n]) by fiber counting;
/// arguments are modified cycle types.
uint64_t sc_symmetric(const Partition& lam, const Partition& mu,
                      const Partition& eta, int n);

/// Full expansion of K_lambda(n) K_mu(n) as eta -> coefficient over modified
/// types, plus the class sizes needed for the mass check.
struct Expansion {
  std::vector<std::pair<Partition, uint64_t>> coeffs;
  uint64_t class_size_lambda = 0;
  uint64_t class_size_mu = 0;
  uint64_t mass = 0;  // sum of c * |eta(n)|
};
Expansion product_expand(const Partition& lam, const Partition& mu, int n);

}  // namespace fh
}  // namespace cgc
