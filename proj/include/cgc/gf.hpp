#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgc {

/// Element of F_q, stored as a canonical code in 0..q-1.
/// For prime fields the code is the residue; for extension fields it is the
/// coefficient vector of the residue polynomial packed in base p.
using FqElem = uint32_t;

struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Arithmetic context for F_q, q = p^k with p prime.
///
/// q is odd everywhere the symplectic theory is involved; p = 2 (k = 1) is
/// accepted for GL-only computations. All operations are table driven and the
/// object is immutable after construction, so one instance can be shared
/// between threads freely.
class Fq {
public:
  static Fq make(uint32_t p, uint32_t k = 1);
  /// Accepts "p" or "p^k", e.g. "3", "9" (= "3^2").
  static Fq parse(const std::string& spec);

  uint32_t p() const { return p_; }
  uint32_t k() const { return k_; }
  uint32_t q() const { return q_; }
  bool odd() const { return p_ != 2; }

  /// Modulus polynomial over F_p, ascending coefficients, degree k.
  /// Identity (t) placeholder is not used; for k = 1 this is {0, 1}.
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  FqElem zero() const { return 0; }
  FqElem one() const { return one_; }

  FqElem add(FqElem a, FqElem b) const { return add_[a * q_ + b]; }
  FqElem sub(FqElem a, FqElem b) const { return add_[a * q_ + neg_[b]]; }
  FqElem mul(FqElem a, FqElem b) const { return mul_[a * q_ + b]; }
  FqElem neg(FqElem a) const { return neg_[a]; }
  FqElem inv(FqElem a) const;
  FqElem div(FqElem a, FqElem b) const;
  FqElem pow(FqElem a, uint64_t e) const;

  /// Reduce an arbitrary integer into the prime subfield.
  FqElem from_int(long long v) const;
  /// Reduce an arbitrary integer code mod q (text formats store codes).
  FqElem from_code(long long v) const;

  /// +1 if a is a nonzero square, -1 otherwise. Requires a != 0 and q odd.
  int sign_class(FqElem a) const;

  /// All q elements, starting with 0.
  std::vector<FqElem> enumerate() const;

  std::string to_string(FqElem a) const { return std::to_string(a); }

private:
  Fq() = default;
  void build_tables();

  uint32_t p_ = 0, k_ = 0, q_ = 0;
  FqElem one_ = 1;
  std::vector<uint32_t> modulus_;
  std::vector<FqElem> add_, mul_, neg_, inv_;
  std::vector<int8_t> sign_;
};

}  // namespace cgc
