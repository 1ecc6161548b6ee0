#pragma once

#include <utility>
#include <vector>

#include "cgc/gf.hpp"

namespace cgc {

/// Polynomial over F_q: ascending coefficient codes, no trailing zeros.
/// The zero polynomial is the empty vector.
using Poly = std::vector<FqElem>;

namespace poly {

inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }
inline bool is_zero(const Poly& f) { return f.empty(); }
inline bool is_monic(const Fq& F, const Poly& f) {
  return !f.empty() && f.back() == F.one();
}

Poly trim(Poly f);
Poly constant(const Fq& F, FqElem c);
/// t - a
Poly linear_minus(const Fq& F, FqElem a);
Poly t_power(const Fq& F, int d);

Poly add(const Fq& F, const Poly& a, const Poly& b);
Poly sub(const Fq& F, const Poly& a, const Poly& b);
Poly mul(const Fq& F, const Poly& a, const Poly& b);
Poly scale(const Fq& F, const Poly& a, FqElem c);
std::pair<Poly, Poly> divmod(const Fq& F, const Poly& a, const Poly& b);
Poly gcd(const Fq& F, Poly a, Poly b);  // monic
Poly pow(const Fq& F, const Poly& a, uint32_t e);
Poly make_monic(const Fq& F, const Poly& a);
FqElem eval(const Fq& F, const Poly& f, FqElem x);

/// Total order used for canonical keys: by degree, then coefficient codes.
bool less(const Poly& a, const Poly& b);

/// All monic irreducibles over F_q of degree <= d, excluding t,
/// in canonical order.
std::vector<Poly> monic_irreducibles(const Fq& F, int d);
/// Same, degree exactly d.
std::vector<Poly> monic_irreducibles_of_degree(const Fq& F, int d);
bool is_irreducible(const Fq& F, const Poly& f);

/// Factor a monic polynomial into (irreducible, exponent) pairs in canonical
/// key order. Trial division against the enumerated irreducible table; fine
/// at the degrees this project meets.
std::vector<std::pair<Poly, int>> factor(const Fq& F, const Poly& f);

/// Dual polynomial: coefficients a_i a_0^{-1} reversed. Roots map to their
/// inverses. Requires f monic with f(0) != 0.
Poly dual(const Fq& F, const Poly& f);
bool is_self_dual(const Fq& F, const Poly& f);
/// True iff f is monic self-dual and either irreducible or g*dual(g) with g
/// irreducible and not self-dual.
bool is_dual_irreducible(const Fq& F, const Poly& f);

std::string to_string(const Fq& F, const Poly& f);

}  // namespace poly
}  // namespace cgc
