#include "cgc/gf.hpp"

#include <algorithm>
#include <numeric>

namespace cgc {

namespace {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Conway-style moduli for the supported extension fields, ascending
// coefficients over F_p (monic, leading 1 included).
struct ExtModulus {
  uint32_t p, k;
  std::vector<uint32_t> coeffs;
};

const ExtModulus kExtTable[] = {
    {3, 2, {2, 2, 1}},     // t^2 + 2t + 2
    {5, 2, {2, 4, 1}},     // t^2 + 4t + 2
    {3, 3, {1, 2, 0, 1}},  // t^3 + 2t + 1
    {7, 2, {3, 6, 1}},     // t^2 + 6t + 3
};

// Multiply two coefficient vectors over F_p and reduce by the monic modulus.
std::vector<uint32_t> polymulmod(const std::vector<uint32_t>& a,
                                 const std::vector<uint32_t>& b, uint32_t p,
                                 const std::vector<uint32_t>& mod) {
  std::vector<uint32_t> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  size_t k = mod.size() - 1;
  for (size_t d = r.size(); d-- > k;) {
    uint32_t c = r[d];
    if (c == 0) continue;
    r[d] = 0;
    for (size_t i = 0; i < k; ++i) {
      uint32_t s = (c * mod[i]) % p;
      r[d - k + i] = (r[d - k + i] + p - s) % p;
    }
  }
  r.resize(k);
  return r;
}

}  // namespace

Fq Fq::make(uint32_t p, uint32_t k) {
  if (!is_prime(p)) throw domain_error("field characteristic must be prime");
  if (k < 1) throw domain_error("extension degree must be >= 1");
  Fq f;
  f.p_ = p;
  f.k_ = k;
  uint64_t q = 1;
  for (uint32_t i = 0; i < k; ++i) q *= p;
  if (q > 4096) throw domain_error("field too large for the table backend");
  f.q_ = static_cast<uint32_t>(q);
  if (k == 1) {
    f.modulus_ = {0, 1};
  } else {
    const ExtModulus* found = nullptr;
    for (const auto& e : kExtTable)
      if (e.p == p && e.k == k) found = &e;
    if (!found)
      throw domain_error("unsupported extension field " + std::to_string(p) +
                         "^" + std::to_string(k));
    f.modulus_ = found->coeffs;
  }
  f.build_tables();
  return f;
}

Fq Fq::parse(const std::string& spec) {
  auto caret = spec.find('^');
  try {
    if (caret != std::string::npos)
      return make(static_cast<uint32_t>(std::stoul(spec.substr(0, caret))),
                  static_cast<uint32_t>(std::stoul(spec.substr(caret + 1))));
    // Plain "q" also names a prime power, e.g. "9" for 3^2.
    uint32_t q = static_cast<uint32_t>(std::stoul(spec));
    if (is_prime(q)) return make(q, 1);
    for (uint32_t p = 2; p * p <= q; ++p) {
      if (!is_prime(p)) continue;
      uint32_t k = 0, v = q;
      while (v % p == 0) {
        v /= p;
        ++k;
      }
      if (v == 1) return make(p, k);
    }
    throw domain_error("field size must be a prime power: '" + spec + "'");
  } catch (const std::logic_error&) {
    throw domain_error("bad field spec '" + spec + "'");
  }
}

void Fq::build_tables() {
  const uint32_t q = q_;
  add_.assign(static_cast<size_t>(q) * q, 0);
  mul_.assign(static_cast<size_t>(q) * q, 0);
  neg_.assign(q, 0);
  inv_.assign(q, 0);
  sign_.assign(q, 0);

  auto unpack = [&](FqElem a) {
    std::vector<uint32_t> c(k_);
    for (uint32_t i = 0; i < k_; ++i) {
      c[i] = a % p_;
      a /= p_;
    }
    return c;
  };
  auto pack = [&](const std::vector<uint32_t>& c) {
    FqElem a = 0;
    for (uint32_t i = k_; i-- > 0;) a = a * p_ + c[i];
    return a;
  };

  for (FqElem a = 0; a < q; ++a) {
    auto ca = unpack(a);
    std::vector<uint32_t> cn(k_);
    for (uint32_t i = 0; i < k_; ++i) cn[i] = (p_ - ca[i]) % p_;
    neg_[a] = pack(cn);
    for (FqElem b = 0; b < q; ++b) {
      auto cb = unpack(b);
      std::vector<uint32_t> cs(k_);
      for (uint32_t i = 0; i < k_; ++i) cs[i] = (ca[i] + cb[i]) % p_;
      add_[a * q + b] = pack(cs);
      mul_[a * q + b] = pack(polymulmod(ca, cb, p_, modulus_));
    }
  }
  one_ = 1;
  for (FqElem a = 1; a < q; ++a)
    for (FqElem b = 1; b < q; ++b)
      if (mul_[a * q + b] == one_) inv_[a] = b;
  if (p_ != 2) {
    // a is a square iff a^((q-1)/2) = 1.
    for (FqElem a = 1; a < q; ++a) {
      FqElem r = one_;
      for (uint32_t e = 0; e < (q - 1) / 2; ++e) r = mul_[r * q + a];
      sign_[a] = (r == one_) ? 1 : -1;
    }
  }
}

FqElem Fq::inv(FqElem a) const {
  if (a == 0) throw domain_error("division by zero in F_q");
  return inv_[a];
}

FqElem Fq::div(FqElem a, FqElem b) const { return mul(a, inv(b)); }

FqElem Fq::pow(FqElem a, uint64_t e) const {
  FqElem r = one_;
  FqElem base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

FqElem Fq::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<FqElem>(r);
}

FqElem Fq::from_code(long long v) const {
  long long r = v % static_cast<long long>(q_);
  if (r < 0) r += q_;
  return static_cast<FqElem>(r);
}

int Fq::sign_class(FqElem a) const {
  if (!odd()) throw domain_error("sign_class needs odd q");
  if (a == 0) throw domain_error("sign_class of zero");
  return sign_[a];
}

std::vector<FqElem> Fq::enumerate() const {
  std::vector<FqElem> all(q_);
  std::iota(all.begin(), all.end(), 0u);
  return all;
}

}  // namespace cgc
