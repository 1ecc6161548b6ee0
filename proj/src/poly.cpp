#include "cgc/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace cgc::poly {

Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Poly constant(const Fq& F, FqElem c) {
  (void)F;
  if (c == 0) return {};
  return {c};
}

Poly linear_minus(const Fq& F, FqElem a) { return {F.neg(a), F.one()}; }

Poly t_power(const Fq& F, int d) {
  Poly f(d + 1, 0);
  f[d] = F.one();
  return f;
}

Poly add(const Fq& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    FqElem x = i < a.size() ? a[i] : 0;
    FqElem y = i < b.size() ? b[i] : 0;
    r[i] = F.add(x, y);
  }
  return trim(std::move(r));
}

Poly sub(const Fq& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    FqElem x = i < a.size() ? a[i] : 0;
    FqElem y = i < b.size() ? b[i] : 0;
    r[i] = F.sub(x, y);
  }
  return trim(std::move(r));
}

Poly mul(const Fq& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return trim(std::move(r));
}

Poly scale(const Fq& F, const Poly& a, FqElem c) {
  if (c == 0) return {};
  Poly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  return trim(std::move(r));
}

std::pair<Poly, Poly> divmod(const Fq& F, const Poly& a, const Poly& b) {
  if (b.empty()) throw domain_error("polynomial division by zero");
  Poly rem = a;
  if (a.size() < b.size()) return {Poly{}, rem};
  const int db = degree(b);
  Poly quo(a.size() - b.size() + 1, 0);
  FqElem lead_inv = F.inv(b.back());
  for (int i = degree(rem); i >= db; --i) {
    if (rem[i] == 0) continue;
    FqElem c = F.mul(rem[i], lead_inv);
    quo[i - db] = c;
    for (int j = 0; j <= db; ++j)
      rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, b[j]));
  }
  return {trim(std::move(quo)), trim(std::move(rem))};
}

Poly gcd(const Fq& F, Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = divmod(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(F, a);
}

Poly pow(const Fq& F, const Poly& a, uint32_t e) {
  Poly r = {F.one()};
  Poly base = a;
  while (e) {
    if (e & 1) r = mul(F, r, base);
    base = mul(F, base, base);
    e >>= 1;
  }
  return r;
}

Poly make_monic(const Fq& F, const Poly& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

FqElem eval(const Fq& F, const Poly& f, FqElem x) {
  FqElem r = 0;
  for (size_t i = f.size(); i-- > 0;) r = F.add(F.mul(r, x), f[i]);
  return r;
}

bool less(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

bool is_irreducible(const Fq& F, const Poly& f) {
  if (degree(f) < 1) return false;
  if (degree(f) == 1) return true;
  if (f[0] == 0) return false;  // divisible by t
  // No factor of degree <= deg/2 from the monic table (t handled above).
  for (int d = 1; d <= degree(f) / 2; ++d)
    for (const Poly& g : monic_irreducibles_of_degree(F, d))
      if (divmod(F, f, g).second.empty()) return false;
  return true;
}

std::vector<Poly> monic_irreducibles_of_degree(const Fq& F, int d) {
  static std::mutex cache_mutex;
  static std::map<std::pair<uint32_t, int>, std::vector<Poly>> cache;
  auto key = std::make_pair(F.q(), d);
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::vector<Poly> out;
  // Enumerate all q^d monic candidates in canonical coefficient order.
  std::vector<FqElem> coeffs(d, 0);
  while (true) {
    Poly f(coeffs.begin(), coeffs.end());
    f.push_back(F.one());
    bool skip_t = d == 1 && coeffs[0] == 0;  // f = t is excluded from Phi
    if (!skip_t && is_irreducible(F, f)) out.push_back(f);
    int i = d - 1;
    while (i >= 0 && coeffs[i] + 1 == F.q()) coeffs[i--] = 0;
    if (i < 0) break;
    ++coeffs[i];
  }
  std::sort(out.begin(), out.end(), less);
  std::lock_guard lock(cache_mutex);
  cache[key] = out;
  return out;
}

std::vector<Poly> monic_irreducibles(const Fq& F, int d) {
  std::vector<Poly> out;
  for (int i = 1; i <= d; ++i) {
    auto di = monic_irreducibles_of_degree(F, i);
    out.insert(out.end(), di.begin(), di.end());
  }
  return out;
}

std::vector<std::pair<Poly, int>> factor(const Fq& F, const Poly& f) {
  if (!is_monic(F, f)) throw domain_error("factor expects a monic polynomial");
  std::map<Poly, int, bool (*)(const Poly&, const Poly&)> found(less);
  Poly rest = f;
  // t divides f iff f(0) = 0; peel it first since Phi excludes t.
  Poly t = {0, F.one()};
  while (degree(rest) >= 1 && rest[0] == 0) {
    ++found[t];
    rest = divmod(F, rest, t).first;
  }
  for (int d = 1; degree(rest) >= 1 && d <= degree(rest); ++d) {
    for (const Poly& g : monic_irreducibles_of_degree(F, d)) {
      while (degree(rest) >= d) {
        auto [q, r] = divmod(F, rest, g);
        if (!r.empty()) break;
        ++found[g];
        rest = q;
      }
      if (degree(rest) < 1) break;
    }
  }
  return {found.begin(), found.end()};
}

Poly dual(const Fq& F, const Poly& f) {
  if (!is_monic(F, f)) throw domain_error("dual expects a monic polynomial");
  if (f.empty() || f[0] == 0) throw domain_error("dual requires f(0) != 0");
  int d = degree(f);
  FqElem a0inv = F.inv(f[0]);
  Poly r(d + 1, 0);
  for (int i = 0; i <= d; ++i) r[d - i] = F.mul(f[i], a0inv);
  return trim(std::move(r));
}

bool is_self_dual(const Fq& F, const Poly& f) {
  return is_monic(F, f) && !f.empty() && f[0] != 0 && dual(F, f) == f;
}

bool is_dual_irreducible(const Fq& F, const Poly& f) {
  if (!is_self_dual(F, f)) return false;
  if (is_irreducible(F, f)) return true;
  auto fs = factor(F, f);
  if (fs.size() != 2) return false;
  if (fs[0].second != 1 || fs[1].second != 1) return false;
  const Poly& g = fs[0].first;
  return dual(F, g) == fs[1].first && dual(F, g) != g;
}

std::string to_string(const Fq& F, const Poly& f) {
  if (f.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) s += ",";
    s += F.to_string(f[i]);
  }
  return s;
}

}  // namespace cgc::poly
