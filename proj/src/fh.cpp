#include "cgc/fh.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace cgc {

Perm Perm::identity(int n) {
  Perm p;
  p.img.resize(n);
  std::iota(p.img.begin(), p.img.end(), 0);
  return p;
}

Perm Perm::mul(const Perm& o) const {
  Perm r;
  r.img.resize(img.size());
  for (size_t x = 0; x < img.size(); ++x) r.img[x] = img[o.img[x]];
  return r;
}

Perm Perm::inv() const {
  Perm r;
  r.img.resize(img.size());
  for (size_t x = 0; x < img.size(); ++x) r.img[img[x]] = static_cast<int>(x);
  return r;
}

namespace fh {

Partition cycle_type(const Perm& g) {
  std::vector<bool> seen(g.n(), false);
  Partition type;
  for (int start = 0; start < g.n(); ++start) {
    if (seen[start]) continue;
    int len = 0, x = start;
    while (!seen[x]) {
      seen[x] = true;
      x = g.img[x];
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end(), std::greater<>());
  return type;
}

std::set<int> support(const Perm& g) {
  std::set<int> s;
  for (int x = 0; x < g.n(); ++x)
    if (g.img[x] != x) s.insert(x);
  return s;
}

int refl_length_perm(const Perm& g) {
  return g.n() - static_cast<int>(cycle_type(g).size());
}

uint64_t centralizer_order(const Partition& type) {
  std::map<int, int> mult;
  for (int part : type) ++mult[part];
  uint64_t order = 1;
  for (auto [k, m] : mult) {
    for (int i = 0; i < m; ++i) order *= static_cast<uint64_t>(k);
    for (int i = 2; i <= m; ++i) order *= static_cast<uint64_t>(i);
  }
  return order;
}

namespace {

Perm canonical_rep(const Partition& full_type) {
  int n = combin::weight(full_type);
  Perm p = Perm::identity(n);
  int off = 0;
  for (int part : full_type) {
    for (int i = 0; i < part; ++i) p.img[off + i] = off + (i + 1) % part;
    off += part;
  }
  return p;
}

constexpr int kMaxN = 9;  // 9! enumeration budget

}  // namespace

std::vector<Perm> class_of(const Partition& modified, int n) {
  if (n > kMaxN) throw domain_error("symmetric-group budget is n <= 9");
  Partition full = combin::ncomplete(modified, n);
  Perm rep = canonical_rep(full);
  // conjugation orbit under adjacent transpositions, mirroring the
  // matrix-group path
  std::vector<Perm> orbit = {rep};
  std::map<std::vector<int>, bool> seen;
  seen[rep.img] = true;
  for (size_t head = 0; head < orbit.size(); ++head) {
    Perm cur = orbit[head];
    for (int i = 0; i + 1 < n; ++i) {
      Perm conj = cur;
      // conjugate by the transposition (i, i+1): relabel i <-> i+1
      std::swap(conj.img[i], conj.img[i + 1]);
      for (auto& v : conj.img)
        if (v == i)
          v = i + 1;
        else if (v == i + 1)
          v = i;
      if (!seen.count(conj.img)) {
        seen[conj.img] = true;
        orbit.push_back(conj);
      }
    }
  }
  return orbit;
}

uint64_t sc_symmetric(const Partition& lam, const Partition& mu,
                      const Partition& eta, int n) {
  Partition mu_full = combin::ncomplete(mu, n);
  Partition eta_full = combin::ncomplete(eta, n);
  Perm z = canonical_rep(eta_full);
  uint64_t count = 0;
  for (const Perm& x : class_of(lam, n))
    if (cycle_type(x.inv().mul(z)) == mu_full) ++count;
  return count;
}

Expansion product_expand(const Partition& lam, const Partition& mu, int n) {
  Expansion out;
  Partition mu_full = combin::ncomplete(mu, n);
  auto lam_class = class_of(lam, n);
  out.class_size_lambda = lam_class.size();
  out.class_size_mu = class_of(mu, n).size();
  uint64_t fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  for (const Partition& eta_full : combin::partitions_of(n)) {
    Perm z = canonical_rep(eta_full);
    uint64_t c = 0;
    for (const Perm& x : lam_class)
      if (cycle_type(x.inv().mul(z)) == mu_full) ++c;
    if (c) {
      out.coeffs.push_back({combin::modify(eta_full), c});
      out.mass += c * (fact / centralizer_order(eta_full));
    }
  }
  return out;
}

}  // namespace fh
}  // namespace cgc
