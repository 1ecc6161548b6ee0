#include "cgc/combin.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace cgc {

Partition PartitionFn::get(const Poly& key) const {
  for (const auto& [k, v] : factors)
    if (k == key) return v;
  return {};
}

void PartitionFn::set(const Poly& key, Partition parts) {
  auto it = std::find_if(factors.begin(), factors.end(),
                         [&](const auto& kv) { return kv.first == key; });
  if (parts.empty()) {
    if (it != factors.end()) factors.erase(it);
    return;
  }
  if (it != factors.end()) {
    it->second = std::move(parts);
    return;
  }
  auto pos = std::find_if(factors.begin(), factors.end(), [&](const auto& kv) {
    return poly::less(key, kv.first);
  });
  factors.insert(pos, {key, std::move(parts)});
}

bool SymplecticFn::operator<(const SymplecticFn& o) const {
  if (base.factors != o.base.factors) return base < o.base;
  if (hminus != o.hminus) return hminus < o.hminus;
  return hplus < o.hplus;
}

namespace combin {

Poly t_minus_one(const Fq& F) { return poly::linear_minus(F, F.one()); }
Poly t_plus_one(const Fq& F) { return poly::linear_minus(F, F.neg(F.one())); }

int weight(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }
int length(const Partition& p) { return static_cast<int>(p.size()); }

int weight(const PartitionFn& fn) {
  int w = 0;
  for (const auto& [f, parts] : fn.factors) w += poly::degree(f) * weight(parts);
  return w;
}

int weight(const SymplecticFn& fn) { return weight(fn.base); }

int weight(const SignedPartition& sp) {
  int w = 0;
  for (const auto& e : sp) w += e.size * e.mult;
  return w;
}

Partition union_parts(const Partition& a, const Partition& b) {
  Partition r = a;
  r.insert(r.end(), b.begin(), b.end());
  std::sort(r.begin(), r.end(), std::greater<>());
  return r;
}

std::vector<Partition> partitions_of(int n) {
  static std::mutex m;
  static std::map<int, std::vector<Partition>> cache;
  {
    std::lock_guard lock(m);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, int rest, int maxpart) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(rest, maxpart); part >= 1; --part) {
      cur.push_back(part);
      self(self, rest - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  std::lock_guard lock(m);
  cache[n] = out;
  return out;
}

Partition expand(const SignedPartition& sp) {
  Partition p;
  for (auto it = sp.rbegin(); it != sp.rend(); ++it)
    p.insert(p.end(), it->mult, it->size);
  return p;
}

SignedPartition group_signed(const Partition& p, const std::vector<int>& signs) {
  if (p.size() != signs.size())
    throw domain_error("sign list does not match partition length");
  SignedPartition sp;
  for (size_t i = 0; i < p.size(); ++i) {
    auto it = std::find_if(sp.begin(), sp.end(),
                           [&](const SignedEntry& e) { return e.size == p[i]; });
    if (it != sp.end()) {
      if (it->sign != signs[i])
        throw domain_error("equal parts must share one sign");
      ++it->mult;
    } else {
      sp.push_back({p[i], 1, signs[i]});
    }
  }
  std::sort(sp.begin(), sp.end(),
            [](const SignedEntry& a, const SignedEntry& b) { return a.size < b.size; });
  return sp;
}

Partition modify(const Partition& p) {
  Partition r;
  for (int part : p)
    if (part > 1) r.push_back(part - 1);
  return r;
}

Partition complete(const Partition& p) {
  Partition r = p;
  for (int& part : r) ++part;
  return r;
}

Partition ncomplete(const Partition& p, int n) {
  Partition c = complete(p);
  int pad = n - weight(c);
  if (pad < 0) throw domain_error("n too small for the completion");
  c.insert(c.end(), pad, 1);
  return c;
}

PartitionFn modify(const Fq& F, const PartitionFn& fn) {
  PartitionFn r = fn;
  r.set(t_minus_one(F), modify(fn.get(t_minus_one(F))));
  return r;
}

PartitionFn complete(const Fq& F, const PartitionFn& fn) {
  PartitionFn r = fn;
  r.set(t_minus_one(F), complete(fn.get(t_minus_one(F))));
  return r;
}

PartitionFn ncomplete(const Fq& F, const PartitionFn& fn, int n) {
  PartitionFn r = complete(F, fn);
  int pad = n - weight(r);
  if (pad < 0) throw domain_error("n too small for the completion");
  Partition at1 = r.get(t_minus_one(F));
  at1.insert(at1.end(), pad, 1);
  r.set(t_minus_one(F), at1);
  return r;
}

SymplecticFn modify(const Fq& F, const SymplecticFn& fn) {
  SymplecticFn r = fn;
  r.base = modify(F, fn.base);
  SignedPartition hm;
  for (const auto& e : fn.hminus)
    if (e.size > 1) hm.push_back({e.size - 1, e.mult, e.sign});
  r.hminus = hm;
  return r;
}

SymplecticFn complete(const Fq& F, const SymplecticFn& fn) {
  SymplecticFn r = fn;
  r.base = complete(F, fn.base);
  for (auto& e : r.hminus) ++e.size;
  return r;
}

SymplecticFn ncomplete(const Fq& F, const SymplecticFn& fn, int target_weight) {
  SymplecticFn r = complete(F, fn);
  int pad = target_weight - weight(r);
  if (pad < 0) throw domain_error("target weight too small for the completion");
  if (pad % 2 != 0) throw domain_error("symplectic completion weight must be even");
  if (pad > 0) {
    Partition at1 = r.base.get(t_minus_one(F));
    at1.insert(at1.end(), pad, 1);
    r.base.set(t_minus_one(F), at1);
    r.hminus.insert(r.hminus.begin(), SignedEntry{1, pad, -1});
  }
  return r;
}

std::pair<PartitionFn, PartitionFn> unipotent_split(const Fq& F,
                                                    const PartitionFn& fn) {
  PartitionFn e, ne;
  Poly t1 = t_minus_one(F);
  for (const auto& [f, parts] : fn.factors)
    (f == t1 ? e : ne).set(f, parts);
  return {e, ne};
}

namespace {

bool signed_matches(const SignedPartition& sp, const Partition& p,
                    std::string* why) {
  if (expand(sp) != p) {
    if (why) *why = "sign data does not match the partition";
    return false;
  }
  for (size_t i = 1; i < sp.size(); ++i)
    if (sp[i - 1].size >= sp[i].size) {
      if (why) *why = "sign entries not ascending in part size";
      return false;
    }
  return true;
}

bool signed_rule(const SignedPartition& sp, bool odd_rule, std::string* why) {
  // odd_rule: odd sizes need even multiplicity and sign -1 (the group-level
  // rule); otherwise the same applies to even sizes (the modified rule).
  for (const auto& e : sp) {
    bool constrained = odd_rule ? (e.size % 2 == 1) : (e.size % 2 == 0);
    if (constrained && (e.mult % 2 != 0 || e.sign != -1)) {
      if (why)
        *why = "part " + std::to_string(e.size) +
               " violates the symplectic sign rule";
      return false;
    }
    if (e.sign != 1 && e.sign != -1) {
      if (why) *why = "sign must be +1 or -1";
      return false;
    }
    if (e.mult <= 0) {
      if (why) *why = "multiplicity must be positive";
      return false;
    }
  }
  return true;
}

}  // namespace

bool valid_sp(const Fq& F, const SymplecticFn& fn, bool modified,
              std::string* why) {
  if (!F.odd()) {
    if (why) *why = "symplectic types need odd q";
    return false;
  }
  if (!signed_matches(fn.hminus, fn.base.get(t_minus_one(F)), why)) return false;
  if (!signed_matches(fn.hplus, fn.base.get(t_plus_one(F)), why)) return false;
  if (!signed_rule(fn.hminus, /*odd_rule=*/!modified, why)) return false;
  if (!signed_rule(fn.hplus, /*odd_rule=*/true, why)) return false;
  if (!modified && weight(fn) % 2 != 0) {
    if (why) *why = "symplectic weight must be even";
    return false;
  }
  Poly t1 = t_minus_one(F), tp1 = t_plus_one(F);
  for (const auto& [f, parts] : fn.base.factors)
    if (f != t1 && f != tp1 && !poly::is_dual_irreducible(F, f)) {
      if (why) *why = "key " + poly::to_string(F, f) + " is not dual-irreducible";
      return false;
    }
  return true;
}

std::vector<PartitionFn> enumerate_types_gl(const Fq& F, int weight_target) {
  if (weight_target < 0) throw domain_error("weight must be non-negative");
  std::vector<Poly> keys = poly::monic_irreducibles(F, weight_target);
  std::vector<PartitionFn> out;
  PartitionFn cur;
  auto rec = [&](auto&& self, size_t ki, int rest) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    if (ki == keys.size()) return;
    int d = poly::degree(keys[ki]);
    self(self, ki + 1, rest);  // empty at this key
    if (d <= rest) {
      for (int w = 1; w * d <= rest; ++w)
        for (const Partition& p : partitions_of(w)) {
          cur.set(keys[ki], p);
          self(self, ki + 1, rest - w * d);
        }
      cur.set(keys[ki], {});
    }
  };
  rec(rec, 0, weight_target);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SignedPartition> symplectic_signed_partitions(int v) {
  std::vector<SignedPartition> out;
  for (const Partition& p : partitions_of(v)) {
    // odd parts must come in pairs
    std::map<int, int> mult;
    for (int part : p) ++mult[part];
    bool ok = true;
    std::vector<int> even_sizes;
    for (auto [s, m] : mult) {
      if (s % 2 == 1 && m % 2 != 0) ok = false;
      if (s % 2 == 0) even_sizes.push_back(s);
    }
    if (!ok) continue;
    size_t combos = size_t{1} << even_sizes.size();
    for (size_t mask = 0; mask < combos; ++mask) {
      SignedPartition sp;
      size_t bit = 0;
      for (auto [s, m] : mult) {
        int sign = -1;
        if (s % 2 == 0) sign = (mask >> bit++) & 1 ? -1 : +1;
        sp.push_back({s, m, sign});
      }
      out.push_back(sp);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SymplecticFn> enumerate_types_sp(const Fq& F, int weight_target) {
  if (weight_target < 0 || weight_target % 2 != 0)
    throw domain_error("symplectic weight must be even and non-negative");
  if (!F.odd()) throw domain_error("symplectic types need odd q");
  Poly t1 = t_minus_one(F), tp1 = t_plus_one(F);
  // Dual-irreducible keys: t-1, t+1, the remaining self-dual irreducibles
  // (these have even degree), and merged pairs g * dual(g).
  std::vector<Poly> other_keys;
  for (const Poly& g : poly::monic_irreducibles(F, weight_target)) {
    if (g == t1 || g == tp1) continue;
    Poly gd = poly::dual(F, g);
    if (gd == g) {
      other_keys.push_back(g);
    } else if (poly::less(g, gd)) {
      Poly prod = poly::mul(F, g, gd);
      if (poly::degree(prod) <= weight_target) other_keys.push_back(prod);
    }
  }
  std::sort(other_keys.begin(), other_keys.end(), poly::less);

  std::vector<SymplecticFn> out;
  SymplecticFn cur;
  auto rec_other = [&](auto&& self, size_t ki, int rest) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    if (ki == other_keys.size()) return;
    self(self, ki + 1, rest);
    int d = poly::degree(other_keys[ki]);
    for (int w = 1; w * d <= rest; ++w)
      for (const Partition& p : partitions_of(w)) {
        cur.base.set(other_keys[ki], p);
        self(self, ki + 1, rest - w * d);
      }
    cur.base.set(other_keys[ki], {});
  };
  for (int wm = 0; wm <= weight_target; ++wm)
    for (int wp = 0; wm + wp <= weight_target; ++wp)
      for (const SignedPartition& hm : symplectic_signed_partitions(wm))
        for (const SignedPartition& hp : symplectic_signed_partitions(wp)) {
          cur = SymplecticFn{};
          cur.base.set(t1, expand(hm));
          cur.base.set(tp1, expand(hp));
          cur.hminus = hm;
          cur.hplus = hp;
          rec_other(rec_other, 0, weight_target - wm - wp);
        }
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json to_json(const Fq& F, const PartitionFn& fn) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& [f, parts] : fn.factors) {
    nlohmann::json e;
    e["poly"] = f;
    e["parts"] = parts;
    factors.push_back(e);
  }
  (void)F;
  return nlohmann::json{{"factors", factors}};
}

nlohmann::json to_json(const Fq& F, const SymplecticFn& fn) {
  nlohmann::json factors = nlohmann::json::array();
  Poly t1 = t_minus_one(F), tp1 = t_plus_one(F);
  for (const auto& [f, parts] : fn.base.factors) {
    nlohmann::json e;
    e["poly"] = f;
    e["parts"] = parts;
    if (f == t1 || f == tp1) {
      nlohmann::json signs = nlohmann::json::array();
      for (const auto& s : (f == t1 ? fn.hminus : fn.hplus))
        signs.push_back({s.size, s.mult, s.sign});
      e["signs"] = signs;
    }
    factors.push_back(e);
  }
  return nlohmann::json{{"factors", factors}};
}

namespace {

Poly poly_from_json(const Fq& F, const nlohmann::json& j) {
  Poly f;
  for (const auto& c : j) f.push_back(F.from_code(c.get<long long>()));
  return poly::trim(std::move(f));
}

Partition parts_from_json(const nlohmann::json& j) {
  Partition p = j.get<Partition>();
  if (!std::is_sorted(p.begin(), p.end(), std::greater<>()))
    throw domain_error("partition parts must be non-increasing");
  for (int part : p)
    if (part <= 0) throw domain_error("partition parts must be positive");
  return p;
}

}  // namespace

PartitionFn partition_fn_from_json(const Fq& F, const nlohmann::json& j) {
  PartitionFn fn;
  for (const auto& e : j.at("factors"))
    fn.set(poly_from_json(F, e.at("poly")), parts_from_json(e.at("parts")));
  return fn;
}

SymplecticFn symplectic_fn_from_json(const Fq& F, const nlohmann::json& j) {
  SymplecticFn fn;
  Poly t1 = t_minus_one(F), tp1 = t_plus_one(F);
  for (const auto& e : j.at("factors")) {
    Poly key = poly_from_json(F, e.at("poly"));
    Partition parts = parts_from_json(e.at("parts"));
    fn.base.set(key, parts);
    if (key == t1 || key == tp1) {
      SignedPartition sp;
      if (e.contains("signs")) {
        for (const auto& s : e.at("signs"))
          sp.push_back({s.at(0).get<int>(), s.at(1).get<int>(), s.at(2).get<int>()});
        std::sort(sp.begin(), sp.end(), [](const SignedEntry& a, const SignedEntry& b) {
          return a.size < b.size;
        });
      } else {
        // default signs: -1 on constrained sizes is forced; otherwise +1 would
        // be a silent guess, so require them explicitly
        throw domain_error("symplectic type needs a signs entry at t-+1");
      }
      (key == t1 ? fn.hminus : fn.hplus) = sp;
    }
  }
  return fn;
}

std::string to_string(const Fq& F, const PartitionFn& fn) {
  return to_json(F, fn).dump();
}

std::string to_string(const Fq& F, const SymplecticFn& fn) {
  return to_json(F, fn).dump();
}

}  // namespace combin
}  // namespace cgc
