#include "cgc/center.hpp"

#include <chrono>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_set>

namespace cgc::center {

namespace {

int type_weight(const ModifiedType& t) {
  if (const auto* g = std::get_if<PartitionFn>(&t)) return combin::weight(*g);
  return combin::weight(std::get<SymplecticFn>(t));
}

int workers_of(const Budgets& b) {
  if (b.workers > 0) return b.workers;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

uint64_t q_power(const Fq& F, uint64_t e) {
  unsigned __int128 r = 1;
  for (uint64_t i = 0; i < e; ++i) {
    r *= F.q();
    if (r >> 64) throw budget_error("q-power exceeds 64 bits");
  }
  return static_cast<uint64_t>(r);
}

uint64_t tail_order(const Fq& F, GroupKind kind, uint32_t n, uint32_t m) {
  return n == m ? 1 : grp::order_formula(kind, n - m, F.q());
}

bool no_identity_block(const Fq& F, const Matrix& U) {
  Partition at1 = classify::gl_type(F, U).get(combin::t_minus_one(F));
  return std::find(at1.begin(), at1.end(), 1) == at1.end();
}

struct PairCode {
  PackedCode a = 0, b = 0;
  bool operator==(const PairCode&) const = default;
};
struct PairCodeHash {
  size_t operator()(const PairCode& p) const {
    PackedCodeHash h;
    return h(p.a) * 0x9e3779b97f4a7c15ULL ^ h(p.b);
  }
};

// Orbit of (U1, U2) under simultaneous conjugation by the generated group.
uint64_t pair_orbit_size(const Fq& F, const std::vector<Matrix>& gens,
                         const Matrix& U1, const Matrix& U2, uint64_t budget) {
  std::vector<std::pair<Matrix, Matrix>> gi;
  for (const Matrix& g : gens) gi.push_back({g, mat::inverse(F, g)});
  std::unordered_set<PairCode, PairCodeHash> seen;
  std::vector<PairCode> queue;
  auto push = [&](const Matrix& a, const Matrix& b) {
    PairCode pc{pack(F, a), pack(F, b)};
    if (seen.insert(pc).second) {
      queue.push_back(pc);
      if (seen.size() > budget)
        throw budget_error("pair orbit exceeds the orbit budget");
      return true;
    }
    return false;
  };
  push(U1, U2);
  int dim = U1.rows();
  for (size_t head = 0; head < queue.size(); ++head) {
    Matrix a = unpack(F, queue[head].a, dim);
    Matrix b = unpack(F, queue[head].b, dim);
    for (const auto& [g, ginv] : gi) {
      Matrix ca = mat::mul(F, mat::mul(F, ginv, a), g);
      Matrix cb = mat::mul(F, mat::mul(F, ginv, b), g);
      push(ca, cb);
    }
  }
  return seen.size();
}

// Cached class sizes, keyed by serialized modified type, for enumerable
// groups (used by the expansion mass check).
const std::map<std::string, uint64_t>& class_size_table(const Fq& F,
                                                        GroupKind kind,
                                                        uint32_t n) {
  static std::mutex m;
  static std::map<std::tuple<int, uint32_t, uint32_t>,
                  std::map<std::string, uint64_t>>
      cache;
  std::lock_guard lock(m);
  auto key = std::make_tuple(static_cast<int>(kind), n, F.q());
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const GroupTable& table = grp::group_table(F, kind, n);
  std::map<std::string, uint64_t> sizes;
  for (const auto& cls : grp::conjugacy_classes(F, table)) {
    ModifiedType t;
    if (kind == GroupKind::gl)
      t = combin::modify(F, classify::gl_type(F, cls.rep));
    else
      t = combin::modify(F, classify::sp_type(F, cls.rep));
    sizes[modified_type_to_json(F, t).dump()] = cls.size;
  }
  return cache.emplace(key, std::move(sizes)).first->second;
}

}  // namespace

ModifiedType modified_type_from_json(const Fq& F, GroupKind kind,
                                     const nlohmann::json& j) {
  if (kind == GroupKind::gl) return combin::partition_fn_from_json(F, j);
  return combin::symplectic_fn_from_json(F, j);
}

nlohmann::json modified_type_to_json(const Fq& F, const ModifiedType& t) {
  if (const auto* g = std::get_if<PartitionFn>(&t)) return combin::to_json(F, *g);
  return combin::to_json(F, std::get<SymplecticFn>(t));
}

std::vector<ModifiedType> modified_types(const Fq& F, GroupKind kind,
                                         uint32_t n) {
  std::vector<ModifiedType> out;
  if (kind == GroupKind::gl) {
    std::set<PartitionFn> seen;
    for (uint32_t w = 0; w <= n; ++w)
      for (const PartitionFn& t : combin::enumerate_types_gl(F, w))
        seen.insert(combin::modify(F, t));
    for (const auto& t : seen) out.push_back(t);
  } else {
    std::set<SymplecticFn> seen;
    for (uint32_t w = 0; w <= 2 * n; w += 2)
      for (const SymplecticFn& t : combin::enumerate_types_sp(F, w))
        seen.insert(combin::modify(F, t));
    for (const auto& t : seen) out.push_back(t);
  }
  return out;
}

Matrix realize(const Fq& F, GroupKind kind, uint32_t n, const ModifiedType& t) {
  if (kind == GroupKind::gl)
    return classify::build_rep_gl(
        F, combin::ncomplete(F, std::get<PartitionFn>(t), n));
  return classify::build_rep_sp(
      F, combin::ncomplete(F, std::get<SymplecticFn>(t), 2 * n));
}

bool has_type(const Fq& F, GroupKind kind, uint32_t n, const Matrix& x,
              const ModifiedType& t) {
  if (kind == GroupKind::gl)
    return classify::gl_type(F, x) ==
           combin::ncomplete(F, std::get<PartitionFn>(t), n);
  return classify::sp_type(F, x) ==
         combin::ncomplete(F, std::get<SymplecticFn>(t), 2 * n);
}

uint64_t centralizer_order(const Fq& F, GroupKind kind, uint32_t n,
                           const std::vector<Matrix>& mats,
                           const Budgets& budgets, std::string* method_used) {
  Matrix gram = kind == GroupKind::sp ? mat::gram_standard(F, n) : Matrix();
  const Matrix* gp = kind == GroupKind::sp ? &gram : nullptr;
  size_t D = grp::commutant_basis(F, mats).size();
  unsigned __int128 space = 1;
  bool small = true;
  for (size_t i = 0; i < D && small; ++i) {
    space *= F.q();
    if (space > 4'000'000) small = false;
  }
  if (small) {
    if (method_used) *method_used = "filter";
    return grp::centralizer_order_filtered(F, mats, gp, budgets.filter);
  }
  uint64_t order = grp::order_formula(kind, n, F.q());
  if (mats.size() == 1) {
    if (method_used) *method_used = "orbit";
    auto orbit =
        grp::conj_orbit(F, mats[0], grp::generators(F, kind, n), budgets.orbit);
    if (order % orbit.size() != 0)
      throw domain_error("orbit size does not divide the group order");
    return order / orbit.size();
  }
  if (mats.size() == 2) {
    if (method_used) *method_used = "pair-orbit";
    uint64_t osz = pair_orbit_size(F, grp::generators(F, kind, n), mats[0],
                                   mats[1], budgets.orbit);
    if (order % osz != 0)
      throw domain_error("pair orbit size does not divide the group order");
    return order / osz;
  }
  if (method_used) *method_used = "filter";
  return grp::centralizer_order_filtered(F, mats, gp, budgets.filter);
}

namespace {

uint64_t count_fiber(const Fq& F, GroupKind kind, uint32_t n,
                     const std::vector<Matrix>& lambda_orbit, const Matrix& z,
                     const ModifiedType& mu, int workers) {
  if (workers <= 1 || lambda_orbit.size() < 64) {
    uint64_t c = 0;
    for (const Matrix& x : lambda_orbit)
      if (has_type(F, kind, n, mat::mul(F, mat::inverse(F, x), z), mu)) ++c;
    return c;
  }
  std::vector<std::thread> pool;
  std::vector<uint64_t> partial(workers, 0);
  size_t chunk = (lambda_orbit.size() + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    size_t lo = w * chunk;
    size_t hi = std::min(lambda_orbit.size(), lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi, w] {
      uint64_t c = 0;
      for (size_t i = lo; i < hi; ++i)
        if (has_type(F, kind, n,
                     mat::mul(F, mat::inverse(F, lambda_orbit[i]), z), mu))
          ++c;
      partial[w] = c;
    });
  }
  for (auto& t : pool) t.join();
  uint64_t total = 0;
  for (uint64_t c : partial) total += c;
  return total;
}

}  // namespace

uint64_t structure_constant(const Fq& F, GroupKind kind, uint32_t n,
                            const ModifiedType& lambda, const ModifiedType& mu,
                            const ModifiedType& eta, const Budgets& budgets) {
  Matrix z = realize(F, kind, n, eta);
  Matrix lam_rep = realize(F, kind, n, lambda);
  auto orbit =
      grp::conj_orbit(F, lam_rep, grp::generators(F, kind, n), budgets.orbit);
  return count_fiber(F, kind, n, orbit, z, mu, workers_of(budgets));
}

StructureReport structure_report(const Fq& F, GroupKind kind, uint32_t n,
                                 const ModifiedType& lambda,
                                 const ModifiedType& mu,
                                 const ModifiedType& eta,
                                 const Budgets& budgets) {
  auto start = std::chrono::steady_clock::now();
  StructureReport r;
  r.kind = kind;
  r.q = F.q();
  r.n = n;
  r.lambda = lambda;
  r.mu = mu;
  r.eta = eta;
  r.constant = structure_constant(F, kind, n, lambda, mu, eta, budgets);
  r.method = "fiber";
  r.timing_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return r;
}

Expansion product_expand(const Fq& F, GroupKind kind, uint32_t n,
                         const ModifiedType& lambda, const ModifiedType& mu,
                         const Budgets& budgets) {
  Expansion out;
  Matrix lam_rep = realize(F, kind, n, lambda);
  auto orbit =
      grp::conj_orbit(F, lam_rep, grp::generators(F, kind, n), budgets.orbit);
  out.class_size_lambda = orbit.size();
  {
    Matrix mu_rep = realize(F, kind, n, mu);
    out.class_size_mu =
        grp::conj_orbit(F, mu_rep, grp::generators(F, kind, n), budgets.orbit)
            .size();
  }
  const auto& sizes = class_size_table(F, kind, n);
  int workers = workers_of(budgets);
  for (const ModifiedType& eta_mod : modified_types(F, kind, n)) {
    Matrix z = realize(F, kind, n, eta_mod);
    uint64_t c = count_fiber(F, kind, n, orbit, z, mu, workers);
    if (!c) continue;
    uint64_t size = 0;
    std::string key = modified_type_to_json(F, eta_mod).dump();
    if (auto sit = sizes.find(key); sit != sizes.end()) size = sit->second;
    out.entries.push_back({eta_mod, c, size});
    out.mass += c * size;
  }
  out.mass_ok = out.mass == out.class_size_lambda * out.class_size_mu;
  return out;
}

Expansion filtered_product(const Fq& F, GroupKind kind, uint32_t n,
                           const ModifiedType& lambda, const ModifiedType& mu,
                           const Budgets& budgets) {
  Expansion full = product_expand(F, kind, n, lambda, mu, budgets);
  Expansion out;
  out.class_size_lambda = full.class_size_lambda;
  out.class_size_mu = full.class_size_mu;
  out.mass = full.mass;
  out.mass_ok = full.mass_ok;
  int target = type_weight(lambda) + type_weight(mu);
  for (const auto& e : full.entries)
    if (type_weight(e.eta) == target) out.entries.push_back(e);
  return out;
}

StructureReport orbit_sum_check(const Fq& F, GroupKind kind, uint32_t n,
                                const ModifiedType& lambda,
                                const ModifiedType& mu, const ModifiedType& eta,
                                const Budgets& budgets) {
  StructureReport r = structure_report(F, kind, n, lambda, mu, eta, budgets);
  r.method = "orbit-sum";

  Matrix z = realize(F, kind, n, eta);
  Matrix lam_rep = realize(F, kind, n, lambda);
  auto gens = grp::generators(F, kind, n);
  auto orbit = grp::conj_orbit(F, lam_rep, gens, budgets.orbit);

  // seed pairs: the fiber over the fixed z; every simultaneous-conjugation
  // orbit of V(lambda x mu : eta) meets it
  std::vector<std::pair<Matrix, Matrix>> seeds;
  for (const Matrix& x : orbit) {
    Matrix y = mat::mul(F, mat::inverse(F, x), z);
    if (has_type(F, kind, n, y, mu)) seeds.push_back({x, y});
  }
  std::vector<std::pair<Matrix, Matrix>> gi;
  for (const Matrix& g : gens) gi.push_back({g, mat::inverse(F, g)});

  std::unordered_set<PairCode, PairCodeHash> assigned;
  uint64_t ratio_sum = 0;
  uint64_t orbit_count = 0;
  int dim = z.rows();
  for (const auto& seed : seeds) {
    PairCode pc{pack(F, seed.first), pack(F, seed.second)};
    if (assigned.count(pc)) continue;
    ++orbit_count;
    // BFS this orbit
    std::vector<PairCode> queue = {pc};
    assigned.insert(pc);
    for (size_t head = 0; head < queue.size(); ++head) {
      Matrix a = unpack(F, queue[head].a, dim);
      Matrix b = unpack(F, queue[head].b, dim);
      for (const auto& [g, ginv] : gi) {
        PairCode nc{pack(F, mat::mul(F, mat::mul(F, ginv, a), g)),
                    pack(F, mat::mul(F, mat::mul(F, ginv, b), g))};
        if (assigned.insert(nc).second) {
          queue.push_back(nc);
          if (assigned.size() > budgets.orbit)
            throw budget_error("fiber orbit enumeration exceeds the budget");
        }
      }
    }
    uint64_t cz = centralizer_order(
        F, kind, n, {mat::mul(F, seed.first, seed.second)}, budgets, nullptr);
    uint64_t cxy = centralizer_order(F, kind, n, {seed.first, seed.second},
                                     budgets, nullptr);
    if (cz % cxy != 0)
      throw domain_error("centralizer index is not integral");
    ratio_sum += cz / cxy;
  }
  r.orbit_count = orbit_count;
  r.orbit_sum_agrees = ratio_sum == r.constant;
  return r;
}

GrowthReport growth_check_sp(const Fq& F, const Matrix& U, uint32_t m,
                             uint32_t n, const Budgets& budgets) {
  if (U.rows() != static_cast<int>(2 * m))
    throw domain_error("growth_check_sp: matrix size disagrees with m");
  if (!mat::is_symplectic(F, U, mat::gram_standard(F, m)))
    throw domain_error("growth_check_sp needs a symplectic matrix");
  GrowthReport r;
  r.m = m;
  r.n = n;
  r.d = classify::fixed_dim(F, U);
  r.in_hypothesis = no_identity_block(F, U);
  std::string meth_small, meth_big;
  r.cent_small = centralizer_order(F, GroupKind::sp, m, {U}, budgets, &meth_small);
  r.tail_order = tail_order(F, GroupKind::sp, n, m);
  r.q_power = q_power(F, 2ull * (n - m) * r.d);
  r.rhs = r.cent_small * r.tail_order * r.q_power;
  Matrix emb = mat::embed_upup(F, U, n);
  r.lhs = centralizer_order(F, GroupKind::sp, n, {emb}, budgets, &meth_big);
  r.method = meth_small + "/" + meth_big;
  r.pass = r.lhs == r.rhs;
  return r;
}

GrowthReport growth_check_gl(const Fq& F, const Matrix& U, uint32_t m,
                             uint32_t n, const Budgets& budgets) {
  if (U.rows() != static_cast<int>(m))
    throw domain_error("growth_check_gl: matrix size disagrees with m");
  if (!mat::invertible(F, U))
    throw domain_error("growth_check_gl needs an invertible matrix");
  GrowthReport r;
  r.m = m;
  r.n = n;
  r.d = classify::fixed_dim(F, U);
  r.in_hypothesis = no_identity_block(F, U);
  std::string meth_small, meth_big;
  r.cent_small = centralizer_order(F, GroupKind::gl, m, {U}, budgets, &meth_small);
  r.tail_order = tail_order(F, GroupKind::gl, n, m);
  r.q_power = q_power(F, 2ull * (n - m) * r.d);
  r.rhs = r.cent_small * r.tail_order * r.q_power;
  Matrix emb = mat::embed_up(F, U, n);
  r.lhs = centralizer_order(F, GroupKind::gl, n, {emb}, budgets, &meth_big);
  r.method = meth_small + "/" + meth_big;
  r.pass = r.lhs == r.rhs;
  return r;
}

GrowthReport intersection_growth_check(const Fq& F, const Matrix& U1,
                                       const Matrix& U2, uint32_t m,
                                       uint32_t n, const Budgets& budgets) {
  if (U1.rows() != static_cast<int>(2 * m) || U2.rows() != U1.rows())
    throw domain_error("intersection growth: size disagrees with m");
  Matrix G = mat::gram_standard(F, m);
  if (!mat::is_symplectic(F, U1, G) || !mat::is_symplectic(F, U2, G))
    throw domain_error("intersection growth needs symplectic matrices");
  GrowthReport r;
  r.m = m;
  r.n = n;
  Matrix U = mat::mul(F, U1, U2);
  r.d = classify::fixed_dim(F, U);
  bool additive = classify::refl_length(F, U1) + classify::refl_length(F, U2) ==
                  classify::refl_length(F, U);
  r.in_hypothesis = additive && no_identity_block(F, U);
  std::string meth_small, meth_big;
  r.cent_small =
      centralizer_order(F, GroupKind::sp, m, {U1, U2}, budgets, &meth_small);
  r.tail_order = tail_order(F, GroupKind::sp, n, m);
  r.q_power = q_power(F, 2ull * (n - m) * r.d);
  r.rhs = r.cent_small * r.tail_order * r.q_power;
  Matrix e1 = mat::embed_upup(F, U1, n);
  Matrix e2 = mat::embed_upup(F, U2, n);
  r.lhs = centralizer_order(F, GroupKind::sp, n, {e1, e2}, budgets, &meth_big);
  r.method = meth_small + "/" + meth_big;
  r.pass = r.lhs == r.rhs;
  return r;
}

NormalFormReport normal_form_fixedspace_check(const Fq& F, const Matrix& U1,
                                              const Matrix& U2) {
  NormalFormReport r;
  Matrix U = mat::mul(F, U1, U2);
  r.rl1 = classify::refl_length(F, U1);
  r.rl2 = classify::refl_length(F, U2);
  r.rl12 = classify::refl_length(F, U);
  r.subadditive = r.rl12 <= r.rl1 + r.rl2;
  r.additive = r.rl12 == r.rl1 + r.rl2;
  r.pass = r.subadditive;
  if (!r.additive) return r;

  int sz = U1.rows();
  Matrix I = Matrix::identity(F, sz);
  Matrix A = mat::sub(F, U1, I);
  Matrix B = mat::sub(F, U2, I);
  Matrix AB(2 * sz, sz);
  for (int i = 0; i < sz; ++i)
    for (int j = 0; j < sz; ++j) {
      AB.at(i, j) = A.at(i, j);
      AB.at(sz + i, j) = B.at(i, j);
    }
  Matrix inter = mat::kernel_basis(F, AB);            // V^{U1} n V^{U2}
  Matrix kprod = mat::kernel_basis(F, mat::sub(F, U, I));  // V^{U1 U2}
  // space equality via dimensions plus containment
  Matrix stacked(inter.rows() + kprod.rows(), sz);
  for (int i = 0; i < inter.rows(); ++i)
    for (int j = 0; j < sz; ++j) stacked.at(i, j) = inter.at(i, j);
  for (int i = 0; i < kprod.rows(); ++i)
    for (int j = 0; j < sz; ++j) stacked.at(inter.rows() + i, j) = kprod.at(i, j);
  r.kernel_identity = inter.rows() == kprod.rows() &&
                      mat::rank(F, stacked) == inter.rows();
  int d1 = sz - mat::rank(F, A);
  int d2 = sz - mat::rank(F, B);
  r.sum_is_whole = d1 + d2 - inter.rows() == sz;
  r.pass = r.subadditive && r.kernel_identity && r.sum_is_whole;
  return r;
}

nlohmann::json to_json(const Fq& F, const StructureReport& r) {
  nlohmann::json j;
  j["kind"] = kind_name(r.kind);
  j["q"] = r.q;
  j["n"] = r.n;
  j["lambda"] = modified_type_to_json(F, r.lambda);
  j["mu"] = modified_type_to_json(F, r.mu);
  j["eta"] = modified_type_to_json(F, r.eta);
  j["constant"] = r.constant;
  j["method"] = r.method;
  if (r.method == "orbit-sum") {
    j["orbit_count"] = r.orbit_count;
    j["orbit_sum_agrees"] = r.orbit_sum_agrees;
  }
  return j;
}

nlohmann::json to_json(const GrowthReport& r) {
  nlohmann::json j;
  j["m"] = r.m;
  j["n"] = r.n;
  j["d"] = r.d;
  j["in_hypothesis"] = r.in_hypothesis;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["cent_small"] = r.cent_small;
  j["tail_order"] = r.tail_order;
  j["q_power"] = r.q_power;
  j["method"] = r.method;
  j["pass"] = r.pass;
  return j;
}

}  // namespace cgc::center
