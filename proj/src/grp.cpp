#include "cgc/grp.hpp"

#include <cmath>
#include <cstring>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>

namespace cgc {

std::string kind_name(GroupKind k) { return k == GroupKind::gl ? "gl" : "sp"; }

PackedCode pack(const Fq& F, const Matrix& M) {
  PackedCode code = 0;
  for (int i = M.rows(); i-- > 0;)
    for (int j = M.cols(); j-- > 0;) code = code * F.q() + M.at(i, j);
  return code;
}

Matrix unpack(const Fq& F, PackedCode code, int dim) {
  Matrix M(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      M.at(i, j) = static_cast<FqElem>(code % F.q());
      code /= F.q();
    }
  return M;
}

namespace grp {

namespace {

// Allocation-free arithmetic on dim x dim element buffers for the BFS loops.
struct FastOps {
  const Fq& F;
  int dim;
  uint32_t q;

  explicit FastOps(const Fq& field, int d) : F(field), dim(d), q(field.q()) {
    if (static_cast<double>(dim * dim) * std::log2(static_cast<double>(q)) >=
        127.0)
      throw budget_error("matrix dimension too large for 128-bit packing");
  }

  void mul(const uint8_t* a, const uint8_t* b, uint8_t* c) const {
    for (int i = 0; i < dim; ++i) {
      const uint8_t* arow = a + i * dim;
      uint8_t* crow = c + i * dim;
      for (int j = 0; j < dim; ++j) {
        FqElem acc = 0;
        for (int k = 0; k < dim; ++k)
          acc = F.add(acc, F.mul(arow[k], b[k * dim + j]));
        crow[j] = static_cast<uint8_t>(acc);
      }
    }
  }

  PackedCode pack_buf(const uint8_t* a) const {
    PackedCode code = 0;
    for (int i = dim * dim; i-- > 0;) code = code * q + a[i];
    return code;
  }

  void from_matrix(const Matrix& M, uint8_t* out) const {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        out[i * dim + j] = static_cast<uint8_t>(M.at(i, j));
  }

  Matrix to_matrix(const uint8_t* a) const {
    Matrix M(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) M.at(i, j) = a[i * dim + j];
    return M;
  }
};

constexpr uint64_t kTableCap = 20'000'000;  // hard cap on enumerated elements

}  // namespace

uint64_t order_formula(GroupKind kind, uint32_t n, uint32_t q) {
  if (n < 1) throw domain_error("group rank must be >= 1");
  unsigned __int128 order = 1;
  auto mul_checked = [&](unsigned __int128 v) {
    order *= v;
    if (order >> 64) throw budget_error("group order exceeds 64 bits");
  };
  auto ipow = [&](uint32_t base, uint32_t e) {
    unsigned __int128 r = 1;
    for (uint32_t i = 0; i < e; ++i) {
      r *= base;
      if (r >> 64) throw budget_error("group order exceeds 64 bits");
    }
    return r;
  };
  if (kind == GroupKind::gl) {
    // |GL_n(q)| = prod_{i=0}^{n-1} (q^n - q^i)
    for (uint32_t i = 0; i < n; ++i) mul_checked(ipow(q, n) - ipow(q, i));
  } else {
    // |Sp_n(q)| = q^{n^2} prod_{i=1}^{n} (q^{2i} - 1)
    mul_checked(ipow(q, n * n));
    for (uint32_t i = 1; i <= n; ++i) mul_checked(ipow(q, 2 * i) - 1);
  }
  return static_cast<uint64_t>(order);
}

std::vector<Matrix> generators(const Fq& F, GroupKind kind, uint32_t n) {
  std::vector<Matrix> gens;
  if (kind == GroupKind::gl) {
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = 0; j < n; ++j) {
        if (i == j) continue;
        for (FqElem c : F.enumerate()) {
          if (c == 0) continue;
          Matrix E = Matrix::identity(F, n);
          E.at(i, j) = c;
          gens.push_back(E);
        }
      }
    for (FqElem c : F.enumerate()) {
      if (c == 0 || c == F.one()) continue;
      Matrix D = Matrix::identity(F, n);
      D.at(0, 0) = c;
      gens.push_back(D);
    }
  } else {
    if (!F.odd()) throw domain_error("symplectic groups need odd q");
    Matrix G = mat::gram_standard(F, n);
    int dim = 2 * n;
    // all projective directions, first nonzero coordinate normalized to 1
    std::vector<FqElem> v(dim, 0);
    auto next = [&]() {
      int i = 0;
      while (i < dim && v[i] + 1 == F.q()) v[i++] = 0;
      if (i == dim) return false;
      ++v[i];
      return true;
    };
    while (next()) {
      int lead = dim - 1;
      while (v[lead] == 0) --lead;
      if (v[lead] != F.one()) continue;
      gens.push_back(mat::transvection(F, v, F.one(), G));
    }
  }
  return gens;
}

GroupTable bfs_closure(const Fq& F, GroupKind kind, uint32_t n,
                       const std::vector<Matrix>& gens,
                       uint64_t expected_order) {
  if (gens.empty()) throw domain_error("empty generator set");
  if (expected_order > kTableCap)
    throw budget_error("group too large to enumerate");
  int dim = gens.front().rows();
  FastOps ops(F, dim);

  GroupTable table;
  table.kind = kind;
  table.n = n;
  table.q = F.q();
  table.dim = dim;
  table.index.reserve(expected_order * 2);

  std::vector<std::vector<uint8_t>> genbuf;
  for (const Matrix& g : gens) {
    genbuf.emplace_back(dim * dim);
    ops.from_matrix(g, genbuf.back().data());
  }

  std::vector<uint8_t> id(dim * dim, 0);
  for (int i = 0; i < dim; ++i) id[i * dim + i] = F.one();
  table.elements.push_back(ops.pack_buf(id.data()));
  table.index.emplace(table.elements[0], 0);

  std::vector<uint8_t> cur(dim * dim), nxt(dim * dim);
  for (size_t head = 0; head < table.elements.size(); ++head) {
    Matrix curM = unpack(F, table.elements[head], dim);
    ops.from_matrix(curM, cur.data());
    for (const auto& g : genbuf) {
      ops.mul(g.data(), cur.data(), nxt.data());
      PackedCode code = ops.pack_buf(nxt.data());
      if (table.index.emplace(code, table.elements.size()).second) {
        table.elements.push_back(code);
        if (table.elements.size() > expected_order)
          throw domain_error("closure exceeded the expected group order");
      }
    }
  }
  if (table.order() != expected_order)
    throw domain_error("generators insufficient: closure order " +
                       std::to_string(table.order()) + " != " +
                       std::to_string(expected_order));
  return table;
}

std::string cache_path(const std::string& dir, GroupKind kind, uint32_t n,
                       uint32_t q) {
  return dir + "/" + kind_name(kind) + "_" + std::to_string(n) + "_" +
         std::to_string(q) + ".cgc";
}

void save_cache(const GroupTable& table, const std::string& path) {
  std::filesystem::create_directories(std::filesystem::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) return;  // cache is best-effort
  out.write("CGC1", 4);
  auto put = [&](uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  put(table.kind == GroupKind::gl ? 0 : 1, 1);
  put(table.n, 4);
  put(table.q, 4);
  put(table.order(), 8);
  for (PackedCode c : table.elements) {
    put(static_cast<uint64_t>(c), 8);
    put(static_cast<uint64_t>(c >> 64), 8);
  }
}

std::optional<GroupTable> load_cache(const std::string& path, GroupKind kind,
                                     uint32_t n, uint32_t q, int dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "CGC1", 4) != 0)
    return std::nullopt;
  auto get = [&](int bytes) {
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
      int c = in.get();
      if (c == EOF) throw domain_error("truncated cache file");
      v |= static_cast<uint64_t>(static_cast<uint8_t>(c)) << (8 * i);
    }
    return v;
  };
  try {
    uint64_t k = get(1);
    uint32_t fn = static_cast<uint32_t>(get(4));
    uint32_t fq = static_cast<uint32_t>(get(4));
    if ((k == 0 ? GroupKind::gl : GroupKind::sp) != kind || fn != n || fq != q)
      return std::nullopt;
    uint64_t count = get(8);
    GroupTable table;
    table.kind = kind;
    table.n = n;
    table.q = q;
    table.dim = dim;
    table.elements.reserve(count);
    table.index.reserve(count * 2);
    for (uint64_t i = 0; i < count; ++i) {
      uint64_t lo = get(8);
      uint64_t hi = get(8);
      PackedCode c = (static_cast<PackedCode>(hi) << 64) | lo;
      table.index.emplace(c, static_cast<uint32_t>(i));
      table.elements.push_back(c);
    }
    return table;
  } catch (const domain_error&) {
    return std::nullopt;
  }
}

const GroupTable& group_table(const Fq& F, GroupKind kind, uint32_t n,
                              const std::string& cache_dir) {
  static std::mutex m;
  static std::map<std::tuple<int, uint32_t, uint32_t>,
                  std::unique_ptr<GroupTable>>
      registry;
  std::lock_guard lock(m);
  auto key = std::make_tuple(static_cast<int>(kind), n, F.q());
  if (auto it = registry.find(key); it != registry.end()) return *it->second;

  std::string dir = cache_dir;
  if (dir.empty()) {
    const char* env = std::getenv("CGC_CACHE");
    dir = env ? env : ".cgc-cache";
  }
  int dim = kind == GroupKind::gl ? n : 2 * n;
  std::string path = cache_path(dir, kind, n, F.q());
  uint64_t expect = order_formula(kind, n, F.q());

  if (auto cached = load_cache(path, kind, n, F.q(), dim);
      cached && cached->order() == expect) {
    auto owned = std::make_unique<GroupTable>(std::move(*cached));
    return *registry.emplace(key, std::move(owned)).first->second;
  }
  GroupTable table = bfs_closure(F, kind, n, generators(F, kind, n), expect);
  save_cache(table, path);
  auto owned = std::make_unique<GroupTable>(std::move(table));
  return *registry.emplace(key, std::move(owned)).first->second;
}

std::vector<Matrix> conj_orbit(const Fq& F, const Matrix& rep,
                               const std::vector<Matrix>& gens,
                               uint64_t budget) {
  int dim = rep.rows();
  FastOps ops(F, dim);
  std::vector<std::vector<uint8_t>> g, ginv;
  for (const Matrix& m : gens) {
    g.emplace_back(dim * dim);
    ops.from_matrix(m, g.back().data());
    ginv.emplace_back(dim * dim);
    ops.from_matrix(mat::inverse(F, m), ginv.back().data());
  }
  std::unordered_map<PackedCode, uint32_t, PackedCodeHash> seen;
  std::vector<PackedCode> orbit;
  std::vector<uint8_t> cur(dim * dim), tmp(dim * dim), nxt(dim * dim);
  ops.from_matrix(rep, cur.data());
  orbit.push_back(ops.pack_buf(cur.data()));
  seen.emplace(orbit[0], 0);
  for (size_t head = 0; head < orbit.size(); ++head) {
    Matrix curM = unpack(F, orbit[head], dim);
    ops.from_matrix(curM, cur.data());
    for (size_t i = 0; i < g.size(); ++i) {
      ops.mul(ginv[i].data(), cur.data(), tmp.data());
      ops.mul(tmp.data(), g[i].data(), nxt.data());
      PackedCode code = ops.pack_buf(nxt.data());
      if (seen.emplace(code, orbit.size()).second) {
        orbit.push_back(code);
        if (orbit.size() > budget)
          throw budget_error("conjugation orbit exceeds the orbit budget");
      }
    }
  }
  std::vector<Matrix> out;
  out.reserve(orbit.size());
  for (PackedCode c : orbit) out.push_back(unpack(F, c, dim));
  return out;
}

std::vector<Matrix> commutant_basis(const Fq& F,
                                    const std::vector<Matrix>& mats) {
  if (mats.empty()) throw domain_error("commutant of an empty list");
  int n = mats.front().rows();
  for (const Matrix& U : mats)
    if (!U.square() || U.rows() != n)
      throw domain_error("commutant needs square matrices of equal size");
  // Coefficient of x_{kl} in (UX - XU)_{ij}: U[i][k] d_{lj} - d_{ik} U[l][j].
  Matrix sys(static_cast<int>(mats.size()) * n * n, n * n);
  int row = 0;
  for (const Matrix& U : mats) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j, ++row)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            FqElem c = 0;
            if (l == j) c = F.add(c, U.at(i, k));
            if (i == k) c = F.sub(c, U.at(l, j));
            if (c) sys.at(row, k * n + l) = c;
          }
  }
  Matrix K = mat::kernel_basis(F, sys);
  std::vector<Matrix> basis;
  for (int r = 0; r < K.rows(); ++r) {
    Matrix B(n, n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) B.at(k, l) = K.at(r, k * n + l);
    basis.push_back(B);
  }
  return basis;
}

uint64_t centralizer_order_filtered(const Fq& F,
                                    const std::vector<Matrix>& mats,
                                    const Matrix* gram, uint64_t budget) {
  std::vector<Matrix> basis = commutant_basis(F, mats);
  size_t D = basis.size();
  unsigned __int128 total = 1;
  for (size_t i = 0; i < D; ++i) {
    total *= F.q();
    if (total > budget)
      throw budget_error("commutant enumeration q^" + std::to_string(D) +
                         " exceeds the filter budget");
  }
  int n = mats.front().rows();
  // Odometer over the commutant: adding a basis matrix per step keeps the
  // current element in sync with the digit counter (q * v = 0 in char p).
  std::vector<uint32_t> digits(D, 0);
  Matrix cur(n, n);
  uint64_t count = 0;
  uint64_t steps = static_cast<uint64_t>(total);
  for (uint64_t s = 0;; ++s) {
    if (mat::invertible(F, cur) &&
        (!gram || mat::is_symplectic(F, cur, *gram)))
      ++count;
    if (s + 1 == steps) break;
    size_t i = 0;
    while (true) {
      cur = mat::add(F, cur, basis[i]);
      if (++digits[i] < F.q()) break;
      digits[i] = 0;
      ++i;
    }
  }
  return count;
}

uint64_t centralizer_order_orbit(const Fq& F, GroupKind kind, uint32_t n,
                                 const Matrix& rep, uint64_t orbit_budget) {
  uint64_t order = order_formula(kind, n, F.q());
  auto orbit = conj_orbit(F, rep, generators(F, kind, n), orbit_budget);
  if (order % orbit.size() != 0)
    throw domain_error("orbit size does not divide the group order");
  return order / orbit.size();
}

std::vector<ClassInfo> conjugacy_classes(const Fq& F, const GroupTable& table) {
  int dim = table.dim;
  FastOps ops(F, dim);
  Fq const& field = F;
  auto gens = generators(field, table.kind, table.n);
  std::vector<std::vector<uint8_t>> g, ginv;
  for (const Matrix& m : gens) {
    g.emplace_back(dim * dim);
    ops.from_matrix(m, g.back().data());
    ginv.emplace_back(dim * dim);
    ops.from_matrix(mat::inverse(F, m), ginv.back().data());
  }
  std::vector<bool> assigned(table.elements.size(), false);
  std::vector<ClassInfo> classes;
  std::vector<uint8_t> cur(dim * dim), tmp(dim * dim), nxt(dim * dim);
  std::vector<uint32_t> queue;
  for (uint32_t start = 0; start < table.elements.size(); ++start) {
    if (assigned[start]) continue;
    queue.clear();
    queue.push_back(start);
    assigned[start] = true;
    for (size_t head = 0; head < queue.size(); ++head) {
      Matrix curM = unpack(F, table.elements[queue[head]], dim);
      ops.from_matrix(curM, cur.data());
      for (size_t i = 0; i < g.size(); ++i) {
        ops.mul(ginv[i].data(), cur.data(), tmp.data());
        ops.mul(tmp.data(), g[i].data(), nxt.data());
        auto it = table.index.find(ops.pack_buf(nxt.data()));
        if (it == table.index.end())
          throw domain_error("conjugate escaped the group table");
        if (!assigned[it->second]) {
          assigned[it->second] = true;
          queue.push_back(it->second);
        }
      }
    }
    classes.push_back(
        {unpack(F, table.elements[start], dim), queue.size()});
  }
  return classes;
}

uint64_t centralizer_order_scan(const Fq& F, const GroupTable& table,
                                const std::vector<Matrix>& mats) {
  uint64_t count = 0;
  for (PackedCode c : table.elements) {
    Matrix g = unpack(F, c, table.dim);
    bool ok = true;
    for (const Matrix& U : mats)
      if (mat::mul(F, g, U) != mat::mul(F, U, g)) {
        ok = false;
        break;
      }
    if (ok) ++count;
  }
  return count;
}

}  // namespace grp
}  // namespace cgc
