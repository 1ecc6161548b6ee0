#include "cgc/classify.hpp"

#include <algorithm>

namespace cgc::classify {

using mat::gram_standard;
using mat::is_symplectic;

PartitionFn gl_type(const Fq& F, const Matrix& U) {
  if (!mat::invertible(F, U)) throw domain_error("gl_type needs an invertible matrix");
  PartitionFn type;
  for (const auto& [f, e] : poly::factor(F, mat::char_poly(F, U))) {
    (void)e;
    int d = poly::degree(f);
    Matrix fU = mat::eval_poly(F, f, U);
    // number of parts >= j is (rank f(U)^{j-1} - rank f(U)^j) / deg f
    std::vector<int> ranks = {U.rows()};
    Matrix acc = fU;
    while (true) {
      int r = mat::rank(F, acc);
      ranks.push_back(r);
      if (r == ranks[ranks.size() - 2]) break;
      acc = mat::mul(F, acc, fU);
    }
    Partition parts;
    for (size_t j = 1; j + 1 < ranks.size(); ++j) {
      int ge_j = (ranks[j - 1] - ranks[j]) / d;
      int ge_j1 = j + 1 < ranks.size() ? (ranks[j] - ranks[j + 1]) / d : 0;
      for (int c = 0; c < ge_j - ge_j1; ++c) parts.push_back(static_cast<int>(j));
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    if (!parts.empty()) type.set(f, parts);
  }
  return type;
}

int fixed_dim(const Fq& F, const Matrix& U) {
  Matrix UmI = mat::sub(F, U, Matrix::identity(F, U.rows()));
  return U.rows() - mat::rank(F, UmI);
}

int refl_length(const Fq& F, const Matrix& U) {
  return U.rows() - fixed_dim(F, U);
}

namespace {

// Matrix of the row-vector action v -> v M^t (i.e. column action on the
// transposed coordinates); rows of R span the subspace.
Matrix act_rows(const Fq& F, const Matrix& R, const Matrix& M) {
  return mat::mul(F, R, mat::transpose(M));
}

FqElem form_value(const Fq& F, const Matrix& G, const Matrix& a, int arow,
                  const Matrix& b, int brow) {
  // Q(a_row, b_row) with vectors as rows: a G b^t
  FqElem acc = 0;
  for (int i = 0; i < G.rows(); ++i) {
    if (a.at(arow, i) == 0) continue;
    for (int j = 0; j < G.cols(); ++j)
      acc = F.add(acc, F.mul(a.at(arow, i), F.mul(G.at(i, j), b.at(brow, j))));
  }
  return acc;
}

Matrix stack(const std::vector<Matrix>& rows_list) {
  int cols = rows_list.front().cols();
  int total = 0;
  for (const Matrix& m : rows_list) total += m.rows();
  Matrix out(total, cols);
  int r = 0;
  for (const Matrix& m : rows_list)
    for (int i = 0; i < m.rows(); ++i, ++r)
      for (int j = 0; j < cols; ++j) out.at(r, j) = m.at(i, j);
  return out;
}

}  // namespace

std::vector<WallBlockReport> wall_forms(const Fq& F, const Matrix& U,
                                        int zeta) {
  if (U.rows() % 2 != 0) throw domain_error("wall_forms needs an even size");
  int dim = U.rows();
  Matrix G = gram_standard(F, dim / 2);
  if (!is_symplectic(F, U, G))
    throw domain_error("wall_forms needs a symplectic matrix");
  if (zeta != 1 && zeta != -1) throw domain_error("zeta must be +1 or -1");

  // The t+1 recipe is the t-1 recipe applied to -U.
  Matrix U0 = zeta == 1 ? U : mat::neg(F, U);
  Matrix I = Matrix::identity(F, dim);
  Matrix N = mat::sub(F, U0, I);
  Matrix delta = mat::sub(F, U0, mat::inverse(F, U0));

  // generalized eigenspace of U0 at 1: ker (U0 - I)^dim
  Matrix R = mat::kernel_basis(F, mat::pow(F, N, dim));

  std::vector<WallBlockReport> out;
  while (R.rows() > 0) {
    // nilpotency index s on span(R)
    int s = 0;
    Matrix Npow = Matrix::identity(F, dim);
    while (mat::rank(F, act_rows(F, R, Npow)) > 0) {
      Npow = mat::mul(F, Npow, N);
      ++s;
    }
    // rows of R whose N^{s-1} images are independent span the top layer
    Matrix Ns1 = Matrix::identity(F, dim);
    for (int i = 0; i < s - 1; ++i) Ns1 = mat::mul(F, Ns1, N);
    Matrix images = act_rows(F, R, Ns1);
    std::vector<int> chosen;
    {
      std::vector<Matrix> kept;
      int cur_rank = 0;
      for (int i = 0; i < images.rows(); ++i) {
        Matrix row(1, dim);
        for (int j = 0; j < dim; ++j) row.at(0, j) = images.at(i, j);
        kept.push_back(row);
        if (mat::rank(F, stack(kept)) > cur_rank) {
          ++cur_rank;
          chosen.push_back(i);
        } else {
          kept.pop_back();
        }
      }
    }
    int k = static_cast<int>(chosen.size());
    Matrix witness(k, dim);
    for (int a = 0; a < k; ++a)
      for (int j = 0; j < dim; ++j) witness.at(a, j) = R.at(chosen[a], j);

    // the free piece: N^j images of the witnesses, j = 0..s-1
    std::vector<Matrix> piece_rows;
    Matrix Nj = Matrix::identity(F, dim);
    for (int j = 0; j < s; ++j) {
      piece_rows.push_back(act_rows(F, witness, Nj));
      Nj = mat::mul(F, Nj, N);
    }
    Matrix piece = stack(piece_rows);
    if (mat::rank(F, piece) != s * k)
      throw domain_error("wall decomposition: free piece degenerate");

    // Gram of h_s on the witnesses: Q(v_a, delta^{s-1} v_b). Putting delta on
    // the right fixes the sign normalization so that J_{2k,eps} reports the
    // class of (-1)^{k-1} 2^{2k-1} eps.
    Matrix ds1 = Matrix::identity(F, dim);
    for (int i = 0; i < s - 1; ++i) ds1 = mat::mul(F, ds1, delta);
    Matrix moved = act_rows(F, witness, ds1);
    Matrix gram_h(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        gram_h.at(a, b) = form_value(F, G, witness, a, moved, b);

    WallBlockReport rep;
    rep.part_size = s;
    rep.multiplicity = k;
    rep.witness = witness;
    rep.gram = gram_h;
    if (!mat::invertible(F, gram_h))
      throw domain_error("wall form degenerate on a free piece");
    if (s % 2 == 1) {
      if (k % 2 != 0 || mat::transpose(gram_h) != mat::neg(F, gram_h))
        throw domain_error("odd wall form is not symplectic");
      rep.sign = -1;
    } else {
      if (mat::transpose(gram_h) != gram_h)
        throw domain_error("even wall form is not symmetric");
      rep.sign = F.sign_class(mat::det(F, gram_h));
    }
    out.push_back(std::move(rep));

    // recurse on the Q-orthogonal complement of the piece inside span(R):
    // coordinates c with c (R G piece^t) = 0
    Matrix constraints = mat::mul(F, mat::mul(F, R, G), mat::transpose(piece));
    Matrix coords = mat::kernel_basis(F, mat::transpose(constraints));
    R = mat::mul(F, coords, R);
    if (mat::rank(F, R) != R.rows())
      throw domain_error("wall recursion produced a dependent basis");
  }
  std::sort(out.begin(), out.end(),
            [](const WallBlockReport& a, const WallBlockReport& b) {
              return a.part_size < b.part_size;
            });
  return out;
}

SymplecticFn sp_type(const Fq& F, const Matrix& U) {
  if (U.rows() == 0) return {};
  if (U.rows() % 2 != 0 ||
      !is_symplectic(F, U, gram_standard(F, U.rows() / 2)))
    throw domain_error("sp_type needs a symplectic matrix");
  PartitionFn glt = gl_type(F, U);
  Poly t1 = combin::t_minus_one(F);
  Poly tp1 = combin::t_plus_one(F);

  SymplecticFn fn;
  for (const auto& [f, parts] : glt.factors) {
    if (f == t1 || f == tp1 || poly::dual(F, f) == f) {
      fn.base.set(f, parts);
      continue;
    }
    Poly fd = poly::dual(F, f);
    if (glt.get(fd) != parts)
      throw domain_error("dual factor multiplicities disagree");
    if (poly::less(f, fd)) fn.base.set(poly::mul(F, f, fd), parts);
  }
  for (const auto& rep : wall_forms(F, U, +1))
    fn.hminus.push_back({rep.part_size, rep.multiplicity, rep.sign});
  for (const auto& rep : wall_forms(F, U, -1))
    fn.hplus.push_back({rep.part_size, rep.multiplicity, rep.sign});

  if (combin::expand(fn.hminus) != fn.base.get(t1) ||
      combin::expand(fn.hplus) != fn.base.get(tp1))
    throw domain_error("wall multiplicities disagree with the rank type");
  std::string why;
  if (!combin::valid_sp(F, fn, false, &why))
    throw domain_error("computed type is not symplectic: " + why);
  return fn;
}

Matrix build_rep_gl(const Fq& F, const PartitionFn& type) {
  int n = combin::weight(type);
  Matrix M(n, n);
  int off = 0;
  for (const auto& [f, parts] : type.factors)
    for (int part : parts) {
      Matrix J = mat::companion(F, f, part);
      for (int i = 0; i < J.rows(); ++i)
        for (int j = 0; j < J.cols(); ++j) M.at(off + i, off + j) = J.at(i, j);
      off += J.rows();
    }
  return M;
}

namespace {

// epsilon giving a prescribed discriminant class for the 2k-block
// J_{2k,eps}: class(eps(k)) with eps(k) = (-1)^{k-1} 2^{2k-1} eps.
FqElem eps_for_sign(const Fq& F, int size, int sign) {
  int k = size / 2;
  FqElem c = F.one();
  FqElem two = F.from_int(2);
  for (int i = 0; i < 2 * k - 1; ++i) c = F.mul(c, two);
  if (k % 2 == 0) c = F.neg(c);
  FqElem nonsquare = 0;
  for (FqElem a : F.enumerate())
    if (a != 0 && F.sign_class(a) == -1) {
      nonsquare = a;
      break;
    }
  if (F.sign_class(c) == sign) return F.one();
  return nonsquare;
}

// B = R (A^t)^{-1} R with R the antidiagonal reversal: diag(A, B) is then
// symplectic for the standard gram of size 2k.
Matrix hyperbolic_partner(const Fq& F, const Matrix& A) {
  int k = A.rows();
  Matrix Rv(k, k);
  for (int i = 0; i < k; ++i) Rv.at(i, k - 1 - i) = F.one();
  Matrix Ainvt = mat::transpose(mat::inverse(F, A));
  return mat::mul(F, mat::mul(F, Rv, Ainvt), Rv);
}

Matrix doubled_pair_block(const Fq& F, const Matrix& A) {
  int k = A.rows();
  Matrix B = hyperbolic_partner(F, A);
  Matrix M(2 * k, 2 * k);
  M.labels = mat::standard_labels(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      M.at(i, j) = A.at(i, j);
      M.at(k + i, k + j) = B.at(i, j);
    }
  return M;
}

// Hyperbolic basis change for an invariant alternating form: returns S with
// S^t G_found S = gram_standard, so S^{-1} C S is symplectic.
Matrix hyperbolic_reduce(const Fq& F, const Matrix& Gf) {
  int n = Gf.rows();
  if (n % 2 != 0) throw domain_error("alternating form on odd dimension");
  std::vector<std::vector<FqElem>> rest;
  for (int i = 0; i < n; ++i) {
    std::vector<FqElem> e(n, 0);
    e[i] = F.one();
    rest.push_back(e);
  }
  auto form = [&](const std::vector<FqElem>& a, const std::vector<FqElem>& b) {
    FqElem acc = 0;
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < n; ++j)
        acc = F.add(acc, F.mul(a[i], F.mul(Gf.at(i, j), b[j])));
    }
    return acc;
  };
  std::vector<std::vector<FqElem>> es, fs;
  while (!rest.empty()) {
    auto u = rest.front();
    rest.erase(rest.begin());
    bool zero = std::all_of(u.begin(), u.end(), [](FqElem x) { return x == 0; });
    if (zero) continue;
    int wi = -1;
    for (size_t i = 0; i < rest.size(); ++i)
      if (form(u, rest[i]) != 0) {
        wi = static_cast<int>(i);
        break;
      }
    if (wi < 0) throw domain_error("degenerate alternating form");
    auto w = rest[wi];
    rest.erase(rest.begin() + wi);
    FqElem scale = F.inv(form(u, w));
    for (auto& x : w) x = F.mul(x, scale);
    for (auto& v : rest) {
      FqElem cu = form(v, w);  // coefficient along u
      FqElem cw = form(v, u);  // coefficient along w
      for (int i = 0; i < n; ++i) {
        v[i] = F.sub(v[i], F.mul(cu, u[i]));
        v[i] = F.add(v[i], F.mul(cw, w[i]));
      }
    }
    es.push_back(u);
    fs.push_back(w);
  }
  Matrix S(n, n);
  int half = static_cast<int>(es.size());
  for (int c = 0; c < half; ++c)
    for (int i = 0; i < n; ++i) {
      S.at(i, c) = es[c][i];
      S.at(i, n - 1 - c) = fs[c][i];
    }
  return S;
}

// Symplectic block with GL type f^m for a self-dual irreducible f: take the
// companion matrix and pull an invariant alternating form back to standard.
Matrix self_dual_block(const Fq& F, const Poly& f, int m) {
  Matrix C = mat::companion(F, f, m);
  int sz = C.rows();
  if (sz % 2 != 0) throw domain_error("self-dual block of odd size");
  Matrix G = gram_standard(F, sz / 2);
  if (is_symplectic(F, C, G)) {
    C.labels = mat::standard_labels(sz / 2);
    return C;
  }
  // invariant alternating forms: C^t X C = X, X^t = -X
  int n = sz;
  Matrix sys(n * n + (n * n + n) / 2, n * n);
  int row = 0;
  // coefficient of x_{kl} in (C^t X C - X)_{ij}
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j, ++row)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          FqElem c = F.mul(C.at(k, i), C.at(l, j));
          if (k == i && l == j) c = F.sub(c, F.one());
          if (c) sys.at(row, k * n + l) = F.add(sys.at(row, k * n + l), c);
        }
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l, ++row) {
      // x_{kl} + x_{lk} = 0 (includes the diagonal)
      sys.at(row, k * n + l) = F.add(sys.at(row, k * n + l), F.one());
      sys.at(row, l * n + k) = F.add(sys.at(row, l * n + k), F.one());
    }
  Matrix K = mat::kernel_basis(F, sys);
  if (K.rows() == 0) throw domain_error("no invariant alternating form");
  // walk combinations deterministically until one is nondegenerate
  std::vector<uint32_t> digits(K.rows(), 0);
  while (true) {
    size_t i = 0;
    while (i < digits.size() && digits[i] + 1 == F.q()) digits[i++] = 0;
    if (i == digits.size())
      throw domain_error("no nondegenerate invariant alternating form");
    ++digits[i];
    Matrix Gf(n, n);
    for (size_t b = 0; b < digits.size(); ++b) {
      if (digits[b] == 0) continue;
      for (int r = 0; r < n; ++r)
        for (int c2 = 0; c2 < n; ++c2)
          Gf.at(r, c2) =
              F.add(Gf.at(r, c2), F.mul(digits[b], K.at(static_cast<int>(b), r * n + c2)));
    }
    if (!mat::invertible(F, Gf)) continue;
    Matrix S = hyperbolic_reduce(F, Gf);
    Matrix M = mat::mul(F, mat::mul(F, mat::inverse(F, S), C), S);
    if (!is_symplectic(F, M, G))
      throw domain_error("hyperbolic reduction failed");
    M.labels = mat::standard_labels(sz / 2);
    return M;
  }
}

}  // namespace

Matrix build_rep_sp(const Fq& F, const SymplecticFn& type) {
  std::string why;
  if (!combin::valid_sp(F, type, false, &why))
    throw domain_error("invalid symplectic type: " + why);
  Poly t1 = combin::t_minus_one(F);
  Poly tp1 = combin::t_plus_one(F);

  std::vector<Matrix> blocks;
  auto add_unipotent_blocks = [&](const SignedPartition& sp, bool negate) {
    for (const auto& e : sp) {
      if (e.size % 2 == 1) {
        for (int c = 0; c < e.mult / 2; ++c)
          blocks.push_back(mat::j_block(F, 2 * e.size));
      } else {
        // first blocks contribute +1, the last carries the product sign
        for (int c = 0; c + 1 < e.mult; ++c)
          blocks.push_back(mat::j_block_eps(F, e.size, eps_for_sign(F, e.size, +1)));
        blocks.push_back(mat::j_block_eps(F, e.size, eps_for_sign(F, e.size, e.sign)));
      }
      if (negate) {
        size_t added = e.size % 2 == 1 ? e.mult / 2 : e.mult;
        for (size_t i = blocks.size() - added; i < blocks.size(); ++i)
          blocks[i] = mat::neg(F, blocks[i]);
      }
    }
  };
  add_unipotent_blocks(type.hminus, false);
  add_unipotent_blocks(type.hplus, true);

  for (const auto& [f, parts] : type.base.factors) {
    if (f == t1 || f == tp1) continue;
    if (poly::is_irreducible(F, f)) {
      for (int part : parts) blocks.push_back(self_dual_block(F, f, part));
    } else {
      auto fs = poly::factor(F, f);
      if (fs.size() != 2 || fs[0].second != 1 || fs[1].second != 1)
        throw domain_error("unsupported symplectic key");
      const Poly& g = fs[0].first;
      for (int part : parts)
        blocks.push_back(doubled_pair_block(F, mat::companion(F, g, part)));
    }
  }

  Matrix rep = mat::orth_sum(F, blocks);
  if (sp_type(F, rep) != type)
    throw domain_error("symplectic representative failed the round trip");
  return rep;
}

}  // namespace cgc::classify
