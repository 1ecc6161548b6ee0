#include "cgc/mat.hpp"

#include <algorithm>
#include <sstream>

namespace cgc {

Matrix Matrix::identity(const Fq& F, int n) {
  Matrix I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = F.one();
  return I;
}

namespace mat {

Labels standard_labels(int n) {
  Labels l;
  for (int i = 1; i <= n; ++i) l.push_back({i, false});
  for (int i = n; i >= 1; --i) l.push_back({i, true});
  return l;
}

Matrix mul(const Fq& F, const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) throw domain_error("matrix shape mismatch in mul");
  Matrix C(A.rows(), B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int k = 0; k < A.cols(); ++k) {
      FqElem aik = A.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < B.cols(); ++j)
        C.at(i, j) = F.add(C.at(i, j), F.mul(aik, B.at(k, j)));
    }
  C.labels = A.labels;
  return C;
}

Matrix add(const Fq& F, const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw domain_error("matrix shape mismatch in add");
  Matrix C(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) C.at(i, j) = F.add(A.at(i, j), B.at(i, j));
  C.labels = A.labels;
  return C;
}

Matrix sub(const Fq& F, const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw domain_error("matrix shape mismatch in sub");
  Matrix C(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) C.at(i, j) = F.sub(A.at(i, j), B.at(i, j));
  C.labels = A.labels;
  return C;
}

Matrix neg(const Fq& F, const Matrix& A) {
  Matrix C(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) C.at(i, j) = F.neg(A.at(i, j));
  C.labels = A.labels;
  return C;
}

Matrix transpose(const Matrix& A) {
  Matrix C(A.cols(), A.rows());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) C.at(j, i) = A.at(i, j);
  C.labels = A.labels;
  return C;
}

Matrix pow(const Fq& F, Matrix A, uint64_t e) {
  if (!A.square()) throw domain_error("matrix power needs a square matrix");
  Matrix R = Matrix::identity(F, A.rows());
  R.labels = A.labels;
  while (e) {
    if (e & 1) R = mul(F, R, A);
    A = mul(F, A, A);
    e >>= 1;
  }
  return R;
}

namespace {

// In-place row echelon; returns rank, accumulates det if asked.
int echelon(const Fq& F, Matrix& A, FqElem* det_out) {
  int r = 0;
  FqElem d = F.one();
  for (int c = 0; c < A.cols() && r < A.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < A.rows(); ++i)
      if (A.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = 0; j < A.cols(); ++j) std::swap(A.at(piv, j), A.at(r, j));
      d = F.neg(d);
    }
    d = F.mul(d, A.at(r, c));
    FqElem inv = F.inv(A.at(r, c));
    for (int j = 0; j < A.cols(); ++j) A.at(r, j) = F.mul(A.at(r, j), inv);
    for (int i = 0; i < A.rows(); ++i) {
      if (i == r || A.at(i, c) == 0) continue;
      FqElem f = A.at(i, c);
      for (int j = 0; j < A.cols(); ++j)
        A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(r, j)));
    }
    ++r;
  }
  if (det_out) *det_out = d;
  return r;
}

}  // namespace

int rank(const Fq& F, Matrix A) { return echelon(F, A, nullptr); }

FqElem det(const Fq& F, Matrix A) {
  if (!A.square()) throw domain_error("det needs a square matrix");
  FqElem d;
  int r = echelon(F, A, &d);
  return r == A.rows() ? d : 0;
}

Matrix inverse(const Fq& F, const Matrix& A) {
  if (!A.square()) throw domain_error("inverse needs a square matrix");
  int n = A.rows();
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, n + i) = F.one();
  }
  echelon(F, aug, nullptr);
  for (int i = 0; i < n; ++i)
    if (aug.at(i, i) != F.one()) throw domain_error("singular matrix");
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  inv.labels = A.labels;
  return inv;
}

bool invertible(const Fq& F, const Matrix& A) {
  return A.square() && rank(F, A) == A.rows();
}

Matrix kernel_basis(const Fq& F, const Matrix& A) {
  Matrix E = A;
  echelon(F, E, nullptr);
  int n = A.cols();
  std::vector<int> pivot_col;
  std::vector<bool> is_pivot(n, false);
  for (int i = 0; i < E.rows(); ++i)
    for (int j = 0; j < n; ++j)
      if (E.at(i, j) != 0) {
        pivot_col.push_back(j);
        is_pivot[j] = true;
        break;
      }
  Matrix K(n - static_cast<int>(pivot_col.size()), n);
  int kr = 0;
  for (int freec = 0; freec < n; ++freec) {
    if (is_pivot[freec]) continue;
    K.at(kr, freec) = F.one();
    for (size_t pr = 0; pr < pivot_col.size(); ++pr)
      K.at(kr, pivot_col[pr]) = F.neg(E.at(static_cast<int>(pr), freec));
    ++kr;
  }
  return K;
}

Matrix eval_poly(const Fq& F, const Poly& f, const Matrix& A) {
  if (!A.square()) throw domain_error("eval_poly needs a square matrix");
  int n = A.rows();
  Matrix R(n, n);
  for (size_t i = f.size(); i-- > 0;) {
    R = mul(F, R, A);
    for (int d = 0; d < n; ++d) R.at(d, d) = F.add(R.at(d, d), f[i]);
  }
  R.labels = A.labels;
  return R;
}

Poly char_poly(const Fq& F, const Matrix& A) {
  if (!A.square()) throw domain_error("char_poly needs a square matrix");
  int n = A.rows();
  if (n == 0) return {F.one()};
  // Berkowitz: V holds descending coefficients of det(tI - A) for the leading
  // principal submatrices, grown one row/column at a time.
  std::vector<FqElem> V = {F.one(), F.neg(A.at(0, 0))};
  for (int i = 1; i < n; ++i) {
    // Toeplitz column: 1, -A[i][i], -(R C), -(R M C), ..., with
    // R = A[i][0..i-1], C = A[0..i-1][i], M the leading i x i block.
    std::vector<FqElem> col(i + 2, 0);
    col[0] = F.one();
    col[1] = F.neg(A.at(i, i));
    std::vector<FqElem> w(i);
    for (int r = 0; r < i; ++r) w[r] = A.at(r, i);
    for (int k = 2; k <= i + 1; ++k) {
      FqElem dot = 0;
      for (int r = 0; r < i; ++r) dot = F.add(dot, F.mul(A.at(i, r), w[r]));
      col[k] = F.neg(dot);
      if (k <= i) {
        std::vector<FqElem> w2(i, 0);
        for (int r = 0; r < i; ++r) {
          if (w[r] == 0) continue;
          for (int s = 0; s < i; ++s) w2[s] = F.add(w2[s], F.mul(A.at(s, r), w[r]));
        }
        w = std::move(w2);
      }
    }
    std::vector<FqElem> V2(i + 2, 0);
    for (int r = 0; r < i + 2; ++r)
      for (int c = 0; c < static_cast<int>(V.size()) && c <= r; ++c)
        V2[r] = F.add(V2[r], F.mul(col[r - c], V[c]));
    V = std::move(V2);
  }
  Poly p(n + 1);
  for (int k = 0; k <= n; ++k) p[n - k] = V[k];
  return p;
}

Poly min_poly(const Fq& F, const Matrix& A) {
  // Per irreducible factor f of the characteristic polynomial, the exponent in
  // the minimal polynomial is the nilpotency index of f(A) on the f-primary
  // component, i.e. the first k where rank f(A)^k stabilizes.
  Poly cp = char_poly(F, A);
  Poly m = {F.one()};
  for (const auto& [f, e] : poly::factor(F, cp)) {
    (void)e;
    Matrix fA = eval_poly(F, f, A);
    Matrix acc = fA;
    int k = 1;
    int prev = rank(F, acc);
    while (true) {
      Matrix nxt = mul(F, acc, fA);
      int rn = rank(F, nxt);
      if (rn == prev) break;
      prev = rn;
      acc = std::move(nxt);
      ++k;
    }
    m = poly::mul(F, m, poly::pow(F, f, static_cast<uint32_t>(k)));
  }
  return m;
}

Matrix companion(const Fq& F, const Poly& f, int m) {
  if (!poly::is_irreducible(F, f) || !poly::is_monic(F, f))
    throw domain_error("companion needs a monic irreducible polynomial");
  if (m < 1) throw domain_error("companion exponent must be >= 1");
  Poly fm = poly::pow(F, f, static_cast<uint32_t>(m));
  int k = poly::degree(fm);
  Matrix J(k, k);
  for (int i = 1; i < k; ++i) J.at(i, i - 1) = F.one();
  // f^m = t^k - a_{k-1} t^{k-1} - ... - a_0
  for (int i = 0; i < k; ++i) J.at(i, k - 1) = F.neg(fm[i]);
  return J;
}

Matrix s_matrix(const Fq& F, int n) {
  Matrix S(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) S.at(i, j) = F.one();
  return S;
}

Matrix j_block(const Fq& F, int size) {
  if (size < 2 || size % 2 != 0) throw domain_error("j_block needs even size");
  int m = size / 2;
  Matrix J(size, size);
  J.labels = standard_labels(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) J.at(i, j) = F.one();
  for (int i = m; i < size; ++i) {
    J.at(i, i) = F.one();
    if (i > m) J.at(i, i - 1) = F.neg(F.one());
  }
  return J;
}

Matrix j_block_eps(const Fq& F, int size, FqElem eps) {
  if (size < 2 || size % 2 != 0) throw domain_error("j_block_eps needs even size");
  if (eps == 0) throw domain_error("orthogonal block needs eps != 0");
  Matrix J = j_block(F, size);
  int m = size / 2;
  for (int j = 0; j < m; ++j) J.at(m, j) = eps;  // the f_m row
  return J;
}

Matrix gram_standard(const Fq& F, int n) {
  Matrix G(2 * n, 2 * n);
  G.labels = standard_labels(n);
  for (int i = 0; i < n; ++i) {
    G.at(i, 2 * n - 1 - i) = F.one();
    G.at(2 * n - 1 - i, i) = F.neg(F.one());
  }
  return G;
}

bool is_symplectic(const Fq& F, const Matrix& M, const Matrix& gram) {
  if (!M.square() || M.rows() != gram.rows()) return false;
  return mul(F, mul(F, transpose(M), gram), M) == gram;
}

Matrix transvection(const Fq& F, const std::vector<FqElem>& v, FqElem c,
                    const Matrix& gram) {
  int n = gram.rows();
  if (static_cast<int>(v.size()) != n) throw domain_error("bad direction size");
  // T = I + c v (G v)^t
  std::vector<FqElem> gv(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gv[i] = F.add(gv[i], F.mul(gram.at(i, j), v[j]));
  Matrix T = Matrix::identity(F, n);
  T.labels = gram.labels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      T.at(i, j) = F.add(T.at(i, j), F.mul(c, F.mul(v[i], gv[j])));
  return T;
}

Matrix embed_upup(const Fq& F, const Matrix& U, int n) {
  if (!U.square() || U.rows() % 2 != 0)
    throw domain_error("embed_upup needs an even square matrix");
  int m = U.rows() / 2;
  if (n < m) throw domain_error("embedding target smaller than source");
  // Ambient position of the source basis vector at internal index i:
  // e_1..e_m keep their slots, f_m..f_1 shift to the tail.
  auto pos = [&](int i) { return i < m ? i : i + 2 * (n - m); };
  Matrix E = Matrix::identity(F, 2 * n);
  E.labels = standard_labels(n);
  for (int i = 0; i < 2 * m; ++i) {
    E.at(pos(i), pos(i)) = 0;
    for (int j = 0; j < 2 * m; ++j) E.at(pos(i), pos(j)) = U.at(i, j);
  }
  return E;
}

Matrix embed_up(const Fq& F, const Matrix& U, int n) {
  if (!U.square()) throw domain_error("embed_up needs a square matrix");
  if (n < U.rows()) throw domain_error("embedding target smaller than source");
  Matrix E = Matrix::identity(F, n);
  for (int i = 0; i < U.rows(); ++i) {
    E.at(i, i) = 0;
    for (int j = 0; j < U.cols(); ++j) E.at(i, j) = U.at(i, j);
  }
  return E;
}

Matrix orth_sum(const Fq& F, const std::vector<Matrix>& blocks) {
  int total_pairs = 0;
  for (const Matrix& b : blocks) {
    if (!b.square() || b.rows() % 2 != 0)
      throw domain_error("orth_sum blocks must be even square matrices");
    total_pairs += b.rows() / 2;
  }
  int n = total_pairs;
  Matrix M = Matrix::identity(F, 2 * n);
  M.labels = standard_labels(n);
  int offset = 0;
  for (const Matrix& b : blocks) {
    int m = b.rows() / 2;
    // block-internal index i -> ambient index with pairs offset+1..offset+m
    auto pos = [&](int i) {
      return i < m ? offset + i : 2 * n - (offset + m) + (i - m);
    };
    for (int i = 0; i < 2 * m; ++i) {
      M.at(pos(i), pos(i)) = 0;
      for (int j = 0; j < 2 * m; ++j) M.at(pos(i), pos(j)) = b.at(i, j);
    }
    offset += m;
  }
  return M;
}

Matrix orth_complement(const Fq& F, const Matrix& W, const Matrix& gram) {
  if (W.cols() != gram.rows())
    throw domain_error("basis/gram shape mismatch");
  return kernel_basis(F, mul(F, W, gram));
}

Matrix parse(const Fq& F, const std::string& text) {
  std::vector<std::vector<FqElem>> rows;
  std::stringstream ss(text);
  std::string rowtext;
  while (std::getline(ss, rowtext, ';')) {
    std::vector<FqElem> row;
    std::stringstream rs(rowtext);
    std::string cell;
    while (std::getline(rs, cell, ',')) {
      try {
        row.push_back(F.from_code(std::stoll(cell)));
      } catch (const std::logic_error&) {
        throw domain_error("bad matrix entry '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw domain_error("ragged matrix text");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw domain_error("empty matrix text");
  Matrix A(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) A.at(i, j) = rows[i][j];
  return A;
}

std::string to_text(const Fq& F, const Matrix& A) {
  std::string s;
  for (int i = 0; i < A.rows(); ++i) {
    if (i) s += ";";
    for (int j = 0; j < A.cols(); ++j) {
      if (j) s += ",";
      s += F.to_string(A.at(i, j));
    }
  }
  return s;
}

}  // namespace mat
}  // namespace cgc
