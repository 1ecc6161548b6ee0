#pragma once

#include <string>
#include <vector>

#include "cgc/poly.hpp"

namespace cgc {

/// Hyperbolic basis label: e_pair (neg = false) or f_pair (neg = true).
struct BasisLabel {
  int pair = 0;
  bool neg = false;
  auto operator<=>(const BasisLabel&) const = default;
  std::string str() const {
    return (neg ? "f" : "e") + std::to_string(pair);
  }
};
using Labels = std::vector<BasisLabel>;

/// Dense matrix over F_q. Square matrices index rows and columns by the same
/// ordered basis; `labels` carries that basis for the symplectic builders.
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Matrix identity(const Fq& F, int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  FqElem& at(int i, int j) { return a_[i * cols_ + j]; }
  FqElem at(int i, int j) const { return a_[i * cols_ + j]; }
  bool square() const { return rows_ == cols_; }

  Labels labels;

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<FqElem> a_;
};

namespace mat {

/// Hyperbolic order e_1..e_n, f_n..f_1.
Labels standard_labels(int n);

Matrix mul(const Fq& F, const Matrix& A, const Matrix& B);
Matrix add(const Fq& F, const Matrix& A, const Matrix& B);
Matrix sub(const Fq& F, const Matrix& A, const Matrix& B);
Matrix neg(const Fq& F, const Matrix& A);
Matrix transpose(const Matrix& A);
Matrix pow(const Fq& F, Matrix A, uint64_t e);

int rank(const Fq& F, Matrix A);
FqElem det(const Fq& F, Matrix A);
Matrix inverse(const Fq& F, const Matrix& A);
bool invertible(const Fq& F, const Matrix& A);
/// Rows of the result form a basis of the right kernel {v : Av = 0}.
Matrix kernel_basis(const Fq& F, const Matrix& A);

/// Apply a polynomial to a square matrix (Horner).
Matrix eval_poly(const Fq& F, const Poly& f, const Matrix& A);
/// Characteristic polynomial det(tI - A), monic ascending (Berkowitz,
/// division free).
Poly char_poly(const Fq& F, const Matrix& A);
Poly min_poly(const Fq& F, const Matrix& A);

/// Companion matrix of f^m: subdiagonal ones, last column from
/// f^m = t^k - a_{k-1} t^{k-1} - ... - a_0. Requires f monic irreducible.
Matrix companion(const Fq& F, const Poly& f, int m);

/// Lower triangular all-ones, minimal polynomial (t-1)^n.
Matrix s_matrix(const Fq& F, int n);
/// Symplectic unipotent block of size 2m (argument is the size), minimal
/// polynomial (t-1)^m; symplectic for gram_standard(m).
Matrix j_block(const Fq& F, int size);
/// Orthogonal unipotent block of size 2m, minimal polynomial (t-1)^(2m).
Matrix j_block_eps(const Fq& F, int size, FqElem eps);

/// Gram matrix of the standard symplectic form in hyperbolic order.
Matrix gram_standard(const Fq& F, int n);
bool is_symplectic(const Fq& F, const Matrix& M, const Matrix& gram);

/// x -> x + c Q(x,v) v; always symplectic with determinant 1.
Matrix transvection(const Fq& F, const std::vector<FqElem>& v, FqElem c,
                    const Matrix& gram);

/// Symplectic embedding Sp_m -> Sp_n: identity padding with the hyperbolic
/// basis reordered into the ambient e_1..e_n, f_n..f_1 order.
Matrix embed_upup(const Fq& F, const Matrix& U, int n);
/// GL embedding: plain diag(U, I_{n-m}).
Matrix embed_up(const Fq& F, const Matrix& U, int n);

/// Orthogonal block sum of symplectic matrices: each block keeps its
/// hyperbolic pairs, pairs are renumbered into disjoint ranges and sorted
/// into the ambient order.
Matrix orth_sum(const Fq& F, const std::vector<Matrix>& blocks);

/// Rows of W span a subspace; result rows span its Q-orthogonal complement.
Matrix orth_complement(const Fq& F, const Matrix& W, const Matrix& gram);

/// Text format: rows ';'-separated, entries ','-separated, reduced mod q.
Matrix parse(const Fq& F, const std::string& text);
std::string to_text(const Fq& F, const Matrix& A);

}  // namespace mat
}  // namespace cgc
