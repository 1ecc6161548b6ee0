#pragma once

#include <vector>

#include "cgc/combin.hpp"
#include "cgc/mat.hpp"

namespace cgc::classify {

/// One orthogonal constituent of the Wall decomposition at t -+ 1.
struct WallBlockReport {
  int part_size = 0;     // s
  int multiplicity = 0;  // m_s
  int sign = 0;          // +1 or -1
  Matrix witness;        // rows: lifted basis of H_s
  Matrix gram;           // m_s x m_s Gram matrix of h_s on the witnesses
};

/// GL conjugacy type: for each irreducible factor f of the characteristic
/// polynomial, the partition read off the rank sequence of f(U)^j.
PartitionFn gl_type(const Fq& F, const Matrix& U);

int fixed_dim(const Fq& F, const Matrix& U);
int refl_length(const Fq& F, const Matrix& U);

/// Wall forms of the unipotent part at eigenvalue zeta (+1 or -1) of a
/// symplectic U. The t+1 data is computed by applying the t-1 recipe to -U.
std::vector<WallBlockReport> wall_forms(const Fq& F, const Matrix& U,
                                        int zeta);

/// Symplectic conjugacy type: GL type regrouped over dual-irreducible keys
/// plus Wall signs at t -+ 1.
SymplecticFn sp_type(const Fq& F, const Matrix& U);

/// Block-diagonal representative of a GL type.
Matrix build_rep_gl(const Fq& F, const PartitionFn& type);
/// Symplectic representative of a (completed) symplectic type, an orthogonal
/// sum of unipotent blocks, negated blocks, self-dual companion blocks and
/// hyperbolically doubled pairs; validated by an sp_type round trip.
Matrix build_rep_sp(const Fq& F, const SymplecticFn& type);

}  // namespace cgc::classify
