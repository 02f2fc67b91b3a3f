#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liecomm/matrix.hpp"

namespace liecomm {

struct AlgebraInvariants {
  double antisymmetry = 0.0;  // max |c_ij^k + c_ji^k|
  double jacobi = 0.0;        // max over basis triples
  double invariance = 0.0;    // max |<[a,b],c> + <b,[a,c]>|
  bool positive_definite = false;
};

/// A compact semisimple Lie algebra given by structure constants over a fixed
/// real basis {e_i} together with an invariant positive-definite inner
/// product. Immutable once built.
class CompactAlgebra {
 public:
  /// `constants[(i * dim + j) * dim + k]` is the e_k-coordinate of [e_i, e_j].
  /// `realization`, when non-empty, holds one matrix per basis element.
  CompactAlgebra(std::string label, std::size_t rank, std::vector<double> constants, RMatrix gram,
                 std::vector<CMatrix> realization = {}, std::optional<int> su_degree = std::nullopt);

  const std::string& label() const noexcept { return label_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rank_; }
  const RMatrix& gram() const noexcept { return gram_; }
  double constant(std::size_t i, std::size_t j, std::size_t k) const {
    return constants_[(i * dim_ + j) * dim_ + k];
  }
  std::span<const double> constants() const noexcept { return constants_; }

  /// Set for the su(n) family; the solvers that need a Fourier frame check it.
  std::optional<int> su_degree() const noexcept { return su_degree_; }

  bool has_realization() const noexcept { return !realization_.empty(); }
  std::size_t realization_size() const noexcept {
    return realization_.empty() ? 0 : realization_.front().rows();
  }
  const CMatrix& basis_matrix(std::size_t i) const { return realization_.at(i); }

  std::vector<double> bracket(std::span<const double> a, std::span<const double> b) const;
  double inner(std::span<const double> a, std::span<const double> b) const;
  /// Column j holds the coordinates of [x, e_j].
  RMatrix ad(std::span<const double> x) const;
  /// Tr(ad_{e_i} ad_{e_j}).
  RMatrix killing_form() const;
  AlgebraInvariants check_invariants() const;
  /// max_{i,j} ||[e_i, e_j]||, so that ||[x,y]|| <= C * l1(x) * l1(y).
  double bracket_bound() const;

  CMatrix realize(std::span<const double> coords) const;
  /// Coordinates of a matrix in the realized basis via the trace form
  /// <A,B> = -Re Tr(AB). Throws NotApplicable without a realization.
  std::vector<double> coords_of(const CMatrix& m) const;

 private:
  std::string label_;
  std::size_t dim_;
  std::size_t rank_;
  std::vector<double> constants_;
  // nonzero (k, c_ij^k) per pair (i, j)
  std::vector<std::vector<std::pair<std::size_t, double>>> sparse_;
  RMatrix gram_;
  bool gram_is_identity_ = false;
  std::vector<CMatrix> realization_;
  std::optional<int> su_degree_;
};

using AlgebraPtr = std::shared_ptr<const CompactAlgebra>;

/// Element of a compact algebra, held as coordinates in its basis.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraPtr algebra, std::vector<double> coords);

  static AlgebraElement zero(const AlgebraPtr& algebra);
  static AlgebraElement basis(const AlgebraPtr& algebra, std::size_t i);
  static AlgebraElement from_matrix(const AlgebraPtr& algebra, const CMatrix& m);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  CMatrix matrix() const { return algebra_->realize(coords_); }
  double norm() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(double s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= -1.0; }
  friend AlgebraElement operator*(double s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(AlgebraElement a, double s) { return a *= s; }

 private:
  AlgebraPtr algebra_;
  std::vector<double> coords_;
};

/// su(n) with its orthonormal basis under -Re Tr: Gram-Schmidt on
/// i(E_kk - E_{k+1,k+1}), then (E_jk - E_kj)/sqrt2 and i(E_jk + E_kj)/sqrt2
/// for j < k in lexicographic order.
/// Instances are cached, so repeated calls return the same algebra.
AlgebraPtr su(int n);

/// Block-diagonal direct sum of simple ideals.
AlgebraPtr direct_sum(const std::vector<AlgebraPtr>& blocks, std::string label = {});

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);
double inner(const AlgebraElement& a, const AlgebraElement& b);
RMatrix ad_matrix(const AlgebraElement& x);
/// exp(ad_y) x, which is Ad_{exp y} x.
AlgebraElement exp_ad(const AlgebraElement& y, const AlgebraElement& x);

/// Gram-Schmidt under the algebra's inner product. Vectors whose residual
/// falls below `drop_tol` are discarded.
std::vector<AlgebraElement> orthonormalize(const std::vector<AlgebraElement>& vectors,
                                           double drop_tol = 1e-12);

}  // namespace liecomm
