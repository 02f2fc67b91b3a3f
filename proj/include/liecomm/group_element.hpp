#pragma once

#include "liecomm/matrix.hpp"

namespace liecomm {

/// Element of SU(n) held as its defining unitary matrix.
class GroupElement {
 public:
  static constexpr double kTolerance = 1e-10;

  /// Validates unitarity and det = 1 within `tol`; throws NotUnitary.
  explicit GroupElement(CMatrix m, double tol = kTolerance);

  static GroupElement identity(std::size_t n) { return GroupElement(CMatrix::identity(n)); }

  const CMatrix& matrix() const noexcept { return m_; }
  std::size_t n() const noexcept { return m_.rows(); }

  GroupElement inverse() const { return GroupElement(m_.adjoint(), unchecked{}); }
  /// g X g^{-1}
  CMatrix conjugate(const CMatrix& x) const { return m_ * x * m_.adjoint(); }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return GroupElement(a.m_ * b.m_, unchecked{});
  }

  double distance_to_identity() const { return distance(m_, CMatrix::identity(n())); }

 private:
  struct unchecked {};
  GroupElement(CMatrix m, unchecked) : m_(std::move(m)) {}
  CMatrix m_;
};

/// ||M^H M - I||_F and |det M - 1|.
struct UnitaryResiduals {
  double unitarity = 0.0;
  double determinant = 0.0;
};
UnitaryResiduals special_unitary_residuals(const CMatrix& m);

}  // namespace liecomm
