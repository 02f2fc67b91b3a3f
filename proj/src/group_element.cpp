#include "liecomm/group_element.hpp"

namespace liecomm {

UnitaryResiduals special_unitary_residuals(const CMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "group element must be square");
  return {unitarity_residual(m), std::abs(determinant(m) - cplx(1.0))};
}

GroupElement::GroupElement(CMatrix m, double tol) : m_(std::move(m)) {
  const auto r = special_unitary_residuals(m_);
  if (!(r.unitarity <= tol) || !(r.determinant <= tol))
    throw Error(ErrorCode::NotUnitary, "matrix is not in SU(n) within tolerance");
}

}  // namespace liecomm
