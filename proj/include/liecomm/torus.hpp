#pragma once

#include <optional>
#include <vector>

#include "liecomm/compact_algebra.hpp"

namespace liecomm {

/// Orthonormal basis u_1..u_n of C^n stored as the columns of a unitary matrix.
class UnitaryFrame {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit UnitaryFrame(CMatrix columns, double tol = kTolerance);
  static UnitaryFrame standard(std::size_t n) { return UnitaryFrame(CMatrix::identity(n)); }

  const CMatrix& matrix() const noexcept { return m_; }
  std::size_t n() const noexcept { return m_.rows(); }
  /// Hermitian product u_i^H v_h of column i of `a` with column h of `b`.
  friend cplx dot(const UnitaryFrame& a, std::size_t i, const UnitaryFrame& b, std::size_t h);

 private:
  CMatrix m_;
};

/// Ordered orthonormal basis of a maximal toral subalgebra. `frame` is set for
/// su(n) tori of the form t_u (elements diagonal in the frame u).
struct TorusBasis {
  AlgebraPtr algebra;
  std::vector<AlgebraElement> vectors;
  std::optional<UnitaryFrame> frame;

  std::size_t size() const noexcept { return vectors.size(); }
};

struct TorusResiduals {
  double toral = 0.0;        // max ||[t_a, t_b]||
  double orthonormal = 0.0;  // max |<t_a, t_b> - delta_ab|
  std::size_t count = 0;
  std::size_t rank = 0;
};

TorusResiduals torus_residuals(const TorusBasis& t);

/// max |<a_i, b_j>| over both bases.
double torus_orthogonality(const TorusBasis& a, const TorusBasis& b);

}  // namespace liecomm
