#pragma once

#include <cstddef>

#include "liecomm/group_element.hpp"
#include "liecomm/rootsys.hpp"
#include "liecomm/torus.hpp"

namespace liecomm {

/// |u_i.v_k|^2 + |u_j.v_h|^2 - |u_i.v_h|^2 - |u_j.v_k|^2, which equals
/// Re Tr(U_ij V_hk) for U_ij = i u_i u_i^H - i u_j u_j^H and V_hk likewise.
/// Indices are 0-based; requires i != j and h != k.
double trace_pairing_formula(const UnitaryFrame& u, const UnitaryFrame& v, std::size_t i,
                             std::size_t j, std::size_t h, std::size_t k);

/// max_{i,h} | |u_i.v_h| - 1/sqrt(n) |
double unbiasedness_deviation(const UnitaryFrame& u, const UnitaryFrame& v);
bool is_unbiased_pair(const UnitaryFrame& u, const UnitaryFrame& v, double tol);

/// v_j = n^{-1/2} sum_m zeta^{m j} u_{m+1}, zeta = exp(2 pi i / n), j = 1..n.
UnitaryFrame fourier_frame(const UnitaryFrame& u);

/// The torus t_u of su(n): elements diagonal in the frame u.
TorusBasis frame_torus(const AlgebraPtr& su_n, const UnitaryFrame& u);

/// t_v for the Fourier frame v of u; orthogonal to t_u.
TorusBasis fourier_orthogonal_torus(const AlgebraPtr& su_n, const UnitaryFrame& u);

/// Maximal toral subalgebra orthogonal to the Chevalley torus span{k_a},
/// built by highest-root/Levi induction with the type-A Fourier torus as base
/// case. The result lives in `form.algebra`.
TorusBasis orthogonal_torus_inductive(const RootSystemPresentation& p, const CompactForm& form);
TorusBasis orthogonal_torus_inductive(const RootSystemPresentation& p);

struct Conjugation {
  GroupElement g;
  AlgebraElement z_prime;  // lies in the target torus
  double residual = 0.0;   // ||Ad_{g^{-1}} z - z'||
};

/// g in SU(n) with Ad_{g^{-1}} z in the frame torus `target`. Eigenvalues of
/// i z are placed in descending order along the target frame.
Conjugation conjugate_into_torus(const AlgebraPtr& su_n, const AlgebraElement& z,
                                 const TorusBasis& target);

}  // namespace liecomm
