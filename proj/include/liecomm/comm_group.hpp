#pragma once

#include <string>
#include <vector>

#include "liecomm/comm_algebra.hpp"
#include "liecomm/group_element.hpp"

namespace liecomm {

/// sum_k ad_y^k x / (k+1)!, the first component of (x, y) -> ((e^{ad_y} - 1)/ad_y x, y).
AlgebraElement phi(const AlgebraElement& x, const AlgebraElement& y);

/// Inverse of phi in its first argument: ad_y/(e^{ad_y} - 1) applied to c.
/// Throws SpectrumTooLarge when ||ad_y|| >= 0.9 * 2 pi.
AlgebraElement phi_inverse_first(const AlgebraElement& c, const AlgebraElement& y);

/// x - e^{ad_y} x. Equals [phi(x, y), y].
AlgebraElement C_map(const AlgebraElement& x, const AlgebraElement& y);

/// Operator norm of ad_y with respect to the algebra's inner product.
double ad_norm(const AlgebraElement& y);

struct PQConfig {
  double tol = 1e-10;
  int max_iterations = 50;
  double fd_step = 1e-6;
  double ab_max = 0.5;  // bound on ||a|| + ||b||
};

struct PQResult {
  GroupElement P;
  GroupElement Q;
  AlgebraElement p;  // P = exp(p)
  AlgebraElement q;  // Q = exp(q)
  int iterations = 0;
  double residual = 0.0;  // ||exp(Ad_P a) exp(Ad_Q b) - exp(a + b)||_F
  std::vector<double> history;
};

/// exp(a + b) = exp(Ad_P a) exp(Ad_Q b) by Gauss-Newton from P = Q = I.
PQResult solve_pq(const AlgebraElement& a, const AlgebraElement& b, const PQConfig& config = {});

struct GroupConfig {
  double z_max = 0.05;  // bound on ||log Z||
  double tol = 1e-8;    // commutator residual
  double log_margin = 1e-6;
  AlgebraConfig algebra;
  PQConfig pq;
};

struct GroupDecomposition {
  GroupElement Z;
  GroupElement A;
  GroupElement B;
  AlgebraElement z;  // log Z
  AlgebraElement c;  // [c, y] = z
  AlgebraElement x;  // x - e^{ad_y} x = z
  AlgebraElement y;
  GroupElement P;
  GroupElement Q;
  int pq_iterations = 0;
  double residual = 0.0;  // ||A B A^{-1} B^{-1} - Z||_F
  double dist_A = 0.0;    // ||A - I||_F
  double dist_B = 0.0;
};

/// ABA^{-1}B^{-1} = Z with A = P e^x P^{-1}, B = Q e^y P^{-1}. Errors carry the
/// failing stage.
GroupDecomposition decompose_group(const AlgebraPtr& su_n, const GroupElement& Z,
                                   const GroupConfig& config = {});

}  // namespace liecomm
