#pragma once

#include "liecomm/group_element.hpp"
#include "liecomm/tori.hpp"

namespace liecomm {

struct AlgebraConfig {
  double z_max = 0.5;
  double tol = 1e-9;
  /// For z = 0: 0 returns (0, 0); a positive value returns a regular element of
  /// that norm paired with y = 0.
  double zero_target_scale = 0.0;
};

/// x = i c diag(d_1..d_n), d_k = k - (n+1)/2, scaled so that ||x|| = r.
AlgebraElement regular_element(const AlgebraPtr& su_n, double r);

/// y in the orthogonal complement of the centralizer of x with [x, y] = w.
/// Works in an eigenframe of x, so x need not be diagonal.
AlgebraElement invert_ad_on_complement(const AlgebraElement& x, const AlgebraElement& w,
                                       double tol = 1e-9);

struct AlgebraDecomposition {
  AlgebraElement target;
  AlgebraElement x;
  AlgebraElement y;
  GroupElement g;            // x = Ad_g x0, y = Ad_g y0
  AlgebraElement x0;         // regular element, diagonal in the standard frame
  AlgebraElement w;          // Ad_{g^{-1}} z, inside the Fourier torus
  AlgebraElement y0;         // [x0, y0] = w
  TorusBasis torus;          // Fourier torus orthogonal to the centralizer of x0
  double scale = 0.0;        // ||x0||
  double residual = 0.0;     // ||[x, y] - z||
  double norm_x = 0.0;
  double norm_y = 0.0;
};

/// [x, y] = z for small z in su(n), with ||x|| = sqrt||z|| and ||y|| = O(sqrt||z||).
AlgebraDecomposition decompose_algebra(const AlgebraPtr& su_n, const AlgebraElement& z,
                                       const AlgebraConfig& config = {});

}  // namespace liecomm
