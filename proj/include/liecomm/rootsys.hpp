#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liecomm/compact_algebra.hpp"
#include "liecomm/torus.hpp"
#include "json.hpp"

namespace liecomm {

/// Root in simple-root coordinates.
using RootVec = std::vector<int>;

/// Classical root system with a Chevalley-basis sign convention.
///
/// Conventions:
///  - `cartan[i][j] = <alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)`,
///    so that [h_i, x_{alpha_j}] = cartan[i][j] x_{alpha_j};
///  - `form` is the integral symmetric form inherited from the usual
///    epsilon-coordinates (A: e_i - e_{i+1}; B: last root e_n; C: last root
///    2 e_n; D: last root e_{n-1} + e_n);
///  - positive roots are ordered by height, then by coordinates in decreasing
///    lexicographic order, so alpha_1 precedes alpha_2;
///  - the extraspecial pair of a non-simple root xi is (a, xi - a) with a the
///    first positive root for which xi - a is a root; its structure constant
///    is +(p + 1). All other signs follow from the Chevalley relations.
class RootSystemPresentation {
 public:
  char type() const noexcept { return type_; }
  int rank() const noexcept { return rank_; }
  std::string label() const { return std::string(1, type_) + std::to_string(rank_); }

  const std::vector<std::vector<int>>& cartan() const noexcept { return cartan_; }
  const std::vector<std::vector<int>>& form() const noexcept { return form_; }
  const std::vector<RootVec>& positive_roots() const noexcept { return positive_; }
  RootVec simple_root(int i) const;
  const RootVec& highest_root() const { return positive_.back(); }

  /// Fundamental weights in simple-root coordinates: numerators over a common
  /// denominator.
  const std::vector<std::vector<long long>>& fundamental_weight_numerators() const noexcept {
    return weight_num_;
  }
  long long weight_denominator() const noexcept { return weight_den_; }

  int height(const RootVec& r) const;
  bool is_root(const RootVec& r) const;
  /// Index into positive_roots() of r or -r.
  std::optional<std::size_t> positive_index(const RootVec& r) const;
  int pairing(const RootVec& a, const RootVec& b) const;  // (a, b)
  int coroot_pairing(const RootVec& a, int i) const;       // <a, alpha_i^vee>
  /// Largest p with b - p a a root.
  int string_down(const RootVec& a, const RootVec& b) const;
  /// Coefficients of h_r in the basis h_1..h_n of simple coroots.
  std::vector<int> coroot_coefficients(const RootVec& r) const;
  /// Chevalley structure constant N_{a,b}: [x_a, x_b] = N x_{a+b}. Zero when
  /// a + b is not a root.
  int structure_constant(const RootVec& a, const RootVec& b) const;
  /// Extraspecial pair (indices into positive_roots()) of a non-simple root.
  std::pair<std::size_t, std::size_t> extraspecial_pair(std::size_t xi) const {
    return extraspecial_.at(xi);
  }
  /// N for positive pairs (i, j), i < j in root order, whose sum is a root.
  const std::map<std::pair<std::size_t, std::size_t>, int>& positive_structure() const noexcept {
    return table_;
  }
  /// Dual Coxeter number 1 + sum of the coroot coefficients of theta^vee.
  int dual_coxeter_number() const;

  friend RootSystemPresentation make_presentation(char type, int rank);

 private:
  char type_ = 'A';
  int rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<int>> form_;
  std::vector<RootVec> positive_;
  std::map<RootVec, std::size_t> index_;
  std::vector<std::vector<long long>> weight_num_;
  long long weight_den_ = 1;
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> extraspecial_;
  std::map<std::pair<std::size_t, std::size_t>, int> table_;
};

/// Builds A_n (n>=1), B_n (n>=2), C_n (n>=2), D_n (n>=4). E, F, G throw
/// UnsupportedType; other invalid ranks throw InvalidArgument.
RootSystemPresentation make_presentation(char type, int rank);

struct FundamentalWeightMatch {
  int simple_root = 0;  // 0-based index
  int multiple = 1;     // theta = multiple * omega_{simple_root}
};

/// Simple root alpha with theta = omega_alpha or 2 omega_alpha. Throws
/// NotApplicable for type A.
FundamentalWeightMatch highest_root_is_fund_weight(const RootSystemPresentation& p);

/// Label of a compact basis element.
struct BasisLabel {
  enum class Kind { K, U, V };
  Kind kind;
  std::size_t index;  // simple root for K, positive root for U and V
};

/// Compact real form spanned by k_a = i h_a (a simple), u_a = x_a - x_{-a},
/// v_a = i (x_a + x_{-a}) (a positive), in that order, with the inner product
/// -Killing / (2 h^vee).
struct CompactForm {
  AlgebraPtr algebra;
  TorusBasis torus;  // orthonormalized span of the k_a
  std::vector<BasisLabel> labels;

  std::size_t k_index(std::size_t simple) const { return simple; }
  std::size_t u_index(std::size_t root) const { return torus.size() + 2 * root; }
  std::size_t v_index(std::size_t root) const { return torus.size() + 2 * root + 1; }
};

/// Throws InvalidPresentation when the structure constants fail Jacobi or
/// invariance.
CompactForm compact_form_from_roots(const RootSystemPresentation& p);

nlohmann::json presentation_to_json(const RootSystemPresentation& p);
/// Rebuilds from type and rank and checks every serialized field against it.
RootSystemPresentation presentation_from_json(const nlohmann::json& j);

}  // namespace liecomm
