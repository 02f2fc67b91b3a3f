#include "liecomm/rootsys.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace liecomm {

namespace {

RootVec add(const RootVec& a, const RootVec& b) {
  RootVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RootVec neg(const RootVec& a) {
  RootVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

bool is_zero(const RootVec& a) {
  return std::all_of(a.begin(), a.end(), [](int v) { return v == 0; });
}

bool is_positive(const RootVec& a) {
  for (int v : a)
    if (v != 0) return v > 0;
  return false;
}

struct Fraction {
  long long num = 0;
  long long den = 1;

  static Fraction make(long long n, long long d) {
    if (d < 0) n = -n, d = -d;
    const long long g = std::gcd(n < 0 ? -n : n, d);
    return g == 0 ? Fraction{0, 1} : Fraction{n / g, d / g};
  }
  friend Fraction operator-(Fraction a, Fraction b) {
    return make(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Fraction operator*(Fraction a, Fraction b) { return make(a.num * b.num, a.den * b.den); }
  friend Fraction operator/(Fraction a, Fraction b) { return make(a.num * b.den, a.den * b.num); }
};

// Simple roots in epsilon coordinates.
std::vector<std::vector<int>> epsilon_simple_roots(char type, int n) {
  std::vector<std::vector<int>> roots;
  const int ambient = type == 'A' ? n + 1 : n;
  for (int i = 0; i < n; ++i) {
    std::vector<int> r(static_cast<std::size_t>(ambient), 0);
    if (i + 1 < n || type == 'A') {
      r[static_cast<std::size_t>(i)] = 1;
      r[static_cast<std::size_t>(i + 1)] = -1;
    } else if (type == 'B') {
      r[static_cast<std::size_t>(i)] = 1;
    } else if (type == 'C') {
      r[static_cast<std::size_t>(i)] = 2;
    } else {  // D
      r[static_cast<std::size_t>(i - 1)] = 1;
      r[static_cast<std::size_t>(i)] = 1;
    }
    roots.push_back(std::move(r));
  }
  return roots;
}

}  // namespace

RootVec RootSystemPresentation::simple_root(int i) const {
  RootVec r(static_cast<std::size_t>(rank_), 0);
  r.at(static_cast<std::size_t>(i)) = 1;
  return r;
}

int RootSystemPresentation::height(const RootVec& r) const {
  return std::accumulate(r.begin(), r.end(), 0);
}

bool RootSystemPresentation::is_root(const RootVec& r) const {
  return positive_index(r).has_value();
}

std::optional<std::size_t> RootSystemPresentation::positive_index(const RootVec& r) const {
  if (r.size() != static_cast<std::size_t>(rank_) || is_zero(r)) return std::nullopt;
  const auto it = index_.find(is_positive(r) ? r : neg(r));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int RootSystemPresentation::pairing(const RootVec& a, const RootVec& b) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      s += a[static_cast<std::size_t>(i)] * form_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
           b[static_cast<std::size_t>(j)];
  return s;
}

int RootSystemPresentation::coroot_pairing(const RootVec& a, int i) const {
  int s = 0;
  const auto& row = cartan_[static_cast<std::size_t>(i)];
  for (int j = 0; j < rank_; ++j) s += a[static_cast<std::size_t>(j)] * row[static_cast<std::size_t>(j)];
  return s;
}

int RootSystemPresentation::string_down(const RootVec& a, const RootVec& b) const {
  int p = 0;
  RootVec cur = b;
  const RootVec na = neg(a);
  while (true) {
    cur = add(cur, na);
    if (!is_root(cur)) break;
    ++p;
  }
  return p;
}

std::vector<int> RootSystemPresentation::coroot_coefficients(const RootVec& r) const {
  const int len = pairing(r, r);
  std::vector<int> c(static_cast<std::size_t>(rank_));
  for (int i = 0; i < rank_; ++i) {
    const int num = r[static_cast<std::size_t>(i)] * form_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    if (num % len != 0) throw Error(ErrorCode::InvalidPresentation, "non-integral coroot");
    c[static_cast<std::size_t>(i)] = num / len;
  }
  return c;
}

int RootSystemPresentation::structure_constant(const RootVec& a, const RootVec& b) const {
  const RootVec s = add(a, b);
  if (is_zero(s) || !is_root(s) || !is_root(a) || !is_root(b)) return 0;
  const bool pa = is_positive(a), pb = is_positive(b);
  if (pa && pb) {
    const std::size_t ia = index_.at(a), ib = index_.at(b);
    const auto key = ia < ib ? std::make_pair(ia, ib) : std::make_pair(ib, ia);
    const auto it = table_.find(key);
    if (it == table_.end())
      throw Error(ErrorCode::InvalidPresentation, "structure constant requested before it was fixed");
    return ia < ib ? it->second : -it->second;
  }
  if (!pa && !pb) return -structure_constant(neg(a), neg(b));

  // a + b + c = 0: N_ab / (c,c) = N_bc / (a,a) = N_ca / (b,b); reduce to the
  // pair of equal sign.
  const RootVec c = neg(s);
  const int lc = pairing(c, c);
  int num, den;
  if (is_positive(c) == pa) {
    num = lc * structure_constant(c, a);
    den = pairing(b, b);
  } else {
    num = lc * structure_constant(b, c);
    den = pairing(a, a);
  }
  if (num % den != 0) throw Error(ErrorCode::InvalidPresentation, "non-integral structure constant");
  return num / den;
}

int RootSystemPresentation::dual_coxeter_number() const {
  const RootVec& theta = highest_root();
  const int lt = pairing(theta, theta);
  int sum = 1;
  for (int i = 0; i < rank_; ++i)
    sum += theta[static_cast<std::size_t>(i)] * form_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] / lt;
  return sum;
}

RootSystemPresentation make_presentation(char type, int rank) {
  if (type == 'E' || type == 'F' || type == 'G')
    throw Error(ErrorCode::UnsupportedType, std::string("type ") + type + " is not supported");
  if (type != 'A' && type != 'B' && type != 'C' && type != 'D')
    throw Error(ErrorCode::InvalidArgument, std::string("unknown root system type ") + type);
  const int min_rank = type == 'A' ? 1 : type == 'D' ? 4 : 2;
  if (rank < min_rank)
    throw Error(ErrorCode::InvalidArgument, std::string("type ") + type + " needs rank >= " + std::to_string(min_rank));
  if (rank > 12) throw Error(ErrorCode::InvalidArgument, "rank above 12 is not supported");

  RootSystemPresentation p;
  p.type_ = type;
  p.rank_ = rank;
  const auto n = static_cast<std::size_t>(rank);
  const auto eps = epsilon_simple_roots(type, rank);
  p.form_.assign(n, std::vector<int>(n, 0));
  p.cartan_.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      p.form_[i][j] = std::inner_product(eps[i].begin(), eps[i].end(), eps[j].begin(), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.cartan_[i][j] = 2 * p.form_[i][j] / p.form_[i][i];

  // Positive roots by alpha-strings: beta + alpha_i is a root iff
  // p - <beta, alpha_i^vee> > 0, with p the downward string length.
  std::vector<RootVec> roots;
  for (int i = 0; i < rank; ++i) {
    p.index_[p.simple_root(i)] = roots.size();
    roots.push_back(p.simple_root(i));
  }
  for (std::size_t cursor = 0; cursor < roots.size(); ++cursor) {
    const RootVec beta = roots[cursor];
    for (int i = 0; i < rank; ++i) {
      const RootVec up = add(beta, p.simple_root(i));
      if (p.index_.count(up)) continue;
      const int down = p.string_down(p.simple_root(i), beta);
      if (down - p.coroot_pairing(beta, i) > 0) {
        p.index_[up] = roots.size();
        roots.push_back(up);
      }
    }
  }
  std::stable_sort(roots.begin(), roots.end(), [&](const RootVec& a, const RootVec& b) {
    const int ha = p.height(a), hb = p.height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  p.positive_ = roots;
  p.index_.clear();
  for (std::size_t k = 0; k < roots.size(); ++k) p.index_[roots[k]] = k;

  // Structure constants, fixed root by root in increasing height.
  for (std::size_t xi = 0; xi < roots.size(); ++xi) {
    if (p.height(roots[xi]) < 2) continue;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t ia = 0; ia < xi; ++ia) {
      const RootVec d = add(roots[xi], neg(roots[ia]));
      const auto it = p.index_.find(d);
      if (it != p.index_.end() && it->second > ia) pairs.emplace_back(ia, it->second);
    }
    if (pairs.empty()) throw Error(ErrorCode::InvalidPresentation, "non-simple root without a decomposition");
    const auto [ia0, ib0] = pairs.front();
    p.extraspecial_[xi] = pairs.front();
    p.table_[pairs.front()] = p.string_down(roots[ia0], roots[ib0]) + 1;

    const RootVec g = neg(roots[ia0]), d = neg(roots[ib0]);
    const double lxi = p.pairing(roots[xi], roots[xi]);
    const double ngd = p.structure_constant(g, d);
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      const RootVec& a = roots[pairs[k].first];
      const RootVec& b = roots[pairs[k].second];
      // N_ab N_gd/(a+b)^2 + N_bg N_ad/(b+g)^2 + N_ga N_bd/(g+a)^2 = 0
      double acc = 0.0;
      const RootVec bg = add(b, g), ga = add(g, a);
      if (p.is_root(bg))
        acc += static_cast<double>(p.structure_constant(b, g) * p.structure_constant(a, d)) / p.pairing(bg, bg);
      if (p.is_root(ga))
        acc += static_cast<double>(p.structure_constant(g, a) * p.structure_constant(b, d)) / p.pairing(ga, ga);
      const double val = -lxi * acc / ngd;
      const long rounded = std::lround(val);
      if (std::abs(val - static_cast<double>(rounded)) > 1e-9 ||
          std::labs(rounded) != p.string_down(a, b) + 1)
        throw Error(ErrorCode::InvalidPresentation, "structure constant inconsistent with the Chevalley relations");
      p.table_[pairs[k]] = static_cast<int>(rounded);
    }
  }

  // Fundamental weights: W = (C^T)^{-1}.
  std::vector<std::vector<Fraction>> m(n, std::vector<Fraction>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Fraction::make(p.cartan_[j][i], 1);
    m[i][n + i] = Fraction::make(1, 1);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (m[piv][col].num == 0) ++piv;
    std::swap(m[piv], m[col]);
    const Fraction inv = m[col][col];
    for (auto& v : m[col]) v = v / inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].num == 0) continue;
      const Fraction f = m[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) m[r][c] = m[r][c] - f * m[col][c];
    }
  }
  long long den = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) den = std::lcm(den, m[i][n + j].den);
  p.weight_den_ = den;
  p.weight_num_.assign(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.weight_num_[i][j] = m[i][n + j].num * (den / m[i][n + j].den);
  return p;
}

FundamentalWeightMatch highest_root_is_fund_weight(const RootSystemPresentation& p) {
  if (p.type() == 'A')
    throw Error(ErrorCode::NotApplicable, "type A has no simple root with theta a multiple of omega");
  const RootVec& theta = p.highest_root();
  std::optional<FundamentalWeightMatch> found;
  for (int k = 0; k < p.rank(); ++k) {
    const int m = p.coroot_pairing(theta, k);
    if (m == 0) continue;
    if (found || (m != 1 && m != 2))
      throw Error(ErrorCode::NotApplicable, "highest root is not a multiple of a single fundamental weight");
    found = FundamentalWeightMatch{k, m};
  }
  if (!found) throw Error(ErrorCode::InvalidPresentation, "highest root has zero weight");
  // cross-check against the weight table: m * omega_k == theta
  const auto& w = p.fundamental_weight_numerators()[static_cast<std::size_t>(found->simple_root)];
  for (int j = 0; j < p.rank(); ++j)
    if (found->multiple * w[static_cast<std::size_t>(j)] !=
        theta[static_cast<std::size_t>(j)] * p.weight_denominator())
      throw Error(ErrorCode::InvalidPresentation, "fundamental weight table disagrees with the Cartan matrix");
  return *found;
}

CompactForm compact_form_from_roots(const RootSystemPresentation& p) {
  const std::size_t n = static_cast<std::size_t>(p.rank());
  const auto& roots = p.positive_roots();
  const std::size_t np = roots.size();
  const std::size_t dim = n + 2 * np;

  // Chevalley basis indices: h_i -> i, x_r -> n + r, x_{-r} -> n + np + r.
  auto root_of = [&](std::size_t idx) -> std::pair<RootVec, bool> {
    if (idx < n + np) return {roots[idx - n], true};
    return {neg(roots[idx - n - np]), false};
  };
  auto chev_index = [&](const RootVec& r) -> std::size_t {
    const std::size_t k = *p.positive_index(r);
    return is_positive(r) ? n + k : n + np + k;
  };
  using Sparse = std::vector<std::pair<std::size_t, double>>;
  auto chev_bracket = [&](std::size_t a, std::size_t b) -> Sparse {
    if (a < n && b < n) return {};
    if (a < n || b < n) {
      const bool swap = b < n;
      const std::size_t hi = swap ? b : a, xi = swap ? a : b;
      const auto [r, pos] = root_of(xi);
      (void)pos;
      const double c = p.coroot_pairing(r, static_cast<int>(hi));
      return {{xi, swap ? -c : c}};
    }
    const RootVec ra = root_of(a).first, rb = root_of(b).first;
    const RootVec s = add(ra, rb);
    if (is_zero(s)) {
      // [x_r, x_{-r}] = h_r
      const auto cc = p.coroot_coefficients(ra);
      Sparse out;
      for (std::size_t i = 0; i < n; ++i)
        if (cc[i] != 0) out.emplace_back(i, cc[i]);
      return out;
    }
    const int nab = p.structure_constant(ra, rb);
    if (nab == 0) return {};
    return {{chev_index(s), static_cast<double>(nab)}};
  };

  // Compact basis in Chevalley coordinates.
  const cplx I(0.0, 1.0);
  std::vector<std::vector<std::pair<std::size_t, cplx>>> expand(dim);
  std::vector<BasisLabel> labels;
  for (std::size_t i = 0; i < n; ++i) {
    expand[i] = {{i, I}};
    labels.push_back({BasisLabel::Kind::K, i});
  }
  for (std::size_t r = 0; r < np; ++r) {
    expand[n + 2 * r] = {{n + r, 1.0}, {n + np + r, -1.0}};
    expand[n + 2 * r + 1] = {{n + r, I}, {n + np + r, I}};
    labels.push_back({BasisLabel::Kind::U, r});
    labels.push_back({BasisLabel::Kind::V, r});
  }

  std::vector<double> constants(dim * dim * dim, 0.0);
  double imag_residue = 0.0;
  std::vector<cplx> acc(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      std::fill(acc.begin(), acc.end(), cplx(0.0));
      for (const auto& [ci, wi] : expand[i])
        for (const auto& [cj, wj] : expand[j])
          for (const auto& [ck, wk] : chev_bracket(ci, cj)) acc[ck] += wi * wj * wk;
      // back to the compact basis: h = -i k, x_r = (u - i v)/2, x_{-r} = (-u - i v)/2
      std::vector<cplx> out(dim);
      for (std::size_t a = 0; a < n; ++a) out[a] = -I * acc[a];
      for (std::size_t r = 0; r < np; ++r) {
        out[n + 2 * r] = (acc[n + r] - acc[n + np + r]) * 0.5;
        out[n + 2 * r + 1] = -I * (acc[n + r] + acc[n + np + r]) * 0.5;
      }
      for (std::size_t k = 0; k < dim; ++k) {
        imag_residue = std::max(imag_residue, std::abs(out[k].imag()));
        constants[(i * dim + j) * dim + k] = out[k].real();
        constants[(j * dim + i) * dim + k] = -out[k].real();
      }
    }
  if (imag_residue > 1e-12)
    throw Error(ErrorCode::InvalidPresentation, "compact basis is not closed under the bracket");

  const CompactAlgebra raw(p.label(), n, constants, RMatrix::identity(dim));
  RMatrix gram = raw.killing_form();
  gram *= -1.0 / (2.0 * p.dual_coxeter_number());
  auto algebra = std::make_shared<CompactAlgebra>(p.label(), n, std::move(constants), std::move(gram));

  const auto inv = algebra->check_invariants();
  if (inv.jacobi > 1e-10 || inv.antisymmetry > 1e-12 || inv.invariance > 1e-10 || !inv.positive_definite)
    throw Error(ErrorCode::InvalidPresentation, "structure constants fail Jacobi, invariance or compactness");

  std::vector<AlgebraElement> ks;
  for (std::size_t i = 0; i < n; ++i) ks.push_back(AlgebraElement::basis(algebra, i));
  TorusBasis torus{algebra, orthonormalize(ks), std::nullopt};
  return CompactForm{algebra, std::move(torus), std::move(labels)};
}

nlohmann::json presentation_to_json(const RootSystemPresentation& p) {
  nlohmann::json j;
  j["type"] = std::string(1, p.type());
  j["rank"] = p.rank();
  j["cartan"] = p.cartan();
  j["form"] = p.form();
  j["positive_roots"] = p.positive_roots();
  j["highest_root"] = p.highest_root();
  j["fundamental_weights"] = {{"denominator", p.weight_denominator()},
                              {"numerators", p.fundamental_weight_numerators()}};
  auto signs = nlohmann::json::array();
  for (const auto& [key, val] : p.positive_structure()) signs.push_back({key.first, key.second, val});
  j["structure_constants"] = signs;
  auto extra = nlohmann::json::array();
  for (std::size_t xi = 0; xi < p.positive_roots().size(); ++xi) {
    if (p.height(p.positive_roots()[xi]) < 2) continue;
    const auto [a, b] = p.extraspecial_pair(xi);
    extra.push_back({xi, a, b});
  }
  j["extraspecial_pairs"] = extra;
  return j;
}

RootSystemPresentation presentation_from_json(const nlohmann::json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type.size() != 1) throw Error(ErrorCode::InvalidPresentation, "type must be a single letter");
    RootSystemPresentation p = make_presentation(type[0], j.at("rank").get<int>());
    const nlohmann::json expected = presentation_to_json(p);
    for (const auto& [key, val] : j.items())
      if (!expected.contains(key) || expected.at(key) != val)
        throw Error(ErrorCode::InvalidPresentation, "presentation field '" + key + "' does not match");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidPresentation, std::string("malformed presentation: ") + e.what());
  }
}

}  // namespace liecomm
