#include "liecomm/tori.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "liecomm/numkit.hpp"

namespace liecomm {

UnitaryFrame::UnitaryFrame(CMatrix columns, double tol) : m_(std::move(columns)) {
  if (!m_.square() || m_.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "frame must be a square matrix");
  if (!m_.all_finite() || !(unitarity_residual(m_) <= tol))
    throw Error(ErrorCode::NotUnitary, "frame columns are not orthonormal");
}

cplx dot(const UnitaryFrame& a, std::size_t i, const UnitaryFrame& b, std::size_t h) {
  if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "frames of different size");
  if (i >= a.n() || h >= b.n()) throw Error(ErrorCode::IndexOutOfRange, "frame column index out of range");
  cplx s = 0.0;
  for (std::size_t r = 0; r < a.n(); ++r) s += std::conj(a.m_(r, i)) * b.m_(r, h);
  return s;
}

TorusResiduals torus_residuals(const TorusBasis& t) {
  TorusResiduals r;
  r.count = t.size();
  r.rank = t.algebra ? t.algebra->rank() : 0;
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a; b < t.size(); ++b) {
      if (a != b) r.toral = std::max(r.toral, bracket(t.vectors[a], t.vectors[b]).norm());
      const double target = a == b ? 1.0 : 0.0;
      r.orthonormal = std::max(r.orthonormal, std::abs(inner(t.vectors[a], t.vectors[b]) - target));
    }
  return r;
}

double torus_orthogonality(const TorusBasis& a, const TorusBasis& b) {
  double worst = 0.0;
  for (const auto& x : a.vectors)
    for (const auto& y : b.vectors) worst = std::max(worst, std::abs(inner(x, y)));
  return worst;
}

double trace_pairing_formula(const UnitaryFrame& u, const UnitaryFrame& v, std::size_t i, std::size_t j,
                             std::size_t h, std::size_t k) {
  const std::size_t n = u.n();
  if (v.n() != n) throw Error(ErrorCode::DimensionMismatch, "frames of different size");
  if (i >= n || j >= n || h >= n || k >= n) throw Error(ErrorCode::IndexOutOfRange, "frame index out of range");
  if (i == j || h == k) throw Error(ErrorCode::IndexOutOfRange, "index pairs must be distinct");
  auto sq = [&](std::size_t a, std::size_t b) { return std::norm(dot(u, a, v, b)); };
  return sq(i, k) + sq(j, h) - sq(i, h) - sq(j, k);
}

double unbiasedness_deviation(const UnitaryFrame& u, const UnitaryFrame& v) {
  if (u.n() != v.n()) throw Error(ErrorCode::DimensionMismatch, "frames of different size");
  const double common = 1.0 / std::sqrt(static_cast<double>(u.n()));
  double worst = 0.0;
  for (std::size_t i = 0; i < u.n(); ++i)
    for (std::size_t h = 0; h < v.n(); ++h) worst = std::max(worst, std::abs(std::abs(dot(u, i, v, h)) - common));
  return worst;
}

bool is_unbiased_pair(const UnitaryFrame& u, const UnitaryFrame& v, double tol) {
  return unbiasedness_deviation(u, v) <= tol;
}

UnitaryFrame fourier_frame(const UnitaryFrame& u) {
  const std::size_t n = u.n();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CMatrix v(n, n);
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t m = 0; m < n; ++m) {
      // exponent reduced mod n keeps zeta^{mj} exact at the roots of unity
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((m * j) % n) / static_cast<double>(n);
      const cplx w = std::polar(scale, angle);
      for (std::size_t r = 0; r < n; ++r) v(r, j - 1) += w * u.matrix()(r, m);
    }
  return UnitaryFrame(std::move(v));
}

namespace {

void require_su(const AlgebraPtr& algebra, std::size_t n) {
  if (!algebra || !algebra->su_degree() || static_cast<std::size_t>(*algebra->su_degree()) != n)
    throw Error(ErrorCode::AlgebraMismatch, "operation requires su(n) matching the frame size");
}

}  // namespace

TorusBasis frame_torus(const AlgebraPtr& su_n, const UnitaryFrame& u) {
  const std::size_t n = u.n();
  require_su(su_n, n);
  const cplx I(0.0, 1.0);
  std::vector<AlgebraElement> span;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    CMatrix t(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        t(r, c) = I * (u.matrix()(r, k) * std::conj(u.matrix()(c, k)) -
                       u.matrix()(r, k + 1) * std::conj(u.matrix()(c, k + 1)));
    span.push_back(AlgebraElement::from_matrix(su_n, t));
  }
  return TorusBasis{su_n, orthonormalize(span), u};
}

TorusBasis fourier_orthogonal_torus(const AlgebraPtr& su_n, const UnitaryFrame& u) {
  return frame_torus(su_n, fourier_frame(u));
}

namespace {

// Builds commuting elements of `form.algebra`, orthogonal to every k_a, one per
// simple root in the subset.
class InductiveTorus {
 public:
  InductiveTorus(const RootSystemPresentation& p, const CompactForm& form) : p_(p), form_(form) {}

  std::vector<AlgebraElement> build(std::vector<int> subset) const {
    std::vector<AlgebraElement> out;
    for (const auto& comp : components(subset)) {
      auto part = is_path(comp) ? type_a(order_path(comp)) : reduce(comp);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }

 private:
  bool linked(int a, int b) const {
    return p_.cartan()[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0;
  }

  std::vector<std::vector<int>> components(const std::vector<int>& subset) const {
    std::vector<std::vector<int>> comps;
    std::vector<bool> seen(subset.size(), false);
    for (std::size_t s = 0; s < subset.size(); ++s) {
      if (seen[s]) continue;
      std::vector<int> comp{subset[s]};
      seen[s] = true;
      for (std::size_t c = 0; c < comp.size(); ++c)
        for (std::size_t t = 0; t < subset.size(); ++t)
          if (!seen[t] && linked(comp[c], subset[t])) {
            seen[t] = true;
            comp.push_back(subset[t]);
          }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
    return comps;
  }

  // Simply laced and no branch node: a type-A Dynkin diagram.
  bool is_path(const std::vector<int>& comp) const {
    for (int a : comp) {
      int degree = 0;
      for (int b : comp) {
        if (a == b || !linked(a, b)) continue;
        const auto& c = p_.cartan();
        if (c[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] *
                c[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] != 1)
          return false;
        ++degree;
      }
      if (degree > 2) return false;
    }
    return true;
  }

  std::vector<int> order_path(const std::vector<int>& comp) const {
    int start = comp.front();
    for (int a : comp) {
      int degree = 0;
      for (int b : comp)
        if (a != b && linked(a, b)) ++degree;
      if (degree <= 1) {
        start = a;
        break;
      }
    }
    std::vector<int> path{start};
    while (path.size() < comp.size()) {
      for (int b : comp)
        if (linked(path.back(), b) && std::find(path.begin(), path.end(), b) == path.end()) {
          path.push_back(b);
          break;
        }
    }
    return path;
  }

  std::vector<std::size_t> roots_supported_on(const std::vector<int>& comp) const {
    std::vector<std::size_t> idx;
    const auto& roots = p_.positive_roots();
    for (std::size_t r = 0; r < roots.size(); ++r) {
      bool inside = true;
      for (int a = 0; a < p_.rank(); ++a)
        if (roots[r][static_cast<std::size_t>(a)] != 0 && std::find(comp.begin(), comp.end(), a) == comp.end())
          inside = false;
      if (inside) idx.push_back(r);
    }
    return idx;
  }

  // Non-A component: theta_C is orthogonal to every simple root of C but one,
  // so u_theta commutes with the Levi factor generated by the others.
  std::vector<AlgebraElement> reduce(const std::vector<int>& comp) const {
    const auto roots = roots_supported_on(comp);
    const std::size_t theta = roots.back();  // roots are sorted by height
    const RootVec& th = p_.positive_roots()[theta];
    std::optional<int> alpha;
    for (int a : comp) {
      const int m = p_.coroot_pairing(th, a);
      if (m == 0) continue;
      if (alpha || (m != 1 && m != 2))
        throw Error(ErrorCode::InvalidPresentation, "highest root of a Levi factor pairs with several simple roots");
      alpha = a;
    }
    if (!alpha) throw Error(ErrorCode::InvalidPresentation, "highest root of a Levi factor has zero weight");
    std::vector<int> rest;
    for (int a : comp)
      if (a != *alpha) rest.push_back(a);
    auto out = build(rest);
    out.push_back(AlgebraElement::basis(form_.algebra, form_.u_index(theta)));
    return out;
  }

  // Path beta_1 - ... - beta_m realized in sl(m+1) with x_{beta_k} = E_{k,k+1}
  // and x_{-beta_k} = E_{k+1,k}; the Fourier torus of su(m+1) is carried back
  // to the ambient compact basis.
  std::vector<AlgebraElement> type_a(const std::vector<int>& path) const {
    const std::size_t m = path.size();
    const std::size_t n = m + 1;
    const auto roots = roots_supported_on(path);
    std::map<std::size_t, std::pair<CMatrix, CMatrix>> x;  // root -> (X_r, X_{-r})
    for (std::size_t k = 0; k < m; ++k) {
      CMatrix e(n, n);
      e(k, k + 1) = 1.0;
      x[*p_.positive_index(p_.simple_root(path[k]))] = {e, e.transpose()};
    }
    for (std::size_t r : roots) {
      if (x.count(r)) continue;
      const RootVec& xi = p_.positive_roots()[r];
      bool done = false;
      for (std::size_t k = 0; k < m && !done; ++k) {
        const RootVec beta = p_.simple_root(path[k]);
        RootVec eta = xi;
        eta[static_cast<std::size_t>(path[k])] -= 1;
        const auto ie = p_.positive_index(eta);
        if (!ie || !x.count(*ie) || std::any_of(eta.begin(), eta.end(), [](int c) { return c < 0; })) continue;
        RootVec nb = beta, ne = eta;
        for (auto& c : nb) c = -c;
        for (auto& c : ne) c = -c;
        const double n_pos = p_.structure_constant(beta, eta);
        const double n_neg = p_.structure_constant(nb, ne);
        const auto& [xb, xnb] = x.at(*p_.positive_index(beta));
        const auto& [xe, xne] = x.at(*ie);
        x[r] = {commutator(xb, xe) * cplx(1.0 / n_pos), commutator(xnb, xne) * cplx(1.0 / n_neg)};
        done = true;
      }
      if (!done) throw Error(ErrorCode::InvalidPresentation, "type-A root without a simple decomposition");
    }

    // Compact basis of the matrix copy with its ambient indices.
    const cplx I(0.0, 1.0);
    std::vector<CMatrix> mats;
    std::vector<std::size_t> ambient;
    for (std::size_t k = 0; k < m; ++k) {
      CMatrix h(n, n);
      h(k, k) = 1.0;
      h(k + 1, k + 1) = -1.0;
      mats.push_back(h * I);
      ambient.push_back(form_.k_index(static_cast<std::size_t>(path[k])));
    }
    for (std::size_t r : roots) {
      const auto& [xp, xn] = x.at(r);
      mats.push_back(xp - xn);
      ambient.push_back(form_.u_index(r));
      mats.push_back((xp + xn) * I);
      ambient.push_back(form_.v_index(r));
    }
    const std::size_t d = mats.size();
    RMatrix gram(d, d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) gram(a, b) = -(mats[a] * mats[b]).trace().real();

    const auto su_m = su(static_cast<int>(n));
    const TorusBasis local = fourier_orthogonal_torus(su_m, UnitaryFrame::standard(n));
    std::vector<AlgebraElement> out;
    for (const auto& t : local.vectors) {
      const CMatrix tm = t.matrix();
      std::vector<double> rhs(d);
      for (std::size_t a = 0; a < d; ++a) rhs[a] = -(mats[a] * tm).trace().real();
      const auto c = spd_solve(gram, rhs);
      std::vector<double> coords(form_.algebra->dim(), 0.0);
      for (std::size_t a = 0; a < d; ++a) coords[ambient[a]] = c[a];
      out.emplace_back(form_.algebra, std::move(coords));
    }
    return out;
  }

  const RootSystemPresentation& p_;
  const CompactForm& form_;
};

}  // namespace

TorusBasis orthogonal_torus_inductive(const RootSystemPresentation& p, const CompactForm& form) {
  std::vector<int> all(static_cast<std::size_t>(p.rank()));
  for (int a = 0; a < p.rank(); ++a) all[static_cast<std::size_t>(a)] = a;
  auto vectors = orthonormalize(InductiveTorus(p, form).build(all));
  if (vectors.size() != static_cast<std::size_t>(p.rank()))
    throw Error(ErrorCode::InvalidPresentation, "inductive torus is not maximal");
  return TorusBasis{form.algebra, std::move(vectors), std::nullopt};
}

TorusBasis orthogonal_torus_inductive(const RootSystemPresentation& p) {
  return orthogonal_torus_inductive(p, compact_form_from_roots(p));
}

Conjugation conjugate_into_torus(const AlgebraPtr& su_n, const AlgebraElement& z, const TorusBasis& target) {
  if (!target.frame) throw Error(ErrorCode::NotApplicable, "target torus has no frame");
  const UnitaryFrame& f = *target.frame;
  const std::size_t n = f.n();
  require_su(su_n, n);
  if (z.algebra() != su_n) throw Error(ErrorCode::AlgebraMismatch, "element is not in the given algebra");

  const cplx I(0.0, 1.0);
  const CMatrix zm = z.matrix();
  const HermEig e = herm_eig(zm * I);
  CMatrix g = e.vectors * f.matrix().adjoint();
  // principal n-th root of the determinant
  const cplx det = determinant(g);
  g *= std::polar(1.0, -std::arg(det) / static_cast<double>(n));

  CMatrix diag(n, n);
  for (std::size_t k = 0; k < n; ++k) diag(k, k) = -I * e.values[k];
  const CMatrix zp = f.matrix() * diag * f.matrix().adjoint();
  AlgebraElement z_prime = AlgebraElement::from_matrix(su_n, zp);
  const double residual = distance(g.adjoint() * zm * g, zp);
  return Conjugation{GroupElement(std::move(g)), std::move(z_prime), residual};
}

}  // namespace liecomm
