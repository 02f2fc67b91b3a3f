#include "liecomm/comm_group.hpp"

#include <cmath>
#include <numbers>

#include "liecomm/numkit.hpp"

namespace liecomm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSpectrumLimit = 0.9 * kTwoPi;
constexpr std::size_t kMaxSeriesTerms = 4000;

// zeta(s) for even s >= 2: partial sum plus an Euler-Maclaurin tail.
double zeta_even(int s) {
  constexpr int K = 256;
  double sum = 0.0;
  for (int k = K - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double kk = K, ds = s;
  sum += std::pow(kk, 1.0 - ds) / (ds - 1.0) + 0.5 * std::pow(kk, -ds) + ds / 12.0 * std::pow(kk, -ds - 1.0) -
         ds * (ds + 1.0) * (ds + 2.0) / 720.0 * std::pow(kk, -ds - 3.0);
  return sum;
}

// Coefficients of t/(e^t - 1) = sum_k b_k t^k, pre-multiplied by (2 pi)^k:
// b_1 (2 pi) = -pi, b_{2m} (2 pi)^{2m} = (-1)^{m+1} 2 zeta(2m), odd k > 1 vanish.
const std::vector<double>& scaled_bernoulli() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kMaxSeriesTerms + 1, 0.0);
    t[0] = 1.0;
    t[1] = -std::numbers::pi;
    for (std::size_t k = 2; k <= kMaxSeriesTerms; k += 2) {
      const int m = static_cast<int>(k / 2);
      t[k] = (m % 2 == 1 ? 2.0 : -2.0) * zeta_even(static_cast<int>(k));
    }
    return t;
  }();
  return table;
}

std::vector<double> mat_vec(const RMatrix& m, const std::vector<double>& v) {
  return m * std::span<const double>(v);
}

template <class F>
decltype(auto) in_stage(const char* stage, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw e.with_stage(stage);
  }
}

}  // namespace

AlgebraElement phi(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.algebra() != y.algebra()) throw Error(ErrorCode::AlgebraMismatch, "elements belong to different algebras");
  const RMatrix ad = ad_matrix(y);
  const auto& alg = *x.algebra();
  std::vector<double> term(x.coords().begin(), x.coords().end());
  std::vector<double> sum = term;
  for (std::size_t k = 1; k < kMaxSeriesTerms; ++k) {
    term = mat_vec(ad, term);
    for (auto& t : term) t /= static_cast<double>(k + 1);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += term[i];
    const double tn = std::sqrt(alg.inner(term, term));
    if (tn == 0.0 || tn <= 1e-16 * std::sqrt(alg.inner(sum, sum))) break;
  }
  return AlgebraElement(x.algebra(), std::move(sum));
}

double ad_norm(const AlgebraElement& y) {
  const RMatrix ad = ad_matrix(y);
  const auto& gram = y.algebra()->gram();
  if (gram == RMatrix::identity(gram.rows())) return svd(ad).sigma.front();
  // orthonormal coordinates: G = L L^T, M = L^T ad L^{-T}
  const RMatrix lt = cholesky(gram).transpose();
  return svd(lt * ad * inverse(lt)).sigma.front();
}

AlgebraElement phi_inverse_first(const AlgebraElement& c, const AlgebraElement& y) {
  if (c.algebra() != y.algebra()) throw Error(ErrorCode::AlgebraMismatch, "elements belong to different algebras");
  const auto& alg = *c.algebra();
  if (c.algebra()->dim() == 0) return c;
  const double rho = ad_norm(y);
  if (!(rho < kSpectrumLimit))
    throw Error(ErrorCode::SpectrumTooLarge, "||ad_y|| is too close to 2 pi for the Bernoulli series");

  RMatrix ad = ad_matrix(y);
  ad *= 1.0 / kTwoPi;
  const auto& b = scaled_bernoulli();
  std::vector<double> term(c.coords().begin(), c.coords().end());
  std::vector<double> sum = term;
  for (std::size_t k = 1; k <= kMaxSeriesTerms; ++k) {
    term = mat_vec(ad, term);
    if (b[k] == 0.0) continue;
    double tn = 0.0;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b[k] * term[i];
    tn = std::abs(b[k]) * std::sqrt(alg.inner(term, term));
    if (k >= 2 && (tn == 0.0 || tn <= 1e-17 * std::sqrt(alg.inner(sum, sum)))) break;
  }
  return AlgebraElement(c.algebra(), std::move(sum));
}

AlgebraElement C_map(const AlgebraElement& x, const AlgebraElement& y) { return x - exp_ad(y, x); }

PQResult solve_pq(const AlgebraElement& a, const AlgebraElement& b, const PQConfig& config) {
  const AlgebraPtr alg = a.algebra();
  if (b.algebra() != alg) throw Error(ErrorCode::AlgebraMismatch, "elements belong to different algebras", "solve_pq");
  if (!alg->has_realization()) throw Error(ErrorCode::NotApplicable, "solve_pq needs a matrix realization", "solve_pq");
  if (a.norm() + b.norm() > config.ab_max)
    throw Error(ErrorCode::TargetTooLarge, "||a|| + ||b|| exceeds the solver bound", "solve_pq");

  const std::size_t d = alg->dim();
  const CMatrix ea = mexp(a.matrix());
  const CMatrix eb = mexp(b.matrix());
  const CMatrix target = mexp((a + b).matrix());
  const CMatrix target_inv = target.adjoint();

  auto element = [&](const std::vector<double>& pq, std::size_t off) {
    return AlgebraElement(alg, std::vector<double>(pq.begin() + static_cast<std::ptrdiff_t>(off),
                                                   pq.begin() + static_cast<std::ptrdiff_t>(off + d)));
  };
  auto product = [&](const std::vector<double>& pq) {
    const CMatrix ep = mexp(element(pq, 0).matrix());
    const CMatrix eq = mexp(element(pq, d).matrix());
    return ep * ea * ep.adjoint() * (eq * eb * eq.adjoint());
  };
  auto log_residual = [&](const CMatrix& m) { return alg->coords_of(mlog_principal(m * target_inv)); };

  std::vector<double> pq(2 * d, 0.0);
  CMatrix m = product(pq);
  double res = distance(m, target);
  PQResult out{GroupElement::identity(alg->realization_size()),
               GroupElement::identity(alg->realization_size()),
               AlgebraElement::zero(alg),
               AlgebraElement::zero(alg),
               0,
               res,
               {res}};

  int it = 0;
  while (!(res <= config.tol)) {
    if (it >= config.max_iterations)
      throw Error(ErrorCode::NoConvergence,
                  "P/Q iteration budget exhausted at residual " + std::to_string(res), "solve_pq");
    const std::vector<double> f = log_residual(m);
    double pq_norm = 0.0;
    for (double v : pq) pq_norm += v * v;
    const double h = config.fd_step * std::max(1.0, std::sqrt(pq_norm));
    RMatrix jac(d, 2 * d);
    for (std::size_t j = 0; j < 2 * d; ++j) {
      std::vector<double> plus = pq, minus = pq;
      plus[j] += h;
      minus[j] -= h;
      const auto fp = log_residual(product(plus));
      const auto fm = log_residual(product(minus));
      for (std::size_t i = 0; i < d; ++i) jac(i, j) = (fp[i] - fm[i]) / (2.0 * h);
    }
    std::vector<double> rhs(d);
    for (std::size_t i = 0; i < d; ++i) rhs[i] = -f[i];
    const auto step = lstsq_min_norm(jac, rhs).solution;

    bool accepted = false;
    double alpha = 1.0;
    for (int halving = 0; halving < 40 && !accepted; ++halving, alpha *= 0.5) {
      std::vector<double> cand = pq;
      for (std::size_t j = 0; j < 2 * d; ++j) cand[j] += alpha * step[j];
      const CMatrix mc = product(cand);
      const double rc = distance(mc, target);
      if (rc < res) {
        pq = std::move(cand);
        m = mc;
        res = rc;
        accepted = true;
      }
    }
    if (!accepted)
      throw Error(ErrorCode::NoConvergence, "P/Q line search failed at residual " + std::to_string(res), "solve_pq");
    ++it;
    out.history.push_back(res);
  }

  out.p = element(pq, 0);
  out.q = element(pq, d);
  out.P = GroupElement(mexp(out.p.matrix()));
  out.Q = GroupElement(mexp(out.q.matrix()));
  out.iterations = it;
  out.residual = res;
  return out;
}

GroupDecomposition decompose_group(const AlgebraPtr& su_n, const GroupElement& Z, const GroupConfig& config) {
  if (!su_n || !su_n->su_degree() || static_cast<std::size_t>(*su_n->su_degree()) != Z.n())
    throw Error(ErrorCode::AlgebraMismatch, "decompose_group needs su(n) matching the target", "decompose_group");

  const AlgebraElement z = in_stage("log", [&] {
    return AlgebraElement::from_matrix(su_n, mlog_principal(Z.matrix(), config.log_margin));
  });
  if (z.norm() > config.z_max) throw Error(ErrorCode::TargetTooLarge, "||log Z|| exceeds z_max", "log");

  const AlgebraDecomposition ad = in_stage("decompose_algebra", [&] { return decompose_algebra(su_n, z, config.algebra); });
  const AlgebraElement& c = ad.x;
  const AlgebraElement& y = ad.y;
  const AlgebraElement x = in_stage("phi_inverse", [&] { return phi_inverse_first(c, y); });
  const PQResult pq = in_stage("solve_pq", [&] { return solve_pq(x, -exp_ad(y, x), config.pq); });

  return in_stage("assemble", [&] {
    const CMatrix& P = pq.P.matrix();
    const CMatrix& Q = pq.Q.matrix();
    GroupElement A(P * mexp(x.matrix()) * P.adjoint());
    GroupElement B(Q * mexp(y.matrix()) * P.adjoint());
    const CMatrix comm = A.matrix() * B.matrix() * A.matrix().adjoint() * B.matrix().adjoint();
    const double residual = distance(comm, Z.matrix());
    if (!(residual <= config.tol))
      throw Error(ErrorCode::NoConvergence, "group commutator residual exceeds tolerance", "assemble");
    const double da = A.distance_to_identity(), db = B.distance_to_identity();
    return GroupDecomposition{Z, std::move(A), std::move(B), z, c, x, y, pq.P, pq.Q, pq.iterations, residual, da, db};
  });
}

}  // namespace liecomm
