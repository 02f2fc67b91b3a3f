#include "liecomm/compact_algebra.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "liecomm/numkit.hpp"

namespace liecomm {

namespace {

double trace_form(const CMatrix& a, const CMatrix& b) {
  // -Re Tr(AB) without forming the product
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) s += (a(i, k) * b(k, i)).real();
  return -s;
}

void require_same(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.algebra() != b.algebra())
    throw Error(ErrorCode::AlgebraMismatch, "elements belong to different algebras");
}

}  // namespace

CompactAlgebra::CompactAlgebra(std::string label, std::size_t rank, std::vector<double> constants,
                               RMatrix gram, std::vector<CMatrix> realization,
                               std::optional<int> su_degree)
    : label_(std::move(label)),
      dim_(gram.rows()),
      rank_(rank),
      constants_(std::move(constants)),
      gram_(std::move(gram)),
      realization_(std::move(realization)),
      su_degree_(su_degree) {
  if (!gram_.square() || dim_ == 0)
    throw Error(ErrorCode::DimensionMismatch, "gram matrix must be square and non-empty");
  if (constants_.size() != dim_ * dim_ * dim_)
    throw Error(ErrorCode::DimensionMismatch, "structure constants must have dim^3 entries");
  if (!realization_.empty() && realization_.size() != dim_)
    throw Error(ErrorCode::DimensionMismatch, "realization must have one matrix per basis element");

  sparse_.resize(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) {
        const double c = constant(i, j, k);
        if (c != 0.0) sparse_[i * dim_ + j].emplace_back(k, c);
      }
  gram_is_identity_ = gram_ == RMatrix::identity(dim_);
}

std::vector<double> CompactAlgebra::bracket(std::span<const double> a,
                                            std::span<const double> b) const {
  if (a.size() != dim_ || b.size() != dim_)
    throw Error(ErrorCode::DimensionMismatch, "coordinate length differs from algebra dimension");
  std::vector<double> out(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      const double w = a[i] * b[j];
      if (w == 0.0) continue;
      for (const auto& [k, c] : sparse_[i * dim_ + j]) out[k] += w * c;
    }
  }
  return out;
}

double CompactAlgebra::inner(std::span<const double> a, std::span<const double> b) const {
  if (a.size() != dim_ || b.size() != dim_)
    throw Error(ErrorCode::DimensionMismatch, "coordinate length differs from algebra dimension");
  double s = 0.0;
  if (gram_is_identity_) {
    for (std::size_t i = 0; i < dim_; ++i) s += a[i] * b[i];
    return s;
  }
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) s += a[i] * gram_(i, j) * b[j];
  return s;
}

RMatrix CompactAlgebra::ad(std::span<const double> x) const {
  if (x.size() != dim_)
    throw Error(ErrorCode::DimensionMismatch, "coordinate length differs from algebra dimension");
  RMatrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& [k, c] : sparse_[i * dim_ + j]) m(k, j) += x[i] * c;
  }
  return m;
}

RMatrix CompactAlgebra::killing_form() const {
  std::vector<RMatrix> ads;
  ads.reserve(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    std::vector<double> e(dim_, 0.0);
    e[i] = 1.0;
    ads.push_back(ad(e));
  }
  RMatrix k(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j) {
      double t = 0.0;
      for (std::size_t a = 0; a < dim_; ++a)
        for (std::size_t b = 0; b < dim_; ++b) t += ads[i](a, b) * ads[j](b, a);
      k(i, j) = k(j, i) = t;
    }
  return k;
}

AlgebraInvariants CompactAlgebra::check_invariants() const {
  AlgebraInvariants r;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        r.antisymmetry = std::max(r.antisymmetry, std::abs(constant(i, j, k) + constant(j, i, k)));

  // [[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]
  std::vector<double> acc(dim_);
  auto add_nested = [&](std::size_t a, std::size_t b, std::size_t c) {
    for (const auto& [m, cab] : sparse_[a * dim_ + b])
      for (const auto& [p, cmc] : sparse_[m * dim_ + c]) acc[p] += cab * cmc;
  };
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      for (std::size_t l = j + 1; l < dim_; ++l) {
        std::fill(acc.begin(), acc.end(), 0.0);
        add_nested(i, j, l);
        add_nested(j, l, i);
        add_nested(l, i, j);
        for (double v : acc) r.jacobi = std::max(r.jacobi, std::abs(v));
      }

  for (std::size_t a = 0; a < dim_; ++a)
    for (std::size_t b = 0; b < dim_; ++b)
      for (std::size_t c = 0; c < dim_; ++c) {
        double s = 0.0;
        for (const auto& [m, v] : sparse_[a * dim_ + b]) s += v * gram_(m, c);
        for (const auto& [m, v] : sparse_[a * dim_ + c]) s += v * gram_(b, m);
        r.invariance = std::max(r.invariance, std::abs(s));
      }

  try {
    (void)cholesky(gram_);
    r.positive_definite = true;
  } catch (const Error&) {
    r.positive_definite = false;
  }
  return r;
}

double CompactAlgebra::bracket_bound() const {
  double best = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      std::vector<double> v(dim_, 0.0);
      for (const auto& [k, c] : sparse_[i * dim_ + j]) v[k] = c;
      best = std::max(best, std::sqrt(inner(v, v)));
    }
  return best;
}

CMatrix CompactAlgebra::realize(std::span<const double> coords) const {
  if (!has_realization())
    throw Error(ErrorCode::NotApplicable, label_ + " has no matrix realization");
  if (coords.size() != dim_)
    throw Error(ErrorCode::DimensionMismatch, "coordinate length differs from algebra dimension");
  const std::size_t n = realization_size();
  CMatrix m(n, n);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (coords[i] == 0.0) continue;
    const auto src = realization_[i].data();
    auto dst = m.data();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += coords[i] * src[k];
  }
  return m;
}

std::vector<double> CompactAlgebra::coords_of(const CMatrix& m) const {
  if (!has_realization())
    throw Error(ErrorCode::NotApplicable, label_ + " has no matrix realization");
  if (m.rows() != realization_size() || m.cols() != realization_size())
    throw Error(ErrorCode::DimensionMismatch, "matrix size differs from the realization");
  std::vector<double> b(dim_);
  for (std::size_t i = 0; i < dim_; ++i) b[i] = trace_form(m, realization_[i]);
  if (gram_is_identity_) return b;
  return spd_solve(gram_, b);
}

AlgebraElement::AlgebraElement(AlgebraPtr algebra, std::vector<double> coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (!algebra_) throw Error(ErrorCode::InvalidArgument, "null algebra");
  if (coords_.size() != algebra_->dim())
    throw Error(ErrorCode::DimensionMismatch, "coordinate length differs from algebra dimension");
}

AlgebraElement AlgebraElement::zero(const AlgebraPtr& algebra) {
  return AlgebraElement(algebra, std::vector<double>(algebra->dim(), 0.0));
}

AlgebraElement AlgebraElement::basis(const AlgebraPtr& algebra, std::size_t i) {
  if (i >= algebra->dim()) throw Error(ErrorCode::IndexOutOfRange, "basis index out of range");
  std::vector<double> c(algebra->dim(), 0.0);
  c[i] = 1.0;
  return AlgebraElement(algebra, std::move(c));
}

AlgebraElement AlgebraElement::from_matrix(const AlgebraPtr& algebra, const CMatrix& m) {
  return AlgebraElement(algebra, algebra->coords_of(m));
}

double AlgebraElement::norm() const { return std::sqrt(algebra_->inner(coords_, coords_)); }

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(double s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

namespace {

AlgebraPtr build_su(int n) {
  const auto un = static_cast<std::size_t>(n);
  const cplx I(0.0, 1.0);
  std::vector<CMatrix> basis;

  for (std::size_t k = 0; k + 1 < un; ++k) {
    CMatrix d(un, un);
    d(k, k) = I;
    d(k + 1, k + 1) = -I;
    for (const auto& prev : basis) d -= prev * cplx(trace_form(d, prev));
    d *= cplx(1.0 / std::sqrt(trace_form(d, d)));
    basis.push_back(std::move(d));
  }
  const double r2 = 1.0 / std::sqrt(2.0);
  for (std::size_t j = 0; j < un; ++j)
    for (std::size_t k = j + 1; k < un; ++k) {
      CMatrix re(un, un), im(un, un);
      re(j, k) = r2;
      re(k, j) = -r2;
      im(j, k) = I * r2;
      im(k, j) = I * r2;
      basis.push_back(std::move(re));
      basis.push_back(std::move(im));
    }

  const std::size_t dim = basis.size();
  std::vector<double> constants(dim * dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      const CMatrix c = commutator(basis[i], basis[j]);
      for (std::size_t k = 0; k < dim; ++k) {
        double v = trace_form(c, basis[k]);
        if (std::abs(v) < 1e-15) v = 0.0;
        constants[(i * dim + j) * dim + k] = v;
        constants[(j * dim + i) * dim + k] = -v;
      }
    }
  return std::make_shared<CompactAlgebra>("su(" + std::to_string(n) + ")", un - 1,
                                          std::move(constants), RMatrix::identity(dim),
                                          std::move(basis), n);
}

}  // namespace

AlgebraPtr su(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "su(n) needs n >= 2");
  static std::mutex mutex;
  static std::map<int, AlgebraPtr> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = build_su(n);
  return slot;
}

AlgebraPtr direct_sum(const std::vector<AlgebraPtr>& blocks, std::string label) {
  if (blocks.empty()) throw Error(ErrorCode::InvalidArgument, "direct sum of no blocks");
  std::size_t dim = 0, rank = 0, n = 0;
  bool realized = true;
  std::string joined;
  for (const auto& b : blocks) {
    dim += b->dim();
    rank += b->rank();
    n += b->realization_size();
    realized = realized && b->has_realization();
    joined += (joined.empty() ? "" : "+") + b->label();
  }
  if (label.empty()) label = joined;
  std::vector<double> constants(dim * dim * dim, 0.0);
  RMatrix gram(dim, dim);
  std::vector<CMatrix> realization;
  if (realized) realization.assign(dim, CMatrix(n, n));

  std::size_t off = 0, moff = 0;
  for (const auto& b : blocks) {
    const std::size_t d = b->dim();
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        gram(off + i, off + j) = b->gram()(i, j);
        for (std::size_t k = 0; k < d; ++k)
          constants[((off + i) * dim + off + j) * dim + off + k] = b->constant(i, j, k);
      }
      if (realized) {
        const CMatrix& src = b->basis_matrix(i);
        for (std::size_t r = 0; r < src.rows(); ++r)
          for (std::size_t c = 0; c < src.cols(); ++c) realization[off + i](moff + r, moff + c) = src(r, c);
      }
    }
    off += d;
    moff += b->realization_size();
  }
  return std::make_shared<CompactAlgebra>(std::move(label), rank, std::move(constants), std::move(gram),
                                          std::move(realization));
}

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a, b);
  return AlgebraElement(a.algebra(), a.algebra()->bracket(a.coords(), b.coords()));
}

double inner(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a, b);
  return a.algebra()->inner(a.coords(), b.coords());
}

RMatrix ad_matrix(const AlgebraElement& x) { return x.algebra()->ad(x.coords()); }

AlgebraElement exp_ad(const AlgebraElement& y, const AlgebraElement& x) {
  require_same(y, x);
  const RMatrix e = mexp(ad_matrix(y));
  return AlgebraElement(x.algebra(), e * x.coords());
}

std::vector<AlgebraElement> orthonormalize(const std::vector<AlgebraElement>& vectors,
                                           double drop_tol) {
  std::vector<AlgebraElement> out;
  for (const auto& v : vectors) {
    AlgebraElement w = v;
    // two passes of classical Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : out) w -= inner(w, q) * q;
    const double nrm = w.norm();
    if (nrm <= drop_tol) continue;
    out.push_back((1.0 / nrm) * w);
  }
  return out;
}

}  // namespace liecomm
