#include "hnn/starcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>

#include "hnn/simd.hpp"

namespace hnn {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InvalidState: return "invalid-state";
    case ErrorKind::NotPositive: return "not-positive";
    case ErrorKind::NotASubalgebra: return "not-a-subalgebra";
    case ErrorKind::InvalidGroup: return "invalid-group";
    case ErrorKind::NotACqg: return "not-a-cqg";
    case ErrorKind::EmbeddingInvalid: return "embedding-invalid";
    case ErrorKind::HaarIncompatible: return "haar-incompatible";
    case ErrorKind::NumericalDegeneracy: return "numerical-degeneracy";
    case ErrorKind::SizeLimit: return "size-limit";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::ContextMismatch: return "context-mismatch";
    case ErrorKind::LemmaViolation: return "lemma-violation";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// MultiMatrixAlgebra

MultiMatrixAlgebra::MultiMatrixAlgebra(std::vector<int> block_dims) : block_dims_(std::move(block_dims)) {
  if (block_dims_.empty()) throw Error(ErrorKind::InvalidInput, "block list is empty");
  for (int d : block_dims_) {
    if (d < 1) throw Error(ErrorKind::InvalidInput, "block dimension must be >= 1");
    offsets_.push_back(linear_dim_);
    linear_dim_ += d * d;
    realization_dim_ += d;
  }
}

Vec MultiMatrixAlgebra::unit() const {
  Vec u = zero();
  for (int k = 0; k < block_count(); ++k) {
    const int d = block_dims_[k];
    for (int a = 0; a < d; ++a) u(offsets_[k] + a + a * d) = 1.0;
  }
  return u;
}

Vec MultiMatrixAlgebra::matrix_unit(int block, int row, int col) const {
  const int d = block_dims_.at(block);
  if (row < 0 || row >= d || col < 0 || col >= d) throw Error(ErrorKind::InvalidInput, "matrix unit out of range");
  Vec e = zero();
  e(offsets_[block] + row + col * d) = 1.0;
  return e;
}

Mat MultiMatrixAlgebra::block(const Vec& a, int k) const {
  const int d = block_dims_.at(k);
  return Eigen::Map<const Mat>(a.data() + offsets_[k], d, d);
}

Vec MultiMatrixAlgebra::from_blocks(const std::vector<Mat>& blocks) const {
  if (static_cast<int>(blocks.size()) != block_count()) throw Error(ErrorKind::InvalidInput, "wrong number of blocks");
  Vec v = zero();
  for (int k = 0; k < block_count(); ++k) {
    const int d = block_dims_[k];
    if (blocks[k].rows() != d || blocks[k].cols() != d) throw Error(ErrorKind::InvalidInput, "block has wrong shape");
    Eigen::Map<Mat>(v.data() + offsets_[k], d, d) = blocks[k];
  }
  return v;
}

Mat MultiMatrixAlgebra::realize(const Vec& a) const {
  Mat r = Mat::Zero(realization_dim_, realization_dim_);
  int pos = 0;
  for (int k = 0; k < block_count(); ++k) {
    const int d = block_dims_[k];
    r.block(pos, pos, d, d) = block(a, k);
    pos += d;
  }
  return r;
}

Vec MultiMatrixAlgebra::multiply(const Vec& a, const Vec& b) const {
  Vec c(linear_dim_);
  for (int k = 0; k < block_count(); ++k) {
    const int d = block_dims_[k];
    const int o = offsets_[k];
    Eigen::Map<Mat>(c.data() + o, d, d).noalias() =
        Eigen::Map<const Mat>(a.data() + o, d, d) * Eigen::Map<const Mat>(b.data() + o, d, d);
  }
  return c;
}

Vec MultiMatrixAlgebra::adjoint(const Vec& a) const {
  Vec c(linear_dim_);
  for (int k = 0; k < block_count(); ++k) {
    const int d = block_dims_[k];
    const int o = offsets_[k];
    Eigen::Map<Mat>(c.data() + o, d, d) = Eigen::Map<const Mat>(a.data() + o, d, d).adjoint();
  }
  return c;
}

Mat MultiMatrixAlgebra::left_multiplication(const Vec& a) const {
  Mat m = Mat::Zero(linear_dim_, linear_dim_);
  for (int k = 0; k < block_count(); ++k) {
    const int d = block_dims_[k];
    const int o = offsets_[k];
    const Mat ak = block(a, k);
    // vec(A X) = (I kron A) vec(X)
    for (int col = 0; col < d; ++col) m.block(o + col * d, o + col * d, d, d) = ak;
  }
  return m;
}

Mat MultiMatrixAlgebra::right_multiplication(const Vec& a) const {
  Mat m = Mat::Zero(linear_dim_, linear_dim_);
  for (int k = 0; k < block_count(); ++k) {
    const int d = block_dims_[k];
    const int o = offsets_[k];
    const Mat ak = block(a, k);
    // vec(X A) = (A^T kron I) vec(X)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (ak(j, i) != cplx(0.0)) m.block(o + i * d, o + j * d, d, d) = ak(j, i) * Mat::Identity(d, d);
  }
  return m;
}

double MultiMatrixAlgebra::operator_norm(const Vec& a) const {
  double n = 0.0;
  for (int k = 0; k < block_count(); ++k) {
    Eigen::JacobiSVD<Mat> svd(block(a, k));
    n = std::max(n, svd.singularValues()(0));
  }
  return n;
}

AlgebraPtr make_multimatrix(std::vector<int> block_dims) {
  return std::make_shared<const MultiMatrixAlgebra>(std::move(block_dims));
}

// ---------------------------------------------------------------------------
// AlgElement

AlgElement::AlgElement(AlgebraPtr algebra, Vec coords) : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (!algebra_) throw Error(ErrorKind::InvalidInput, "element without algebra");
  if (coords_.size() != algebra_->linear_dim()) throw Error(ErrorKind::InvalidInput, "coordinate length mismatch");
}

namespace {
void require_same(const AlgElement& a, const AlgElement& b) {
  if (a.algebra() != b.algebra()) throw Error(ErrorKind::ContextMismatch, "elements belong to different algebras");
}
}  // namespace

AlgElement operator*(const AlgElement& a, const AlgElement& b) {
  require_same(a, b);
  return {a.algebra_, a.algebra_->multiply(a.coords_, b.coords_)};
}

AlgElement operator+(const AlgElement& a, const AlgElement& b) {
  require_same(a, b);
  return {a.algebra_, a.coords_ + b.coords_};
}

AlgElement operator-(const AlgElement& a, const AlgElement& b) {
  require_same(a, b);
  return {a.algebra_, a.coords_ - b.coords_};
}

double operator_norm(const AlgElement& a) { return a.norm(); }

// ---------------------------------------------------------------------------
// StarMorphism

MorphismResiduals morphism_residuals(const StarMorphism& m, double rank_tol) {
  const auto& dom = *m.domain;
  const auto& cod = *m.codomain;
  if (m.action.rows() != cod.linear_dim() || m.action.cols() != dom.linear_dim())
    throw Error(ErrorKind::InvalidInput, "morphism action has wrong shape");
  MorphismResiduals r;
  const int n = dom.linear_dim();
  std::vector<Vec> images(n);
  for (int p = 0; p < n; ++p) images[p] = m.action.col(p);
  for (int p = 0; p < n; ++p) {
    const Vec ep = Vec::Unit(n, p);
    for (int q = 0; q < n; ++q) {
      const Vec lhs = m.action * dom.multiply(ep, Vec::Unit(n, q));
      const Vec rhs = cod.multiply(images[p], images[q]);
      r.multiplicative = std::max(r.multiplicative, (lhs - rhs).norm());
    }
    r.involutive = std::max(r.involutive, (m.action * dom.adjoint(ep) - cod.adjoint(images[p])).norm());
  }
  r.unital = (m.action * dom.unit() - cod.unit()).norm();
  Eigen::JacobiSVD<Mat> svd(m.action);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rank_tol * std::max(1.0, smax)) ++r.rank;
  return r;
}

// ---------------------------------------------------------------------------
// State

State::State(AlgebraPtr algebra, Vec functional, const Tolerances& tol)
    : algebra_(std::move(algebra)), functional_(std::move(functional)) {
  if (functional_.size() != algebra_->linear_dim()) throw Error(ErrorKind::InvalidInput, "functional length mismatch");
  const cplx at_unit = (*this)(algebra_->unit());
  if (std::abs(at_unit - 1.0) > tol.alg) throw Error(ErrorKind::InvalidState, "phi(1) != 1");
  faithful_ = true;
  for (int k = 0; k < algebra_->block_count(); ++k) {
    const Mat q = density(k);
    if ((q - q.adjoint()).norm() > tol.alg) throw Error(ErrorKind::InvalidState, "density matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (q + q.adjoint()));
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -tol.alg) throw Error(ErrorKind::InvalidState, "functional is not positive");
    if (lo <= tol.alg) faithful_ = false;
  }
}

Mat State::density(int k) const {
  const int d = algebra_->block_dims().at(k);
  const int o = algebra_->offset(k);
  Mat q(d, d);
  // phi(E_ab) = tr(Q E_ab) = Q_ba
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) q(b, a) = functional_(o + a + b * d);
  return q;
}

Mat State::gram() const {
  const int n = algebra_->linear_dim();
  Mat g = Mat::Zero(n, n);
  // (E_ab)^* E_cd = delta_ac E_bd
  for (int k = 0; k < algebra_->block_count(); ++k) {
    const int d = algebra_->block_dims()[k];
    const int o = algebra_->offset(k);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int dd = 0; dd < d; ++dd) g(o + a + b * d, o + a + dd * d) = functional_(o + b + dd * d);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Gram quotient and first-fit bases

FHilbert gram_quotient(const Mat& gram, double tau_gram) {
  if (gram.rows() != gram.cols()) throw Error(ErrorKind::InvalidInput, "Gram matrix is not square");
  FHilbert out;
  out.ambient_dim = static_cast<int>(gram.rows());
  if (out.ambient_dim == 0) {
    out.onb = Mat(0, 0);
    return out;
  }
  const Mat herm = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(herm);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(std::abs(ev.maxCoeff()), std::abs(ev.minCoeff()));
  if (scale == 0.0) {
    out.onb = Mat(out.ambient_dim, 0);
    out.kernel_dim = out.ambient_dim;
    return out;
  }
  if (ev.minCoeff() < -tau_gram * scale) throw Error(ErrorKind::NotPositive, "Gram matrix has a negative eigenvalue");
  std::vector<int> keep;
  for (int i = out.ambient_dim - 1; i >= 0; --i)
    if (ev(i) > tau_gram * scale) keep.push_back(i);
  out.onb = Mat(out.ambient_dim, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    out.onb.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]) / std::sqrt(ev(keep[j]));
  out.kernel_dim = out.ambient_dim - static_cast<int>(keep.size());
  return out;
}

FirstFitBasis first_fit_basis(const Mat& g, double tau) {
  const int m = static_cast<int>(g.rows());
  FirstFitBasis out;
  out.onb = Mat(m, 0);
  double scale = 0.0;
  for (int j = 0; j < m; ++j) scale = std::max(scale, std::abs(g(j, j)));
  if (scale == 0.0) return out;
  // cols holds the kept vectors, gcols their images under g; projections
  // then only need conjugate dot products.
  std::vector<Vec> cols, gcols;
  const auto span = [](const Vec& v) { return std::span<const cplx>(v.data(), static_cast<std::size_t>(v.size())); };
  for (int j = 0; j < m; ++j) {
    Vec r = Vec::Unit(m, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const cplx h = simd::dotc(span(gcols[c]), span(r));
        simd::axpy(-h, span(cols[c]), std::span<cplx>(r.data(), static_cast<std::size_t>(m)));
      }
    }
    Vec gr = g * r;
    const double n2 = std::real(simd::dotc(span(r), span(gr)));
    if (n2 > tau * scale) {
      const double inv = 1.0 / std::sqrt(n2);
      cols.push_back(r * inv);
      gcols.push_back(gr * inv);
      out.selected.push_back(j);
    }
  }
  out.onb = Mat(m, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.onb.col(static_cast<Eigen::Index>(j)) = cols[j];
  return out;
}

// ---------------------------------------------------------------------------
// GNS

Mat GnsSpace::represent(const Vec& a) const {
  return space.onb.adjoint() * gram * algebra->left_multiplication(a) * space.onb;
}

GnsSpace gns_space(const AlgebraPtr& algebra, const State& phi, const Tolerances& tol) {
  if (phi.algebra() != algebra && !(*phi.algebra() == *algebra))
    throw Error(ErrorKind::ContextMismatch, "state belongs to another algebra");
  GnsSpace g;
  g.algebra = algebra;
  g.gram = phi.gram();
  try {
    g.space = gram_quotient(g.gram, tol.gram);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidState, std::string("GNS form is not positive: ") + e.what());
  }
  return g;
}

// ---------------------------------------------------------------------------
// Conditional expectations

Mat CondExpectation::adapted_basis() const {
  Mat out(image_onb.rows(), image_onb.cols() + kernel_onb.cols());
  out << image_onb, kernel_onb;
  return out;
}

CondExpectation conditional_expectation(const AlgebraPtr& algebra, const std::vector<Vec>& image_basis,
                                        const State& phi, const Tolerances& tol) {
  const auto& alg = *algebra;
  const int n = alg.linear_dim();
  if (image_basis.empty()) throw Error(ErrorKind::InvalidInput, "empty image basis");
  if (!phi.faithful()) throw Error(ErrorKind::InvalidState, "conditional expectation needs a faithful state");

  Mat span(n, static_cast<Eigen::Index>(image_basis.size()) + 1);
  span.col(0) = alg.unit();
  for (std::size_t i = 0; i < image_basis.size(); ++i) {
    if (image_basis[i].size() != n) throw Error(ErrorKind::InvalidInput, "image basis element has wrong length");
    span.col(static_cast<Eigen::Index>(i) + 1) = image_basis[i];
  }

  // Euclidean projector onto the span, for the closure test.
  Eigen::JacobiSVD<Mat> svd(span, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * sv(0)) ++rank;
  const Mat u = svd.matrixU().leftCols(rank);
  auto outside = [&](const Vec& v) { return (v - u * (u.adjoint() * v)).norm(); };
  for (const Vec& bi : image_basis) {
    const double scale = std::max(1.0, bi.squaredNorm());
    if (outside(alg.adjoint(bi)) > tol.alg * scale)
      throw Error(ErrorKind::NotASubalgebra, "image basis is not closed under the involution");
    for (const Vec& bj : image_basis) {
      if (outside(alg.multiply(bi, bj)) > tol.alg * std::max(1.0, bi.norm() * bj.norm()))
        throw Error(ErrorKind::NotASubalgebra, "image basis is not closed under multiplication");
    }
  }
  // The unit column only matters if the span is unital; check it was already there.
  {
    Mat only(n, static_cast<Eigen::Index>(image_basis.size()));
    for (std::size_t i = 0; i < image_basis.size(); ++i) only.col(static_cast<Eigen::Index>(i)) = image_basis[i];
    Eigen::JacobiSVD<Mat> s2(only, Eigen::ComputeThinU);
    int r2 = 0;
    for (int i = 0; i < s2.singularValues().size(); ++i)
      if (s2.singularValues()(i) > 1e-10 * s2.singularValues()(0)) ++r2;
    const Mat u2 = s2.matrixU().leftCols(r2);
    const Vec one = alg.unit();
    if ((one - u2 * (u2.adjoint() * one)).norm() > tol.alg * std::sqrt(double(n)))
      throw Error(ErrorKind::NotASubalgebra, "image basis does not contain the unit");
  }

  const Mat g = phi.gram();
  CondExpectation e;
  e.algebra = algebra;
  {
    const auto ff = first_fit_basis(span.adjoint() * g * span);
    e.image_onb = span * ff.onb;
  }
  e.projection = e.image_onb * e.image_onb.adjoint() * g;
  {
    const Mat comp = Mat::Identity(n, n) - e.projection;
    const auto ff = first_fit_basis(comp.adjoint() * g * comp);
    e.kernel_onb = comp * ff.onb;
  }
  if (e.image_onb.cols() + e.kernel_onb.cols() != n)
    throw Error(ErrorKind::NumericalDegeneracy, "adapted basis does not span the algebra");

  // Verification of the defining properties.
  const Mat& p = e.projection;
  if ((p * p - p).norm() > tol.alg * std::max(1.0, p.norm()))
    throw Error(ErrorKind::InvalidState, "projection is not idempotent");
  if ((p * alg.unit() - alg.unit()).norm() > tol.alg) throw Error(ErrorKind::InvalidState, "E(1) != 1");
  if ((phi.functional().transpose() * p - phi.functional().transpose()).norm() > tol.alg)
    throw Error(ErrorKind::InvalidState, "phi o E != phi");
  for (int c1 = 0; c1 < e.image_dim(); ++c1) {
    const Vec b1 = e.image_onb.col(c1);
    for (int c2 = 0; c2 < e.image_dim(); ++c2) {
      const Vec b2 = e.image_onb.col(c2);
      for (int q = 0; q < n; ++q) {
        const Vec a = Vec::Unit(n, q);
        const Vec lhs = p * alg.multiply(alg.multiply(b1, a), b2);
        const Vec rhs = alg.multiply(alg.multiply(b1, p * a), b2);
        if ((lhs - rhs).norm() > tol.alg * std::max(1.0, b1.norm() * b2.norm()))
          throw Error(ErrorKind::InvalidState, "bimodule property fails");
      }
    }
  }
  for (int q = 0; q < n; ++q) {
    const Vec a = Vec::Unit(n, q);
    const Vec img = p * alg.multiply(alg.adjoint(a), a);
    for (int k = 0; k < alg.block_count(); ++k) {
      const Mat bk = alg.block(img, k);
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (bk + bk.adjoint()));
      if (es.eigenvalues().minCoeff() < -tol.alg) throw Error(ErrorKind::InvalidState, "E is not positive");
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json matrix_to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "matrix JSON must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) throw Error(ErrorKind::InvalidInput, "ragged matrix JSON");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = j[r][c];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else {
        m(r, c) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
      }
    }
  }
  return m;
}

}  // namespace hnn
