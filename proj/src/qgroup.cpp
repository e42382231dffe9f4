#include "hnn/qgroup.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hnn {

namespace {

struct UnitIndex {
  int block, row, col;
};

std::vector<UnitIndex> unit_indices(const MultiMatrixAlgebra& alg) {
  std::vector<UnitIndex> out(alg.linear_dim());
  for (int k = 0; k < alg.block_count(); ++k) {
    const int d = alg.block_dims()[k];
    for (int b = 0; b < d; ++b)
      for (int a = 0; a < d; ++a) out[alg.offset(k) + a + b * d] = {k, a, b};
  }
  return out;
}

// For every matrix unit e_p, the pairs (r, t) with e_p e_r = e_t.
std::vector<std::vector<std::pair<int, int>>> product_table(const MultiMatrixAlgebra& alg) {
  std::vector<std::vector<std::pair<int, int>>> out(alg.linear_dim());
  for (const auto& u : unit_indices(alg)) {
    const int d = alg.block_dims()[u.block];
    const int o = alg.offset(u.block);
    const int p = o + u.row + u.col * d;
    for (int c = 0; c < d; ++c) out[p].emplace_back(o + u.col + c * d, o + u.row + c * d);
  }
  return out;
}

int adjoint_index(const MultiMatrixAlgebra& alg, const UnitIndex& u) {
  return alg.offset(u.block) + u.col + u.row * alg.block_dims()[u.block];
}

int numerical_rank(const Mat& m, double rel) {
  if (m.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(rel);
  return static_cast<int>(qr.rank());
}

// Null space of m, columns orthonormal.
Mat null_space(const Mat& m, double rel) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rel * std::max(1.0, smax)) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

Mat pseudo_inverse(const Mat& m) { return m.completeOrthogonalDecomposition().pseudoInverse(); }

[[noreturn]] void not_cqg(const std::string& name, const std::string& what) {
  throw Error(ErrorKind::NotACqg, name + ": " + what);
}

}  // namespace

Mat tensor_multiply(const MultiMatrixAlgebra& alg, const Mat& x, const Mat& y) {
  const int n = alg.linear_dim();
  const auto table = product_table(alg);
  Mat z = Mat::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const cplx xpq = x(p, q);
      if (xpq == cplx(0.0)) continue;
      for (const auto& [r, t1] : table[p])
        for (const auto& [s, t2] : table[q]) z(t1, t2) += xpq * y(r, s);
    }
  return z;
}

Mat tensor_adjoint(const MultiMatrixAlgebra& alg, const Mat& x) {
  const auto idx = unit_indices(alg);
  const int n = alg.linear_dim();
  Mat z(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) z(adjoint_index(alg, idx[p]), adjoint_index(alg, idx[q])) = std::conj(x(p, q));
  return z;
}

Mat FiniteCQG::coproduct(const Vec& a) const {
  const int n = dim();
  Mat out = Mat::Zero(n, n);
  for (int p = 0; p < n; ++p)
    if (a(p) != cplx(0.0)) out += a(p) * comul_units[p];
  return out;
}

// ---------------------------------------------------------------------------
// Haar state and counit

State haar_state(const FiniteCQG& qg, const Tolerances& tol) {
  const int n = qg.dim();
  const Vec one = qg.basis_inv * qg.algebra->unit();
  Mat sys = Mat::Zero(2 * n * n, n);
  int row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j, ++row) {
      sys.row(row) = qg.comul[i].row(j);
      sys(row, i) -= one(j);
    }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k, ++row) {
      sys.row(row) = qg.comul[i].col(k).transpose();
      sys(row, i) -= one(k);
    }
  const Mat ns = null_space(sys, tol.alg);
  if (ns.cols() != 1) {
    std::ostringstream os;
    os << "Haar invariance system has a " << ns.cols() << "-dimensional solution space";
    not_cqg(qg.name, os.str());
  }
  Vec phi = ns.col(0);
  const cplx norm = one.transpose() * phi;
  if (std::abs(norm) < tol.alg) not_cqg(qg.name, "invariant functional vanishes at the unit");
  phi /= norm;
  if ((sys * phi).norm() > tol.alg * std::sqrt(double(n))) not_cqg(qg.name, "Haar residual too large");
  try {
    return State(qg.algebra, qg.basis_inv.transpose() * phi, tol);
  } catch (const Error& e) {
    not_cqg(qg.name, std::string("Haar functional is not a state: ") + e.what());
  }
}

Vec counit(const FiniteCQG& qg, const Tolerances& tol) {
  const int n = qg.dim();
  Mat sys = Mat::Zero(2 * n * n, n);
  Vec rhs = Vec::Zero(2 * n * n);
  int row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j, ++row) {
      sys.row(row) = qg.comul[i].row(j);
      rhs(row) = i == j ? 1.0 : 0.0;
    }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k, ++row) {
      sys.row(row) = qg.comul[i].col(k).transpose();
      rhs(row) = i == k ? 1.0 : 0.0;
    }
  const Vec eps = sys.completeOrthogonalDecomposition().solve(rhs);
  if ((sys * eps - rhs).norm() > tol.alg * std::sqrt(double(n))) not_cqg(qg.name, "counit equations have no solution");
  const Vec f = qg.basis_inv.transpose() * eps;
  // Multiplicativity and unitality on the distinguished basis.
  const auto& alg = *qg.algebra;
  if (std::abs(cplx(f.transpose() * alg.unit()) - 1.0) > tol.alg) not_cqg(qg.name, "counit is not unital");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec bi = qg.basis.col(i), bj = qg.basis.col(j);
      const cplx lhs = f.transpose() * alg.multiply(bi, bj);
      const cplx rhs2 = cplx(f.transpose() * bi) * cplx(f.transpose() * bj);
      if (std::abs(lhs - rhs2) > tol.alg * std::max(1.0, bi.norm() * bj.norm()))
        not_cqg(qg.name, "counit is not multiplicative");
    }
  return f;
}

// ---------------------------------------------------------------------------
// Construction and axioms

CqgResiduals cqg_residuals(const FiniteCQG& qg) {
  const int n = qg.dim();
  const auto& alg = *qg.algebra;
  CqgResiduals r;

  for (int i = 0; i < n; ++i) {
    double worst = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          cplx t1 = 0.0, t2 = 0.0;
          for (int j = 0; j < n; ++j) {
            t1 += qg.comul[i](j, c) * qg.comul[j](a, b);
            t2 += qg.comul[i](a, j) * qg.comul[j](b, c);
          }
          worst = std::max(worst, std::abs(t1 - t2));
        }
    r.coassociativity = std::max(r.coassociativity, worst);
  }

  std::vector<Mat> delta_basis(n);
  for (int i = 0; i < n; ++i) delta_basis[i] = qg.coproduct(qg.basis.col(i));
  for (int i = 0; i < n; ++i) {
    const Vec bi = qg.basis.col(i);
    for (int j = 0; j < n; ++j) {
      const Mat lhs = qg.coproduct(alg.multiply(bi, qg.basis.col(j)));
      const Mat rhs = tensor_multiply(alg, delta_basis[i], delta_basis[j]);
      r.multiplicative = std::max(r.multiplicative, (lhs - rhs).norm());
    }
    r.involutive =
        std::max(r.involutive, (qg.coproduct(alg.adjoint(bi)) - tensor_adjoint(alg, delta_basis[i])).norm());
  }
  const Vec one = alg.unit();
  r.unital = (qg.coproduct(one) - one * one.transpose()).norm();

  Mat left(n * n, n * n), right(n * n, n * n);
  for (int p = 0; p < n; ++p) {
    const Mat dp = qg.comul_units[p];
    for (int q = 0; q < n; ++q) {
      const Vec eq = Vec::Unit(n, q);
      const Mat l = tensor_multiply(alg, dp, eq * one.transpose());
      const Mat rr = tensor_multiply(alg, dp, one * eq.transpose());
      left.col(p * n + q) = Eigen::Map<const Vec>(l.data(), n * n);
      right.col(p * n + q) = Eigen::Map<const Vec>(rr.data(), n * n);
    }
  }
  r.left_density_rank = numerical_rank(left, 1e-10);
  r.right_density_rank = numerical_rank(right, 1e-10);

  if (qg.haar.algebra()) {
    const Vec& f = qg.haar.functional();
    for (int p = 0; p < n; ++p) {
      const Mat& d = qg.comul_units[p];
      const cplx hp = f(p);
      r.haar_left = std::max(r.haar_left, (d * f - hp * one).norm());
      r.haar_right = std::max(r.haar_right, (d.transpose() * f - hp * one).norm());
    }
  }
  if (qg.counit.size() == n) {
    const Vec& e = qg.counit;
    for (int p = 0; p < n; ++p) {
      const Mat& d = qg.comul_units[p];
      r.counit_left = std::max(r.counit_left, (d * e - Vec::Unit(n, p)).norm());
      r.counit_right = std::max(r.counit_right, (d.transpose() * e - Vec::Unit(n, p)).norm());
      for (int q = 0; q < n; ++q) {
        const cplx lhs = e.transpose() * alg.multiply(Vec::Unit(n, p), Vec::Unit(n, q));
        r.counit_multiplicative = std::max(r.counit_multiplicative, std::abs(lhs - e(p) * e(q)));
      }
    }
  }
  return r;
}

FiniteCQG make_cqg(std::string name, AlgebraPtr algebra, Mat basis, std::vector<std::string> labels,
                   std::vector<Mat> comul, const Tolerances& tol) {
  FiniteCQG qg;
  qg.name = std::move(name);
  qg.algebra = std::move(algebra);
  const int n = qg.algebra->linear_dim();
  if (basis.rows() != n || basis.cols() != n) not_cqg(qg.name, "distinguished basis has the wrong shape");
  if (static_cast<int>(comul.size()) != n) not_cqg(qg.name, "wrong number of comultiplication matrices");
  for (const auto& c : comul)
    if (c.rows() != n || c.cols() != n) not_cqg(qg.name, "comultiplication matrix has the wrong shape");
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back("b" + std::to_string(i));
  if (static_cast<int>(labels.size()) != n) not_cqg(qg.name, "wrong number of basis labels");

  Eigen::FullPivLU<Mat> lu(basis);
  if (lu.rank() != n) not_cqg(qg.name, "distinguished basis is not linearly independent");
  qg.basis = std::move(basis);
  qg.basis_inv = lu.inverse();
  qg.labels = std::move(labels);
  qg.comul = std::move(comul);

  std::vector<Mat> delta_b(n);
  for (int i = 0; i < n; ++i) delta_b[i] = qg.basis * qg.comul[i] * qg.basis.transpose();
  qg.comul_units.assign(n, Mat::Zero(n, n));
  for (int p = 0; p < n; ++p)
    for (int i = 0; i < n; ++i)
      if (qg.basis_inv(i, p) != cplx(0.0)) qg.comul_units[p] += qg.basis_inv(i, p) * delta_b[i];

  const CqgResiduals r = cqg_residuals(qg);
  if (r.coassociativity > tol.alg) not_cqg(qg.name, "comultiplication is not coassociative");
  if (r.multiplicative > tol.alg) not_cqg(qg.name, "comultiplication is not multiplicative");
  if (r.involutive > tol.alg) not_cqg(qg.name, "comultiplication is not *-preserving");
  if (r.unital > tol.alg) not_cqg(qg.name, "comultiplication is not unital");
  if (r.left_density_rank != n * n || r.right_density_rank != n * n)
    not_cqg(qg.name, "density conditions fail");

  qg.haar = haar_state(qg, tol);
  qg.counit = counit(qg, tol);
  return qg;
}

// ---------------------------------------------------------------------------
// Wedderburn decomposition

WedderburnResult wedderburn_decompose(const std::vector<Mat>& basis_mats, const std::vector<Mat>& commutant,
                                      unsigned seed) {
  if (basis_mats.empty() || commutant.empty()) throw Error(ErrorKind::InvalidInput, "empty matrix algebra data");
  const int n = static_cast<int>(basis_mats.size());
  const auto dim = basis_mats[0].rows();

  for (int attempt = 0; attempt < 8; ++attempt) {
    std::mt19937_64 rng(seed + 7919u * static_cast<unsigned>(attempt));
    std::normal_distribution<double> gauss;
    Mat x = Mat::Zero(dim, dim);
    for (const Mat& c : commutant) {
      const cplx r(gauss(rng), gauss(rng));
      x += r * c + std::conj(r) * c.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (x + x.adjoint()));
    const auto& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());

    struct Irrep {
      int d;
      Eigen::VectorXcd character;
      std::vector<Mat> rho;
    };
    std::vector<Irrep> irreps;
    int start = 0;
    while (start < dim) {
      int stop = start + 1;
      while (stop < dim && ev(stop) - ev(stop - 1) < 1e-7 * scale) ++stop;
      const Mat w = es.eigenvectors().middleCols(start, stop - start);
      Irrep ir;
      ir.d = stop - start;
      ir.character.resize(n);
      for (int i = 0; i < n; ++i) {
        ir.rho.push_back(w.adjoint() * basis_mats[i] * w);
        ir.character(i) = ir.rho.back().trace();
      }
      bool seen = false;
      for (const auto& other : irreps)
        if (other.d == ir.d && (other.character - ir.character).norm() < 1e-6 * std::sqrt(double(n))) seen = true;
      if (!seen) irreps.push_back(std::move(ir));
      start = stop;
    }
    int total = 0;
    for (const auto& ir : irreps) total += ir.d * ir.d;
    if (total != n) continue;

    std::stable_sort(irreps.begin(), irreps.end(), [](const Irrep& a, const Irrep& b) { return a.d < b.d; });
    WedderburnResult out;
    for (const auto& ir : irreps) out.block_dims.push_back(ir.d);
    MultiMatrixAlgebra alg(out.block_dims);
    Mat images(n, n);
    for (int i = 0; i < n; ++i) {
      std::vector<Mat> blocks;
      for (const auto& ir : irreps) blocks.push_back(ir.rho[i]);
      out.images.push_back(alg.from_blocks(blocks));
      images.col(i) = out.images.back();
    }
    if (numerical_rank(images, 1e-9) != n) continue;
    return out;
  }
  throw Error(ErrorKind::NumericalDegeneracy, "block decomposition did not separate the irreducible summands");
}

// ---------------------------------------------------------------------------
// Builtin quantum groups from finite groups

FiniteCQG function_algebra_qg(const FiniteGroup& g, const Tolerances& tol) {
  const int n = g.order();
  auto alg = make_multimatrix(std::vector<int>(n, 1));
  std::vector<Mat> comul(n, Mat::Zero(n, n));
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k) comul[g.mul(h, k)](h, k) = 1.0;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("delta_" + g.label(i));
  return make_cqg("C(" + g.name() + ")", alg, Mat::Identity(n, n), labels, comul, tol);
}

FiniteCQG group_algebra_qg(const FiniteGroup& g, const Tolerances& tol) {
  const int n = g.order();
  std::vector<Mat> left(n, Mat::Zero(n, n)), right(n, Mat::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int h = 0; h < n; ++h) {
      left[a](g.mul(a, h), h) = 1.0;
      right[a](g.mul(h, g.inverse(a)), h) = 1.0;
    }
  const auto wd = wedderburn_decompose(left, right);
  auto alg = make_multimatrix(wd.block_dims);
  Mat basis(n, n);
  for (int i = 0; i < n; ++i) basis.col(i) = wd.images[i];
  std::vector<Mat> comul(n, Mat::Zero(n, n));
  for (int i = 0; i < n; ++i) comul[i](i, i) = 1.0;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("lambda_" + g.label(i));
  return make_cqg("C*(" + g.name() + ")", alg, basis, labels, comul, tol);
}

// ---------------------------------------------------------------------------
// Embeddings

QGEmbedding validate_embedding(const FiniteCQG& src, const FiniteCQG& dst, StarMorphism morphism,
                               const Tolerances& tol) {
  auto fail = [](const std::string& axiom) {
    throw Error(ErrorKind::EmbeddingInvalid, "embedding fails: " + axiom);
  };
  if (!morphism.domain) morphism.domain = src.algebra;
  if (!morphism.codomain) morphism.codomain = dst.algebra;
  if (!(*morphism.domain == *src.algebra) || !(*morphism.codomain == *dst.algebra)) fail("domain/codomain shape");
  if (morphism.action.rows() != dst.dim() || morphism.action.cols() != src.dim()) fail("action matrix shape");

  const MorphismResiduals r = morphism_residuals(morphism, tol.alg);
  if (r.unital > tol.alg) fail("unital");
  if (r.multiplicative > tol.alg) fail("multiplicative");
  if (r.involutive > tol.alg) fail("involutive");
  if (r.rank != src.dim()) fail("injective");

  const Mat& m = morphism.action;
  for (int p = 0; p < src.dim(); ++p) {
    const Mat lhs = dst.coproduct(m.col(p));
    const Mat rhs = m * src.comul_units[p] * m.transpose();
    if ((lhs - rhs).norm() > tol.alg) fail("intertwines comultiplications");
  }
  morphism.unital = true;
  morphism.injective = true;
  return {std::move(morphism), true};
}

// ---------------------------------------------------------------------------
// HNN input

namespace {

double invariance_residual(const FiniteCQG& A, const CondExpectation& E) {
  const int n = A.dim();
  const Mat& P = E.projection;
  double worst = 0.0;
  for (int p = 0; p < n; ++p) {
    const Mat d = A.comul_units[p];
    const Mat de = A.coproduct(P.col(p));
    worst = std::max(worst, (d * P.transpose() - de).norm());
    worst = std::max(worst, (P * d - de).norm());
  }
  return worst;
}

}  // namespace

HnnResiduals hnn_residuals(const HNNInput& in) {
  HnnResiduals r;
  r.invariance_plus = invariance_residual(in.A, in.E_plus);
  r.invariance_minus = invariance_residual(in.A, in.E_minus);
  const Vec& fa = in.A.haar.functional();
  const Vec& fb = in.B.haar.functional();
  r.haar_theta = (in.theta.morphism.action.transpose() * fa - fb).norm();
  r.haar_iota = (in.iota.morphism.action.transpose() * fa - fb).norm();
  r.counit_theta = (in.theta.morphism.action.transpose() * in.A.counit - in.B.counit).norm();
  r.counit_iota = (in.iota.morphism.action.transpose() * in.A.counit - in.B.counit).norm();
  const Mat& i = in.iota.morphism.action;
  const Mat& t = in.theta.morphism.action;
  r.restriction_plus = (in.E_plus.projection * i - i).norm();
  r.restriction_minus = (in.E_minus.projection * t - t).norm();
  return r;
}

HNNInputPtr build_hnn_input(FiniteCQG A, FiniteCQG B, QGEmbedding iota, QGEmbedding theta, const Tolerances& tol) {
  if (!iota.intertwines || !theta.intertwines)
    throw Error(ErrorKind::EmbeddingInvalid, "HNN input needs validated embeddings");
  auto in = std::make_shared<HNNInput>();
  in->tol = tol;
  auto images = [](const StarMorphism& m) {
    std::vector<Vec> out;
    for (Eigen::Index c = 0; c < m.action.cols(); ++c) out.push_back(m.action.col(c));
    return out;
  };
  in->E_plus = conditional_expectation(A.algebra, images(iota.morphism), A.haar, tol);
  in->E_minus = conditional_expectation(A.algebra, images(theta.morphism), A.haar, tol);
  in->A = std::move(A);
  in->B = std::move(B);
  in->iota = std::move(iota);
  in->theta = std::move(theta);

  const HnnResiduals r = hnn_residuals(*in);
  if (r.invariance_plus > tol.alg || r.invariance_minus > tol.alg)
    throw Error(ErrorKind::HaarIncompatible, "conditional expectation is not invariant under the comultiplication");
  if (r.haar_theta > tol.alg) throw Error(ErrorKind::HaarIncompatible, "phi_A o theta != phi_B");
  if (r.haar_iota > tol.alg) throw Error(ErrorKind::HaarIncompatible, "phi_A o iota != phi_B");

  in->gram_A = in->A.haar.gram();
  const Mat& i = in->iota.morphism.action;
  const Mat& t = in->theta.morphism.action;
  in->from_B = {i, t};
  in->to_B = {pseudo_inverse(i), pseudo_inverse(t)};
  in->theta_sign = {t * in->to_B[0], i * in->to_B[1]};
  in->adapted = {in->E_plus.adapted_basis(), in->E_minus.adapted_basis()};
  return in;
}

}  // namespace hnn
