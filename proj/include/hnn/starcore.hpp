#pragma once

// Finite-dimensional C*-algebras as direct sums of matrix blocks, together
// with states, GNS spaces, conditional expectations and the Gram quotient
// used by every downstream Hilbert-space construction.
//
// Linear coordinates of an element concatenate its blocks, each stored
// column-major: the matrix unit E^k_{ab} sits at offset(k) + a + b * d_k.

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <vector>

#include <json.hpp>

#include "hnn/error.hpp"

namespace hnn {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct Tolerances {
  double alg = 1e-9;   // absolute, unit-normalized data
  double gram = 1e-8;  // relative to the largest Gram eigenvalue
};

class MultiMatrixAlgebra {
 public:
  explicit MultiMatrixAlgebra(std::vector<int> block_dims);

  const std::vector<int>& block_dims() const noexcept { return block_dims_; }
  int block_count() const noexcept { return static_cast<int>(block_dims_.size()); }
  int linear_dim() const noexcept { return linear_dim_; }
  int offset(int k) const { return offsets_.at(k); }
  // Size of the block-diagonal realization, sum of d_k.
  int realization_dim() const noexcept { return realization_dim_; }

  Vec zero() const { return Vec::Zero(linear_dim_); }
  Vec unit() const;
  Vec matrix_unit(int block, int row, int col) const;

  Mat block(const Vec& a, int k) const;
  Vec from_blocks(const std::vector<Mat>& blocks) const;
  Mat realize(const Vec& a) const;

  Vec multiply(const Vec& a, const Vec& b) const;
  Vec adjoint(const Vec& a) const;
  // Matrices of x -> a x and x -> x a on linear coordinates.
  Mat left_multiplication(const Vec& a) const;
  Mat right_multiplication(const Vec& a) const;

  double operator_norm(const Vec& a) const;

  bool operator==(const MultiMatrixAlgebra& other) const { return block_dims_ == other.block_dims_; }

 private:
  std::vector<int> block_dims_;
  std::vector<int> offsets_;
  int linear_dim_ = 0;
  int realization_dim_ = 0;
};

using AlgebraPtr = std::shared_ptr<const MultiMatrixAlgebra>;

AlgebraPtr make_multimatrix(std::vector<int> block_dims);

// An element tied to its algebra. Arithmetic across different algebra
// objects throws ContextMismatch, even when the block shapes agree.
class AlgElement {
 public:
  AlgElement(AlgebraPtr algebra, Vec coords);

  static AlgElement unit(const AlgebraPtr& algebra) { return {algebra, algebra->unit()}; }
  static AlgElement zero(const AlgebraPtr& algebra) { return {algebra, algebra->zero()}; }

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  const Vec& coords() const noexcept { return coords_; }
  Mat block(int k) const { return algebra_->block(coords_, k); }

  AlgElement adjoint() const { return {algebra_, algebra_->adjoint(coords_)}; }
  double norm() const { return algebra_->operator_norm(coords_); }

  friend AlgElement operator*(const AlgElement& a, const AlgElement& b);
  friend AlgElement operator+(const AlgElement& a, const AlgElement& b);
  friend AlgElement operator-(const AlgElement& a, const AlgElement& b);
  friend AlgElement operator*(cplx s, const AlgElement& a) { return {a.algebra_, s * a.coords_}; }

 private:
  AlgebraPtr algebra_;
  Vec coords_;
};

double operator_norm(const AlgElement& a);

// Linear map between algebras on linear coordinates (codomain x domain).
struct StarMorphism {
  AlgebraPtr domain;
  AlgebraPtr codomain;
  Mat action;
  bool unital = false;
  bool injective = false;

  Vec apply(const Vec& x) const { return action * x; }
};

struct MorphismResiduals {
  double multiplicative = 0.0;
  double involutive = 0.0;
  double unital = 0.0;
  int rank = 0;
};

MorphismResiduals morphism_residuals(const StarMorphism& m, double rank_tol = 1e-9);

// phi(a) = sum_i functional_i * a_i on linear coordinates.
class State {
 public:
  State() = default;
  // Validates phi(1) = 1 and positivity; throws InvalidState otherwise.
  State(AlgebraPtr algebra, Vec functional, const Tolerances& tol = {});

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  const Vec& functional() const noexcept { return functional_; }
  bool faithful() const noexcept { return faithful_; }

  cplx operator()(const Vec& a) const { return functional_.transpose() * a; }
  // Density matrix of block k: phi(a) = sum_k tr(Q_k a_k).
  Mat density(int k) const;
  // G with phi(x* y) = x^H G y.
  Mat gram() const;

 private:
  AlgebraPtr algebra_;
  Vec functional_;
  bool faithful_ = false;
};

// Orthonormal basis of the quotient of an inner-product space by the kernel
// of its Gram form. Columns of onb are coordinates over the input index set.
struct FHilbert {
  int ambient_dim = 0;
  Mat onb;
  int kernel_dim = 0;

  int dim() const noexcept { return static_cast<int>(onb.cols()); }
};

FHilbert gram_quotient(const Mat& gram, double tau_gram = Tolerances{}.gram);

// Greedy in-order selection: keeps column j of `vectors` when it is not in the
// span of the columns kept so far, measured in the Gram form `gram`.
struct FirstFitBasis {
  std::vector<int> selected;
  Mat onb;  // orthonormal combinations of the input columns
};

FirstFitBasis first_fit_basis(const Mat& vector_gram, double tau = 1e-9);

struct GnsSpace {
  AlgebraPtr algebra;
  Mat gram;
  FHilbert space;

  Mat represent(const Vec& a) const;
  Vec vector_of(const Vec& a) const { return space.onb.adjoint() * gram * a; }
};

GnsSpace gns_space(const AlgebraPtr& algebra, const State& phi, const Tolerances& tol = {});

// phi-orthogonal projection onto a unital *-subalgebra.
struct CondExpectation {
  AlgebraPtr algebra;
  Mat image_onb;   // phi-orthonormal, first column is the unit
  Mat kernel_onb;  // phi-orthonormal basis of ker E
  Mat projection;

  int image_dim() const noexcept { return static_cast<int>(image_onb.cols()); }
  Vec apply(const Vec& a) const { return projection * a; }
  // [image_onb | kernel_onb], a phi-orthonormal basis of the whole algebra.
  Mat adapted_basis() const;
};

CondExpectation conditional_expectation(const AlgebraPtr& algebra, const std::vector<Vec>& image_basis,
                                        const State& phi, const Tolerances& tol = {});

nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j);

}  // namespace hnn
