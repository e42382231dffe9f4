#pragma once

// Finite-dimensional compact quantum groups: comultiplication data, the Haar
// state and counit solvers, embeddings that intertwine comultiplications,
// and the HNN input datum (A, B, iota, theta, E_plus, E_minus).

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "hnn/group.hpp"
#include "hnn/starcore.hpp"

namespace hnn {

// Elements of A (x) A are N x N coefficient matrices over the linear
// coordinates of A: X = sum_pq X(p,q) e_p (x) e_q.
Mat tensor_multiply(const MultiMatrixAlgebra& alg, const Mat& x, const Mat& y);
Mat tensor_adjoint(const MultiMatrixAlgebra& alg, const Mat& x);

struct FiniteCQG {
  std::string name;
  AlgebraPtr algebra;
  std::vector<std::string> labels;  // one per distinguished basis element
  Mat basis;                        // column i = distinguished basis element i
  Mat basis_inv;
  std::vector<Mat> comul;        // comul[i](j,k): Delta(b_i) = sum c b_j (x) b_k
  std::vector<Mat> comul_units;  // Delta(e_p) on linear coordinates
  State haar;
  Vec counit;  // functional on linear coordinates

  int dim() const noexcept { return algebra->linear_dim(); }
  Mat coproduct(const Vec& a) const;
  cplx haar_of(const Vec& a) const { return haar(a); }
  cplx counit_of(const Vec& a) const { return counit.transpose() * a; }
  Vec basis_element(int i) const { return basis.col(i); }
};

struct CqgResiduals {
  double coassociativity = 0.0;
  double multiplicative = 0.0;
  double involutive = 0.0;
  double unital = 0.0;
  int left_density_rank = 0;
  int right_density_rank = 0;
  double haar_left = 0.0;
  double haar_right = 0.0;
  double counit_left = 0.0;
  double counit_right = 0.0;
  double counit_multiplicative = 0.0;
};

// Assembles a CQG from a distinguished basis and structure constants, checks
// the axioms and solves for the Haar state and the counit. Throws NotACqg.
FiniteCQG make_cqg(std::string name, AlgebraPtr algebra, Mat basis, std::vector<std::string> labels,
                   std::vector<Mat> comul, const Tolerances& tol = {});

CqgResiduals cqg_residuals(const FiniteCQG& qg);

State haar_state(const FiniteCQG& qg, const Tolerances& tol = {});
Vec counit(const FiniteCQG& qg, const Tolerances& tol = {});

FiniteCQG function_algebra_qg(const FiniteGroup& g, const Tolerances& tol = {});
FiniteCQG group_algebra_qg(const FiniteGroup& g, const Tolerances& tol = {});

// Block decomposition of a *-closed matrix algebra spanned by basis_mats,
// using a spanning set of its commutant. images[i] are the linear
// coordinates of basis_mats[i] in the resulting multimatrix algebra.
struct WedderburnResult {
  std::vector<int> block_dims;
  std::vector<Vec> images;
};

WedderburnResult wedderburn_decompose(const std::vector<Mat>& basis_mats, const std::vector<Mat>& commutant,
                                      unsigned seed = 7);

struct QGEmbedding {
  StarMorphism morphism;
  bool intertwines = false;
};

QGEmbedding validate_embedding(const FiniteCQG& src, const FiniteCQG& dst, StarMorphism morphism,
                               const Tolerances& tol = {});

inline int sign_index(int sign) { return sign > 0 ? 0 : 1; }

struct HNNInput {
  FiniteCQG A;
  FiniteCQG B;
  QGEmbedding iota;
  QGEmbedding theta;
  CondExpectation E_plus;   // onto iota(B)
  CondExpectation E_minus;  // onto theta(B)
  Tolerances tol;

  Mat gram_A;  // phi_A(x* y) = x^H gram_A y
  // Indexed by sign_index(sign).
  std::array<Mat, 2> adapted;      // [B_sign onb | ker E_sign onb], unit first
  std::array<Mat, 2> theta_sign;   // theta^sign : B_sign -> B_{-sign}, on A coordinates
  std::array<Mat, 2> to_B;         // B_sign (in A) -> B coordinates
  std::array<Mat, 2> from_B;       // B coordinates -> B_sign (in A)

  int dim_A() const { return A.dim(); }
  int dim_B() const { return B.dim(); }
  const CondExpectation& E(int sign) const { return sign > 0 ? E_plus : E_minus; }
  const MultiMatrixAlgebra& alg() const { return *A.algebra; }
  Vec mul(const Vec& x, const Vec& y) const { return A.algebra->multiply(x, y); }
  Vec adj(const Vec& x) const { return A.algebra->adjoint(x); }
  cplx phi_A(const Vec& a) const { return A.haar(a); }
  cplx counit_A(const Vec& a) const { return A.counit_of(a); }
};

using HNNInputPtr = std::shared_ptr<const HNNInput>;

struct HnnResiduals {
  double invariance_plus = 0.0;
  double invariance_minus = 0.0;
  double haar_theta = 0.0;
  double haar_iota = 0.0;
  double counit_theta = 0.0;
  double counit_iota = 0.0;
  double restriction_plus = 0.0;
  double restriction_minus = 0.0;
};

HNNInputPtr build_hnn_input(FiniteCQG A, FiniteCQG B, QGEmbedding iota, QGEmbedding theta,
                            const Tolerances& tol = {});

HnnResiduals hnn_residuals(const HNNInput& in);

}  // namespace hnn
