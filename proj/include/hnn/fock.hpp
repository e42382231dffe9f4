#pragma once

// The Hilbert-module Fock space of the reduced HNN extension, scalarified
// through phi_B and truncated at word length L, with pi(a), u^eps and the
// vacuum-sector projection Q as dense matrices.
//
// Summand k is indexed by a sign word (eps_1..eps_n); the empty word is the
// vacuum sector H_1. Simple tensors k_{p_0} (x) ... (x) k_{p_n} are indexed
// with leg 0 varying fastest.

#include <map>
#include <string>
#include <vector>

#include "hnn/qgroup.hpp"

namespace hnn {

using SignWord = std::vector<int>;

enum class LegKind { Vacuum, Full, Reduced };

struct LegSpace {
  LegKind kind = LegKind::Full;
  int sign = 1;  // FULL(sign) = H_sign, REDUCED(sign) = H_sign^o
  Mat basis;     // phi_A-orthonormal columns, A coordinates
  int module_sign = 1;  // the B-valued form is pulled back from E_{module_sign}

  int dim() const { return static_cast<int>(basis.cols()); }
};

// FULL(eps) leg and its REDUCED(eps) sub-leg.
std::pair<LegSpace, LegSpace> gns_leg(const HNNInput& in, int sign);

std::vector<LegSpace> legs_for(const HNNInput& in, const SignWord& signs);

struct TensorSummand {
  SignWord signs;
  std::vector<LegSpace> legs;
  std::vector<int> leg_dims;
  int index_count = 0;
  Mat gram;  // over simple tensors
  FHilbert space;
  int offset = 0;

  int length() const { return static_cast<int>(signs.size()); }
  int dim() const { return space.dim(); }
};

// Scalar Gram of simple tensors by nested B-valued contraction.
Mat internal_tensor_gram(const HNNInput& in, const SignWord& signs, const std::vector<LegSpace>& legs);
TensorSummand internal_tensor(const HNNInput& in, const SignWord& signs, const Tolerances& tol = {});

int default_dim_cap();

struct TruncatedFock {
  HNNInputPtr input;
  int L = 1;
  std::vector<TensorSummand> summands;  // summands[0] is the vacuum sector
  std::map<SignWord, int> index;
  int total_dim = 0;
  Vec vacuum;

  const TensorSummand& summand(const SignWord& s) const { return summands.at(index.at(s)); }
  // Coordinates of x_0 (x) ... (x) x_n (legs given in A coordinates).
  Vec simple_tensor(const SignWord& signs, const std::vector<Vec>& letters) const;
  // The same vector split in two steps: coefficients over the simple-tensor
  // index set of the summand, then their image in the summand's coordinates.
  // Sums of simple tensors only need one projection per summand.
  Vec tensor_coefficients(const SignWord& signs, const std::vector<Vec>& letters) const;
  Vec project_coefficients(const SignWord& signs, const Vec& c) const;
  // Coordinate mask of summands with length <= max_len.
  std::vector<int> coordinates_up_to(int max_len) const;
};

// Estimated dimension, used for the cap check before any Gram is built.
long long estimate_fock_dim(const HNNInput& in, int L);

TruncatedFock build_truncated_fock(const HNNInputPtr& in, int L, int dim_cap = -1);

struct FockOperator {
  Mat matrix;
  std::vector<bool> domain_mask;  // per summand: truncation exact there

  std::vector<int> masked_coordinates(const TruncatedFock& f) const;
};

FockOperator pi_action(const TruncatedFock& f, const Vec& a);
FockOperator u_epsilon(const TruncatedFock& f, int sign);
FockOperator vacuum_projection(const TruncatedFock& f);

nlohmann::json fock_summary_json(const TruncatedFock& f);

}  // namespace hnn
