#pragma once

// Britton normal forms for the HNN group <H, t : t s t^-1 = theta(s), s in S>
// with H finite. Independent oracle for the symbolic engine on group-algebra
// inputs.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hnn/group.hpp"

namespace hnn {

struct HNNGroupData {
  FiniteGroup H;
  std::vector<int> sigma;        // S, as element indices of H
  std::vector<int> theta_sigma;  // theta(S)
  std::vector<int> theta_of;     // H index -> theta(h) for h in S, -1 otherwise
  std::vector<int> theta_inv;    // H index -> theta^-1(h) for h in theta(S), -1 otherwise
  std::vector<int> reps_plus;    // transversal of H/S, identity first
  std::vector<int> reps_minus;   // transversal of H/theta(S), identity first

  bool in_sigma(int h) const { return theta_of[h] >= 0; }
  bool in_theta_sigma(int h) const { return theta_inv[h] >= 0; }
};

// Validates that S is a subgroup and theta an injective homomorphism.
HNNGroupData make_hnn_group_data(FiniteGroup H, const SubgroupSpec& spec);

struct GroupWord {
  int h0 = 0;
  std::vector<std::pair<int, int>> tail;  // (sign of t, letter of H)
  bool normal = false;

  int length() const { return static_cast<int>(tail.size()); }
  friend bool operator==(const GroupWord& a, const GroupWord& b) { return a.h0 == b.h0 && a.tail == b.tail; }
};

GroupWord group_letter(int h);
GroupWord t_power(int sign, const HNNGroupData& data);

GroupWord normal_form(const GroupWord& w, const HNNGroupData& data);
GroupWord multiply(const GroupWord& a, const GroupWord& b, const HNNGroupData& data);
GroupWord inverse(const GroupWord& w, const HNNGroupData& data);

struct OracleValues {
  bool in_base = false;
  bool is_identity = false;
};

OracleValues oracle_values(const GroupWord& w, const HNNGroupData& data);

// Uniform letters and signs, tail length uniform in [0, max_len].
GroupWord random_group_word(std::mt19937_64& rng, int max_len, const HNNGroupData& data);

std::string to_string(const GroupWord& w, const HNNGroupData& data);

}  // namespace hnn
