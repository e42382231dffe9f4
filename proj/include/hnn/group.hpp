#pragma once

// Finite groups given by Cayley tables, the common input of the quantum
// group families and the Britton oracle.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace hnn {

class FiniteGroup {
 public:
  // Validates closure, identity, inverses and associativity; throws
  // InvalidGroup on any failure.
  FiniteGroup(std::vector<std::string> labels, std::vector<std::vector<int>> table, int identity);

  int order() const noexcept { return static_cast<int>(labels_.size()); }
  int identity() const noexcept { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  const std::string& label(int a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  int index_of(const std::string& label) const;

  bool is_subgroup(const std::vector<int>& elements) const;
  // Left cosets gS, one representative each: identity first, then first
  // occurrence in element order.
  std::vector<int> left_transversal(const std::vector<int>& subgroup) const;

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  nlohmann::json to_json() const;

 private:
  std::string name_ = "G";
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> table_;
  int identity_;
  std::vector<int> inverse_;
};

FiniteGroup group_from_json(const nlohmann::json& j);
FiniteGroup trivial_group();
FiniteGroup cyclic_group(int n);
// Permutations of {1,2,3} in cycle notation; the first three are A3.
FiniteGroup symmetric_group_s3();

// Subgroup/morphism file: {"subgroup": [labels], "theta": {label: label}}.
struct SubgroupSpec {
  std::vector<int> subgroup;
  std::map<int, int> theta;
};

SubgroupSpec subgroup_from_json(const nlohmann::json& j, const FiniteGroup& g);
nlohmann::json subgroup_to_json(const SubgroupSpec& s, const FiniteGroup& g);

}  // namespace hnn
