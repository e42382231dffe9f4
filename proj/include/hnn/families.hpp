#pragma once

// Input families for the HNN construction: function algebras with a
// quotient-group subalgebra, group algebras with a subgroup, and explicit
// structure constants read from JSON.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hnn/britton.hpp"
#include "hnn/qgroup.hpp"

namespace hnn {

struct Family {
  std::string name;
  std::string kind;  // function_algebra_quotient | group_algebra_subgroup | explicit
  std::string description;
  HNNInputPtr input;
  // Present for group-algebra families; drives the Britton oracle.
  std::optional<HNNGroupData> group;
};

// Quotient group G/N with cosets ordered by first occurrence, identity first.
struct QuotientGroup {
  FiniteGroup group;
  std::vector<int> coset_of;  // G index -> coset index
};

QuotientGroup quotient_group(const FiniteGroup& g, const std::vector<int>& normal_subgroup);
FiniteGroup subgroup_as_group(const FiniteGroup& g, const std::vector<int>& subgroup);

// B = C(G/N) inside A = C(G) through N-invariant functions. iota pulls back
// along the quotient map q, theta along alpha o q for an automorphism alpha of
// G/N given on coset indices (identity when empty).
Family function_algebra_quotient(const FiniteGroup& g, const std::vector<int>& normal_subgroup,
                                 const std::vector<int>& alpha = {}, const Tolerances& tol = {});

// A = C*(H), B = C*(S), iota the inclusion and theta the map induced by the
// injective homomorphism in the spec.
Family group_algebra_subgroup(const FiniteGroup& h, const SubgroupSpec& spec, const Tolerances& tol = {});

// {"A": cqg, "B": cqg, "iota": matrix, "theta": matrix}, where a cqg is
// {"blocks": [...], "basis": matrix (optional), "labels": [...] (optional),
//  "comul": [matrix per basis element]}. Matrices are rows of numbers or
// [re, im] pairs; iota and theta act on linear coordinates.
Family explicit_family(const nlohmann::json& j, const Tolerances& tol = {});
nlohmann::json family_to_explicit_json(const Family& f);

std::vector<std::string> builtin_names();
Family make_builtin(const std::string& name, const Tolerances& tol = {});

struct FamilyDescriptor {
  std::string name;
  std::string description;
  int dim_A = 0;
  int dim_B = 0;
  long long fock_dim_L1 = 0;
};

std::vector<FamilyDescriptor> list_builtins();

}  // namespace hnn
