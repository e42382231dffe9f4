#include "hnn/group.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "hnn/error.hpp"

namespace hnn {

FiniteGroup::FiniteGroup(std::vector<std::string> labels, std::vector<std::vector<int>> table, int identity)
    : labels_(std::move(labels)), table_(std::move(table)), identity_(identity) {
  const int n = order();
  if (n == 0) throw Error(ErrorKind::InvalidGroup, "empty group");
  if (static_cast<int>(table_.size()) != n) throw Error(ErrorKind::InvalidGroup, "table has wrong row count");
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size())
    throw Error(ErrorKind::InvalidGroup, "duplicate labels");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::InvalidGroup, "table has wrong column count");
    for (int v : row)
      if (v < 0 || v >= n) throw Error(ErrorKind::InvalidGroup, "table entry out of range");
  }
  if (identity_ < 0 || identity_ >= n) throw Error(ErrorKind::InvalidGroup, "identity out of range");
  for (int a = 0; a < n; ++a)
    if (table_[identity_][a] != a || table_[a][identity_] != a)
      throw Error(ErrorKind::InvalidGroup, "identity axiom fails for " + labels_[a]);
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    if (inverse_[a] < 0) throw Error(ErrorKind::InvalidGroup, "no inverse for " + labels_[a]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw Error(ErrorKind::InvalidGroup, "associativity fails");
}

int FiniteGroup::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error(ErrorKind::InvalidInput, "unknown group label '" + label + "'");
  return static_cast<int>(it - labels_.begin());
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elements) const {
  const std::set<int> s(elements.begin(), elements.end());
  if (!s.count(identity_)) return false;
  for (int a : s) {
    if (!s.count(inverse_[a])) return false;
    for (int b : s)
      if (!s.count(mul(a, b))) return false;
  }
  return true;
}

std::vector<int> FiniteGroup::left_transversal(const std::vector<int>& subgroup) const {
  std::vector<int> reps;
  std::vector<bool> covered(order(), false);
  auto take = [&](int g) {
    reps.push_back(g);
    for (int s : subgroup) covered[mul(g, s)] = true;
  };
  take(identity_);
  for (int g = 0; g < order(); ++g)
    if (!covered[g]) take(g);
  return reps;
}

nlohmann::json FiniteGroup::to_json() const {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& row : table_) {
    nlohmann::json r = nlohmann::json::array();
    for (int v : row) r.push_back(labels_[v]);
    t.push_back(r);
  }
  return {{"name", name_}, {"elements", labels_}, {"table", t}, {"identity", labels_[identity_]}};
}

FiniteGroup group_from_json(const nlohmann::json& j) {
  try {
    auto labels = j.at("elements").get<std::vector<std::string>>();
    const auto identity_label = j.at("identity").get<std::string>();
    auto index = [&](const std::string& l) {
      const auto it = std::find(labels.begin(), labels.end(), l);
      if (it == labels.end()) throw Error(ErrorKind::InvalidGroup, "unknown label '" + l + "' in table");
      return static_cast<int>(it - labels.begin());
    };
    std::vector<std::vector<int>> table;
    for (const auto& row : j.at("table")) {
      std::vector<int> r;
      for (const auto& e : row) r.push_back(index(e.get<std::string>()));
      table.push_back(std::move(r));
    }
    const int id = index(identity_label);
    FiniteGroup g(std::move(labels), std::move(table), id);
    if (j.contains("name")) g.set_name(j.at("name").get<std::string>());
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidGroup, std::string("malformed group JSON: ") + e.what());
  }
}

FiniteGroup trivial_group() {
  FiniteGroup g({"e"}, {{0}}, 0);
  g.set_name("1");
  return g;
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "cyclic group order must be >= 1");
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    labels.push_back(a == 0 ? "e" : (a == 1 ? "g" : "g" + std::to_string(a)));
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  FiniteGroup g(std::move(labels), std::move(table), 0);
  g.set_name("Z" + std::to_string(n));
  return g;
}

FiniteGroup symmetric_group_s3() {
  using Perm = std::array<int, 3>;
  // e, the two 3-cycles, then the transpositions.
  const std::vector<Perm> perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}};
  const std::vector<std::string> labels = {"e", "(123)", "(132)", "(12)", "(13)", "(23)"};
  const int n = 6;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Perm c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];  // (ab)(i) = a(b(i))
      table[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  FiniteGroup g(labels, std::move(table), 0);
  g.set_name("S3");
  return g;
}

SubgroupSpec subgroup_from_json(const nlohmann::json& j, const FiniteGroup& g) {
  SubgroupSpec s;
  try {
    for (const auto& l : j.at("subgroup")) s.subgroup.push_back(g.index_of(l.get<std::string>()));
    if (j.contains("theta"))
      for (const auto& [k, v] : j.at("theta").items()) s.theta[g.index_of(k)] = g.index_of(v.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed subgroup JSON: ") + e.what());
  }
  std::sort(s.subgroup.begin(), s.subgroup.end());
  s.subgroup.erase(std::unique(s.subgroup.begin(), s.subgroup.end()), s.subgroup.end());
  if (!g.is_subgroup(s.subgroup)) throw Error(ErrorKind::InvalidGroup, "listed elements do not form a subgroup");
  return s;
}

nlohmann::json subgroup_to_json(const SubgroupSpec& s, const FiniteGroup& g) {
  nlohmann::json sub = nlohmann::json::array();
  for (int x : s.subgroup) sub.push_back(g.label(x));
  nlohmann::json th = nlohmann::json::object();
  for (const auto& [k, v] : s.theta) th[g.label(k)] = g.label(v);
  return {{"subgroup", sub}, {"theta", th}};
}

}  // namespace hnn
