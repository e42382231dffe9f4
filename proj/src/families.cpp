#include "hnn/families.hpp"

#include <algorithm>

#include "hnn/fock.hpp"

namespace hnn {

QuotientGroup quotient_group(const FiniteGroup& g, const std::vector<int>& normal_subgroup) {
  if (!g.is_subgroup(normal_subgroup)) throw Error(ErrorKind::InvalidGroup, "N is not a subgroup");
  auto in_n = [&](int x) { return std::find(normal_subgroup.begin(), normal_subgroup.end(), x) != normal_subgroup.end(); };
  for (int a = 0; a < g.order(); ++a)
    for (int n : normal_subgroup)
      if (!in_n(g.mul(g.mul(a, n), g.inverse(a)))) throw Error(ErrorKind::InvalidGroup, "N is not normal");
  const std::vector<int> reps = g.left_transversal(normal_subgroup);
  QuotientGroup q{FiniteGroup({"e"}, {{0}}, 0), std::vector<int>(g.order(), -1)};
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (int n : normal_subgroup) q.coset_of[g.mul(reps[c], n)] = static_cast<int>(c);
  const int k = static_cast<int>(reps.size());
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a) {
    labels.push_back("[" + g.label(reps[a]) + "]");
    for (int b = 0; b < k; ++b) table[a][b] = q.coset_of[g.mul(reps[a], reps[b])];
  }
  q.group = FiniteGroup(labels, table, 0);
  q.group.set_name(g.name() + "/N");
  return q;
}

FiniteGroup subgroup_as_group(const FiniteGroup& g, const std::vector<int>& subgroup) {
  if (!g.is_subgroup(subgroup)) throw Error(ErrorKind::InvalidGroup, "not a subgroup");
  const int k = static_cast<int>(subgroup.size());
  auto pos = [&](int x) { return static_cast<int>(std::find(subgroup.begin(), subgroup.end(), x) - subgroup.begin()); };
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a) {
    labels.push_back(g.label(subgroup[a]));
    for (int b = 0; b < k; ++b) table[a][b] = pos(g.mul(subgroup[a], subgroup[b]));
  }
  FiniteGroup s(labels, table, pos(g.identity()));
  s.set_name("S");
  return s;
}

Family function_algebra_quotient(const FiniteGroup& g, const std::vector<int>& normal_subgroup,
                                 const std::vector<int>& alpha, const Tolerances& tol) {
  const QuotientGroup q = quotient_group(g, normal_subgroup);
  const int k = q.group.order();
  std::vector<int> a = alpha;
  if (a.empty())
    for (int i = 0; i < k; ++i) a.push_back(i);
  if (static_cast<int>(a.size()) != k) throw Error(ErrorKind::InvalidInput, "automorphism has the wrong size");

  FiniteCQG A = function_algebra_qg(g, tol);
  FiniteCQG B = function_algebra_qg(q.group, tol);
  Mat iota = Mat::Zero(g.order(), k), theta = Mat::Zero(g.order(), k);
  for (int x = 0; x < g.order(); ++x) {
    iota(x, q.coset_of[x]) = 1.0;
    theta(x, a.at(q.coset_of[x])) = 1.0;
  }
  auto i = validate_embedding(B, A, StarMorphism{B.algebra, A.algebra, iota}, tol);
  auto t = validate_embedding(B, A, StarMorphism{B.algebra, A.algebra, theta}, tol);
  Family f;
  f.kind = "function_algebra_quotient";
  f.name = "C(" + g.name() + ")";
  f.description = "functions on " + g.name() + ", B = functions on the quotient by N";
  f.input = build_hnn_input(std::move(A), std::move(B), std::move(i), std::move(t), tol);
  return f;
}

Family group_algebra_subgroup(const FiniteGroup& h, const SubgroupSpec& spec, const Tolerances& tol) {
  HNNGroupData data = make_hnn_group_data(h, spec);
  const FiniteGroup s = subgroup_as_group(h, data.sigma);
  FiniteCQG A = group_algebra_qg(h, tol);
  FiniteCQG B = group_algebra_qg(s, tol);
  const int k = s.order();
  Mat iota(A.dim(), k), theta(A.dim(), k);
  for (int j = 0; j < k; ++j) {
    iota.col(j) = A.basis.col(data.sigma[j]);
    theta.col(j) = A.basis.col(data.theta_of[data.sigma[j]]);
  }
  // Columns above are the images of lambda_s; convert to linear coordinates of B.
  iota = iota * B.basis_inv;
  theta = theta * B.basis_inv;
  auto i = validate_embedding(B, A, StarMorphism{B.algebra, A.algebra, iota}, tol);
  auto t = validate_embedding(B, A, StarMorphism{B.algebra, A.algebra, theta}, tol);
  Family f;
  f.kind = "group_algebra_subgroup";
  f.name = "C*(" + h.name() + ")";
  f.description = "group algebra of " + h.name() + " with a subgroup S and theta : S -> H";
  f.input = build_hnn_input(std::move(A), std::move(B), std::move(i), std::move(t), tol);
  f.group = std::move(data);
  return f;
}

namespace {

FiniteCQG cqg_from_json(const nlohmann::json& j, const std::string& name, const Tolerances& tol) {
  try {
    auto alg = make_multimatrix(j.at("blocks").get<std::vector<int>>());
    const int n = alg->linear_dim();
    Mat basis = j.contains("basis") ? matrix_from_json(j.at("basis")) : Mat(Mat::Identity(n, n));
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    std::vector<Mat> comul;
    for (const auto& c : j.at("comul")) comul.push_back(matrix_from_json(c));
    return make_cqg(name, alg, basis, labels, comul, tol);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, "malformed quantum group JSON for " + name + ": " + e.what());
  }
}

nlohmann::json cqg_to_json(const FiniteCQG& q) {
  nlohmann::json comul = nlohmann::json::array();
  for (const auto& c : q.comul) comul.push_back(matrix_to_json(c));
  return {{"blocks", q.algebra->block_dims()}, {"basis", matrix_to_json(q.basis)}, {"labels", q.labels}, {"comul", comul}};
}

}  // namespace

Family explicit_family(const nlohmann::json& j, const Tolerances& tol) {
  FiniteCQG A = cqg_from_json(j.at("A"), "A", tol);
  FiniteCQG B = cqg_from_json(j.at("B"), "B", tol);
  const Mat iota = matrix_from_json(j.at("iota"));
  const Mat theta = matrix_from_json(j.at("theta"));
  auto i = validate_embedding(B, A, StarMorphism{B.algebra, A.algebra, iota}, tol);
  auto t = validate_embedding(B, A, StarMorphism{B.algebra, A.algebra, theta}, tol);
  Family f;
  f.kind = "explicit";
  f.name = j.value("name", std::string("explicit"));
  f.description = "explicit structure constants";
  f.input = build_hnn_input(std::move(A), std::move(B), std::move(i), std::move(t), tol);
  return f;
}

nlohmann::json family_to_explicit_json(const Family& f) {
  const auto& in = *f.input;
  return {{"name", f.name},
          {"A", cqg_to_json(in.A)},
          {"B", cqg_to_json(in.B)},
          {"iota", matrix_to_json(in.iota.morphism.action)},
          {"theta", matrix_to_json(in.theta.morphism.action)}};
}

std::vector<std::string> builtin_names() { return {"z2-free", "z4-sigma2", "s3-quotient", "s3-twist", "trivial"}; }

Family make_builtin(const std::string& name, const Tolerances& tol) {
  Family f;
  if (name == "z2-free") {
    const FiniteGroup h = cyclic_group(2);
    f = group_algebra_subgroup(h, SubgroupSpec{{h.identity()}, {}}, tol);
    f.description = "H = Z/2, S trivial: the group algebra of Z/2 * Z";
  } else if (name == "z4-sigma2") {
    const FiniteGroup h = cyclic_group(4);
    f = group_algebra_subgroup(h, SubgroupSpec{{0, 2}, {}}, tol);
    f.description = "H = Z/4, S = {e, g2}, theta the inclusion";
  } else if (name == "s3-quotient") {
    const FiniteGroup g = symmetric_group_s3();
    f = function_algebra_quotient(g, {0, 1, 2}, {}, tol);
    f.description = "functions on S3, B = functions on S3/A3 = Z/2 as A3-invariant functions, iota = theta";
  } else if (name == "s3-twist") {
    const FiniteGroup h = symmetric_group_s3();
    f = group_algebra_subgroup(h, SubgroupSpec{{0, 3}, {{0, 0}, {3, 4}}}, tol);
    f.description = "H = S3, S = {e, (12)}, theta((12)) = (13)";
  } else if (name == "trivial") {
    const FiniteGroup h = trivial_group();
    f = group_algebra_subgroup(h, SubgroupSpec{{0}, {}}, tol);
    f.description = "H = S trivial: the group algebra of Z";
  } else {
    throw Error(ErrorKind::Config, "unknown builtin '" + name + "'");
  }
  f.name = name;
  return f;
}

std::vector<FamilyDescriptor> list_builtins() {
  std::vector<FamilyDescriptor> out;
  for (const auto& n : builtin_names()) {
    const Family f = make_builtin(n);
    out.push_back({n, f.description, f.input->dim_A(), f.input->dim_B(), estimate_fock_dim(*f.input, 1)});
  }
  return out;
}

}  // namespace hnn
