#include "hnn/runner.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include "hnn/britton.hpp"
#include "hnn/fock.hpp"
#include "hnn/jvkk.hpp"
#include "hnn/simd.hpp"
#include "hnn/wordalg.hpp"

namespace hnn {

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s{"construction", "wordalg", "oracle", "haar", "fock", "jv", "homotopy"};
  return s;
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Removes a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

nlohmann::json parse_scalar(const std::string& raw, int line_no) {
  const std::string v = trim(raw);
  auto where = [&] { return " on line " + std::to_string(line_no); };
  if (v.empty()) config_error("missing value" + where());
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') config_error("unterminated string" + where());
    return v.substr(1, v.size() - 2);
  }
  if (v == "true") return true;
  if (v == "false") return false;
  try {
    std::size_t pos = 0;
    if (v.find_first_of(".eE") == std::string::npos) {
      const long long i = std::stoll(v, &pos);
      if (pos == v.size()) return i;
    } else {
      const double d = std::stod(v, &pos);
      if (pos == v.size()) return d;
    }
  } catch (const std::exception&) {
  }
  config_error("cannot parse value '" + v + "'" + where());
}

nlohmann::json parse_value(const std::string& raw, int line_no) {
  const std::string v = trim(raw);
  if (v.empty() || v.front() != '[') return parse_scalar(v, line_no);
  if (v.back() != ']') config_error("unterminated list on line " + std::to_string(line_no));
  nlohmann::json arr = nlohmann::json::array();
  const std::string body = v.substr(1, v.size() - 2);
  std::string item;
  bool quoted = false;
  for (char c : body) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) {
      if (!trim(item).empty()) arr.push_back(parse_scalar(item, line_no));
      item.clear();
    } else {
      item += c;
    }
  }
  if (!trim(item).empty()) arr.push_back(parse_scalar(item, line_no));
  return arr;
}

template <class T>
T get_as(const nlohmann::json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    config_error("key '" + key + "' has the wrong type");
  }
}

std::string resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return p;
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? p : (base / path).string();
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    config_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

bool is_builtin(const std::string& name) {
  const auto names = builtin_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  cfg.base_dir = base_dir;
  std::istringstream is(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[' && line.find('=') == std::string::npos) {
      if (line.back() != ']') config_error("malformed section header on line " + std::to_string(line_no));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) config_error("expected key = value on line " + std::to_string(line_no));
    std::string key = trim(line.substr(0, eq));
    if (!section.empty()) key = section + "." + key;
    const nlohmann::json v = parse_value(line.substr(eq + 1), line_no);
    if (key == "family") cfg.family = get_as<std::string>(v, key);
    else if (key == "group") cfg.group_file = get_as<std::string>(v, key);
    else if (key == "subgroup") cfg.subgroup_file = get_as<std::string>(v, key);
    else if (key == "structure") cfg.structure_file = get_as<std::string>(v, key);
    else if (key == "normal_subgroup") cfg.normal_subgroup = get_as<std::vector<std::string>>(v, key);
    else if (key == "automorphism") cfg.automorphism = get_as<std::vector<std::string>>(v, key);
    else if (key == "L") cfg.L = get_as<int>(v, key);
    else if (key == "seed") cfg.seed = get_as<std::uint64_t>(v, key);
    else if (key == "dim_cap") cfg.dim_cap = get_as<int>(v, key);
    else if (key == "out") cfg.out = get_as<std::string>(v, key);
    else if (key == "suites") cfg.suites = get_as<std::vector<std::string>>(v, key);
    else if (key == "tolerances.alg") cfg.tol.alg = get_as<double>(v, key);
    else if (key == "tolerances.gram") cfg.tol.gram = get_as<double>(v, key);
    else config_error("unknown key '" + key + "' on line " + std::to_string(line_no));
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig cfg = parse_config(ss.str(), path.parent_path());
  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  if (L < 1) config_error("L must be >= 1");
  if (suites.empty()) config_error("at least one suite must be enabled");
  for (const auto& s : suites)
    if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
      config_error("unknown suite '" + s + "'");
  if (!(tol.alg > 0.0) || !(tol.gram > 0.0)) config_error("tolerances must be positive");
  auto need = [&](const std::string& file, const char* key) {
    if (file.empty()) config_error(std::string("family '") + family + "' needs '" + key + "'");
    const std::string p = resolve(base_dir, file);
    if (!std::filesystem::exists(p)) config_error("file not found: '" + p + "'");
  };
  if (is_builtin(family)) return;
  if (family == "group_algebra_subgroup") {
    need(group_file, "group");
    need(subgroup_file, "subgroup");
  } else if (family == "function_algebra_quotient") {
    need(group_file, "group");
    if (normal_subgroup.empty()) config_error("family 'function_algebra_quotient' needs 'normal_subgroup'");
  } else if (family == "explicit") {
    need(structure_file, "structure");
  } else {
    config_error("unknown family '" + family + "'");
  }
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j{{"family", family}, {"L", L}, {"seed", seed}, {"suites", suites},
                   {"tolerances", {{"alg", tol.alg}, {"gram", tol.gram}}}};
  if (dim_cap > 0) j["dim_cap"] = dim_cap;
  if (!group_file.empty()) j["group"] = group_file;
  if (!subgroup_file.empty()) j["subgroup"] = subgroup_file;
  if (!structure_file.empty()) j["structure"] = structure_file;
  if (!normal_subgroup.empty()) j["normal_subgroup"] = normal_subgroup;
  if (!automorphism.empty()) j["automorphism"] = automorphism;
  return j;
}

Family build_family(const RunConfig& cfg) {
  if (is_builtin(cfg.family)) return make_builtin(cfg.family, cfg.tol);
  if (cfg.family == "group_algebra_subgroup") {
    const FiniteGroup h = group_from_json(read_json(resolve(cfg.base_dir, cfg.group_file)));
    const SubgroupSpec spec = subgroup_from_json(read_json(resolve(cfg.base_dir, cfg.subgroup_file)), h);
    Family f = group_algebra_subgroup(h, spec, cfg.tol);
    f.name = "C*(" + h.name() + ")";
    return f;
  }
  if (cfg.family == "function_algebra_quotient") {
    const FiniteGroup g = group_from_json(read_json(resolve(cfg.base_dir, cfg.group_file)));
    std::vector<int> n;
    for (const auto& l : cfg.normal_subgroup) n.push_back(g.index_of(l));
    std::sort(n.begin(), n.end());
    std::vector<int> alpha;
    if (!cfg.automorphism.empty()) {
      const QuotientGroup q = quotient_group(g, n);
      for (const auto& l : cfg.automorphism) alpha.push_back(q.group.index_of(l));
    }
    return function_algebra_quotient(g, n, alpha, cfg.tol);
  }
  if (cfg.family == "explicit") return explicit_family(read_json(resolve(cfg.base_dir, cfg.structure_file)), cfg.tol);
  config_error("unknown family '" + cfg.family + "'");
}

// ---------------------------------------------------------------------------
// Suites

namespace {

std::mt19937_64 suite_rng(std::uint64_t seed, const std::string& suite) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(std::hash<std::string>{}(suite) & 0xffffffffu)};
  return std::mt19937_64(seq);
}

// phi_m((x - y)*(x - y)) relative to the sizes of x and y. The squared form is
// reported because the square root would turn rounding at 1e-16 into 1e-8.
double rel_sq_distance(const SymbolicElement& x, const SymbolicElement& y) {
  return norm2(x - y) / std::max({1.0, norm2(x), norm2(y)});
}

double mat_residual(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CheckReport suite_construction(const Family& f) {
  const HNNInput& in = *f.input;
  const double tau = in.tol.alg;
  CheckReport r("construction");
  for (const FiniteCQG* q : {&in.A, &in.B}) {
    const std::string n = q == &in.A ? "A" : "B";
    const CqgResiduals c = cqg_residuals(*q);
    const int full = q->dim() * q->dim();
    r.add(n + ": coassociativity", c.coassociativity, tau);
    r.add(n + ": Delta multiplicative", c.multiplicative, tau);
    r.add(n + ": Delta involutive", c.involutive, tau);
    r.add(n + ": Delta unital", c.unital, tau);
    r.add(n + ": left density rank deficit", full - c.left_density_rank, 0.0);
    r.add(n + ": right density rank deficit", full - c.right_density_rank, 0.0);
    r.add(n + ": Haar left invariance", c.haar_left, tau);
    r.add(n + ": Haar right invariance", c.haar_right, tau);
    r.add(n + ": counit left identity", c.counit_left, tau);
    r.add(n + ": counit right identity", c.counit_right, tau);
    r.add(n + ": counit multiplicative", c.counit_multiplicative, tau);
  }
  const HnnResiduals h = hnn_residuals(in);
  r.add("iota intertwines comultiplications", in.iota.intertwines ? 0.0 : 1.0, 0.0);
  r.add("theta intertwines comultiplications", in.theta.intertwines ? 0.0 : 1.0, 0.0);
  r.add("E_+ Delta-invariance", h.invariance_plus, tau);
  r.add("E_- Delta-invariance", h.invariance_minus, tau);
  r.add("phi_A o theta = phi_B", h.haar_theta, tau);
  r.add("phi_A o iota = phi_B", h.haar_iota, tau);
  r.add("eps_A o theta = eps_B", h.counit_theta, tau);
  r.add("eps_A o iota = eps_B", h.counit_iota, tau);
  r.add("E_+ restricts to the identity on iota(B)", h.restriction_plus, tau);
  r.add("E_- restricts to the identity on theta(B)", h.restriction_minus, tau);
  for (int s : {1, -1}) {
    const std::string n = s > 0 ? "E_+" : "E_-";
    const Mat& P = in.E(s).projection;
    r.add(n + " idempotent", mat_residual(P * P - P), tau);
    const Mat& ad = in.adapted[sign_index(s)];
    r.add(n + " adapted basis phi_A-orthonormal",
          mat_residual(ad.adjoint() * in.gram_A * ad - Mat::Identity(ad.cols(), ad.cols())), tau);
  }
  return r;
}

CheckReport suite_wordalg(const Family& f, std::uint64_t seed) {
  const HNNInputPtr& in = f.input;
  CheckReport r("wordalg");
  auto rng = suite_rng(seed, "wordalg");
  const int samples = 30;
  const double thr_sq = 1e-14;
  double assoc = 0, star_anti = 0, star_inv = 0, unit = 0, positivity = 0, phi_star = 0, counit = 0;
  const SymbolicElement one = SymbolicElement::unit(in);
  for (int k = 0; k < samples; ++k) {
    const SymbolicElement x = random_symbolic(in, rng, 1), y = random_symbolic(in, rng, 1),
                          z = random_symbolic(in, rng, 1);
    assoc = std::max(assoc, rel_sq_distance((x * y) * z, x * (y * z)));
    star_anti = std::max(star_anti, rel_sq_distance(star(x * y), star(y) * star(x)));
    star_inv = std::max(star_inv, rel_sq_distance(star(star(x)), x));
    unit = std::max({unit, rel_sq_distance(one * x, x), rel_sq_distance(x * one, x)});
    positivity = std::max(positivity, -std::real(in->phi_A(pair_A(x, x))));
    phi_star = std::max(phi_star, std::abs(phi_m(star(x)) - std::conj(phi_m(x))));
    const cplx cxy = counit_m(x * y), cx = counit_m(x), cy = counit_m(y);
    counit = std::max(counit, std::abs(cxy - cx * cy) / std::max(1.0, std::abs(cx * cy)));
  }
  const std::string mask = std::to_string(samples) + " random elements of length <= 1";
  r.add("(xy)z = x(yz), relative phi_m-distance^2", assoc, thr_sq, mask);
  r.add("(xy)* = y* x*, relative phi_m-distance^2", star_anti, thr_sq, mask);
  r.add("x** = x, relative phi_m-distance^2", star_inv, thr_sq, mask);
  r.add("1x = x = x1, relative phi_m-distance^2", unit, thr_sq, mask);
  r.add("phi_m(x* x) >= 0", std::max(0.0, positivity), in->tol.alg, mask);
  r.add("phi_m(x*) = conj(phi_m(x))", phi_star, in->tol.alg, mask);
  r.add("counit multiplicative", counit, in->tol.alg, mask);

  const SymbolicElement u = SymbolicElement::generator(in, 1), ustar = SymbolicElement::generator(in, -1);
  double rel = 0, uni = 0;
  for (int i = 0; i < in->dim_B(); ++i) {
    const Vec b = in->B.basis.col(i);
    const SymbolicElement lhs = u * SymbolicElement::from_a(in, in->iota.morphism.action * b) * ustar;
    rel = std::max(rel, std::sqrt(norm2(lhs - SymbolicElement::from_a(in, in->theta.morphism.action * b))));
  }
  uni = std::max(std::sqrt(norm2(u * ustar - one)), std::sqrt(norm2(ustar * u - one)));
  r.add("u iota(b) u* = theta(b), basis b", rel, in->tol.alg);
  r.add("u u* = 1 = u* u", uni, in->tol.alg);

  std::optional<TruncatedFock> fock;
  try {
    fock = build_truncated_fock(in, 2);
  } catch (const Error& e) {
    r.note(std::string("coassociativity measured by phi_m distance: ") + e.what());
  }
  double coassoc = 0;
  for (int k = 0; k < 10; ++k) {
    const SymbolicElement x = random_symbolic(in, rng, 2, 2), c1 = random_symbolic(in, rng, 1, 1),
                          c2 = random_symbolic(in, rng, 1, 1);
    coassoc = std::max(coassoc, coassociativity_residual(x, c1, c2, fock ? &*fock : nullptr));
  }
  r.add("Delta_m coassociative (sliced by phi_m(c1* .), phi_m(c2* .))", coassoc, 1e-8,
        "10 random elements of length <= 2");
  return r;
}

SymbolicElement symbolic_of(const HNNInputPtr& in, const GroupWord& w) {
  SymbolicElement x = SymbolicElement::from_a(in, in->A.basis.col(w.h0));
  for (const auto& [s, h] : w.tail)
    x = x * SymbolicElement::generator(in, s) * SymbolicElement::from_a(in, in->A.basis.col(h));
  return x;
}

CheckReport suite_oracle(const Family& f, std::uint64_t seed, int words = 1000, int max_len = 6) {
  const HNNInputPtr& in = f.input;
  CheckReport r("oracle");
  const SymbolicElement u = SymbolicElement::generator(in, 1), ustar = SymbolicElement::generator(in, -1);
  double powers = 0.0;
  for (int n = -4; n <= 4; ++n) {
    SymbolicElement x = SymbolicElement::unit(in);
    for (int i = 0; i < std::abs(n); ++i) x = x * (n > 0 ? u : ustar);
    powers = std::max(powers, std::abs(phi_m(x) - (n == 0 ? 1.0 : 0.0)));
  }
  r.add("phi_m(u^n) = delta_{n,0}, |n| <= 4", powers, 1e-12);
  if (!f.group) {
    r.note("no group presentation for this family; the Britton oracle does not apply");
    return r;
  }
  const HNNGroupData& data = *f.group;
  auto rng = suite_rng(seed, "oracle");
  double phi_res = 0.0, ea_res = 0.0;
  int identities = 0, in_base = 0;
  for (int k = 0; k < words; ++k) {
    const GroupWord w = random_group_word(rng, max_len, data);
    const OracleValues ov = oracle_values(w, data);
    const SymbolicElement x = symbolic_of(in, w);
    phi_res = std::max(phi_res, std::abs(phi_m(x) - (ov.is_identity ? 1.0 : 0.0)));
    const Vec expected = ov.in_base ? Vec(in->A.basis.col(normal_form(w, data).h0)) : Vec(Vec::Zero(in->dim_A()));
    ea_res = std::max(ea_res, (expect_A(x) - expected).norm());
    identities += ov.is_identity;
    in_base += ov.in_base;
  }
  const std::string mask = std::to_string(words) + " random words of length <= " + std::to_string(max_len);
  r.add("phi_m(lambda(g)) = [g = e] against Britton normal forms", phi_res, 1e-9, mask);
  r.add("E_A(lambda(g)) = lambda(g) [g in H] against Britton normal forms", ea_res, 1e-9, mask);
  std::ostringstream os;
  os << identities << " words reduce to e, " << in_base << " lie in H";
  r.note(os.str());
  return r;
}

CheckReport suite_haar(const Family& f, int max_len = 2) {
  const HNNInputPtr& in = f.input;
  CheckReport r("haar");
  std::optional<TruncatedFock> fock;
  try {
    fock = build_truncated_fock(in, max_len);
  } catch (const Error& e) {
    r.note(std::string("Haar invariance measured by phi_m distance: ") + e.what());
  }
  auto dist = [&](const SymbolicElement& a, const SymbolicElement& b) {
    return fock ? fock_distance(a, b, *fock) : distance(a, b);
  };
  double left = 0.0, right = 0.0;
  const auto words = basis_words(in, max_len);
  const SymbolicElement one = SymbolicElement::unit(in);
  for (const auto& x : words) {
    const SymbolicTensor d = comultiply(x);
    const SymbolicElement target = phi_m(x) * one;
    right = std::max(right, dist(slice_right(d), target));
    left = std::max(left, dist(slice_left(d), target));
  }
  const std::string mask = std::to_string(words.size()) + " basis words of length <= " + std::to_string(max_len);
  r.add("(id (x) phi_m) Delta_m(x) = phi_m(x) 1", right, 1e-9, mask);
  r.add("(phi_m (x) id) Delta_m(x) = phi_m(x) 1", left, 1e-9, mask);
  return r;
}

CheckReport suite_fock(const Family& f, int L, std::uint64_t seed, int dim_cap, nlohmann::json& summary) {
  const HNNInputPtr& in = f.input;
  const double tau = in->tol.alg;
  CheckReport r("fock");
  const TruncatedFock fk = build_truncated_fock(in, L, dim_cap);
  summary["fock"] = fock_summary_json(fk);
  FockEvaluator ev(fk);
  const FockOperator up = u_epsilon(fk, 1);
  const std::vector<int> mask = up.masked_coordinates(fk);
  const std::string mdesc = describe_mask("Fock words of length <= L-1", mask.size(), fk.total_dim);
  auto masked = [&](const Mat& m) {
    double w = 0.0;
    for (int c : mask) w = std::max(w, m.col(c).cwiseAbs().maxCoeff());
    return w;
  };

  double hom = 0.0, inv = 0.0;
  std::vector<Mat> pa;
  for (int i = 0; i < in->dim_A(); ++i) pa.push_back(ev.pi(in->A.basis.col(i)));
  for (int i = 0; i < in->dim_A(); ++i) {
    inv = std::max(inv, mat_residual(ev.pi(in->adj(in->A.basis.col(i))) - pa[i].adjoint()));
    for (int j = 0; j < in->dim_A(); ++j)
      hom = std::max(hom, mat_residual(pa[i] * pa[j] - ev.pi(in->mul(in->A.basis.col(i), in->A.basis.col(j)))));
  }
  r.add("pi(a) pi(b) = pi(ab), basis a, b", hom, tau);
  r.add("pi(a*) = pi(a)*, basis a", inv, tau);

  const Mat& U = ev.up();
  const Mat& D = ev.down();
  const Mat I = Mat::Identity(fk.total_dim, fk.total_dim);
  r.add("u* = u^-1 as adjoint", mat_residual(D - U.adjoint()), tau);
  r.add("u* u = 1", masked(D * U - I), tau, mdesc);
  r.add("u u* = 1", masked(U * D - I), tau, mdesc);
  double rel = 0.0;
  for (int j = 0; j < in->dim_B(); ++j) {
    const Vec b = in->B.basis.col(j);
    const Mat lhs = U * ev.pi(in->iota.morphism.action * b) * D;
    rel = std::max(rel, masked(lhs - ev.pi(in->theta.morphism.action * b)));
  }
  r.add("u pi(b) u* = pi(theta(b)), basis b", rel, tau, mdesc);

  const Mat Q = vacuum_projection(fk).matrix;
  r.add("Q Omega = Omega", (Q * fk.vacuum - fk.vacuum).norm(), tau);
  r.add("|Omega| = 1", std::abs(fk.vacuum.norm() - 1.0), tau);

  auto rng = suite_rng(seed, "fock");
  const int samples = 200;
  double gns = 0.0, vac = 0.0, state = 0.0;
  for (int k = 0; k < samples; ++k) {
    const SymbolicElement x = random_symbolic(in, rng, L);
    const Vec v = ev.apply_vacuum(x);
    const double expected = norm2(x);
    gns = std::max(gns, std::abs(v.squaredNorm() - expected) / std::max(1.0, expected));
    vac = std::max(vac, (v - vacuum_vector(x, fk)).norm() / std::max(1.0, v.norm()));
    state = std::max(state, std::abs(fk.vacuum.dot(v) - phi_m(x)) / std::max(1.0, std::abs(phi_m(x))));
  }
  const std::string smask = std::to_string(samples) + " random elements of length <= " + std::to_string(L);
  r.add("|x Omega|^2 = phi_m(x* x) (relative)", gns, 1e-8, smask);
  r.add("x Omega from matrices = x Omega from the canonical form", vac, 1e-8, smask);
  r.add("<Omega, x Omega> = phi_m(x)", state, 1e-8, smask);
  std::ostringstream os;
  os << "Fock dimension " << fk.total_dim << " at L = " << L << " (estimate " << estimate_fock_dim(*in, L) << ")";
  r.note(os.str());
  return r;
}

int iso_length(const HNNInput& in) { return in.dim_A() <= 4 ? 3 : 2; }

}  // namespace

ReportDocument run(const RunConfig& cfg) {
  cfg.validate();
  using clock = std::chrono::steady_clock;
  auto seconds = [](clock::time_point t0) { return std::chrono::duration<double>(clock::now() - t0).count(); };
  ReportDocument doc;
  doc.config = cfg.to_json();

  auto t0 = clock::now();
  const Family fam = build_family(cfg);
  doc.timing_seconds["family"] = seconds(t0);
  const HNNInput& in = *fam.input;
  doc.summary = {{"family", fam.name},
                 {"kind", fam.kind},
                 {"description", fam.description},
                 {"dim_A", in.dim_A()},
                 {"dim_B", in.dim_B()},
                 {"blocks_A", in.A.algebra->block_dims()},
                 {"blocks_B", in.B.algebra->block_dims()},
                 {"simd", std::string(simd::active_kernels().name)}};

  auto enabled = [&](const std::string& s) { return std::find(cfg.suites.begin(), cfg.suites.end(), s) != cfg.suites.end(); };
  auto guarded = [&](const std::string& name, auto&& body) {
    if (!enabled(name)) return;
    const auto start = clock::now();
    try {
      doc.suites.push_back(body());
    } catch (const Error& e) {
      CheckReport r(name);
      r.fail(name + " suite completed", e.what());
      doc.suites.push_back(std::move(r));
    }
    doc.timing_seconds[name] = seconds(start);
  };

  // Dependency order: construction, word algebra and oracle, Fock, JV, homotopy.
  guarded("construction", [&] { return suite_construction(fam); });
  guarded("wordalg", [&] { return suite_wordalg(fam, cfg.seed); });
  guarded("oracle", [&] { return suite_oracle(fam, cfg.seed); });
  guarded("haar", [&] { return suite_haar(fam); });
  guarded("fock", [&] { return suite_fock(fam, cfg.L, cfg.seed, cfg.dim_cap, doc.summary); });

  std::optional<JVData> jv;
  std::string jv_error;
  if (enabled("jv") || enabled("homotopy")) {
    const auto start = clock::now();
    try {
      jv = build_jv(fam.input, cfg.L, cfg.dim_cap);
      doc.summary["gns"] = {{"H_dim", jv->H.dim},
                            {"K_dim", jv->K.dim},
                            {"H_sectors", jv->H.sector_dims()},
                            {"K_sectors", jv->K.sector_dims()}};
    } catch (const Error& e) {
      jv_error = e.what();
    }
    doc.timing_seconds["jv-build"] = seconds(start);
  }
  auto need_jv = [&] {
    if (!jv) throw Error(ErrorKind::InvalidState, "Julg-Valette data unavailable: " + jv_error);
    return &*jv;
  };
  guarded("jv", [&] {
    const JVData& d = *need_jv();
    CheckReport r("jv");
    r.merge(verify_gns(d));
    r.merge(verify_commutators(d));
    r.merge(verify_augmented(d));
    r.merge(verify_lemma_iso(fam.input, iso_length(in)));
    return r;
  });
  guarded("homotopy", [&] {
    HomotopyOptions opts;
    opts.seed = cfg.seed;
    opts.word_length = std::max(1, cfg.L / 2);
    return homotopy(*need_jv(), opts).report;
  });
  return doc;
}

}  // namespace hnn
