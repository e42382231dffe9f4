#include "hnn/jvkk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace hnn {

std::string to_string(Sector s) {
  switch (s) {
    case Sector::H0: return "H0";
    case Sector::HMinus: return "H-1";
    case Sector::HPlus: return "H+1";
    case Sector::KMinus: return "K-1";
    case Sector::KPlus: return "K+1";
  }
  return "?";
}

std::string describe_mask(const std::string& what, std::size_t kept, std::size_t total) {
  std::ostringstream os;
  os << what << " (" << kept << " of " << total << ")";
  return os.str();
}

namespace {

struct Candidate {
  SymbolicElement element;
  GenWord general;
  int x0_index;
};

using GroupKey = std::tuple<SignWord, int, Sector>;

Sector sector_for(GnsSide side, const WordKey& key, int dim_b) {
  if (key.signs.empty()) return side == GnsSide::H ? Sector::H0 : Sector::KMinus;
  const int last = key.signs.back();
  if (side == GnsSide::H) return last > 0 ? Sector::HPlus : Sector::HMinus;
  if (last < 0) return Sector::KMinus;
  // Trailing letters are the unit or lie in ker E_B.
  return key.letters.back() < dim_b ? Sector::KPlus : Sector::KMinus;
}

int grade_for(Sector s, int length) { return s == Sector::KMinus ? length + 1 : length; }

GenWord general_of(const SymbolicElement& e) {
  if (e.words().empty()) return GenWord{e.a_part(), {}, {}};
  return e.general(e.words().begin()->first);
}

WordKey key_of(const SymbolicElement& e) {
  if (e.words().empty()) return WordKey{};
  return e.words().begin()->first;
}

Mat select_columns(const Mat& m, const std::vector<int>& cols) {
  Mat out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(cols[j]);
  return out;
}

Mat select_block(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Mat out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
  return out;
}

double masked_norm(const Mat& m, const std::vector<int>& cols) {
  double r = 0.0;
  for (int c : cols) r = std::max(r, m.col(c).norm());
  return r;
}

double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

Mat block_diag(const Mat& m, cplx corner) {
  Mat out = Mat::Zero(m.rows() + 1, m.cols() + 1);
  out.topLeftCorner(m.rows(), m.cols()) = m;
  out(m.rows(), m.cols()) = corner;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Truncated GNS spaces

cplx GNSTrunc::state(const Vec& a) const {
  return side == GnsSide::H ? input->counit_A(a) : input->counit_A(input->E_plus.apply(a));
}

Vec GNSTrunc::coordinates(const SymbolicElement& x) const {
  const HNNInput& in = *input;
  Vec out = Vec::Zero(dim);
  std::vector<Vec> ip(groups.size());
  auto accumulate = [&](const GenWord& t) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const GnsGroup& grp = groups[g];
      if (grp.signs != t.signs) continue;
      if (ip[g].size() == 0) ip[g] = Vec::Zero(static_cast<Eigen::Index>(grp.general.size()));
      for (std::size_t i = 0; i < grp.general.size(); ++i)
        ip[g](static_cast<Eigen::Index>(i)) += state(pair_general(in, grp.general[i], t));
    }
  };
  if (x.a_part().norm() > 0.0) accumulate(GenWord{x.a_part(), {}, {}});
  for (const auto& [key, x0] : x.words()) accumulate(x.general(key));
  for (std::size_t g = 0; g < groups.size(); ++g)
    if (ip[g].size() > 0) out.segment(groups[g].offset, groups[g].dim()) = groups[g].onb.adjoint() * ip[g];
  return out;
}

Mat GNSTrunc::action(const SymbolicElement& x) const {
  Mat m = Mat::Zero(dim, dim);
  for (const auto& grp : groups) {
    Mat images(dim, static_cast<Eigen::Index>(grp.words.size()));
    for (std::size_t i = 0; i < grp.words.size(); ++i)
      images.col(static_cast<Eigen::Index>(i)) = coordinates(x * grp.words[i]);
    m.middleCols(grp.offset, grp.dim()) = images * grp.onb;
  }
  return m;
}

std::vector<int> GNSTrunc::indices(Sector s) const {
  std::vector<int> out;
  for (int i = 0; i < dim; ++i)
    if (sector_of[i] == s) out.push_back(i);
  return out;
}

std::vector<int> GNSTrunc::interior(int budget) const {
  std::vector<int> out;
  for (int i = 0; i < dim; ++i)
    if (grade_of[i] <= L - budget) out.push_back(i);
  return out;
}

std::vector<SymbolicElement> GNSTrunc::basis_words() const {
  std::vector<SymbolicElement> out;
  for (const auto& g : groups) out.insert(out.end(), g.words.begin(), g.words.end());
  return out;
}

double GNSTrunc::sector_orthogonality() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < groups.size(); ++a)
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      if (groups[a].signs != groups[b].signs) continue;
      for (const auto& x : groups[a].general)
        for (const auto& y : groups[b].general) worst = std::max(worst, std::abs(state(pair_general(*input, x, y))));
    }
  return worst;
}

std::vector<int> GNSTrunc::sector_dims() const {
  const std::vector<Sector> order = side == GnsSide::H ? std::vector<Sector>{Sector::H0, Sector::HMinus, Sector::HPlus}
                                                        : std::vector<Sector>{Sector::KMinus, Sector::KPlus};
  std::vector<int> out;
  for (Sector s : order) out.push_back(static_cast<int>(indices(s).size()));
  return out;
}

GNSTrunc build_gns_trunc(const HNNInputPtr& in, GnsSide side, int L, int dim_cap) {
  if (L < 1) throw Error(ErrorKind::InvalidInput, "truncation length must be >= 1");
  const int cap = dim_cap > 0 ? dim_cap : default_dim_cap();
  const int na = in->dim_A(), nb = in->dim_B();
  GNSTrunc g;
  g.side = side;
  g.L = L;
  g.input = in;

  auto finalize = [&](std::map<GroupKey, std::vector<Candidate>>& pending, int length) {
    std::vector<GnsGroup> made;
    for (auto& [key, cands] : pending) {
      const auto& [signs, kind, sector] = key;
      const int m = static_cast<int>(cands.size());
      Mat gram(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          gram(i, j) = g.state(pair_general(*in, cands[i].general, cands[j].general));
          gram(j, i) = std::conj(gram(i, j));
        }
      const FirstFitBasis ff = first_fit_basis(gram, in->tol.gram);
      if (ff.selected.empty()) continue;
      GnsGroup grp;
      grp.signs = signs;
      grp.x0_kind = kind;
      grp.sector = sector;
      grp.grade = grade_for(sector, length);
      grp.onb = Mat(static_cast<Eigen::Index>(ff.selected.size()), ff.onb.cols());
      for (std::size_t r = 0; r < ff.selected.size(); ++r) {
        const Candidate& c = cands[ff.selected[r]];
        grp.words.push_back(c.element);
        grp.general.push_back(c.general);
        grp.x0_index.push_back(c.x0_index);
        grp.onb.row(static_cast<Eigen::Index>(r)) = ff.onb.row(ff.selected[r]);
      }
      made.push_back(std::move(grp));
    }
    return made;
  };

  auto add_candidate = [&](std::map<GroupKey, std::vector<Candidate>>& pending, SymbolicElement e, int x0_index,
                           int kind) {
    const WordKey key = key_of(e);
    const Sector sector = sector_for(side, key, nb);
    if (grade_for(sector, key.length()) > L) return;
    if (++g.candidate_words > cap) {
      std::ostringstream os;
      os << "GNS spanning set exceeds the cap " << cap;
      throw Error(ErrorKind::SizeLimit, os.str());
    }
    GenWord gw = general_of(e);
    pending[{key.signs, kind, sector}].push_back({std::move(e), std::move(gw), x0_index});
  };

  const Mat& ad_plus = in->adapted[sign_index(1)];
  std::map<GroupKey, std::vector<Candidate>> level0;
  if (side == GnsSide::H) {
    add_candidate(level0, SymbolicElement::unit(in), 0, 0);
  } else {
    add_candidate(level0, SymbolicElement::from_a(in, ad_plus.col(0)), 0, 0);
    for (int q = nb; q < na; ++q) add_candidate(level0, SymbolicElement::from_a(in, ad_plus.col(q)), q, 1);
  }
  std::vector<GnsGroup> prev = finalize(level0, 0);
  std::vector<GnsGroup> all = prev;

  for (int n = 1; n <= L; ++n) {
    std::map<GroupKey, std::vector<Candidate>> pending;
    for (int eps : {1, -1}) {
      const Mat& ad = in->adapted[sign_index(-eps)];
      for (const auto& y : prev) {
        const bool change = !y.signs.empty() && y.signs.front() != eps;
        if (change && y.x0_kind == 0) continue;
        for (std::size_t j = 0; j < y.words.size(); ++j) {
          const WordKey tail = key_of(y.words[j]);
          WordKey key;
          key.signs.push_back(eps);
          key.signs.insert(key.signs.end(), tail.signs.begin(), tail.signs.end());
          key.letters.push_back(y.x0_index[j]);
          key.letters.insert(key.letters.end(), tail.letters.begin(), tail.letters.end());
          for (int p = 0; p < na; ++p)
            add_candidate(pending, SymbolicElement::basis_word(in, ad.col(p), key), p, p >= nb ? 1 : 0);
        }
      }
    }
    prev = finalize(pending, n);
    all.insert(all.end(), prev.begin(), prev.end());
  }

  for (auto& grp : all) {
    grp.offset = g.dim;
    g.dim += grp.dim();
    for (int i = 0; i < grp.dim(); ++i) {
      g.sector_of.push_back(grp.sector);
      g.grade_of.push_back(grp.grade);
    }
  }
  g.groups = std::move(all);
  g.cyclic = g.coordinates(SymbolicElement::unit(in));
  return g;
}

// ---------------------------------------------------------------------------
// Julg-Valette data

Mat JVData::pi(const Vec& a) const {
  Mat m = Mat::Zero(H.dim, H.dim);
  for (std::size_t p = 0; p < pi_lin.size(); ++p) m += a(static_cast<Eigen::Index>(p)) * pi_lin[p];
  return m;
}

Mat JVData::rho(const Vec& a) const {
  Mat m = Mat::Zero(K.dim, K.dim);
  for (std::size_t p = 0; p < rho_lin.size(); ++p) m += a(static_cast<Eigen::Index>(p)) * rho_lin[p];
  return m;
}

Mat JVData::rho_aug(const Vec& a) const {
  Mat m = Mat::Zero(K.dim + 1, K.dim + 1);
  for (std::size_t p = 0; p < rho_aug_lin.size(); ++p) m += a(static_cast<Eigen::Index>(p)) * rho_aug_lin[p];
  return m;
}

std::vector<int> JVData::h_interior(int budget) const { return H.interior(budget); }

std::vector<int> JVData::k_aug_interior(int budget) const {
  std::vector<int> out = K.interior(budget);
  out.push_back(omega);
  return out;
}

JVData build_jv(GNSTrunc H, GNSTrunc K) {
  if (H.L != K.L) throw Error(ErrorKind::InvalidInput, "GNS spaces are truncated at different lengths");
  if (H.side != GnsSide::H || K.side != GnsSide::K) throw Error(ErrorKind::InvalidInput, "GNS spaces given in the wrong order");
  const HNNInputPtr in = H.input;
  const double tau = in->tol.gram;
  JVData jv;
  jv.H = std::move(H);
  jv.K = std::move(K);
  const GNSTrunc& h = jv.H;
  const GNSTrunc& k = jv.K;
  const SymbolicElement u = SymbolicElement::generator(in, 1);
  const SymbolicElement ustar = SymbolicElement::generator(in, -1);

  jv.script_F = Mat::Zero(k.dim, h.dim);
  for (const auto& grp : h.groups) {
    if (grp.signs.empty()) continue;
    Mat images(k.dim, static_cast<Eigen::Index>(grp.words.size()));
    for (std::size_t i = 0; i < grp.words.size(); ++i) {
      const SymbolicElement& w = grp.words[i];
      images.col(static_cast<Eigen::Index>(i)) = k.coordinates(grp.signs.back() < 0 ? w * u : w);
    }
    jv.script_F.middleCols(grp.offset, grp.dim()) = images * grp.onb;
  }

  const std::vector<int> hm = h.indices(Sector::HMinus), hp = h.indices(Sector::HPlus);
  const std::vector<int> km = k.indices(Sector::KMinus), kp = k.indices(Sector::KPlus);
  jv.F_minus = select_block(jv.script_F, km, hm);
  jv.F_plus = select_block(jv.script_F, kp, hp);
  std::vector<int> non_xi = hm;
  non_xi.insert(non_xi.end(), hp.begin(), hp.end());
  std::sort(non_xi.begin(), non_xi.end());
  jv.F = select_columns(jv.script_F, non_xi);

  const auto nf = static_cast<Eigen::Index>(non_xi.size());
  const double iso = (jv.F.adjoint() * jv.F - Mat::Identity(nf, nf)).norm();
  const double onto = (jv.F * jv.F.adjoint() - Mat::Identity(k.dim, k.dim)).norm();
  if (iso > tau || onto > tau) {
    std::ostringstream os;
    os << "F is not unitary: |F*F - 1| = " << iso << ", |FF* - 1| = " << onto;
    throw Error(ErrorKind::LemmaViolation, os.str());
  }

  jv.p = h.cyclic * h.cyclic.adjoint();
  jv.omega = k.dim;
  jv.eta_aug = Vec::Zero(k.dim + 1);
  jv.eta_aug.head(k.dim) = k.cyclic;
  jv.omega_vec = Vec::Unit(k.dim + 1, jv.omega);
  jv.F_aug = Mat::Zero(k.dim + 1, h.dim);
  jv.F_aug.topRows(k.dim) = jv.script_F;
  jv.F_aug += jv.omega_vec * h.cyclic.adjoint();
  jv.v = Mat::Identity(k.dim + 1, k.dim + 1) - jv.eta_aug * jv.eta_aug.adjoint() -
         jv.omega_vec * jv.omega_vec.adjoint() + jv.eta_aug * jv.omega_vec.adjoint() +
         jv.omega_vec * jv.eta_aug.adjoint();

  const int na = in->dim_A();
  for (int p = 0; p < na; ++p) {
    const SymbolicElement e = SymbolicElement::from_a(in, Vec::Unit(na, p));
    jv.pi_lin.push_back(h.action(e));
    jv.rho_lin.push_back(k.action(e));
    jv.rho_aug_lin.push_back(block_diag(jv.rho_lin.back(), in->counit_A(Vec::Unit(na, p))));
  }
  jv.pi_u = h.action(u);
  jv.pi_ustar = h.action(ustar);
  jv.rho_u = k.action(u);
  jv.rho_ustar = k.action(ustar);
  jv.rho_aug_w = block_diag(jv.rho_u, 1.0);
  jv.h_grade = h.grade_of;
  jv.k_aug_grade = k.grade_of;
  jv.k_aug_grade.push_back(0);
  return jv;
}

JVData build_jv(const HNNInputPtr& in, int L, int dim_cap) {
  return build_jv(build_gns_trunc(in, GnsSide::H, L, dim_cap), build_gns_trunc(in, GnsSide::K, L, dim_cap));
}

// ---------------------------------------------------------------------------
// Checks

RankOneProfile rank_one_profile(const Mat& m) {
  RankOneProfile r;
  if (m.size() == 0) return r;
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  r.top = sv(0);
  r.second = sv.size() > 1 ? sv(1) : 0.0;
  r.top_left = svd.matrixU().col(0);
  return r;
}

CheckReport verify_gns(const JVData& jv) {
  const HNNInput& in = *jv.H.input;
  const double tau = in.tol.gram;
  CheckReport rep("gns");
  rep.add("H sectors pairwise orthogonal", jv.H.sector_orthogonality(), tau);
  rep.add("K sectors pairwise orthogonal", jv.K.sector_orthogonality(), tau);
  double r_pi = 0.0, r_rho = 0.0;
  for (int i = 0; i < in.dim_A(); ++i) {
    const Vec a = in.A.basis.col(i);
    r_pi = std::max(r_pi, (jv.pi(a) * jv.H.cyclic - in.counit_A(a) * jv.H.cyclic).norm());
  }
  for (int i = 0; i < in.dim_B(); ++i) {
    const Vec b = in.iota.morphism.action * in.B.basis.col(i);
    r_rho = std::max(r_rho, (jv.rho(b) * jv.K.cyclic - in.counit_A(b) * jv.K.cyclic).norm());
  }
  rep.add("pi(a) xi = eps(a) xi, basis a", r_pi, tau);
  rep.add("rho(b) eta = eps(b) eta, basis b", r_rho, tau);
  rep.add("H0 = C xi", std::abs(static_cast<double>(jv.H.indices(Sector::H0).size()) - 1.0), 0.0);
  rep.add("|xi| = 1", std::abs(jv.H.cyclic.norm() - 1.0), tau);
  rep.add("|eta| = 1", std::abs(jv.K.cyclic.norm() - 1.0), tau);
  const auto hm = jv.H.indices(Sector::HMinus), hp = jv.H.indices(Sector::HPlus);
  const auto km = jv.K.indices(Sector::KMinus), kp = jv.K.indices(Sector::KPlus);
  const double cross = std::max(select_block(jv.script_F, kp, hm).norm(), select_block(jv.script_F, km, hp).norm());
  rep.add("F preserves sectors (cross blocks)", cross, tau);
  std::ostringstream dims;
  const auto hd = jv.H.sector_dims(), kd = jv.K.sector_dims();
  dims << "sector dims H0/H-1/H+1 = " << hd[0] << "/" << hd[1] << "/" << hd[2] << ", K-1/K+1 = " << kd[0] << "/"
       << kd[1] << " at L = " << jv.H.L;
  rep.note(dims.str());
  return rep;
}

CheckReport verify_commutators(const JVData& jv, int budget) {
  const HNNInput& in = *jv.H.input;
  const double tau = in.tol.gram;
  CheckReport rep("jv");
  const Mat& sF = jv.script_F;
  const int hd = jv.H.dim, kd = jv.K.dim;

  rep.add("F_-1 unitary", (jv.F_minus.adjoint() * jv.F_minus - Mat::Identity(jv.F_minus.cols(), jv.F_minus.cols())).norm() +
                              (jv.F_minus * jv.F_minus.adjoint() - Mat::Identity(jv.F_minus.rows(), jv.F_minus.rows())).norm(),
          tau);
  rep.add("F_+1 unitary", (jv.F_plus.adjoint() * jv.F_plus - Mat::Identity(jv.F_plus.cols(), jv.F_plus.cols())).norm() +
                              (jv.F_plus * jv.F_plus.adjoint() - Mat::Identity(jv.F_plus.rows(), jv.F_plus.rows())).norm(),
          tau);
  rep.add("script_F script_F* = 1", (sF * sF.adjoint() - Mat::Identity(kd, kd)).norm(), tau);
  rep.add("script_F* script_F = 1 - p", (sF.adjoint() * sF - (Mat::Identity(hd, hd) - jv.p)).norm(), tau);

  const Vec& xi = jv.H.cyclic;
  const Vec& eta = jv.K.cyclic;
  rep.add("F(pi(u*) xi) = eta", (sF * jv.pi_ustar * xi - eta).norm(), tau);
  rep.add("F(pi(u) xi) = rho(u) eta", (sF * jv.pi_u * xi - jv.rho_u * eta).norm(), tau);

  const std::vector<int> cols = jv.h_interior(budget);
  const std::string mask = describe_mask("H grade <= L-" + std::to_string(budget), cols.size(), hd);
  const std::string mask0 = describe_mask("H, grade preserving", hd, hd);

  double ra = 0.0;
  for (int i = 0; i < in.dim_A(); ++i) {
    const Vec a = in.A.basis.col(i);
    ra = std::max(ra, (sF * jv.pi(a) - jv.rho(a) * sF).norm());
  }
  rep.add("[F, pi(a)] = 0, basis a", ra, in.tol.alg, mask0);

  struct Case {
    const char* name;
    const Mat& pi_g;
    const Mat& rho_g;
    Vec image;
  };
  const Case cases[] = {{"F pi(u) - rho(u) F", jv.pi_u, jv.rho_u, jv.rho_u * eta},
                        {"F pi(u*) - rho(u*) F", jv.pi_ustar, jv.rho_ustar, eta}};
  for (const auto& c : cases) {
    const Mat left = select_columns(sF * c.pi_g, cols);
    const Mat right = select_columns(c.rho_g * sF, cols);
    const double scale = std::max({1.0, op_norm(left), op_norm(right)});
    const RankOneProfile prof = rank_one_profile(left - right);
    const std::string n = c.name;
    rep.add(n + ": top singular value >= 1e-6 scale (ratio)", prof.top > 0.0 ? 1e-6 * scale / prof.top : INFINITY, 1.0,
            mask);
    rep.add(n + ": other singular values / scale", prof.second / scale, 1e-8, mask);
    double perp = 1.0;
    if (prof.top_left.size() > 0 && c.image.norm() > 0.0) {
      const Vec t = c.image / c.image.norm();
      perp = (t - prof.top_left * prof.top_left.dot(t)).norm();
    }
    rep.add(n + ": image parallel to " + std::string(&c == &cases[0] ? "rho(u) eta" : "eta"), perp, tau, mask);
  }

  const Mat Tu = sF * jv.pi_u - jv.rho_u * sF;
  rep.add("(F pi(u) - rho(u) F) xi = rho(u) eta", (Tu * xi - jv.rho_u * eta).norm(), tau);
  if (jv.H.L >= 2) {
    rep.add("(F pi(u) - rho(u) F) pi(u*) xi = -rho(u) eta", (Tu * (jv.pi_ustar * xi) + jv.rho_u * eta).norm(), tau);
  } else {
    rep.note("L = 1: the value of the u-commutator on pi(u*) xi is outside the exact range and is not checked");
  }
  return rep;
}

CheckReport verify_augmented(const JVData& jv, int budget) {
  const HNNInput& in = *jv.H.input;
  const double tau = in.tol.gram;
  CheckReport rep("jv-augmented");
  const Mat& Ft = jv.F_aug;
  const int hd = jv.H.dim, kd = jv.K.dim + 1;
  rep.add("F~ unitary", (Ft.adjoint() * Ft - Mat::Identity(hd, hd)).norm() + (Ft * Ft.adjoint() - Mat::Identity(kd, kd)).norm(),
          tau);
  rep.add("F~ xi = Omega", (Ft * jv.H.cyclic - jv.omega_vec).norm(), tau);
  rep.add("v unitary", (jv.v.adjoint() * jv.v - Mat::Identity(kd, kd)).norm(), tau);
  rep.add("v eta = Omega", (jv.v * jv.eta_aug - jv.omega_vec).norm(), tau);
  rep.add("v Omega = eta", (jv.v * jv.omega_vec - jv.eta_aug).norm(), tau);

  const std::vector<int> cols = jv.k_aug_interior(budget);
  const std::string mask = describe_mask("K~ grade <= L-" + std::to_string(budget), cols.size(), kd);

  double r1 = 0.0, rOmega = 0.0;
  for (int i = 0; i < in.dim_A(); ++i) {
    const Vec a = in.A.basis.col(i);
    const Mat lhs = Ft * jv.pi(a) * Ft.adjoint();
    r1 = std::max(r1, masked_norm(lhs - jv.rho_aug(a), cols));
    rOmega = std::max(rOmega, (lhs * jv.omega_vec - in.counit_A(a) * jv.omega_vec).norm());
  }
  rep.add("F~ pi(a) F~* = rho~(a), basis a", r1, tau, mask);
  rep.add("F~ pi(a) F~* Omega = eps(a) Omega", rOmega, tau);

  const Mat Fw = Ft * jv.pi_u * Ft.adjoint();
  rep.add("F~ pi(w) F~* = rho~(w) v", masked_norm(Fw - jv.rho_aug_w * jv.v, cols), tau, mask);
  rep.add("F~ pi(w) F~* eta = Omega", (Fw * jv.eta_aug - jv.omega_vec).norm(), tau);

  double r3 = 0.0;
  for (int i = 0; i < in.dim_B(); ++i) {
    const Mat rb = jv.rho_aug(in.iota.morphism.action * in.B.basis.col(i));
    r3 = std::max(r3, (jv.v * rb * jv.v.adjoint() - rb).norm());
  }
  rep.add("v rho~(b) v* = rho~(b), basis b", r3, tau);
  return rep;
}

// ---------------------------------------------------------------------------
// Homotopy

namespace {

Mat power_of(const Mat& w, int sign) { return sign > 0 ? w : Mat(w.adjoint()); }

// rho_1 on a symbolic element: products of the generator images.
Mat rho_one(const JVData& jv, const SymbolicElement& x, const Mat& w1) {
  Mat out = jv.rho_aug(x.a_part());
  for (const auto& [key, x0] : x.words()) {
    const GenWord g = x.general(key);
    Mat term = jv.rho_aug(g.x0);
    for (int i = 0; i < g.length(); ++i) term = term * power_of(w1, g.signs[i]) * jv.rho_aug(g.letters[i]);
    out += term;
  }
  return out;
}

}  // namespace

HomotopyResult homotopy(const JVData& jv, const HomotopyOptions& opts) {
  const HNNInput& in = *jv.H.input;
  const double tau = in.tol.gram;
  HomotopyResult res;
  res.report = CheckReport("homotopy");
  CheckReport& rep = res.report;
  const int kd = jv.K.dim + 1;
  const Mat I = Mat::Identity(kd, kd);

  Eigen::ComplexSchur<Mat> schur(jv.v);
  const Mat& U = schur.matrixU();
  const Mat& T = schur.matrixT();
  Mat offdiag = T;
  offdiag.diagonal().setZero();
  rep.add("v is normal (Schur form diagonal)", offdiag.norm(), tau);
  Eigen::VectorXd angles(kd);
  for (int i = 0; i < kd; ++i) {
    const cplx lambda = T(i, i);
    if (std::abs(lambda + 1.0) <= 1e-12) {
      angles(i) = std::numbers::pi;
      res.path.branch_point = true;
    } else {
      angles(i) = std::arg(lambda);
    }
  }
  if (res.path.branch_point)
    rep.note("v has eigenvalue -1 (the vector eta - Omega); the logarithm takes the angle +pi there");
  const Mat a_raw = U * angles.cast<cplx>().asDiagonal() * U.adjoint();
  rep.add("generator a self-adjoint", (a_raw - a_raw.adjoint()).norm(), tau);
  res.path.generator_a = 0.5 * (a_raw + a_raw.adjoint());
  rep.add("spectrum of a within [-pi, pi]", std::max(0.0, angles.cwiseAbs().maxCoeff() - std::numbers::pi), 1e-12);

  auto v_at = [&](double s) {
    Eigen::VectorXcd d(kd);
    for (int i = 0; i < kd; ++i) d(i) = std::exp(cplx(0.0, s * angles(i)));
    return Mat(U * d.asDiagonal() * U.adjoint());
  };

  double comm = 0.0;
  std::vector<Mat> rho_b, rho_theta_b;
  for (int i = 0; i < in.dim_B(); ++i) {
    rho_b.push_back(jv.rho_aug(in.iota.morphism.action * in.B.basis.col(i)));
    rho_theta_b.push_back(jv.rho_aug(in.theta.morphism.action * in.B.basis.col(i)));
    comm = std::max(comm, (res.path.generator_a * rho_b.back() - rho_b.back() * res.path.generator_a).norm());
  }
  rep.add("a commutes with rho~(B)", comm, tau);
  rep.add("v_0 = 1", (v_at(0.0) - I).norm(), 1e-10);
  rep.add("v_1 = v", (v_at(1.0) - jv.v).norm(), 1e-10);

  const std::vector<int> cols = jv.k_aug_interior(1);
  const std::string mask = describe_mask("K~ grade <= L-1", cols.size(), kd);
  for (double s : opts.samples) {
    HomotopySample smp{s, v_at(s), Mat()};
    smp.w_s = jv.rho_aug_w * smp.v_s;
    std::ostringstream tag;
    tag << "s = " << s;
    rep.add("v_s unitary, " + tag.str(), (smp.v_s.adjoint() * smp.v_s - I).norm(), tau);
    double r = 0.0;
    for (std::size_t b = 0; b < rho_b.size(); ++b)
      r = std::max(r, masked_norm(smp.w_s * rho_b[b] * smp.w_s.adjoint() - rho_theta_b[b], cols));
    rep.add("w_s rho~(b) w_s* = rho~(theta(b)), " + tag.str(), r, 1e-8, mask);
    res.path.samples.push_back(std::move(smp));
  }
  double lip = 0.0, group_law = 0.0;
  for (const auto& x : res.path.samples)
    for (const auto& y : res.path.samples) {
      lip = std::max(lip, op_norm(x.v_s - y.v_s) - std::numbers::pi * std::abs(x.s - y.s));
      if (x.s + y.s <= 1.0 + 1e-12) group_law = std::max(group_law, (x.v_s * y.v_s - v_at(x.s + y.s)).norm());
    }
  rep.add("|v_s - v_t| <= pi |s - t|", std::max(0.0, lip), 1e-12);
  rep.add("v_s v_t = v_(s+t)", group_law, tau);

  // Degenerate endpoint.
  const Mat w0 = jv.rho_aug_w * v_at(0.0);
  rep.add("w_0 = rho~(w)", (w0 - jv.rho_aug_w).norm(), 1e-10);
  const Mat w1 = jv.rho_aug_w * v_at(1.0);
  const Mat& Ft = jv.F_aug;
  double gen = 0.0;
  for (int i = 0; i < in.dim_A(); ++i) {
    const Vec a = in.A.basis.col(i);
    gen = std::max(gen, masked_norm(Ft * jv.pi(a) * Ft.adjoint() - jv.rho_aug(a), cols));
  }
  gen = std::max(gen, masked_norm(Ft * jv.pi_u * Ft.adjoint() - w1, cols));
  gen = std::max(gen, masked_norm(Ft * jv.pi_ustar * Ft.adjoint() - w1.adjoint(), cols));
  rep.add("s = 1: F~ pi~(g) F~* = rho_1(g), generators", gen, 1e-8, mask);

  std::mt19937_64 rng(opts.seed);
  const std::vector<int> wcols = jv.k_aug_interior(opts.word_length);
  double words = 0.0;
  for (int k = 0; k < opts.random_words; ++k) {
    const SymbolicElement x = random_symbolic(jv.H.input, rng, opts.word_length);
    const Mat lhs = Ft * jv.H.action(x) * Ft.adjoint();
    words = std::max(words, masked_norm(lhs - rho_one(jv, x, w1), wcols));
  }
  std::ostringstream wn;
  wn << "s = 1: F~ pi~(x) F~* = rho_1(x), " << opts.random_words << " random words of length <= " << opts.word_length;
  rep.add(wn.str(), words, 1e-8,
          describe_mask("K~ grade <= L-" + std::to_string(opts.word_length), wcols.size(), kd));
  std::ostringstream seed;
  seed << "random words drawn with seed " << opts.seed;
  rep.note(seed.str());
  return res;
}

// ---------------------------------------------------------------------------
// Expectation identities

CheckReport verify_lemma_iso(const HNNInputPtr& in, int max_len) {
  CheckReport rep("lemma-iso");
  const SymbolicElement u = SymbolicElement::generator(in, 1);
  double r_minus = 0.0, r_plus = 0.0;
  int n_minus = 0, n_plus = 0;
  for (const auto& x : reduced_basis_words(in, max_len)) {
    const WordKey key = x.words().begin()->first;
    if (key.letters.back() != 0) continue;  // trailing letter is the unit
    const Vec ea = pair_A(x, x);
    if (key.signs.back() < 0) {
      const SymbolicElement y = x * u;
      const Vec eb = in->to_B[sign_index(1)] * in->E_plus.apply(pair_A(y, y));
      r_minus = std::max(r_minus, (ea - in->theta.morphism.action * eb).norm());
      ++n_minus;
    } else {
      r_plus = std::max(r_plus, (ea - in->E_plus.apply(ea)).norm());
      ++n_plus;
    }
  }
  const std::string len = std::to_string(max_len);
  rep.add("E_A(x* x) = theta(E_B((xu)* xu)), last sign -1", r_minus, in->tol.alg,
          std::to_string(n_minus) + " reduced basis words of length <= " + len);
  rep.add("E_A(x* x) = E_B(x* x), last sign +1", r_plus, in->tol.alg,
          std::to_string(n_plus) + " reduced basis words of length <= " + len);
  return rep;
}

}  // namespace hnn
