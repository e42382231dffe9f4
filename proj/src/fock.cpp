#include "hnn/fock.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace hnn {

namespace {

const Mat& adapted(const HNNInput& in, int sign) { return in.adapted[sign_index(sign)]; }

// B-valued form of the module H_sign: pullback of E_sign(x* y).
Vec bform(const HNNInput& in, int sign, const Vec& x, const Vec& y) {
  return in.to_B[sign_index(sign)] * in.E(sign).apply(in.mul(in.adj(x), y));
}

std::vector<int> decode(int index, const std::vector<int>& dims) {
  std::vector<int> digits(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    digits[i] = index % dims[i];
    index /= dims[i];
  }
  return digits;
}

int encode(const std::vector<int>& digits, const std::vector<int>& dims) {
  int index = 0;
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) index = index * dims[i] + digits[i];
  return index;
}

// Orthonormal basis of a summand. When the simple tensors are already
// orthonormal the standard basis is kept.
FHilbert summand_space(const Mat& gram, const Tolerances& tol) {
  const auto m = gram.rows();
  if ((gram - Mat::Identity(m, m)).norm() <= tol.alg) {
    FHilbert h;
    h.ambient_dim = static_cast<int>(m);
    h.onb = Mat::Identity(m, m);
    return h;
  }
  try {
    return gram_quotient(gram, tol.gram);
  } catch (const Error& e) {
    throw Error(ErrorKind::NumericalDegeneracy, std::string("summand Gram is not positive: ") + e.what());
  }
}

}  // namespace

std::pair<LegSpace, LegSpace> gns_leg(const HNNInput& in, int sign) {
  const Mat& ad = adapted(in, sign);
  LegSpace full{LegKind::Full, sign, ad, sign};
  LegSpace reduced{LegKind::Reduced, sign, ad.rightCols(in.dim_A() - in.dim_B()), sign};
  return {full, reduced};
}

std::vector<LegSpace> legs_for(const HNNInput& in, const SignWord& signs) {
  const int n = static_cast<int>(signs.size());
  std::vector<LegSpace> legs;
  if (n == 0) {
    legs.push_back({LegKind::Vacuum, 1, adapted(in, 1), 1});
    return legs;
  }
  legs.push_back(gns_leg(in, -signs[0]).first);
  for (int i = 1; i < n; ++i) {
    const int ei = signs[i - 1], next = signs[i];
    legs.push_back(ei == next ? gns_leg(in, -ei).first : gns_leg(in, ei).second);
  }
  legs.push_back(gns_leg(in, 1).first);
  return legs;
}

Mat internal_tensor_gram(const HNNInput& in, const SignWord& signs, const std::vector<LegSpace>& legs) {
  const int nb = in.dim_B();
  const Vec& fb = in.B.haar.functional();
  const LegSpace& l0 = legs[0];
  int m = l0.dim();
  // W(:, P + m Q) is the B-valued inner product of simple tensors P, Q.
  Mat w(nb, m * m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) w.col(p + m * q) = bform(in, l0.module_sign, l0.basis.col(p), l0.basis.col(q));

  for (std::size_t i = 1; i < legs.size(); ++i) {
    const LegSpace& leg = legs[i];
    const int d = leg.dim();
    const Mat& rho = in.from_B[sign_index(signs[i - 1])];
    // t[p + d q] : B -> B, c -> <k_p, rho(c) k_q>_B
    std::vector<Mat> t(d * d, Mat(nb, nb));
    for (int p = 0; p < d; ++p) {
      const Vec kp_adj = in.adj(leg.basis.col(p));
      for (int q = 0; q < d; ++q)
        for (int j = 0; j < nb; ++j)
          t[p + d * q].col(j) = in.to_B[sign_index(leg.module_sign)] *
                                in.E(leg.module_sign).apply(in.mul(in.mul(kp_adj, rho.col(j)), leg.basis.col(q)));
    }
    const int m2 = m * d;
    Mat w2(nb, m2 * m2);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        const Mat& tpq = t[p + d * q];
        for (int P = 0; P < m; ++P)
          for (int Q = 0; Q < m; ++Q) w2.col((P + m * p) + m2 * (Q + m * q)) = tpq * w.col(P + m * Q);
      }
    w = std::move(w2);
    m = m2;
  }
  Mat g(m, m);
  const Eigen::RowVectorXcd f = fb.transpose() * w;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) g(p, q) = f(p + m * q);
  return g;
}

TensorSummand internal_tensor(const HNNInput& in, const SignWord& signs, const Tolerances& tol) {
  TensorSummand s;
  s.signs = signs;
  s.legs = legs_for(in, signs);
  s.index_count = 1;
  for (const auto& l : s.legs) {
    s.leg_dims.push_back(l.dim());
    s.index_count *= l.dim();
  }
  if (s.index_count == 0) {
    s.gram = Mat(0, 0);
    s.space.onb = Mat(0, 0);
    return s;
  }
  s.gram = internal_tensor_gram(in, signs, s.legs);
  s.space = summand_space(s.gram, tol);
  return s;
}

int default_dim_cap() {
  if (const char* env = std::getenv("HNN_FORGE_DIM_CAP")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Config, std::string("HNN_FORGE_DIM_CAP is not a positive integer: ") + env);
  }
  return 20000;
}

long long estimate_fock_dim(const HNNInput& in, int L) {
  const double a = in.dim_A(), b = in.dim_B(), r = a - b;
  double total = a;
  // Count sign words by number of sign changes.
  for (int n = 1; n <= L; ++n) {
    for (int changes = 0; changes <= n - 1; ++changes) {
      double words = 2.0;  // choice of eps_1
      for (int i = 0; i < changes; ++i) words *= double(n - 1 - i) / double(i + 1);
      const double dim = a * std::pow(a, n - 1 - changes) * std::pow(r, changes) * a / std::pow(b, n);
      total += words * dim;
    }
  }
  return std::llround(total);
}

Vec TruncatedFock::tensor_coefficients(const SignWord& signs, const std::vector<Vec>& letters) const {
  const auto& in = *input;
  const TensorSummand& s = summand(signs);
  if (letters.size() != s.legs.size()) throw Error(ErrorKind::InvalidInput, "wrong number of tensor legs");
  Vec c = s.legs[0].basis.adjoint() * (in.gram_A * letters[0]);
  for (std::size_t i = 1; i < letters.size(); ++i) {
    const Vec ci = s.legs[i].basis.adjoint() * (in.gram_A * letters[i]);
    Vec next(c.size() * ci.size());
    for (Eigen::Index p = 0; p < ci.size(); ++p) next.segment(p * c.size(), c.size()) = ci(p) * c;
    c = std::move(next);
  }
  return c;
}

Vec TruncatedFock::project_coefficients(const SignWord& signs, const Vec& c) const {
  const TensorSummand& s = summand(signs);
  return s.space.onb.adjoint() * (s.gram * c);
}

Vec TruncatedFock::simple_tensor(const SignWord& signs, const std::vector<Vec>& letters) const {
  const TensorSummand& s = summand(signs);
  Vec out = Vec::Zero(total_dim);
  out.segment(s.offset, s.dim()) = project_coefficients(signs, tensor_coefficients(signs, letters));
  return out;
}

std::vector<int> TruncatedFock::coordinates_up_to(int max_len) const {
  std::vector<int> out;
  for (const auto& s : summands)
    if (s.length() <= max_len)
      for (int i = 0; i < s.dim(); ++i) out.push_back(s.offset + i);
  return out;
}

TruncatedFock build_truncated_fock(const HNNInputPtr& in, int L, int dim_cap) {
  if (L < 1) throw Error(ErrorKind::InvalidInput, "truncation length must be >= 1");
  const int cap = dim_cap > 0 ? dim_cap : default_dim_cap();
  const long long estimate = estimate_fock_dim(*in, L);
  if (estimate > cap) {
    std::ostringstream os;
    os << "estimated Fock dimension " << estimate << " exceeds the cap " << cap;
    throw Error(ErrorKind::SizeLimit, os.str());
  }
  TruncatedFock f;
  f.input = in;
  f.L = L;
  std::vector<SignWord> words{{}};
  for (int n = 1; n <= L; ++n)
    for (int mask = 0; mask < (1 << n); ++mask) {
      SignWord w(n);
      for (int i = 0; i < n; ++i) w[i] = (mask >> (n - 1 - i)) & 1 ? -1 : 1;
      words.push_back(w);
    }
  for (const auto& w : words) {
    TensorSummand s = internal_tensor(*in, w, in->tol);
    s.offset = f.total_dim;
    f.total_dim += s.dim();
    f.index[w] = static_cast<int>(f.summands.size());
    f.summands.push_back(std::move(s));
  }
  f.vacuum = f.simple_tensor({}, {in->A.algebra->unit()});
  return f;
}

std::vector<int> FockOperator::masked_coordinates(const TruncatedFock& f) const {
  std::vector<int> out;
  for (std::size_t k = 0; k < f.summands.size(); ++k)
    if (domain_mask[k])
      for (int i = 0; i < f.summands[k].dim(); ++i) out.push_back(f.summands[k].offset + i);
  return out;
}

FockOperator pi_action(const TruncatedFock& f, const Vec& a) {
  const auto& in = *f.input;
  FockOperator op;
  op.matrix = Mat::Zero(f.total_dim, f.total_dim);
  op.domain_mask.assign(f.summands.size(), true);
  const Mat la = in.alg().left_multiplication(a);
  for (const auto& s : f.summands) {
    const Mat& b0 = s.legs[0].basis;
    const Mat coef = b0.adjoint() * in.gram_A * la * b0;
    const int m0 = s.leg_dims[0];
    const int rest = s.index_count / m0;
    Mat img = Mat::Zero(s.index_count, s.index_count);
    for (int r = 0; r < rest; ++r) img.block(r * m0, r * m0, m0, m0) = coef;
    op.matrix.block(s.offset, s.offset, s.dim(), s.dim()) = s.space.onb.adjoint() * s.gram * img * s.space.onb;
  }
  return op;
}

FockOperator u_epsilon(const TruncatedFock& f, int eps) {
  const auto& in = *f.input;
  const int nb = in.dim_B();
  FockOperator op;
  op.matrix = Mat::Zero(f.total_dim, f.total_dim);
  op.domain_mask.resize(f.summands.size());
  const Mat& theta_eps = in.theta_sign[sign_index(eps)];

  for (std::size_t k = 0; k < f.summands.size(); ++k) {
    const TensorSummand& s = f.summands[k];
    const int n = s.length();
    op.domain_mask[k] = n <= f.L - 1;
    std::map<int, Mat> images;  // target summand -> simple-tensor image matrix
    auto image_of = [&](int t) -> Mat& {
      auto it = images.find(t);
      if (it == images.end())
        it = images.emplace(t, Mat::Zero(f.summands[t].index_count, s.index_count)).first;
      return it->second;
    };

    const bool grow = n == 0 || s.signs[0] == eps;
    SignWord longer{eps};
    longer.insert(longer.end(), s.signs.begin(), s.signs.end());
    const SignWord shorter = n > 0 ? SignWord(s.signs.begin() + 1, s.signs.end()) : SignWord{};

    for (int P = 0; P < s.index_count; ++P) {
      const std::vector<int> p = decode(P, s.leg_dims);
      if (grow) {
        // u^eps (xi) = 1^ (x) xi
        if (n + 1 > f.L) continue;
        const int t = f.index.at(longer);
        std::vector<int> q{0};
        q.insert(q.end(), p.begin(), p.end());
        image_of(t)(encode(q, f.summands[t].leg_dims), P) += 1.0;
      } else if (p[0] >= nb) {
        // first leg in ker E_eps: 1^ (x) a^ (x) xi_0
        if (n + 1 > f.L) continue;
        const int t = f.index.at(longer);
        std::vector<int> q{0, p[0] - nb};
        q.insert(q.end(), p.begin() + 1, p.end());
        image_of(t)(encode(q, f.summands[t].leg_dims), P) += 1.0;
      } else {
        // first leg in B_eps: theta^eps(a) xi_0
        const int t = f.index.at(shorter);
        const TensorSummand& ts = f.summands[t];
        const Vec c = theta_eps * s.legs[0].basis.col(p[0]);
        const Vec moved = in.mul(c, s.legs[1].basis.col(p[1]));
        const Vec coef = ts.legs[0].basis.adjoint() * in.gram_A * moved;
        std::vector<int> q(p.begin() + 1, p.end());
        Mat& img = image_of(t);
        for (int j = 0; j < ts.leg_dims[0]; ++j) {
          if (coef(j) == cplx(0.0)) continue;
          q[0] = j;
          img(encode(q, ts.leg_dims), P) += coef(j);
        }
      }
    }
    for (const auto& [t, img] : images) {
      const TensorSummand& ts = f.summands[t];
      op.matrix.block(ts.offset, s.offset, ts.dim(), s.dim()) =
          ts.space.onb.adjoint() * ts.gram * img * s.space.onb;
    }
  }
  return op;
}

FockOperator vacuum_projection(const TruncatedFock& f) {
  FockOperator op;
  op.matrix = Mat::Zero(f.total_dim, f.total_dim);
  const auto& v = f.summands[0];
  op.matrix.block(v.offset, v.offset, v.dim(), v.dim()).setIdentity();
  op.domain_mask.assign(f.summands.size(), true);
  return op;
}

nlohmann::json fock_summary_json(const TruncatedFock& f) {
  nlohmann::json summands = nlohmann::json::array();
  for (const auto& s : f.summands) {
    std::string label;
    for (int e : s.signs) label += e > 0 ? "+" : "-";
    summands.push_back({{"signs", label.empty() ? "vacuum" : label},
                        {"dim", s.dim()},
                        {"simple_tensors", s.index_count},
                        {"kernel_dim", s.space.kernel_dim}});
  }
  return {{"L", f.L}, {"total_dim", f.total_dim}, {"summands", summands}};
}

}  // namespace hnn
