#include "hnn/wordalg.hpp"

#include <cmath>
#include <sstream>

namespace hnn {

namespace {

constexpr double kDrop = 1e-14;

bool negligible(const Vec& v, double scale) { return v.norm() <= 1e-13 * std::max(1.0, scale); }

}  // namespace

const Mat& letter_basis(const HNNInput& in, const SignWord& signs, int pos) {
  const int n = static_cast<int>(signs.size());
  if (pos < 1 || pos > n) throw Error(ErrorKind::InvalidInput, "letter position out of range");
  if (pos == n) return in.adapted[sign_index(1)];
  return in.adapted[sign_index(-signs[pos])];
}

int letter_min_index(const HNNInput& in, const SignWord& signs, int pos) {
  const int n = static_cast<int>(signs.size());
  if (pos < n && signs[pos - 1] != signs[pos]) return in.dim_B();
  return 0;
}

// ---------------------------------------------------------------------------
// SymbolicElement

SymbolicElement::SymbolicElement(HNNInputPtr in) : in_(std::move(in)) {
  if (!in_) throw Error(ErrorKind::InvalidInput, "symbolic element without HNN input");
  a_ = Vec::Zero(in_->dim_A());
}

void SymbolicElement::require_same(const SymbolicElement& o) const {
  if (in_ != o.in_) throw Error(ErrorKind::ContextMismatch, "symbolic elements from different HNN inputs");
}

SymbolicElement SymbolicElement::from_a(HNNInputPtr in, const Vec& a) {
  SymbolicElement x(std::move(in));
  if (a.size() != x.in_->dim_A()) throw Error(ErrorKind::InvalidInput, "A-part has the wrong length");
  x.a_ = a;
  return x;
}

SymbolicElement SymbolicElement::generator(HNNInputPtr in, int sign) {
  const Vec one = in->A.algebra->unit();
  return from_general(in, GenWord{one, {sign}, {one}});
}

SymbolicElement SymbolicElement::basis_word(HNNInputPtr in, const Vec& x0, const WordKey& key) {
  SymbolicElement x(std::move(in));
  if (key.letters.size() != key.signs.size() || key.signs.empty())
    throw Error(ErrorKind::InvalidInput, "basis word needs one letter per sign");
  for (int i = 1; i <= key.length(); ++i) {
    const int idx = key.letters[i - 1];
    if (idx < letter_min_index(*x.in_, key.signs, i) || idx >= x.in_->dim_A())
      throw Error(ErrorKind::InvalidInput, "letter index is not admissible for a reduced word");
  }
  x.words_[key] = x0;
  return x;
}

SymbolicElement SymbolicElement::from_general(HNNInputPtr in, const GenWord& w) {
  const auto& ctx = *in;
  const Vec one = ctx.A.algebra->unit();
  std::vector<GenWord> acc{GenWord{w.x0, {}, {}}};
  for (int i = 0; i < w.length(); ++i) {
    const GenWord step{one, {w.signs[i]}, {w.letters[i]}};
    std::vector<GenWord> next;
    for (const auto& g : acc) {
      int steps = 0;
      general_product(ctx, g, step, next, steps);
    }
    acc = std::move(next);
  }
  SymbolicElement x(std::move(in));
  for (const auto& g : acc) x.absorb(g);
  x.prune();
  return x;
}

int SymbolicElement::max_length() const {
  int n = 0;
  for (const auto& [k, v] : words_) n = std::max(n, k.length());
  return n;
}

bool SymbolicElement::is_zero(double tol) const {
  if (a_.norm() > tol) return false;
  for (const auto& [k, v] : words_)
    if (v.norm() > tol) return false;
  return true;
}

GenWord SymbolicElement::general(const WordKey& key) const {
  GenWord g{words_.at(key), key.signs, {}};
  for (int i = 1; i <= key.length(); ++i) g.letters.push_back(letter_basis(*in_, key.signs, i).col(key.letters[i - 1]));
  return g;
}

SymbolicElement& SymbolicElement::operator+=(const SymbolicElement& o) {
  require_same(o);
  a_ += o.a_;
  for (const auto& [k, v] : o.words_) {
    auto it = words_.find(k);
    if (it == words_.end())
      words_.emplace(k, v);
    else
      it->second += v;
  }
  return *this;
}

SymbolicElement& SymbolicElement::operator-=(const SymbolicElement& o) {
  require_same(o);
  a_ -= o.a_;
  for (const auto& [k, v] : o.words_) {
    auto it = words_.find(k);
    if (it == words_.end())
      words_.emplace(k, -v);
    else
      it->second -= v;
  }
  return *this;
}

SymbolicElement& SymbolicElement::operator*=(cplx s) {
  a_ *= s;
  for (auto& [k, v] : words_) v *= s;
  return *this;
}

void SymbolicElement::absorb(const GenWord& w) {
  const auto& in = *in_;
  const int n = w.length();
  if (n == 0) {
    a_ += w.x0;
    return;
  }
  std::vector<Vec> coords(n);
  double scale = 1.0;
  for (int i = 1; i <= n; ++i) {
    const Mat& basis = letter_basis(in, w.signs, i);
    coords[i - 1] = basis.adjoint() * in.gram_A * w.letters[i - 1];
    const int lo = letter_min_index(in, w.signs, i);
    if (lo > 0) {
      const double leak = coords[i - 1].head(lo).norm();
      if (leak > 1e-8 * std::max(1.0, coords[i - 1].norm()))
        throw Error(ErrorKind::InvalidState, "letter at a sign change is not in ker E");
      coords[i - 1].head(lo).setZero();
    }
    scale = std::max(scale, coords[i - 1].cwiseAbs().maxCoeff());
  }
  // Cartesian expansion over nonzero coordinates.
  WordKey key{w.signs, std::vector<int>(n, 0)};
  std::vector<std::vector<int>> support(n);
  for (int i = 0; i < n; ++i) {
    const double m = coords[i].cwiseAbs().maxCoeff();
    for (int j = 0; j < coords[i].size(); ++j)
      if (std::abs(coords[i](j)) > kDrop * std::max(1.0, m)) support[i].push_back(j);
    if (support[i].empty()) return;
  }
  std::vector<std::size_t> pos(n, 0);
  while (true) {
    cplx c = 1.0;
    for (int i = 0; i < n; ++i) {
      key.letters[i] = support[i][pos[i]];
      c *= coords[i](key.letters[i]);
    }
    auto it = words_.find(key);
    if (it == words_.end())
      words_.emplace(key, c * w.x0);
    else
      it->second += c * w.x0;
    int i = n - 1;
    while (i >= 0 && ++pos[i] == support[i].size()) pos[i--] = 0;
    if (i < 0) break;
  }
}

void SymbolicElement::prune(double tol) {
  for (auto it = words_.begin(); it != words_.end();) {
    if (it->second.norm() <= tol)
      it = words_.erase(it);
    else
      ++it;
  }
  for (auto& z : a_)
    if (std::abs(z) <= kDrop) z = 0.0;
}

// ---------------------------------------------------------------------------
// Rewriting

void general_product(const HNNInput& in, const GenWord& x, const GenWord& y, std::vector<GenWord>& out, int& steps) {
  const int n = x.length(), m = y.length();
  if (++steps > 64 * (n + m + 1) + 64) throw Error(ErrorKind::InvalidState, "rewriting does not terminate");
  if (n == 0) {
    GenWord z = y;
    z.x0 = in.mul(x.x0, y.x0);
    out.push_back(std::move(z));
    return;
  }
  if (m == 0) {
    GenWord z = x;
    z.letters.back() = in.mul(x.letters.back(), y.x0);
    out.push_back(std::move(z));
    return;
  }
  const Vec mid = in.mul(x.letters.back(), y.x0);
  const int eps = x.signs.back();
  auto concat = [&](const Vec& middle) {
    GenWord z{x.x0, x.signs, x.letters};
    z.letters.back() = middle;
    z.signs.insert(z.signs.end(), y.signs.begin(), y.signs.end());
    z.letters.insert(z.letters.end(), y.letters.begin(), y.letters.end());
    out.push_back(std::move(z));
  };
  if (y.signs.front() == eps) {
    concat(mid);
    return;
  }
  // u^eps mid u^-eps with mid = E_eps(mid) + mid°
  const Vec e = in.E(eps).apply(mid);
  const Vec reduced = mid - e;
  const double scale = mid.norm();
  if (!negligible(reduced, scale)) concat(reduced);
  if (negligible(e, scale)) return;
  const Vec c = in.theta_sign[sign_index(eps)] * e;
  GenWord xs{x.x0, SignWord(x.signs.begin(), x.signs.end() - 1), std::vector<Vec>(x.letters.begin(), x.letters.end() - 1)};
  if (xs.letters.empty())
    xs.x0 = in.mul(xs.x0, c);
  else
    xs.letters.back() = in.mul(xs.letters.back(), c);
  GenWord ys{y.letters.front(), SignWord(y.signs.begin() + 1, y.signs.end()),
             std::vector<Vec>(y.letters.begin() + 1, y.letters.end())};
  general_product(in, xs, ys, out, steps);
}

SymbolicElement reduce_product(const SymbolicElement& x, const SymbolicElement& y) {
  if (x.input() != y.input()) throw Error(ErrorKind::ContextMismatch, "product of elements from different HNN inputs");
  const auto& in = *x.input();
  SymbolicElement out(x.input());
  std::vector<GenWord> xs, ys;
  if (!negligible(x.a_part(), 0.0)) xs.push_back(GenWord{x.a_part(), {}, {}});
  for (const auto& [k, v] : x.words()) xs.push_back(x.general(k));
  if (!negligible(y.a_part(), 0.0)) ys.push_back(GenWord{y.a_part(), {}, {}});
  for (const auto& [k, v] : y.words()) ys.push_back(y.general(k));
  std::vector<GenWord> terms;
  for (const auto& gx : xs)
    for (const auto& gy : ys) {
      terms.clear();
      int steps = 0;
      general_product(in, gx, gy, terms, steps);
      if (steps > std::min(gx.length(), gy.length()) + 1)
        throw Error(ErrorKind::InvalidState, "collapse count exceeds the shorter word length");
      for (const auto& t : terms) out.absorb(t);
    }
  out.prune();
  return out;
}

SymbolicElement star(const SymbolicElement& x) {
  const auto& in = *x.input();
  SymbolicElement out = SymbolicElement::from_a(x.input(), in.adj(x.a_part()));
  for (const auto& [k, v] : x.words()) {
    const GenWord g = x.general(k);
    const int n = g.length();
    GenWord r;
    r.x0 = in.adj(g.letters[n - 1]);
    for (int i = n - 1; i >= 0; --i) {
      r.signs.push_back(-g.signs[i]);
      r.letters.push_back(in.adj(i > 0 ? g.letters[i - 1] : g.x0));
    }
    out.absorb(r);
  }
  out.prune();
  return out;
}

// ---------------------------------------------------------------------------
// Expectations, states, pairings

Vec expect_A(const SymbolicElement& x) { return x.a_part(); }

Vec expect_B(const SymbolicElement& x) {
  const auto& in = *x.input();
  return in.to_B[sign_index(1)] * in.E_plus.apply(x.a_part());
}

Vec expect_thetaB(const SymbolicElement& x) { return x.input()->E_minus.apply(x.a_part()); }

cplx phi_m(const SymbolicElement& x) { return x.input()->phi_A(x.a_part()); }

cplx counit_m(const SymbolicElement& x) {
  const auto& in = *x.input();
  cplx total = in.counit_A(x.a_part());
  for (const auto& [k, v] : x.words()) {
    cplx c = in.counit_A(v);
    for (int i = 1; i <= k.length(); ++i) c *= in.counit_A(letter_basis(in, k.signs, i).col(k.letters[i - 1]));
    total += c;
  }
  return total;
}

Vec pair_general(const HNNInput& in, const GenWord& x, const GenWord& y) {
  if (x.signs != y.signs) return Vec::Zero(in.dim_A());
  Vec c = in.mul(in.adj(x.x0), y.x0);
  for (int i = 0; i < x.length(); ++i) {
    const int s = -x.signs[i];
    const Vec moved = in.theta_sign[sign_index(s)] * in.E(s).apply(c);
    c = in.mul(in.mul(in.adj(x.letters[i]), moved), y.letters[i]);
  }
  return c;
}

Vec pair_A(const SymbolicElement& x, const SymbolicElement& y) {
  if (x.input() != y.input()) throw Error(ErrorKind::ContextMismatch, "pairing of elements from different HNN inputs");
  const auto& in = *x.input();
  Vec out = in.mul(in.adj(x.a_part()), y.a_part());
  // Keys are ordered by sign pattern first, so equal patterns are contiguous.
  auto yit = y.words().begin();
  for (auto xit = x.words().begin(); xit != x.words().end();) {
    const SignWord& signs = xit->first.signs;
    auto xend = xit;
    while (xend != x.words().end() && xend->first.signs == signs) ++xend;
    while (yit != y.words().end() && yit->first.signs < signs) ++yit;
    auto yend = yit;
    while (yend != y.words().end() && yend->first.signs == signs) ++yend;
    if (yit != yend) {
      std::vector<GenWord> gy;
      for (auto it = yit; it != yend; ++it) gy.push_back(y.general(it->first));
      for (auto it = xit; it != xend; ++it) {
        const GenWord gx = x.general(it->first);
        for (const auto& g : gy) out += pair_general(in, gx, g);
      }
    }
    xit = xend;
  }
  return out;
}

double norm2(const SymbolicElement& x) { return std::max(0.0, std::real(x.input()->phi_A(pair_A(x, x)))); }

double distance(const SymbolicElement& x, const SymbolicElement& y) { return std::sqrt(norm2(x - y)); }

// ---------------------------------------------------------------------------
// Comultiplication

namespace {

// Delta_A(z) = sum_r left_r (x) right_r
std::vector<std::pair<Vec, Vec>> split_coproduct(const FiniteCQG& A, const Vec& z) {
  const Mat d = A.coproduct(z);
  Eigen::JacobiSVD<Mat> svd(d, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  std::vector<std::pair<Vec, Vec>> out;
  for (int r = 0; r < s.size(); ++r) {
    if (s(r) <= 1e-13 * std::max(1.0, s(0))) break;
    out.emplace_back(s(r) * svd.matrixU().col(r), svd.matrixV().col(r).conjugate());
  }
  return out;
}

}  // namespace

SymbolicTensor comultiply(const SymbolicElement& x) {
  const auto in = x.input();
  SymbolicTensor t;
  for (const auto& [l, r] : split_coproduct(in->A, x.a_part()))
    t.terms.emplace_back(SymbolicElement::from_a(in, l), SymbolicElement::from_a(in, r));
  for (const auto& [k, v] : x.words()) {
    const GenWord g = x.general(k);
    const int n = g.length();
    std::vector<std::vector<std::pair<Vec, Vec>>> parts;
    parts.push_back(split_coproduct(in->A, g.x0));
    for (const auto& letter : g.letters) parts.push_back(split_coproduct(in->A, letter));
    bool empty = false;
    for (const auto& p : parts) empty = empty || p.empty();
    if (empty) continue;
    std::vector<std::size_t> pos(n + 1, 0);
    while (true) {
      GenWord left{parts[0][pos[0]].first, g.signs, {}};
      GenWord right{parts[0][pos[0]].second, g.signs, {}};
      for (int i = 1; i <= n; ++i) {
        left.letters.push_back(parts[i][pos[i]].first);
        right.letters.push_back(parts[i][pos[i]].second);
      }
      t.terms.emplace_back(SymbolicElement::from_general(in, left), SymbolicElement::from_general(in, right));
      int i = n;
      while (i >= 0 && ++pos[i] == parts[i].size()) pos[i--] = 0;
      if (i < 0) break;
    }
  }
  return t;
}

SymbolicElement slice_right(const SymbolicTensor& t) {
  if (t.terms.empty()) throw Error(ErrorKind::InvalidInput, "empty tensor");
  SymbolicElement out(t.terms.front().first.input());
  for (const auto& [l, r] : t.terms) out += phi_m(r) * l;
  return out;
}

SymbolicElement slice_left(const SymbolicTensor& t) {
  if (t.terms.empty()) throw Error(ErrorKind::InvalidInput, "empty tensor");
  SymbolicElement out(t.terms.front().first.input());
  for (const auto& [l, r] : t.terms) out += phi_m(l) * r;
  return out;
}

double coassociativity_residual(const SymbolicElement& x, const SymbolicElement& c1, const SymbolicElement& c2,
                                const TruncatedFock* f) {
  const auto& in = *x.input();
  auto omega = [&](const SymbolicElement& c, const SymbolicElement& y) { return in.phi_A(pair_A(c, y)); };
  const SymbolicTensor d = comultiply(x);
  SymbolicElement lhs(x.input()), rhs(x.input());
  for (const auto& [l, r] : d.terms) {
    // (Delta (x) id): split the left leg
    const SymbolicTensor dl = comultiply(l);
    cplx w = 0.0;
    for (const auto& [ll, lr] : dl.terms) w += omega(c1, ll) * omega(c2, lr);
    lhs += w * r;
    // (id (x) Delta): split the right leg
    const cplx w1 = omega(c1, l);
    if (std::abs(w1) == 0.0) continue;
    const SymbolicTensor dr = comultiply(r);
    for (const auto& [rl, rr] : dr.terms) rhs += (w1 * omega(c2, rl)) * rr;
  }
  return f ? fock_distance(lhs, rhs, *f) : distance(lhs, rhs);
}

// ---------------------------------------------------------------------------
// Basis words and random elements

std::vector<SymbolicElement> reduced_basis_words(const HNNInputPtr& in, int max_len) {
  std::vector<SymbolicElement> out;
  const int na = in->dim_A();
  for (int n = 1; n <= max_len; ++n)
    for (int mask = 0; mask < (1 << n); ++mask) {
      SignWord signs(n);
      for (int i = 0; i < n; ++i) signs[i] = (mask >> (n - 1 - i)) & 1 ? -1 : 1;
      const Mat& x0b = in->adapted[sign_index(-signs[0])];
      std::vector<int> lo(n);
      bool admissible = true;
      for (int i = 1; i <= n; ++i) {
        lo[i - 1] = letter_min_index(*in, signs, i);
        admissible = admissible && lo[i - 1] < na;
      }
      if (!admissible) continue;
      WordKey key{signs, lo};
      while (true) {
        for (int p = 0; p < na; ++p) out.push_back(SymbolicElement::basis_word(in, x0b.col(p), key));
        int i = n - 1;
        while (i >= 0 && ++key.letters[i] == na) key.letters[i] = lo[i], --i;
        if (i < 0) break;
      }
    }
  return out;
}

std::vector<SymbolicElement> basis_words(const HNNInputPtr& in, int max_len) {
  std::vector<SymbolicElement> out;
  const Mat& b = in->adapted[sign_index(1)];
  for (int p = 0; p < in->dim_A(); ++p) out.push_back(SymbolicElement::from_a(in, b.col(p)));
  auto red = reduced_basis_words(in, max_len);
  out.insert(out.end(), std::make_move_iterator(red.begin()), std::make_move_iterator(red.end()));
  return out;
}

SymbolicElement random_symbolic(const HNNInputPtr& in, std::mt19937_64& rng, int max_len, int terms) {
  std::normal_distribution<double> gauss;
  const int na = in->dim_A();
  auto rvec = [&] {
    Vec v(na);
    for (int i = 0; i < na; ++i) v(i) = cplx(gauss(rng), gauss(rng));
    return v;
  };
  SymbolicElement x = SymbolicElement::from_a(in, rvec());
  std::uniform_int_distribution<int> len(1, std::max(1, max_len));
  std::uniform_int_distribution<int> coin(0, 1);
  if (max_len < 1) return x;
  for (int t = 0; t < terms; ++t) {
    const int n = len(rng);
    WordKey key{SignWord(n), std::vector<int>(n)};
    const int first = coin(rng) ? 1 : -1;
    for (int i = 0; i < n; ++i) key.signs[i] = in->dim_A() == in->dim_B() ? first : (coin(rng) ? 1 : -1);
    for (int i = 1; i <= n; ++i) {
      std::uniform_int_distribution<int> letter(letter_min_index(*in, key.signs, i), na - 1);
      key.letters[i - 1] = letter(rng);
    }
    x += SymbolicElement::basis_word(in, rvec(), key);
  }
  return x;
}

std::string word_literal(const WordKey& key, int x0_index) {
  std::ostringstream os;
  os << "a[" << x0_index << "]";
  for (int i = 0; i < key.length(); ++i) os << (key.signs[i] > 0 ? ".u" : ".u*") << ".a[" << key.letters[i] << "]";
  return os.str();
}

std::string to_string(const SymbolicElement& x, int max_terms) {
  std::ostringstream os;
  os.precision(4);
  const auto& in = *x.input();
  os << "A-part norm " << x.a_part().norm();
  int shown = 0;
  for (const auto& [k, v] : x.words()) {
    if (shown++ == max_terms) {
      os << " + ...";
      break;
    }
    const Vec c = in.adapted[sign_index(-k.signs[0])].adjoint() * in.gram_A * v;
    Eigen::Index arg = 0;
    c.cwiseAbs().maxCoeff(&arg);
    os << " + " << word_literal(k, static_cast<int>(arg));
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Fock evaluation

namespace {

void require_fits(const SymbolicElement& x, const TruncatedFock& f) {
  if (x.input() != f.input) throw Error(ErrorKind::ContextMismatch, "Fock space built from another HNN input");
  if (x.max_length() > f.L) {
    std::ostringstream os;
    os << "word of length " << x.max_length() << " exceeds the truncation L = " << f.L;
    throw Error(ErrorKind::Truncation, os.str());
  }
}

}  // namespace

FockEvaluator::FockEvaluator(const TruncatedFock& f)
    : fock_(&f), up_(u_epsilon(f, 1).matrix), down_(u_epsilon(f, -1).matrix) {
  const int n = f.input->dim_A();
  for (int p = 0; p < n; ++p) units_.push_back(pi_action(f, Vec::Unit(n, p)).matrix);
}

Mat FockEvaluator::pi(const Vec& a) const {
  Mat m = Mat::Zero(fock_->total_dim, fock_->total_dim);
  for (Eigen::Index p = 0; p < a.size(); ++p)
    if (a(p) != cplx(0.0)) m += a(p) * units_[p];
  return m;
}

Vec FockEvaluator::pi_apply(const Vec& a, const Vec& w) const {
  Vec out = Vec::Zero(w.size());
  for (Eigen::Index p = 0; p < a.size(); ++p)
    if (a(p) != cplx(0.0)) out.noalias() += a(p) * (units_[p] * w);
  return out;
}

const Mat& FockEvaluator::letter(int sidx, int col) {
  auto it = cache_.find({sidx, col});
  if (it == cache_.end())
    it = cache_.emplace(std::make_pair(sidx, col), pi_action(*fock_, fock_->input->adapted[sidx].col(col)).matrix).first;
  return it->second;
}

FockOperator FockEvaluator::evaluate(const SymbolicElement& x) {
  require_fits(x, *fock_);
  FockOperator op = pi_action(*fock_, x.a_part());
  for (const auto& [k, v] : x.words()) {
    Mat m = pi(v);
    for (int i = 1; i <= k.length(); ++i) {
      m = m * (k.signs[i - 1] > 0 ? up_ : down_);
      const int sidx = i == k.length() ? sign_index(1) : sign_index(-k.signs[i]);
      m = m * letter(sidx, k.letters[i - 1]);
    }
    op.matrix += m;
  }
  const int len = x.max_length();
  for (std::size_t s = 0; s < fock_->summands.size(); ++s)
    op.domain_mask[s] = fock_->summands[s].length() + len <= fock_->L;
  return op;
}

Vec FockEvaluator::apply_vacuum(const SymbolicElement& x) {
  require_fits(x, *fock_);
  const Vec& omega = fock_->vacuum;
  Vec out = pi_apply(x.a_part(), omega);
  for (const auto& [k, v] : x.words()) {
    Vec w = omega;
    for (int i = k.length(); i >= 1; --i) {
      const int sidx = i == k.length() ? sign_index(1) : sign_index(-k.signs[i]);
      w = letter(sidx, k.letters[i - 1]) * w;
      w = (k.signs[i - 1] > 0 ? up_ : down_) * w;
    }
    out += pi_apply(v, w);
  }
  return out;
}

Vec vacuum_vector(const SymbolicElement& x, const TruncatedFock& f) {
  require_fits(x, f);
  Vec out = f.simple_tensor({}, {x.a_part()});
  std::map<SignWord, Vec> coeffs;
  for (const auto& [k, v] : x.words()) {
    const GenWord g = x.general(k);
    std::vector<Vec> legs{g.x0};
    legs.insert(legs.end(), g.letters.begin(), g.letters.end());
    const Vec c = f.tensor_coefficients(g.signs, legs);
    auto [it, fresh] = coeffs.try_emplace(g.signs, c);
    if (!fresh) it->second += c;
  }
  for (const auto& [signs, c] : coeffs) {
    const TensorSummand& s = f.summand(signs);
    out.segment(s.offset, s.dim()) += f.project_coefficients(signs, c);
  }
  return out;
}

double fock_distance(const SymbolicElement& x, const SymbolicElement& y, const TruncatedFock& f) {
  return (vacuum_vector(x, f) - vacuum_vector(y, f)).norm();
}

FockOperator fock_evaluate(const SymbolicElement& x, const TruncatedFock& f) { return FockEvaluator(f).evaluate(x); }

Vec fock_apply_vacuum(const SymbolicElement& x, const TruncatedFock& f) { return FockEvaluator(f).apply_vacuum(x); }

}  // namespace hnn
