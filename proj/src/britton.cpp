#include "hnn/britton.hpp"

#include <sstream>

#include "hnn/error.hpp"

namespace hnn {

HNNGroupData make_hnn_group_data(FiniteGroup H, const SubgroupSpec& spec) {
  const int n = H.order();
  if (!H.is_subgroup(spec.subgroup)) throw Error(ErrorKind::InvalidGroup, "S is not a subgroup of H");
  HNNGroupData d{std::move(H), spec.subgroup, {}, std::vector<int>(n, -1), std::vector<int>(n, -1), {}, {}};
  for (int s : d.sigma) {
    const auto it = spec.theta.find(s);
    const int img = spec.theta.empty() ? s : (it == spec.theta.end() ? -1 : it->second);
    if (img < 0) throw Error(ErrorKind::InvalidGroup, "theta is not defined on " + d.H.label(s));
    if (d.theta_inv[img] >= 0) throw Error(ErrorKind::InvalidGroup, "theta is not injective");
    d.theta_of[s] = img;
    d.theta_inv[img] = s;
    d.theta_sigma.push_back(img);
  }
  for (const auto& [k, v] : spec.theta) {
    (void)v;
    if (d.theta_of[k] < 0) throw Error(ErrorKind::InvalidGroup, "theta is defined outside S");
  }
  for (int a : d.sigma)
    for (int b : d.sigma)
      if (d.theta_of[d.H.mul(a, b)] != d.H.mul(d.theta_of[a], d.theta_of[b]))
        throw Error(ErrorKind::InvalidGroup, "theta is not a homomorphism");
  d.reps_plus = d.H.left_transversal(d.sigma);
  d.reps_minus = d.H.left_transversal(d.theta_sigma);
  return d;
}

GroupWord group_letter(int h) { return GroupWord{h, {}, true}; }

GroupWord t_power(int sign, const HNNGroupData& data) {
  const int e = data.H.identity();
  return GroupWord{e, {{sign, e}}, true};
}

namespace {

// Writes h = r * s with r in reps and s in the subgroup; returns (r, s).
std::pair<int, int> coset_split(int h, const std::vector<int>& reps, const std::vector<int>& subgroup,
                                const FiniteGroup& H) {
  for (int r : reps) {
    const int s = H.mul(H.inverse(r), h);
    for (int x : subgroup)
      if (x == s) return {r, s};
  }
  throw Error(ErrorKind::InvalidState, "transversal does not cover the group");
}

}  // namespace

GroupWord normal_form(const GroupWord& w, const HNNGroupData& data) {
  const auto& H = data.H;
  // Pinch removal with a stack: letters[i] sits after the i-th t-letter.
  std::vector<int> signs;
  std::vector<int> letters{w.h0};
  for (const auto& [sign, h] : w.tail) {
    const int last = letters.back();
    if (!signs.empty() && signs.back() == -sign) {
      const bool pinch = signs.back() > 0 ? data.in_sigma(last) : data.in_theta_sigma(last);
      if (pinch) {
        // t s t^-1 = theta(s), t^-1 theta(s) t = s
        const int img = signs.back() > 0 ? data.theta_of[last] : data.theta_inv[last];
        signs.pop_back();
        letters.pop_back();
        letters.back() = H.mul(H.mul(letters.back(), img), h);
        continue;
      }
    }
    signs.push_back(sign);
    letters.push_back(h);
  }
  // Letter normalization, left to right. Before t: h = r s with s in theta(S),
  // and s t = t theta^-1(s). Before t^-1: h = r s with s in S, s t^-1 = t^-1 theta(s).
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] > 0) {
      const auto [r, s] = coset_split(letters[i], data.reps_minus, data.theta_sigma, H);
      letters[i] = r;
      letters[i + 1] = H.mul(data.theta_inv[s], letters[i + 1]);
    } else {
      const auto [r, s] = coset_split(letters[i], data.reps_plus, data.sigma, H);
      letters[i] = r;
      letters[i + 1] = H.mul(data.theta_of[s], letters[i + 1]);
    }
  }
  GroupWord out;
  out.h0 = letters[0];
  for (std::size_t i = 0; i < signs.size(); ++i) out.tail.emplace_back(signs[i], letters[i + 1]);
  out.normal = true;
  return out;
}

GroupWord multiply(const GroupWord& a, const GroupWord& b, const HNNGroupData& data) {
  GroupWord w = a;
  w.normal = false;
  if (w.tail.empty())
    w.h0 = data.H.mul(w.h0, b.h0);
  else
    w.tail.back().second = data.H.mul(w.tail.back().second, b.h0);
  w.tail.insert(w.tail.end(), b.tail.begin(), b.tail.end());
  return normal_form(w, data);
}

GroupWord inverse(const GroupWord& w, const HNNGroupData& data) {
  const auto& H = data.H;
  GroupWord out;
  const int n = w.length();
  out.h0 = H.inverse(n ? w.tail.back().second : w.h0);
  for (int i = n - 1; i >= 0; --i) {
    const int next = i > 0 ? w.tail[i - 1].second : w.h0;
    out.tail.emplace_back(-w.tail[i].first, H.inverse(next));
  }
  return normal_form(out, data);
}

OracleValues oracle_values(const GroupWord& w, const HNNGroupData& data) {
  const GroupWord nf = w.normal ? w : normal_form(w, data);
  OracleValues v;
  v.in_base = nf.tail.empty();
  v.is_identity = v.in_base && nf.h0 == data.H.identity();
  return v;
}

GroupWord random_group_word(std::mt19937_64& rng, int max_len, const HNNGroupData& data) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, data.H.order() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  GroupWord w;
  w.h0 = letter(rng);
  const int n = len(rng);
  for (int i = 0; i < n; ++i) w.tail.emplace_back(coin(rng) ? 1 : -1, letter(rng));
  return w;
}

std::string to_string(const GroupWord& w, const HNNGroupData& data) {
  std::ostringstream os;
  os << data.H.label(w.h0);
  for (const auto& [s, h] : w.tail) os << (s > 0 ? ".t." : ".t^-1.") << data.H.label(h);
  return os.str();
}

}  // namespace hnn
