#pragma once

// Exact model of the dense *-algebra spanned by A and the reduced operators
// x_0 u^{e_1} x_1 ... u^{e_n} x_n.
//
// Canonical form: interior letters are expanded over adapted bases. The
// letter at position i < n lives in adapted(-e_{i+1}) = [B_{-e_{i+1}} | ker],
// restricted to the ker part at a sign change; the last letter lives in
// adapted(+1). The coefficient and x_0 are folded together into a free vector
// of A. These indices are the leg indices of the Fock simple tensors.

#include <compare>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hnn/fock.hpp"
#include "hnn/qgroup.hpp"

namespace hnn {

struct WordKey {
  SignWord signs;
  std::vector<int> letters;  // positions 1..n

  int length() const { return static_cast<int>(signs.size()); }
  auto operator<=>(const WordKey&) const = default;
};

// A word with arbitrary letters, not necessarily reduced.
struct GenWord {
  Vec x0;
  SignWord signs;
  std::vector<Vec> letters;  // x_1..x_n

  int length() const { return static_cast<int>(signs.size()); }
};

// Basis column used for letter position `pos` (1-based) of a word with these signs.
const Mat& letter_basis(const HNNInput& in, const SignWord& signs, int pos);
// Smallest admissible letter index at that position (dim B at a sign change).
int letter_min_index(const HNNInput& in, const SignWord& signs, int pos);

class SymbolicElement {
 public:
  explicit SymbolicElement(HNNInputPtr in);

  static SymbolicElement from_a(HNNInputPtr in, const Vec& a);
  static SymbolicElement unit(HNNInputPtr in) { return from_a(in, in->A.algebra->unit()); }
  static SymbolicElement generator(HNNInputPtr in, int sign);
  static SymbolicElement basis_word(HNNInputPtr in, const Vec& x0, const WordKey& key);
  // Arbitrary letters; rewritten into canonical form by products.
  static SymbolicElement from_general(HNNInputPtr in, const GenWord& w);

  const HNNInputPtr& input() const noexcept { return in_; }
  const Vec& a_part() const noexcept { return a_; }
  const std::map<WordKey, Vec>& words() const noexcept { return words_; }
  int max_length() const;
  bool is_zero(double tol = 1e-12) const;

  GenWord general(const WordKey& key) const;

  SymbolicElement& operator+=(const SymbolicElement& o);
  SymbolicElement& operator-=(const SymbolicElement& o);
  SymbolicElement& operator*=(cplx s);
  friend SymbolicElement operator+(SymbolicElement a, const SymbolicElement& b) { return a += b; }
  friend SymbolicElement operator-(SymbolicElement a, const SymbolicElement& b) { return a -= b; }
  friend SymbolicElement operator*(cplx s, SymbolicElement a) { return a *= s; }

  // Adds the canonical expansion of w (used by the rewriting engine).
  void absorb(const GenWord& w);
  void prune(double tol = 1e-13);

 private:
  void require_same(const SymbolicElement& o) const;

  HNNInputPtr in_;
  Vec a_;
  std::map<WordKey, Vec> words_;
};

SymbolicElement reduce_product(const SymbolicElement& x, const SymbolicElement& y);
inline SymbolicElement operator*(const SymbolicElement& x, const SymbolicElement& y) { return reduce_product(x, y); }
SymbolicElement star(const SymbolicElement& x);

// Products of general words; the result is a sum of words that are reduced
// at every junction created here. `steps` counts collapse steps.
void general_product(const HNNInput& in, const GenWord& x, const GenWord& y, std::vector<GenWord>& out, int& steps);

Vec expect_A(const SymbolicElement& x);
Vec expect_B(const SymbolicElement& x);       // B coordinates
Vec expect_thetaB(const SymbolicElement& x);  // A coordinates, inside theta(B)
cplx phi_m(const SymbolicElement& x);
cplx counit_m(const SymbolicElement& x);

// E_A(x* y) without forming the product.
Vec pair_A(const SymbolicElement& x, const SymbolicElement& y);
Vec pair_general(const HNNInput& in, const GenWord& x, const GenWord& y);
// sqrt(phi_m((x - y)*(x - y))); phi_m is faithful on the dense algebra.
double distance(const SymbolicElement& x, const SymbolicElement& y);
double norm2(const SymbolicElement& x);

struct SymbolicTensor {
  std::vector<std::pair<SymbolicElement, SymbolicElement>> terms;
};

SymbolicTensor comultiply(const SymbolicElement& x);
SymbolicElement slice_right(const SymbolicTensor& t);  // (id (x) phi_m)
SymbolicElement slice_left(const SymbolicTensor& t);   // (phi_m (x) id)
// Compares (Delta (x) id)Delta(x) with (id (x) Delta)Delta(x) after applying
// the slice functionals phi_m(c1* .) (x) phi_m(c2* .) on the first two legs.
// The distance is the Fock distance when f is given, the phi_m distance otherwise.
double coassociativity_residual(const SymbolicElement& x, const SymbolicElement& c1, const SymbolicElement& c2,
                                const TruncatedFock* f = nullptr);

// Every canonical basis word of length <= max_len; x_0 runs over adapted(-e_1)
// and A-parts over adapted(+1).
std::vector<SymbolicElement> basis_words(const HNNInputPtr& in, int max_len);
// Reduced basis words only (length 1..max_len).
std::vector<SymbolicElement> reduced_basis_words(const HNNInputPtr& in, int max_len);

SymbolicElement random_symbolic(const HNNInputPtr& in, std::mt19937_64& rng, int max_len, int terms = 3);

std::string to_string(const SymbolicElement& x, int max_terms = 4);
std::string word_literal(const WordKey& key, int x0_index);

// Matrix of x on the truncated Fock space; throws Truncation if a word is
// longer than L.
FockOperator fock_evaluate(const SymbolicElement& x, const TruncatedFock& f);
// x applied to the vacuum through the operator matrices.
Vec fock_apply_vacuum(const SymbolicElement& x, const TruncatedFock& f);

// x applied to the vacuum, read off the canonical form as a sum of simple
// tensors. Linear in x, so distances computed from it avoid the cancellation
// in phi_m((x - y)*(x - y)).
Vec vacuum_vector(const SymbolicElement& x, const TruncatedFock& f);
double fock_distance(const SymbolicElement& x, const SymbolicElement& y, const TruncatedFock& f);

// Reuses u^{+-1} and the letter matrices across many evaluations.
class FockEvaluator {
 public:
  explicit FockEvaluator(const TruncatedFock& f);
  FockOperator evaluate(const SymbolicElement& x);
  Vec apply_vacuum(const SymbolicElement& x);
  const Mat& up() const noexcept { return up_; }
  // pi(a) by linearity from the images of the linear units of A.
  Mat pi(const Vec& a) const;
  Vec pi_apply(const Vec& a, const Vec& w) const;
  const Mat& down() const noexcept { return down_; }

 private:
  const Mat& letter(int sidx, int col);

  const TruncatedFock* fock_;
  Mat up_, down_;
  std::vector<Mat> units_;
  std::map<std::pair<int, int>, Mat> cache_;
};

}  // namespace hnn
