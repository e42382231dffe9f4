#pragma once

// Julg-Valette verifier. H is the GNS space of eps o E_A and K the GNS space
// of eps o E_B on the reduced HNN algebra, both truncated. The operator F,
// its augmented version on K + C Omega and the path of unitaries v_s are
// assembled as dense matrices and every identity behind the homotopy is
// checked on the part of the space where truncation is exact.
//
// Grading. A vector pi(x0 u^e1 ... u^en) xi of H has grade n. On K, the
// vectors rho(x) eta spanning K_{+1} have grade equal to the word length and
// those spanning K_{-1} have grade length + 1, so that F preserves grades
// and both sides are truncated at the same grade L.

#include <random>
#include <string>
#include <vector>

#include "hnn/report.hpp"
#include "hnn/wordalg.hpp"

namespace hnn {

enum class GnsSide { H, K };
enum class Sector { H0, HMinus, HPlus, KMinus, KPlus };
std::string to_string(Sector s);

// Mutually orthogonal block of basis vectors: all spanning words share the
// sign word, the kind of x_0 (B part or kernel part) and the sector.
struct GnsGroup {
  SignWord signs;
  int x0_kind = 0;  // 0: x_0 in the image of the expectation (or the unit), 1: kernel
  Sector sector = Sector::H0;
  int grade = 0;
  std::vector<SymbolicElement> words;  // selected spanning words
  std::vector<GenWord> general;        // same words, for fast pairing
  std::vector<int> x0_index;           // adapted column of x_0
  Mat onb;                             // words x dim, orthonormal combinations
  int offset = 0;

  int dim() const { return static_cast<int>(onb.cols()); }
};

struct GNSTrunc {
  GnsSide side = GnsSide::H;
  int L = 1;
  HNNInputPtr input;
  std::vector<GnsGroup> groups;
  std::vector<Sector> sector_of;  // per basis vector
  std::vector<int> grade_of;      // per basis vector
  Vec cyclic;                     // xi or eta
  int dim = 0;
  int candidate_words = 0;

  // eps o E_A or eps o E_B evaluated on an A-valued pairing.
  cplx state(const Vec& a) const;
  // Coordinates of the orthogonal projection of x.cyclic onto the truncation.
  Vec coordinates(const SymbolicElement& x) const;
  // Compression of left multiplication by x.
  Mat action(const SymbolicElement& x) const;
  std::vector<int> indices(Sector s) const;
  // Basis vectors of grade <= L - budget.
  std::vector<int> interior(int budget) const;
  std::vector<SymbolicElement> basis_words() const;
  // Largest inner product between spanning words of different groups.
  double sector_orthogonality() const;
  std::vector<int> sector_dims() const;
};

GNSTrunc build_gns_trunc(const HNNInputPtr& in, GnsSide side, int L, int dim_cap = -1);

struct JVData {
  GNSTrunc H, K;
  Mat F_minus, F_plus;  // H_{-1} -> K_{-1}, H_{+1} -> K_{+1}
  Mat F;                // (H_{-1} + H_{+1}) -> K, columns ordered as H without xi
  Mat script_F;         // H -> K, zero on xi
  Mat p;                // projection onto C xi
  Mat F_aug;            // H -> K + C Omega
  int omega = 0;        // index of Omega in the augmented space
  Vec eta_aug, omega_vec;
  Mat v;                // swaps eta and Omega, identity on the rest

  // Images on linear units e_p of A and on u, u*.
  std::vector<Mat> pi_lin, rho_lin, rho_aug_lin;
  Mat pi_u, pi_ustar, rho_u, rho_ustar, rho_aug_w;

  std::vector<int> h_grade, k_aug_grade;
  Mat pi(const Vec& a) const;
  Mat rho(const Vec& a) const;
  Mat rho_aug(const Vec& a) const;
  std::vector<int> h_interior(int budget) const;
  std::vector<int> k_aug_interior(int budget) const;
};

// F is certified isometric and onto while building; a residual above the
// Gram tolerance raises LemmaViolation.
JVData build_jv(GNSTrunc H, GNSTrunc K);
JVData build_jv(const HNNInputPtr& in, int L, int dim_cap = -1);

// Construction-level checks on the two GNS spaces and on F.
CheckReport verify_gns(const JVData& jv);
CheckReport verify_commutators(const JVData& jv, int budget = 1);
CheckReport verify_augmented(const JVData& jv, int budget = 1);

struct HomotopySample {
  double s = 0.0;
  Mat v_s;
  Mat w_s;
};

struct HomotopyPath {
  Mat generator_a;  // self-adjoint, spectrum in [-pi, pi], v = exp(i a)
  std::vector<HomotopySample> samples;
  bool branch_point = false;  // v has eigenvalue -1
};

struct HomotopyOptions {
  std::vector<double> samples{0.0, 0.25, 0.5, 0.75, 1.0};
  std::uint64_t seed = 1;
  int random_words = 50;
  int word_length = 1;
};

struct HomotopyResult {
  HomotopyPath path;
  CheckReport report;
};

HomotopyResult homotopy(const JVData& jv, const HomotopyOptions& opts = {});

// Both expectation identities relating E_A(x* x) with E_B, on every reduced
// basis word x = x0 u^e1 ... u^en with n <= max_len.
CheckReport verify_lemma_iso(const HNNInputPtr& in, int max_len);

// Singular-value profile of a finite-rank defect.
struct RankOneProfile {
  double top = 0.0;
  double second = 0.0;
  Vec top_left;
};
RankOneProfile rank_one_profile(const Mat& m);

std::string describe_mask(const std::string& what, std::size_t kept, std::size_t total);

}  // namespace hnn
