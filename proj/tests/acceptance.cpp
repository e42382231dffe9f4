// Acceptance criteria, one PASS/FAIL line each. Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "hnn/families.hpp"
#include "hnn/jvkk.hpp"
#include "hnn/wordalg.hpp"

using namespace hnn;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

SymbolicElement symbolic_of(const HNNInputPtr& in, const GroupWord& w) {
  SymbolicElement x = SymbolicElement::from_a(in, in->A.basis.col(w.h0));
  for (const auto& [s, h] : w.tail)
    x = x * SymbolicElement::generator(in, s) * SymbolicElement::from_a(in, in->A.basis.col(h));
  return x;
}

double report_max(const CheckReport& r, bool& all_pass) {
  double worst = 0.0;
  for (const auto& c : r.checks()) {
    all_pass = all_pass && c.pass;
    if (c.threshold > 0.0 && c.threshold < 1.0) worst = std::max(worst, c.residual);
  }
  return worst;
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  int identities = 0;
  for (const char* name : {"z2-free", "z4-sigma2"}) {
    const Family f = make_builtin(name);
    const HNNGroupData& d = *f.group;
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 1000; ++k) {
      const GroupWord w = random_group_word(rng, 6, d);
      const bool id = oracle_values(w, d).is_identity;
      identities += id;
      worst = std::max(worst, std::abs(phi_m(symbolic_of(f.input, w)) - (id ? 1.0 : 0.0)));
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs <= 10.0,
          "max |phi_m - oracle| = " + sci(worst) + " over 2 x 1000 words (" + std::to_string(identities) +
              " identities), " + sci(secs) + " s"};
}

Outcome hnn_relation() {
  double worst = 0.0;
  std::string dims;
  for (const auto& name : builtin_names()) {
    const HNNInputPtr in = make_builtin(name).input;
    const int L = name == "s3-quotient" ? 1 : 2;
    const TruncatedFock fk = build_truncated_fock(in, L);
    const FockOperator up = u_epsilon(fk, 1), down = u_epsilon(fk, -1);
    const auto mask = up.masked_coordinates(fk);
    for (int j = 0; j < in->dim_B(); ++j) {
      const Vec b = in->B.basis.col(j);
      const Mat d = up.matrix * pi_action(fk, in->iota.morphism.action * b).matrix * down.matrix -
                    pi_action(fk, in->theta.morphism.action * b).matrix;
      for (int c : mask) worst = std::max(worst, d.col(c).norm());
    }
    dims += " " + name + ":" + std::to_string(mask.size()) + "/" + std::to_string(fk.total_dim);
  }
  return {worst <= 1e-9, "max column residual " + sci(worst) + " on interior masks" + dims};
}

Outcome lemma_iso() {
  const auto t0 = Clock::now();
  bool ok = true;
  double worst = report_max(verify_lemma_iso(make_builtin("z4-sigma2").input, 3), ok);
  worst = std::max(worst, report_max(verify_lemma_iso(make_builtin("s3-quotient").input, 2), ok));
  const double secs = seconds_since(t0);
  return {ok && secs <= 60.0, "max residual " + sci(worst) + " (z4-sigma2 length <= 3, s3-quotient length <= 2), " +
                                  sci(secs) + " s"};
}

Outcome haar_invariance() {
  double worst = 0.0;
  std::size_t words = 0;
  for (const auto& name : builtin_names()) {
    const HNNInputPtr in = make_builtin(name).input;
    const TruncatedFock fk = build_truncated_fock(in, 2);
    const SymbolicElement one = SymbolicElement::unit(in);
    for (const auto& x : basis_words(in, 2)) {
      const SymbolicTensor d = comultiply(x);
      worst = std::max({worst, fock_distance(slice_right(d), phi_m(x) * one, fk),
                        fock_distance(slice_left(d), phi_m(x) * one, fk)});
      ++words;
    }
  }
  return {worst <= 1e-9, "max residual " + sci(worst) + " over " + std::to_string(words) + " basis words"};
}

Outcome gns_consistency() {
  double worst = 0.0;
  for (const auto& name : builtin_names()) {
    const HNNInputPtr in = make_builtin(name).input;
    const TruncatedFock fk = build_truncated_fock(in, 2);
    FockEvaluator ev(fk);
    std::mt19937_64 rng(77);
    for (int k = 0; k < 200; ++k) {
      const SymbolicElement x = random_symbolic(in, rng, 2);
      const double n2 = norm2(x);
      worst = std::max(worst, std::abs(ev.apply_vacuum(x).squaredNorm() - n2) / std::max(1.0, n2));
    }
  }
  return {worst <= 1e-8, "max relative |x Omega|^2 - phi_m(x* x) = " + sci(worst) + ", 200 elements per builtin, L = 2"};
}

Outcome julg_valette() {
  const JVData jv = build_jv(make_builtin("z4-sigma2").input, 2);
  bool ok = true;
  double worst = report_max(verify_gns(jv), ok);
  const CheckReport com = verify_commutators(jv);
  worst = std::max(worst, report_max(com, ok));
  worst = std::max(worst, report_max(verify_augmented(jv), ok));
  const CheckResult* c = com.find("[F, pi(a)] = 0, basis a");
  ok = ok && c != nullptr && c->residual <= 1e-9;
  return {ok, "all F, script_F, commutator and rank-one checks pass, max residual " + sci(worst) +
                  ", [F, pi(a)] = " + (c ? sci(c->residual) : std::string("missing"))};
}

Outcome homotopy_path() {
  const JVData jv = build_jv(make_builtin("z4-sigma2").input, 4);
  HomotopyOptions opts;
  opts.word_length = 2;
  const HomotopyResult h = homotopy(jv, opts);
  bool ok = true;
  const double worst = report_max(h.report, ok);
  const CheckResult* v0 = h.report.find("v_0 = 1");
  const CheckResult* v1 = h.report.find("v_1 = v");
  ok = ok && v0 && v1 && v0->residual <= 1e-10 && v1->residual <= 1e-10;
  return {ok, "z4-sigma2 L = 4 (H dim " + std::to_string(jv.H.dim) + "), 5 samples, 50 words of length <= 2, max residual " +
                  sci(worst)};
}

Outcome trivial_family() {
  const HNNInputPtr in = make_builtin("trivial").input;
  const SymbolicElement u = SymbolicElement::generator(in, 1), us = SymbolicElement::generator(in, -1);
  double worst = 0.0;
  for (int n = -4; n <= 4; ++n) {
    SymbolicElement x = SymbolicElement::unit(in);
    for (int i = 0; i < std::abs(n); ++i) x = x * (n > 0 ? u : us);
    worst = std::max(worst, std::abs(phi_m(x) - (n == 0 ? 1.0 : 0.0)));
  }
  return {worst <= 1e-12, "max |phi_m(u^n) - delta| = " + sci(worst)};
}

Outcome full_cli_run() {
  const auto t0 = Clock::now();
  FILE* p = popen("\"" HNN_FORGE_BIN "\" run --builtin z4-sigma2 2>&1", "r");
  if (p == nullptr) return {false, "cannot start hnn-forge"};
  std::string out;
  char buf[1024];
  while (std::fgets(buf, sizeof buf, p) != nullptr) out += buf;
  const int status = pclose(p);
  const double secs = seconds_since(t0);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  const bool overall = out.find("overall: pass") != std::string::npos;
  return {code == 0 && overall && secs < 120.0,
          "exit " + std::to_string(code) + ", overall " + (overall ? "pass" : "FAIL") + ", " + sci(secs) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"HNN relation on the Fock space", hnn_relation},
      {"expectation identities", lemma_iso},
      {"Haar invariance", haar_invariance},
      {"GNS consistency", gns_consistency},
      {"Julg-Valette operator", julg_valette},
      {"homotopy", homotopy_path},
      {"trivial family", trivial_family},
      {"full CLI run", full_cli_run},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
  return failed == 0 ? 0 : 1;
}
