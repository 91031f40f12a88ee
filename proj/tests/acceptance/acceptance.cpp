// One line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>

#include "coboundary/classical.hpp"
#include "coboundary/cli.hpp"
#include "coboundary/hopf.hpp"
#include "coboundary/quantum.hpp"

using namespace coboundary;

namespace {

struct Outcome {
  bool ok = true;
  std::string why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

CheckReport run(const std::string& check, std::size_t n, std::function<void(CheckConfig&)> tweak = {}) {
  CheckConfig c;
  c.check = check;
  c.n = n;
  if (tweak) tweak(c);
  return run_check(c);
}

const Json* find_subcheck(const CheckReport& rep, const std::string& name) {
  for (const auto& s : rep.subchecks)
    if (s["name"] == name) return &s;
  return nullptr;
}

int failures = 0;

void criterion(int k, const char* title, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.why = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_seconds > 0) out.require(secs < limit_seconds, "runtime over " + std::to_string(limit_seconds) + " s");
  std::printf("criterion %2d %s: %s (%.2f s)%s%s\n", k, title, out.ok ? "PASS" : "FAIL", secs, out.ok ? "" : ": ",
              out.why.c_str());
  std::fflush(stdout);
  failures += !out.ok;
}

}  // namespace

int main() {
  criterion(1, "classical r-matrix validity", 10, [](Outcome& o) {
    for (std::size_t n : {2, 3}) {
      o.require(is_ad_invariant(schouten_square(standard_r(n))), "[r,r] not invariant, n=" + std::to_string(n));
      o.require(run("schouten", n).passed(), "schouten check, n=" + std::to_string(n));
    }
  });

  criterion(2, "multiplicativity and antipode", 30, [](Outcome& o) {
    for (std::size_t n : {2, 3}) {
      SampleStream s(n, 7);
      const Bivector r = standard_r(n);
      o.require(check_multiplicativity(r, s.pairs(10)).passed(), "multiplicativity, n=" + std::to_string(n));
      o.require(check_antipode(r, s.points(10)).passed(), "antipode, n=" + std::to_string(n));
      o.require(run("multiplicativity", n).passed() && run("antipode", n).passed(), "registry run, n=" + std::to_string(n));
    }
    const auto sym = symbolic_identities(standard_r(2), total_permutation_matrix(2) * epsilon_for(2));
    for (std::size_t k = 0; k < 2; ++k) o.require(sym[k].holds, "symbolic " + sym[k].identity);
  });

  criterion(3, "gauge admissibility", 0, [](Outcome& o) {
    for (std::size_t n : {2, 3}) {
      SampleStream s(n, 7);
      const Bivector r = standard_r(n);
      o.require(check_gauge_identity(r, Scalar(2) * r, s.triples(10)).passed(), "rho = pi_plus, n=" + std::to_string(n));
    }
    const CheckReport rep = run("gauge-classical", 2);
    o.require(rep.passed(), "gauge-classical report");
    for (int k = 0; k < 5; ++k) {
      const std::string off = ", offset " + std::to_string(k);
      const Json* left = find_subcheck(rep, "rho(xy) = pi(x)y + x rho(y)" + off);
      const Json* right = find_subcheck(rep, "rho(yz) = rho(y)z - y pi(z) fails" + off);
      o.require(left && (*left)["status"] == "pass", "left identity" + off);
      o.require(right && (*right)["status"] == "pass" && (*right)["detail"].contains("lhs"), "right witness" + off);
    }
  });

  criterion(4, "translation structure", 10, [](Outcome& o) {
    for (std::size_t n : {2, 3}) {
      SampleStream s(n, 7);
      const Tensor g0 = total_permutation_matrix(n) * epsilon_for(static_cast<int>(n));
      const CheckReport rep = check_translation(standard_r(n), g0, s.points(10));
      o.require(rep.passed() && rep.subchecks.size() >= 3, "translation, n=" + std::to_string(n));
    }
  });

  criterion(5, "jacobi identity", 60, [](Outcome& o) {
    const CheckReport rep = jacobi_check(standard_r(2));
    o.require(rep.passed(), "jacobi");
    o.require(find_subcheck(rep, "cyclic double brackets vanish on 64 coordinate triples") != nullptr, "64 triples");
  });

  criterion(6, "quantum R-matrix and twisted antidiagonal", 30, [](Outcome& o) {
    for (std::size_t n : {2, 3, 4}) o.require(satisfies_qybe(standard_R(n).R, n), "QYBE, n=" + std::to_string(n));
    for (std::size_t n : {2, 3}) o.require(check_eq22(n).passed(), "eq22, n=" + std::to_string(n));
    o.require(!check_eq22(2, G0Choice::identity).passed(), "g0 = I should fail");
  });

  criterion(7, "quantum gauge certification", 600, [](Outcome& o) {
    const CheckReport rep = check_quantum_gauge(2, 6, true);
    o.require(rep.passed(), "gauge-quantum");
    const Json* all = find_subcheck(rep, "all entries of R(v T v) - (v T v)R~ certify");
    o.require(all && (*all)["status"] == "pass" && (*all)["detail"]["entries"] == 16, "16 entries");
    const Json* replay = find_subcheck(rep, "certificates replay exactly");
    o.require(replay && (*replay)["status"] == "pass", "replay");
    const Json* neg = find_subcheck(rep, "negative control (R~ replaced by R) leaves an entry uncertified");
    o.require(neg && !(*neg)["detail"]["uncertified_entries"].empty(), "negative control");
  });

  criterion(8, "isomorphism of the two presentations", 0, [](Outcome& o) {
    for (std::size_t n : {2, 3}) {
      const CheckReport rep = check_isomorphism(n, 6);
      o.require(rep.passed(), "iso, n=" + std::to_string(n));
      for (const auto& s : rep.subchecks)
        if (s["detail"].contains("uncertified")) o.require(s["detail"]["uncertified"].empty(), "uncertified relation");
    }
  });

  criterion(9, "hopf R-matrix chain", 60, [](Outcome& o) {
    for (const char* name : {"Z2", "Sweedler"}) {
      const HopfData h = hopf_catalog(name);
      o.require(!find_R(h, RAnsatz::full(h)).empty(), std::string("empty family for ") + name);
      const CheckReport rep = check_hopf_chain(h, 7);
      o.require(rep.passed(), std::string("chain for ") + name);
      const Json* eq = find_subcheck(rep, "cocycle condition agrees with coassociativity of Dt");
      o.require(eq && (*eq)["detail"]["candidates"] >= 20, "fewer than 20 candidates");
    }
  });

  criterion(10, "determinism", 0, [](Outcome& o) {
    CheckConfig shared;
    const auto configs = expand_suite("all", shared);
    const Json meta = {{"seed", shared.seed}, {"seed_source", "default"}};
    const SuiteResult a = run_suite(configs, meta), b = run_suite(configs, meta);
    o.require(a.exit_code == 0, "suite does not pass");
    o.require(a.document.dump(2) == b.document.dump(2), "reports differ");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
