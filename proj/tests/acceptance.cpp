// Acceptance runner: one PASS/FAIL line per criterion. `--only N` runs a single
// criterion, `--seed S` reseeds the randomized suite.

#include "oracles.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace flagforge;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << " [failed: " << what << "]";
    }
  }
};

Poly sum_of_squares(std::size_t nvars) {
  Poly f(nvars);
  for (std::size_t i = 1; i < nvars; ++i) f += Poly::variable(nvars, i) * Poly::variable(nvars, i);
  return f;
}

void ac1(Outcome& o, std::uint64_t) {
  for (int k = 1; k <= 3; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto ex = antisym_example(k);
    const ProjDistribution g = descend_form(ex.omega, 3);
    const FieldsDistribution f = fields_distribution({ex.field}, 3);
    const FlagReport r = verify_flag(f, g);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string tag = "k=" + std::to_string(k);
    o.require(g.degree() == k, tag + " deg omega");
    o.require(contract(radial_field(4), ex.omega).is_zero(), tag + " Euler");
    o.require(contract(ex.field, ex.omega).is_zero(), tag + " tangency");
    o.require(f.total_degree() == k + 1, tag + " deg X");
    o.require(r.inequality_verdicts.at("theorem1") == Verdict::sharp && r.deg_upper == r.deg_lower - 1, tag + " sharp");
    o.require(secs < 1.0, tag + " time");
  }
  o.notes << " deg G = deg F - 1 for k = 1, 2, 3";
}

void ac2(Outcome& o, std::uint64_t) {
  const std::vector<std::uint64_t> primes{5, 7, 11};
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 1; k <= 2; ++k) {
    const auto ideal = singular_ideal(descend_form(antisym_example(k).omega, 3));
    const IsolatednessReport rep = isolatedness_evidence(ideal, 3, primes);
    o.require(rep.counts.size() == 3, "k=" + std::to_string(k) + " primes accepted");
    for (const auto& c : rep.counts) {
      const bool exact = c.sample.size() == 2 && c.sample[0].coords == std::vector<std::uint64_t>{1, 0, 0, 0} &&
                         c.sample[1].coords == std::vector<std::uint64_t>{0, 1, 0, 0};
      o.require(exact, "k=" + std::to_string(k) + " p=" + std::to_string(c.prime) + " points");
    }
    o.require(rep.verdict == IsolatednessVerdict::isolated, "k=" + std::to_string(k) + " verdict");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 10.0, "time");
  o.notes << " {(1:0:0:0), (0:1:0:0)} over F_5, F_7, F_11";
}

void ac3(Outcome& o, std::uint64_t) {
  const auto t0 = std::chrono::steady_clock::now();
  int cases = 0;
  std::vector<std::string> bad;
  for (int n = 3; n <= 8; ++n) {
    for (int m = 2; m <= 6; ++m) {
      for (int d = 0; d <= 20; ++d) {
        const bott::VanishingReport r = bott::vanishing_report(n, d, m);
        ++cases;
        if (r.chain_holds != (r.exceptional == bott::Exceptional::none)) {
          bad.push_back("(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ",d=" + std::to_string(d) +
                        ",exc=" + bott::to_string(r.exceptional) + ",chain=" + (r.chain_holds ? "1" : "0") + ")");
        }
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.notes << " " << cases << " cases, " << bad.size() << " counterexamples";
  for (const auto& b : bad) o.notes << " " << b;
  o.require(bad.empty(), "chain_holds == no exceptional condition");
  o.require(secs < 30.0, "time");
}

void ac4(Outcome& o, std::uint64_t) {
  const auto t0 = std::chrono::steady_clock::now();
  long checks = 0;
  for (int n = 1; n <= 5; ++n) {
    for (int k = -8; k <= 8; ++k) {
      for (int p = 0; p <= n; ++p) {
        for (int q = 0; q <= n; ++q) {
          ++checks;
          if (bott::h_forms(n, p, k, q) != bott::h_forms(n, n - p, -k, n - q)) {
            o.require(false, "Serre duality at n=" + std::to_string(n) + " p=" + std::to_string(p) +
                                 " k=" + std::to_string(k) + " q=" + std::to_string(q));
          }
          // Omega^p(k) = wedge^{n-p} T(k - n - 1).
          if (bott::h_polyvectors(n, n - p, k - n - 1, q) != bott::h_forms(n, p, k, q)) {
            o.require(false, "polyvector table at n=" + std::to_string(n) + " r=" + std::to_string(n - p) +
                                 " t=" + std::to_string(k - n - 1) + " s=" + std::to_string(q));
          }
        }
      }
    }
    for (int k = 0; k <= 8; ++k) {
      o.require(bott::h_forms(n, 0, k, 0) == oracle::monomial_count(n, k),
                "h0(O(" + std::to_string(k) + ")) on P^" + std::to_string(n));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 10.0, "time");
  o.notes << " " << checks << " (n,p,k,q) tuples";
}

void divide_case(Outcome& o, const std::string& tag, const FieldsDistribution& lower, const ProjDistribution& upper) {
  const PForm theta = contraction_chain(lower);
  const PForm& omega = upper.omega();
  o.require(wedge(theta, omega).is_zero(), tag + " Theta^omega = 0");
  std::optional<PForm> eta;
  try {
    eta = divide_by_form(theta, omega);
  } catch (const std::domain_error&) {
  }
  if (!eta) {
    o.require(false, tag + " no eta with omega^eta = Theta");
    return;
  }
  o.require(wedge(omega, *eta) == theta, tag + " omega^eta == Theta");
  const int deg_eta = eta->is_zero() ? 0 : eta->coefficient_degree().value();
  o.require(deg_eta == theta.coefficient_degree().value() - omega.coefficient_degree().value(), tag + " deg eta");
  // deg F + 1 = deg Theta = deg G + 1 + deg eta.
  o.require(lower.total_degree() == upper.degree() + deg_eta, tag + " degree bookkeeping");
  o.notes << " " << tag << ": deg eta = " << deg_eta << ";";
}

void ac5(Outcome& o, std::uint64_t) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ex = antisym_example(1);
  divide_case(o, "disti k=1", fields_distribution({ex.field}, 3), descend_form(ex.omega, 3));
  const Poly f = sum_of_squares(5);
  const auto flag1 = hamiltonian_flag(f, 2, 4, {1});
  divide_case(o, "Hamiltonian {H1}", flag1.lower, flag1.upper);
  const auto flag2 = hamiltonian_flag(f, 2, 4, {1, 2});
  divide_case(o, "Hamiltonian {H1,H2}", flag2.lower, flag2.upper);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 5.0, "time");
}

void ac6(Outcome& o, std::uint64_t) {
  const auto t0 = std::chrono::steady_clock::now();
  const Poly f = sum_of_squares(5);
  const auto cands = hamiltonian_fields(f, 4);
  auto find = [&](int index, PatternOrigin origin) -> const HamiltonianCandidate* {
    for (const auto& c : cands) {
      if (c.index == index && c.origin == origin) return &c;
    }
    return nullptr;
  };
  const auto* h1 = find(1, PatternOrigin::nominal);
  const auto* h2 = find(2, PatternOrigin::nominal);
  const auto* h2c = find(2, PatternOrigin::corrected);
  const auto* h3 = find(3, PatternOrigin::nominal);
  o.require(h1 && h1->valid, "H1 validates");
  o.require(h3 && h3->valid, "H3 validates");
  const auto d = [&](std::size_t i) { return f.derivative(i); };
  const Poly expected = Rational(-2) * d(1) * d(3) + Rational(2) * d(2) * d(4);
  o.require(h2 && !h2->valid && h2->residue == expected, "nominal H2 residue");
  o.require(h2c && h2c->valid, "corrected H2 validates");
  for (const auto& b : bracket_table(validated_fields(cands))) {
    o.notes << " [H" << b.i << ",H" << b.j << "]=" << (b.vanishes ? "0" : to_string(b.bracket)) << ";";
    o.require(b.vanishes, "[H" + std::to_string(b.i) + ",H" + std::to_string(b.j) + "] = 0");
  }
  const ProjDistribution g = kupka_form(f, 2, 4);
  o.require(g.degree() == 1, "kupka degree k-1");
  o.require(contract(radial_field(5), g.omega()).is_zero(), "kupka Euler relation");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 5.0, "time");
}

void ac7(Outcome& o, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  oracle::Gen gen(seed);
  const int cases = 200;
  int fails[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < cases; ++i) {
    const std::size_t nvars = static_cast<std::size_t>(gen.uniform(2, 5));
    const std::size_t p = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(nvars) - 1));
    const std::size_t q = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(nvars - p) - 1));
    const PForm a = gen.form(nvars, p, gen.uniform(0, 3));
    const PForm b = gen.form(nvars, q, gen.uniform(0, 3));
    // d(a ^ b) = da ^ b + (-1)^p a ^ db
    PForm rhs = wedge(exterior_derivative(a), b);
    rhs += (p % 2 == 0 ? Rational(1) : Rational(-1)) * wedge(a, exterior_derivative(b));
    if (!(exterior_derivative(wedge(a, b)) == rhs)) ++fails[0];
    if (!exterior_derivative(exterior_derivative(a)).is_zero()) ++fails[1];
    if (!(wedge(a, b) == ((p * q) % 2 == 0 ? Rational(1) : Rational(-1)) * wedge(b, a))) ++fails[2];
    const MultiVector x = gen.field(nvars, gen.uniform(0, 2));
    const MultiVector y = gen.field(nvars, gen.uniform(0, 2));
    const MultiVector z = gen.field(nvars, gen.uniform(0, 2));
    const MultiVector jacobi = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                               lie_bracket(z, lie_bracket(x, y));
    if (!jacobi.is_zero()) ++fails[3];
    const int e = gen.uniform(0, 4);
    const Poly poly = gen.homogeneous(nvars, e, 4);
    if (!(contract(radial_field(nvars), differential(poly)).component(0) == Rational(e) * poly)) ++fails[4];
  }
  const char* names[5] = {"antiderivation", "d^2 = 0", "graded anticommutativity", "Jacobi", "Euler identity"};
  for (int i = 0; i < 5; ++i) {
    o.notes << " " << names[i] << " " << cases - fails[i] << "/" << cases << ";";
    o.require(fails[i] == 0, names[i]);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 30.0, "time");
  o.notes << " seed " << seed;
}

void ac8(Outcome& o, std::uint64_t) {
  o.require(generic_codim1_singular_count(3, 1) == 5, "n=3, k=1 gives 5");
  o.require(generic_codim1_singular_count(2, 2) == 7, "n=2, k=2 gives 7");
  for (int n = 1; n <= 10; ++n) {
    for (int k = 0; k <= 10; ++k) {
      try {
        (void)generic_codim1_singular_count(n, k);
      } catch (const std::domain_error&) {
        o.require(false, "integral at n=" + std::to_string(n) + ", k=" + std::to_string(k));
      }
    }
  }
  o.notes << " ((k+1)^{n+1} - (-1)^{n+1})/(k+2) integral for n, k <= 10";
}

void ac9(Outcome& o, std::uint64_t) {
  const auto flag = hamiltonian_flag(sum_of_squares(5), 2, 4, {1});
  const FlagReport r = verify_flag(flag.lower, flag.upper);
  const std::vector<FlagReport> reports{r};
  const ChainVerdict v = audit_inequalities(reports);
  o.require(r.deg_lower == 1 && r.deg_upper == 1, "Hamiltonian chain degrees [1, 1]");
  o.require(v.holds, "monotone chain holds");
  const std::vector<ChainMember> injected{{1, 3}, {2, 2}};
  const ChainVerdict w = audit_chain(injected);
  o.require(!w.holds && w.violations == std::vector<std::size_t>{0}, "injected [3, 2] reports a violation");
  o.notes << " [" << r.deg_lower << ", " << r.deg_upper << "] holds" << (v.all_equal ? " with equality" : "")
          << "; [3, 2] violation at index 0";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flagforge acceptance criteria"};
  int only = 0;
  std::uint64_t seed = 20240611;
  app.add_option("--only", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
  app.add_option("--seed", seed, "Seed for the randomized suite");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<void(Outcome&, std::uint64_t)>>> criteria{
      {"example disti reproduction", ac1},
      {"singular locus of example disti", ac2},
      {"Koszul vanishing sweep", ac3},
      {"Bott cross-validation", ac4},
      {"division bookkeeping", ac5},
      {"Hamiltonian example audit", ac6},
      {"exterior-calculus properties", ac7},
      {"generic singular count", ac8},
      {"degree chain audit", ac9},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o, seed);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "AC" << i + 1 << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << static_cast<long>(secs * 1000) << " ms):" << o.notes.str() << '\n';
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
