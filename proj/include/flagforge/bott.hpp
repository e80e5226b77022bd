#pragma once

// Bott's formulae for h^q(P^n, Omega^p(k)) and h^s(P^n, wedge^r T(t)), the
// twist schedule of the Koszul resolution of a 1-form with isolated zeros,
// and the vanishing bookkeeping that yields H^1(P^n, K_2) = 0.

#include "flagforge/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagforge::bott {

enum class SheafKind { forms, polyvectors };

struct BottQuery {
  int n = 1;
  SheafKind kind = SheafKind::forms;
  int rank = 0;   // p for Omega^p, r for wedge^r T
  int twist = 0;  // k or t
  int cohom = 0;  // q or s
};

namespace detail {

/// C(a, b), zero when b < 0 or a < b. A negative upper argument means a case
/// guard was misread, so it is an internal error rather than a value.
inline Integer binom(long a, long b) {
  if (a < 0) throw std::logic_error("binomial with negative upper argument " + std::to_string(a));
  if (b < 0 || a < b) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return out;
}

/// Evaluates independent case guards; at most one may fire.
struct CaseTable {
  std::optional<Integer> value;
  int fired = 0;
  void offer(bool guard, auto&& compute) {
    if (!guard) return;
    ++fired;
    if (fired > 1) throw std::logic_error("two cases of Bott's formula fired for one input");
    value = compute();
  }
  Integer result() const { return value.value_or(Integer(0)); }
};

inline Integer forms_dim(long n, long p, long k, long q) {
  CaseTable table;
  table.offer(q == 0 && k > p, [&] { return Integer(binom(k + n - p, k) * binom(k - 1, p)); });
  table.offer(k == 0 && p == q, [] { return Integer(1); });
  table.offer(q == n && k < p - n, [&] { return Integer(binom(-k + p, -k) * binom(-k - 1, n - p)); });
  return table.result();
}

// The s = n row reads C(-t-1-r, -t-n-1) C(-t-n-2, r); this is what the forms
// table gives under wedge^r T(t) = Omega^{n-r}(t+n+1).
inline Integer polyvectors_dim(long n, long r, long t, long s) {
  CaseTable table;
  table.offer(s == 0 && t + r >= 0, [&] { return Integer(binom(t + n + 1 + r, t + n + 1) * binom(t + n, n - r)); });
  table.offer(t == -n - 1 && n - r == s, [] { return Integer(1); });
  table.offer(s == n && t + n + r + 2 <= 0,
              [&] { return Integer(binom(-t - 1 - r, -t - n - 1) * binom(-t - n - 2, r)); });
  return table.result();
}

}  // namespace detail

inline Integer bott_dim(const BottQuery& q) {
  if (q.n < 1) throw std::out_of_range("projective dimension must be positive");
  if (q.rank < 0 || q.rank > q.n) throw std::out_of_range("rank outside [0, n]");
  if (q.cohom < 0 || q.cohom > q.n) throw std::out_of_range("cohomological degree outside [0, n]");
  return q.kind == SheafKind::forms ? detail::forms_dim(q.n, q.rank, q.twist, q.cohom)
                                    : detail::polyvectors_dim(q.n, q.rank, q.twist, q.cohom);
}

/// h^q(P^n, Omega^p(k)).
inline Integer h_forms(int n, int p, int k, int q) { return bott_dim({n, SheafKind::forms, p, k, q}); }

/// h^s(P^n, wedge^r T(t)).
inline Integer h_polyvectors(int n, int r, int t, int s) { return bott_dim({n, SheafKind::polyvectors, r, t, s}); }

/// t_r = -r(m+2) + d + m + 1 for r = 1..n (index 0 holds t_1).
inline std::vector<int> koszul_twists(int n, int d, int m) {
  if (n < 3 || d < 0 || m < 0) throw std::invalid_argument("koszul_twists needs n >= 3, d >= 0, m >= 0");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int r = 1; r <= n; ++r) out.push_back(-r * (m + 2) + d + m + 1);
  return out;
}

/// Which hypothesis of the degree bound for a 1-dimensional F tangent to a
/// codimension-one G is violated: (i) n even and d = (n/2) m; (ii) n odd and
/// d = ((n-1)/2) m - 1.
enum class Exceptional { none, even_case, odd_case };

inline std::string to_string(Exceptional e) {
  switch (e) {
    case Exceptional::none:
      return "none";
    case Exceptional::even_case:
      return "(i)";
    case Exceptional::odd_case:
      return "(ii)";
  }
  return "?";
}

inline Exceptional exceptional_condition(int n, int d, int m) {
  if (n % 2 == 0 && 2 * d == n * m) return Exceptional::even_case;
  if (n % 2 == 1 && 2 * (d + 1) == (n - 1) * m) return Exceptional::odd_case;
  return Exceptional::none;
}

struct VanishingRow {
  int r = 0;
  int twist = 0;         // t_r
  Integer h_lower;       // h^{r-2}(wedge^r T(t_r))
  Integer h_upper;       // h^{r-1}(wedge^r T(t_r))
  bool lower_required = false;
  bool upper_required = false;

  bool holds() const { return (!lower_required || h_lower == 0) && (!upper_required || h_upper == 0); }
};

struct VanishingReport {
  int n = 0;
  int d = 0;
  int m = 0;
  std::vector<int> twists;          // t_1..t_n
  std::vector<VanishingRow> rows;   // r = 2..n
  bool chain_holds = false;
  Exceptional exceptional = Exceptional::none;
  /// h^0(wedge^2 T(t_2)); nonzero iff t_2 + 2 >= 0, i.e. m <= d - 1.
  Integer conclusion_dimension;
};

/// For n > 3 the isomorphism chain H^1(K_2) = ... = H^{n-3}(K_{n-2}) = H^{n-2}(wedge^n T(t_n))
/// needs h^{r-2} = h^{r-1} = 0 of wedge^r T(t_r) for 3 <= r <= n-1, and finally
/// h^{n-2}(wedge^n T(t_n)) = 0. For n = 3, K_2 = wedge^3 T(t_3) and only h^1 of it matters.
/// The r = 2 row is informational.
inline VanishingReport vanishing_report(int n, int d, int m) {
  VanishingReport rep;
  rep.n = n;
  rep.d = d;
  rep.m = m;
  rep.twists = koszul_twists(n, d, m);
  rep.exceptional = exceptional_condition(n, d, m);
  rep.chain_holds = true;
  for (int r = 2; r <= n; ++r) {
    VanishingRow row;
    row.r = r;
    row.twist = rep.twists[static_cast<std::size_t>(r - 1)];
    row.h_lower = h_polyvectors(n, r, row.twist, r - 2);
    row.h_upper = h_polyvectors(n, r, row.twist, r - 1);
    row.lower_required = r >= 3;
    row.upper_required = r >= 3 && r <= n - 1;
    rep.chain_holds = rep.chain_holds && row.holds();
    rep.rows.push_back(row);
  }
  rep.conclusion_dimension = rep.rows.front().h_lower;
  return rep;
}

struct Theorem1Audit {
  int n = 0;
  int d = 0;
  int m = 0;
  bool in_scope = false;      // m >= 2
  bool condition_i = true;    // d != (n/2) m when n is even
  bool condition_ii = true;   // d != ((n-1)/2) m - 1 when n is odd
  bool hypotheses_met = false;
  std::optional<bool> bound_holds;  // m <= d - 1, asserted only when hypotheses hold
  bool remark_consistent = false;   // the excluded value never equals m + 1
};

/// Audits the degree bound deg(G) <= deg(F) - 1 for a 1-dimensional F of
/// degree d tangent to a codimension-one G of degree m on P^n.
inline Theorem1Audit theorem1_audit(int n, int d, int m) {
  if (n < 3) throw std::invalid_argument("the bound concerns P^n with n >= 3");
  Theorem1Audit out;
  out.n = n;
  out.d = d;
  out.m = m;
  out.in_scope = m >= 2;
  const Exceptional e = exceptional_condition(n, d, m);
  out.condition_i = e != Exceptional::even_case;
  out.condition_ii = e != Exceptional::odd_case;
  out.hypotheses_met = out.in_scope && out.condition_i && out.condition_ii;
  if (out.hypotheses_met) out.bound_holds = m <= d - 1;
  // Excluded value vs m + 1, compared without fractions.
  out.remark_consistent = n % 2 == 0 ? n * m != 2 * (m + 1) : (n - 1) * m != 2 * (m + 1);
  return out;
}

}  // namespace flagforge::bott
