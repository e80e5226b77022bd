#pragma once

// Brute-force common zeros over F_p on P^n, and the cross-prime point counts
// used as (heuristic) evidence that a singular set is zero-dimensional.

#include "flagforge/projective.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace flagforge {

/// A point of P^n(F_p): first nonzero coordinate equal to 1.
struct ModPoint {
  std::vector<std::uint64_t> coords;
  auto operator<=>(const ModPoint&) const = default;
};

inline std::string to_string(const ModPoint& pt) {
  std::string out = "(";
  for (std::size_t i = 0; i < pt.coords.size(); ++i) {
    if (i) out += ':';
    out += std::to_string(pt.coords[i]);
  }
  return out + ")";
}

/// Worker count: FLAGFORGE_THREADS if set to a positive integer, else the
/// hardware concurrency, else 1.
inline unsigned worker_count() {
  if (const char* env = std::getenv("FLAGFORGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace detail {

inline std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

inline void check_enumeration(int n, std::uint64_t p) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  // Keep p^{n+1} well inside 64 bits.
  if (static_cast<double>(n + 1) * std::log2(static_cast<double>(p)) > 40) {
    throw std::invalid_argument("P^" + std::to_string(n) + "(F_" + std::to_string(p) + ") is too large to enumerate");
  }
}

/// Points are numbered block by block: block l holds the points whose first
/// nonzero coordinate is z_l, and inside a block the free coordinates
/// z_{l+1}..z_n are read as base-p digits, most significant first.
struct PointIndex {
  int n;
  std::uint64_t p;
  std::vector<std::uint64_t> block_start;  // n + 2 entries

  PointIndex(int n_, std::uint64_t p_) : n(n_), p(p_) {
    block_start.push_back(0);
    for (int l = 0; l <= n; ++l) block_start.push_back(block_start.back() + ipow(p, n - l));
  }
  std::uint64_t size() const { return block_start.back(); }

  void point(std::uint64_t index, std::vector<std::uint64_t>& coords) const {
    int l = 0;
    while (index >= block_start[static_cast<std::size_t>(l) + 1]) ++l;
    std::uint64_t offset = index - block_start[static_cast<std::size_t>(l)];
    std::fill(coords.begin(), coords.end(), 0);
    coords[static_cast<std::size_t>(l)] = 1;
    for (int i = n; i > l; --i) {
      coords[static_cast<std::size_t>(i)] = offset % p;
      offset /= p;
    }
  }
};

}  // namespace detail

/// All (p^{n+1}-1)/(p-1) points, by leading position and then lexicographically:
/// for n = 1, p = 3 this is (1:0), (1:1), (1:2), (0:1).
inline std::vector<ModPoint> enumerate_points(int n, std::uint64_t p) {
  detail::check_enumeration(n, p);
  const detail::PointIndex idx(n, p);
  std::vector<ModPoint> out;
  out.reserve(idx.size());
  std::vector<std::uint64_t> coords(static_cast<std::size_t>(n) + 1);
  for (std::uint64_t i = 0; i < idx.size(); ++i) {
    idx.point(i, coords);
    out.push_back({coords});
  }
  return out;
}

inline std::uint64_t projective_point_count(int n, std::uint64_t p) {
  detail::check_enumeration(n, p);
  return detail::PointIndex(n, p).size();
}

/// Points of P^n(F_p) where every poly vanishes, in enumeration order. The range
/// is cut into contiguous chunks, one per worker, and concatenated in order.
inline std::vector<ModPoint> common_zeros_mod_p(std::span<const Poly> polys, int n, std::uint64_t p) {
  detail::check_enumeration(n, p);
  const std::size_t nvars = static_cast<std::size_t>(n) + 1;
  std::vector<ModPoly> reduced;
  for (const auto& f : polys) {
    if (f.nvars() != nvars) throw DimensionMismatch("polynomial not on z0..z" + std::to_string(n));
    if (f.homogeneous_degree().is_mixed()) throw NotHomogeneous("zeros on P^n need homogeneous polynomials");
    reduced.push_back(f.reduce_mod(p));
  }

  const detail::PointIndex idx(n, p);
  const std::uint64_t total = idx.size();
  const std::uint64_t workers = std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(1, total / 256));
  std::vector<std::vector<ModPoint>> parts(workers);
  auto scan = [&](std::uint64_t w) {
    const std::uint64_t lo = total * w / workers;
    const std::uint64_t hi = total * (w + 1) / workers;
    std::vector<std::uint64_t> coords(nvars);
    for (std::uint64_t i = lo; i < hi; ++i) {
      idx.point(i, coords);
      bool zero = true;
      for (const auto& g : reduced) {
        if (g.evaluate(coords) != 0) {
          zero = false;
          break;
        }
      }
      if (zero) parts[w].push_back({coords});
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(scan, w);
  }
  std::vector<ModPoint> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

inline std::vector<ModPoint> common_zeros_mod_p(const std::vector<Poly>& polys, int n, std::uint64_t p) {
  return common_zeros_mod_p(std::span<const Poly>(polys), n, p);
}

/// The normalized reduction of a rational projective point, or nullopt if p
/// divides a denominator or the point reduces to zero.
inline std::optional<ModPoint> reduce_point(std::span<const Rational> pt, std::uint64_t p) {
  ModPoint out;
  for (const auto& c : pt) {
    if (Integer(c.get_den()) % p == 0) return std::nullopt;
    out.coords.push_back(residue(c, p));
  }
  auto lead = std::find_if(out.coords.begin(), out.coords.end(), [](auto c) { return c != 0; });
  if (lead == out.coords.end()) return std::nullopt;
  const std::uint64_t inv = inverse_mod(*lead, p);
  for (auto& c : out.coords) c = mul_mod(c, inv, p);
  return out;
}

/// Why a prime was left out of the evidence.
struct RejectedPrime {
  std::uint64_t prime = 0;
  std::string reason;
};

/// Bad reduction: p is not prime, divides a coefficient denominator, or divides
/// the numerator of a leading coefficient (the reduction would drop a term).
inline std::optional<std::string> bad_reduction(std::span<const Poly> polys, std::uint64_t p) {
  if (!is_prime(p)) return std::to_string(p) + " is not prime";
  for (const auto& f : polys) {
    for (const auto& [m, c] : f.terms()) {
      if (Integer(c.get_den()) % p == 0) return "divides a coefficient denominator";
    }
    if (!f.is_zero() && Integer(f.leading_coefficient().get_num()) % p == 0) return "divides a leading coefficient";
  }
  return std::nullopt;
}

enum class IsolatednessVerdict { isolated, positive_dimensional, degenerate, inconclusive };

inline std::string to_string(IsolatednessVerdict v) {
  switch (v) {
    case IsolatednessVerdict::isolated:
      return "evidence-isolated";
    case IsolatednessVerdict::positive_dimensional:
      return "evidence-positive-dimensional";
    case IsolatednessVerdict::degenerate:
      return "degenerate";
    case IsolatednessVerdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

struct PrimeCount {
  std::uint64_t prime = 0;
  std::uint64_t zeros = 0;
  std::uint64_t points = 0;  // size of P^n(F_p)
  std::vector<ModPoint> sample;  // the zeros themselves, when there are few
};

/// Heuristic only: point counts over several primes say nothing certain about
/// the dimension over C.
struct IsolatednessReport {
  int n = 0;
  std::vector<PrimeCount> counts;
  std::vector<RejectedPrime> rejected;
  IsolatednessVerdict verdict = IsolatednessVerdict::inconclusive;
  static constexpr bool heuristic = true;
};

inline constexpr std::size_t kSampleLimit = 32;

/// Verdict rules: an ideal with no nonzero generator is degenerate; equal counts
/// over every accepted prime suggest finitely many points; counts that grow with
/// p and reach at least p suggest a curve or more; anything else is inconclusive.
inline IsolatednessReport isolatedness_evidence(std::span<const Poly> polys, int n,
                                                std::span<const std::uint64_t> primes) {
  if (primes.size() < 3) throw std::invalid_argument("isolatedness evidence needs at least three primes");
  IsolatednessReport rep;
  rep.n = n;
  std::vector<Poly> nonzero;
  for (const auto& f : polys) {
    if (!f.is_zero()) nonzero.push_back(f);
  }
  std::vector<std::uint64_t> sorted(primes.begin(), primes.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  for (std::uint64_t p : sorted) {
    if (auto why = bad_reduction(polys, p)) {
      rep.rejected.push_back({p, *why});
      continue;
    }
    const auto zeros = common_zeros_mod_p(polys, n, p);
    PrimeCount pc{p, zeros.size(), projective_point_count(n, p), {}};
    if (zeros.size() <= kSampleLimit) pc.sample = zeros;
    rep.counts.push_back(std::move(pc));
  }

  if (nonzero.empty()) {
    rep.verdict = IsolatednessVerdict::degenerate;
  } else if (rep.counts.size() >= 2) {
    bool equal = true;
    bool increasing = true;
    for (std::size_t i = 1; i < rep.counts.size(); ++i) {
      equal = equal && rep.counts[i].zeros == rep.counts[0].zeros;
      increasing = increasing && rep.counts[i].zeros > rep.counts[i - 1].zeros;
    }
    if (equal) {
      rep.verdict = IsolatednessVerdict::isolated;
    } else if (increasing && rep.counts.back().zeros >= rep.counts.back().prime) {
      rep.verdict = IsolatednessVerdict::positive_dimensional;
    }
  }
  return rep;
}

inline IsolatednessReport isolatedness_evidence(const std::vector<Poly>& polys, int n,
                                                const std::vector<std::uint64_t>& primes) {
  return isolatedness_evidence(std::span<const Poly>(polys), n, std::span<const std::uint64_t>(primes));
}

// ---------------------------------------------------------------------------
// Rational points.

inline void check_rational_point(std::span<const Rational> pt, std::size_t nvars) {
  if (pt.size() != nvars) throw DimensionMismatch("point has the wrong number of coordinates");
  if (std::all_of(pt.begin(), pt.end(), [](const Rational& c) { return c == 0; })) {
    throw std::invalid_argument("the zero vector is not a projective point");
  }
}

inline bool vanishes_at(std::span<const Poly> polys, std::span<const Rational> pt) {
  return std::all_of(polys.begin(), polys.end(), [&](const Poly& f) { return f.evaluate(pt) == 0; });
}

inline bool is_singular_point(const ProjDistribution& dist, std::span<const Rational> pt) {
  check_rational_point(pt, static_cast<std::size_t>(dist.n()) + 1);
  const auto ideal = singular_ideal(dist);
  return vanishes_at(ideal, pt);
}

inline bool is_singular_point(const FieldsDistribution& dist, std::span<const Rational> pt) {
  check_rational_point(pt, static_cast<std::size_t>(dist.n()) + 1);
  const auto ideal = singular_ideal(dist);
  return vanishes_at(ideal, pt);
}

/// Pointwise Kupka test: the point is singular for omega and d omega does not
/// vanish there.
inline bool is_kupka_point(const ProjDistribution& dist, std::span<const Rational> pt) {
  if (!is_singular_point(dist, pt)) return false;
  return !evaluate(exterior_derivative(dist.omega()), pt).empty();
}

}  // namespace flagforge
