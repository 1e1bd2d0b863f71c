#pragma once

// Independent reimplementations used as test oracles. They work on plain
// vectors and never call into the library's measure, majorization or bound
// code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

// Largest sum over all k-element subsets, by enumerating subsets.
inline Vec top_k_sums(const Vec& v, std::size_t len) {
  Vec padded = v;
  padded.resize(len, 0.0);
  Vec best(len + 1, -std::numeric_limits<double>::infinity());
  const std::size_t n = padded.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double s = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        s += padded[i];
        ++k;
      }
    }
    best[k] = std::max(best[k], s);
  }
  return best;
}

// x is majorized by y (entries need not be sorted).
inline bool majorized(const Vec& x, const Vec& y, double slack = 1e-12) {
  const std::size_t len = std::max(x.size(), y.size());
  const Vec sx = top_k_sums(x, len);
  const Vec sy = top_k_sums(y, len);
  for (std::size_t k = 1; k <= len; ++k) {
    if (sx[k] > sy[k] + slack) return false;
  }
  return true;
}

// "Equivalent", "ConvertibleAtoB", "ConvertibleBtoA" or "Incomparable".
inline std::string classify(const Vec& chi, const Vec& eta) {
  const bool forward = majorized(chi, eta);
  const bool backward = majorized(eta, chi);
  if (forward && backward) return "Equivalent";
  if (forward) return "ConvertibleAtoB";
  if (backward) return "ConvertibleBtoA";
  return "Incomparable";
}

inline Vec normalized(Vec v) {
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= s;
  return v;
}

// Measures straight from their defining formulas; mu need not be sorted.
inline double entropy_bits(const Vec& mu) {
  double h = 0.0;
  for (double p : mu) h += p > 0.0 ? -p * std::log(p) / std::log(2.0) : 0.0;
  return h;
}

inline double concurrence_sq(const Vec& mu) {
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = i + 1; j < mu.size(); ++j) s += mu[i] * mu[j];
  return 4.0 * s;
}

inline double negativity(const Vec& mu) {
  double s = 0.0;
  for (double p : mu) s += std::sqrt(p);
  return (s * s - 1.0) / 2.0;
}

inline double log_negativity(const Vec& mu, double base) {
  double s = 0.0;
  for (double p : mu) s += std::sqrt(p);
  return std::log(s * s) / std::log(base);
}

inline double renyi_nats(const Vec& mu, double delta) {
  double s = 0.0;
  for (double p : mu) s += p > 0.0 ? std::pow(p, delta) : 0.0;
  return std::log(s) / (1.0 - delta);
}

// One 3x3 shared-basis superposition alpha|psi> + beta|phi> with component
// probabilities a, b in basis order.
struct Instance {
  double alpha, beta;
  Vec a, b;

  Vec gamma() const {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double amp = alpha * std::sqrt(a[i]) + beta * std::sqrt(b[i]);
      c[i] = amp * amp;
    }
    return normalized(c);
  }
  Vec roots() const {
    Vec r;
    for (double x : a) r.push_back(std::sqrt(x));
    for (double x : b) r.push_back(std::sqrt(x));
    return r;
  }
};

// Both sides of one bound: lower_lhs <= lower_rhs and upper_lhs <= upper_rhs.
struct Sides {
  std::optional<double> lower_lhs, lower_rhs, upper_lhs, upper_rhs;
  Vec chain;
};

inline double lg(double x, double base) { return std::log(x) / std::log(base); }
inline double min_of(const Vec& v) { return *std::min_element(v.begin(), v.end()); }
inline double max_of(const Vec& v) { return *std::max_element(v.begin(), v.end()); }

// T1: a^2 N(psi) + b^2 N(phi) <= N(Gamma) <= a^2 N(psi) + b^2 N(phi) + alpha beta
inline Sides bound_t1(const Instance& s) {
  const double mixed = s.alpha * s.alpha * negativity(s.a) + s.beta * s.beta * negativity(s.b);
  const double n = negativity(s.gamma());
  return {mixed, n, n, mixed + s.alpha * s.beta, {}};
}

// T2: (1/2)[9(alpha+beta)^2 min(mu)^2 - 1] <= N(Gamma) <= (1/2)[9(alpha+beta)^2 max(mu)^2 - 1]
inline Sides bound_t2(const Instance& s) {
  const double w = (s.alpha + s.beta) * (s.alpha + s.beta);
  const double lo = min_of(s.roots()), hi = max_of(s.roots());
  const double n = negativity(s.gamma());
  return {(9.0 * w * lo * lo - 1.0) / 2.0, n, n, (9.0 * w * hi * hi - 1.0) / 2.0, {}};
}

// T3: LN(Gamma) >= (1/2){LN(psi) + LN(phi)} + 2 + log(alpha beta)
inline Sides bound_t3(const Instance& s, double base) {
  const double rhs = (log_negativity(s.a, base) + log_negativity(s.b, base)) / 2.0 + 2.0 + lg(s.alpha * s.beta, base);
  return {rhs, log_negativity(s.gamma(), base), std::nullopt, std::nullopt, {}};
}

// T4: 2 log(3(alpha+beta) min(xi)) <= LN(Gamma) <= 2 log(3(alpha+beta) max(xi))
inline Sides bound_t4(const Instance& s, double base) {
  const double ln_gamma = log_negativity(s.gamma(), base);
  const double k = 3.0 * (s.alpha + s.beta);
  return {2.0 * lg(k * min_of(s.roots()), base), ln_gamma, ln_gamma, 2.0 * lg(k * max_of(s.roots()), base), {}};
}

// T5: S(Gamma) >= ln{3 (alpha beta)^(2 delta)} / (1 - delta) + S(psi) + S(phi)
inline Sides bound_t5(const Instance& s, double delta) {
  const double rhs = std::log(3.0 * std::pow(s.alpha * s.beta, 2.0 * delta)) / (1.0 - delta) +
                     renyi_nats(s.a, delta) + renyi_nats(s.b, delta);
  return {rhs, renyi_nats(s.gamma(), delta), std::nullopt, std::nullopt, {}};
}

// T6: (2 delta / (1 - delta)) ln min(eta) <= S(Gamma) <= (2 delta / (1 - delta)) ln max(eta),
// eta_i = alpha sqrt(a_i) + beta sqrt(b_i).
inline Sides bound_t6(const Instance& s, double delta) {
  Vec eta;
  for (std::size_t i = 0; i < s.a.size(); ++i) eta.push_back(s.alpha * std::sqrt(s.a[i]) + s.beta * std::sqrt(s.b[i]));
  const double k = 2.0 * delta / (1.0 - delta);
  const double sg = renyi_nats(s.gamma(), delta);
  return {k * std::log(min_of(eta)), sg, sg, k * std::log(max_of(eta)), {}};
}

// T7: E(Gamma) <= (alpha sqrt(E(psi) + 1) + beta sqrt(E(phi) + 1))^2
inline Sides bound_t7(const Instance& s) {
  const double r = s.alpha * std::sqrt(entropy_bits(s.a) + 1.0) + s.beta * std::sqrt(entropy_bits(s.b) + 1.0);
  return {std::nullopt, std::nullopt, entropy_bits(s.gamma()), r * r, {}};
}

// T8: E(Gamma) + alpha log2 alpha + beta log2 beta <= alpha E(psi) + beta E(phi)
inline Sides bound_t8(const Instance& s) {
  const auto xlx = [](double x) { return x > 0.0 ? x * std::log(x) / std::log(2.0) : 0.0; };
  return {std::nullopt, std::nullopt, entropy_bits(s.gamma()),
          s.alpha * entropy_bits(s.a) + s.beta * entropy_bits(s.b) - xlx(s.alpha) - xlx(s.beta), {}};
}

// T9: E(Gamma) <= 2 [log2 3(alpha+beta)] max(gamma), read as log2(3(alpha+beta)).
inline Sides bound_t9(const Instance& s) {
  return {std::nullopt, std::nullopt, entropy_bits(s.gamma()),
          2.0 * std::log(3.0 * (s.alpha + s.beta)) / std::log(2.0) * max_of(s.roots()), {}};
}

// The six-term chain for equal weights, with the bracketed coefficients taken
// as the listed probabilities:
//   T(min(alpha_2,beta_2)) <= T(min(a_2,b_2)) <= min N <= max N
//     <= T(max(alpha_0,beta_0)) <= T(min(a_0,b_0)),
// T(x) = (1/2)[9(alpha+beta)^2 x^2 - 1].
inline Sides chain(const Instance& s, const Instance& p) {
  const double w = (s.alpha + s.beta) * (s.alpha + s.beta);
  const auto t = [w](double x) { return (9.0 * w * x * x - 1.0) / 2.0; };
  const double n1 = negativity(s.gamma()), n2 = negativity(p.gamma());
  Sides out;
  out.chain = {t(std::min(p.a[2], p.b[2])), t(std::min(s.a[2], s.b[2])), std::min(n1, n2),
               std::max(n1, n2),            t(std::max(p.a[0], p.b[0])), t(std::min(s.a[0], s.b[0]))};
  // The links around the two negativities double as lower and upper sides.
  out.lower_lhs = out.chain[1];
  out.lower_rhs = out.chain[2];
  out.upper_lhs = out.chain[3];
  out.upper_rhs = out.chain[4];
  return out;
}

// |x - y| <= tol * max(1, |x|, |y|), with equal infinities matching.
inline bool close(double x, double y, double tol) {
  if (std::isinf(x) || std::isinf(y)) return x == y;
  if (std::isnan(x) || std::isnan(y)) return std::isnan(x) && std::isnan(y);
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

inline bool close(const std::optional<double>& x, const std::optional<double>& y, double tol) {
  if (!x || !y) return !x && !y;
  return close(*x, *y, tol);
}

}  // namespace oracle
