#pragma once

// Exact rational scalars. Everything downstream is a rank or membership
// decision, so there is no floating point anywhere in the engine.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pbwforge {

/// Arbitrary-precision rational, always canonical (lowest terms, den > 0).
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Malformed or inconsistent input (bad shapes, degenerate metric, ...).
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A tensor space would exceed the configured dimension limit.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Scalar make_scalar(long num, long den = 1) {
  if (den == 0) throw input_error("zero denominator");
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p" or "p/q". Rejects anything else (no decimals, no spaces).
inline Scalar parse_scalar(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw input_error("not an exact rational: '" + std::string(text) + "'");
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw input_error("zero denominator in '" + std::string(text) + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

/// "p/q" or "p" when the denominator is one.
inline std::string format_scalar(const Scalar& q) { return q.get_str(10); }

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// Random rational p/q with |p| <= bound and 1 <= q <= bound.
inline Scalar random_rational(std::mt19937_64& rng, int bound = 20) {
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, bound);
  return make_scalar(num(rng), den(rng));
}

/// Nonzero variant of random_rational.
inline Scalar random_nonzero_rational(std::mt19937_64& rng, int bound = 20) {
  for (;;) {
    Scalar q = random_rational(rng, bound);
    if (q != 0) return q;
  }
}

}  // namespace pbwforge
