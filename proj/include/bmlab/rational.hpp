#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace bmlab {

/// Exact rational number, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

/// A point or vector in R^dim with exact coordinates. Length is the dimension.
using Point = std::vector<Rational>;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bounded search ran out of iterations before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// num/den in lowest terms. Throws InvalidArgument when den is zero.
Rational fraction(long num, long den);

/// Parses "p/q", "p", or a finite decimal such as "0.125".
Rational parse_rational(std::string_view text);

/// Always "num/den", also for integers ("3/1").
std::string to_string(const Rational& r);

double to_double(const Rational& r);

Rational abs(const Rational& r);

/// Largest integer <= r.
mpz_class floor(const Rational& r);

/// r^k for k >= 0.
Rational pow(const Rational& r, int k);

/// Nearest rational with denominator 2^bits.
Rational round_dyadic(double value, int bits = 40);

/// Interpolation weight t = p/q with 0 < t < 1.
class Weight {
 public:
  explicit Weight(Rational t);
  static Weight parse(std::string_view text) { return Weight(parse_rational(text)); }

  const Rational& value() const { return t_; }
  Rational complement() const { return Rational(1) - t_; }
  std::int64_t num() const;
  /// Refinement factor of tA + (1-t)B.
  std::int64_t den() const;

 private:
  Rational t_;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Rational& s, const Point& a);
Rational dot(const Point& a, const Point& b);
Rational norm_sq(const Point& a);
Rational dist_sq(const Point& a, const Point& b);
Point zero_point(int dim);
std::string to_string(const Point& p);

}  // namespace bmlab
