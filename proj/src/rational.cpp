#include "bmlab/rational.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace bmlab {

Rational fraction(long num, long den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw InvalidArgument("empty rational");

  auto is_int = [](const std::string& v) {
    size_t i = (!v.empty() && (v[0] == '-' || v[0] == '+')) ? 1 : 0;
    if (i == v.size()) return false;
    for (; i < v.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string v) { return (!v.empty() && v[0] == '+') ? v.substr(1) : v; };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw InvalidArgument("malformed rational '" + s + "'");
    mpz_class n(strip_plus(num)), d(strip_plus(den));
    if (d == 0) throw InvalidArgument("zero denominator in '" + s + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
    if (ip.empty()) ip = "0";
    if (!is_int(ip) || (!fp.empty() && !is_int(fp)) || (!fp.empty() && (fp[0] == '-' || fp[0] == '+')))
      throw InvalidArgument("malformed rational '" + s + "'");
    mpz_class scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    mpz_class n = mpz_class(ip) * scale + (fp.empty() ? mpz_class(0) : mpz_class(fp));
    Rational r(neg ? mpz_class(-n) : n, scale);
    r.canonicalize();
    return r;
  }
  if (!is_int(s)) throw InvalidArgument("malformed rational '" + s + "'");
  return Rational(mpz_class(strip_plus(s)));
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

mpz_class floor(const Rational& r) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Rational pow(const Rational& r, int k) {
  Rational out = 1;
  for (int i = 0; i < k; ++i) out *= r;
  return out;
}

Rational round_dyadic(double value, int bits) {
  mpz_class den = 1;
  den <<= bits;
  double scaled = std::ldexp(value, bits);
  mpz_class num = std::fabs(scaled) > 9.0e18 ? mpz_class(std::round(scaled))
                                              : mpz_class(static_cast<long>(std::llround(scaled)));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Weight::Weight(Rational t) : t_(std::move(t)) {
  t_.canonicalize();
  if (!(t_ > 0 && t_ < 1)) throw InvalidArgument("weight must satisfy 0 < t < 1, got " + to_string(t_));
  if (!t_.get_den().fits_slong_p()) throw InvalidArgument("weight denominator too large");
}

std::int64_t Weight::num() const { return t_.get_num().get_si(); }
std::int64_t Weight::den() const { return t_.get_den().get_si(); }

Point operator+(const Point& a, const Point& b) {
  Point out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Point operator-(const Point& a, const Point& b) {
  Point out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Point operator*(const Rational& s, const Point& a) {
  Point out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

Rational dot(const Point& a, const Point& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational norm_sq(const Point& a) { return dot(a, a); }

Rational dist_sq(const Point& a, const Point& b) { return norm_sq(a - b); }

Point zero_point(int dim) { return Point(static_cast<size_t>(dim), Rational(0)); }

std::string to_string(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << to_string(p[i]);
  os << ")";
  return os.str();
}

}  // namespace bmlab
