#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <utility>

namespace qd {

// Exact rational number. Thin value wrapper around mpq_class so that Eigen
// and the cyclotomic layer see plain value semantics; gmpxx expression
// templates stay contained in this header.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(long long n) : v_(static_cast<long>(n)) {}
  Rational(int n) : v_(static_cast<long>(n)) {}
  Rational(long n, long d) : v_(n, d) { v_.canonicalize(); }
  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }
  explicit Rational(const mpz_class& n) : v_(n) {}

  const mpq_class& mpq() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational inv() const;
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  std::string str() const { return v_.get_str(); }
  // Parses "n" or "n/d"; throws std::invalid_argument on malformed input.
  static Rational parse(const std::string& s);

  // Rounds to nearest integer (ties toward +inf); used by lattice reductions.
  mpz_class round() const;

private:
  mpq_class v_;
};

struct ArithmeticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ArithmeticError("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

inline Rational Rational::inv() const {
  if (is_zero()) throw ArithmeticError("Rational: inverse of zero");
  return Rational(mpq_class(1 / v_));
}

inline mpz_class Rational::round() const {
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  // fdiv gives floor; bump if remainder >= den/2
  if (2 * r >= den()) q += 1;
  return q;
}

inline Rational Rational::parse(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational::parse: bad literal '" + s + "'");
  q.canonicalize();
  return Rational(std::move(q));
}

}  // namespace qd

namespace Eigen {
template <>
struct NumTraits<qd::Rational> : GenericNumTraits<qd::Rational> {
  typedef qd::Rational Real;
  typedef qd::Rational NonInteger;
  typedef qd::Rational Nested;
  typedef qd::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 30,
  };
  static inline Real epsilon() { return qd::Rational(0); }
  static inline Real dummy_precision() { return qd::Rational(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
