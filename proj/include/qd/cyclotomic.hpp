#pragma once

#include "qd/rational.hpp"

#include <optional>
#include <vector>

namespace qd {

// Per-conductor data: Phi_m and the fully reduced powers of zeta_m.
// Built once per conductor and cached process-wide (single-threaded builds;
// the tables are immutable afterwards).
struct CycTable {
  long m = 1;
  int phi = 1;
  std::vector<long long> cyclo;            // Phi_m coefficients, degree phi
  std::vector<std::vector<Rational>> pw;   // pw[j] = zeta_m^j mod Phi_m, j in [0,m)
};

const CycTable& cyc_table(long m);

// Exact element of the cyclotomic field Q(zeta_m), stored as a polynomial of
// degree < phi(m) in Q[x]/(Phi_m). Conductor 1 holds the rationals; binary
// operations lift both operands to the lcm conductor, and results that turn
// out rational are demoted back to conductor 1 so representations stay
// canonical and comparable across contexts.
class CycScalar {
public:
  CycScalar() : m_(1), c_(1) {}
  CycScalar(long n) : m_(1), c_{Rational(n)} {}
  CycScalar(int n) : m_(1), c_{Rational(static_cast<long>(n))} {}
  CycScalar(const Rational& r) : m_(1), c_{r} {}

  // zeta_m^k
  static CycScalar zeta(long m, long k);

  long conductor() const { return m_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const { return m_ == 1 && c_[0].is_one(); }
  bool is_rational() const { return m_ == 1; }
  const Rational& rat() const;  // throws unless is_rational()

  CycScalar& operator+=(const CycScalar& o);
  CycScalar& operator-=(const CycScalar& o);
  CycScalar& operator*=(const CycScalar& o);
  CycScalar& operator/=(const CycScalar& o);

  friend CycScalar operator+(CycScalar a, const CycScalar& b) { a += b; return a; }
  friend CycScalar operator-(CycScalar a, const CycScalar& b) { a -= b; return a; }
  friend CycScalar operator*(CycScalar a, const CycScalar& b) { a *= b; return a; }
  friend CycScalar operator/(CycScalar a, const CycScalar& b) { a /= b; return a; }
  CycScalar operator-() const;

  friend bool operator==(const CycScalar& a, const CycScalar& b);
  friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

  CycScalar inv() const;
  CycScalar conj() const;        // complex conjugation zeta -> zeta^-1
  CycScalar pow(long e) const;
  CycScalar lifted(long m2) const;  // representation at conductor m2 (m_ | m2)

  // Total order on exact values (conductor-independent); for canonical sorts.
  static int compare(const CycScalar& a, const CycScalar& b);

  std::string str() const;
  static CycScalar parse(const std::string& s);

private:
  long m_;
  std::vector<Rational> c_;  // size phi(m_)
  void normalize_();
  static void align_(CycScalar& a, CycScalar& b);
};

inline bool operator<(const CycScalar& a, const CycScalar& b) {
  return CycScalar::compare(a, b) < 0;
}

// Spec-named entry points.
inline CycScalar root_of_unity(long m, long k) { return CycScalar::zeta(m, k); }

// Inverts root_of_unity modulo m; throws ArithmeticError unless z^m = 1.
long discrete_log(const CycScalar& z, long m);

bool is_root_of_unity(const CycScalar& z, long m);

}  // namespace qd

namespace Eigen {
template <>
struct NumTraits<qd::CycScalar> : GenericNumTraits<qd::CycScalar> {
  typedef qd::CycScalar Real;
  typedef qd::CycScalar NonInteger;
  typedef qd::CycScalar Nested;
  typedef qd::CycScalar Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 60,
    MulCost = 200,
  };
  static inline Real epsilon() { return qd::CycScalar(0); }
  static inline Real dummy_precision() { return qd::CycScalar(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
