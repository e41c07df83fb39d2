#include "qd/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qd {

namespace {

// Exact division of integer polynomials, used to build Phi_m from x^m - 1.
std::vector<long long> poly_divide_exact(std::vector<long long> num,
                                         const std::vector<long long>& den) {
  int dn = static_cast<int>(num.size()) - 1;
  int dd = static_cast<int>(den.size()) - 1;
  if (den.back() != 1 && den.back() != -1)
    throw ArithmeticError("cyclotomic: non-monic divisor");
  std::vector<long long> q(dn - dd + 1, 0);
  for (int k = dn - dd; k >= 0; --k) {
    long long c = num[k + dd] / den[dd];
    q[k] = c;
    if (c != 0)
      for (int j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
  }
  for (long long r : num)
    if (r != 0) throw ArithmeticError("cyclotomic: inexact division");
  return q;
}

std::vector<long long> cyclotomic_poly(long m, std::map<long, std::vector<long long>>& memo) {
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  // x^m - 1
  std::vector<long long> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto phi_d = cyclotomic_poly(d, memo);
    num = poly_divide_exact(std::move(num), phi_d);
  }
  memo[m] = num;
  return num;
}

int euler_phi(long m) {
  int r = 1;
  long n = m;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    long pk = 1;
    while (n % p == 0) { n /= p; pk *= p; }
    r *= static_cast<int>(pk - pk / p);
  }
  if (n > 1) r *= static_cast<int>(n - 1);
  return r;
}

}  // namespace

const CycTable& cyc_table(long m) {
  static std::map<long, CycTable> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  if (m < 1) throw ArithmeticError("cyclotomic: conductor must be positive");

  CycTable t;
  t.m = m;
  t.phi = euler_phi(m);
  static std::map<long, std::vector<long long>> poly_memo;
  t.cyclo = cyclotomic_poly(m, poly_memo);
  if (static_cast<int>(t.cyclo.size()) != t.phi + 1)
    throw ArithmeticError("cyclotomic: Phi_m degree mismatch");

  // pw[j] = x^j reduced mod Phi_m; built by repeated multiplication by x.
  t.pw.resize(m);
  std::vector<Rational> cur(t.phi, Rational(0));
  cur[0] = Rational(1);
  t.pw[0] = cur;
  for (long j = 1; j < m; ++j) {
    std::vector<Rational> nxt(t.phi, Rational(0));
    // multiply by x
    Rational top = cur[t.phi - 1];
    for (int k = t.phi - 1; k >= 1; --k) nxt[k] = cur[k - 1];
    nxt[0] = Rational(0);
    if (!top.is_zero()) {
      // x^phi = -sum_{k<phi} cyclo[k] x^k   (Phi_m monic)
      for (int k = 0; k < t.phi; ++k)
        if (t.cyclo[k] != 0) nxt[k] -= top * Rational(t.cyclo[k]);
    }
    t.pw[j] = nxt;
    cur = std::move(nxt);
  }
  return cache.emplace(m, std::move(t)).first->second;
}

CycScalar CycScalar::zeta(long m, long k) {
  if (m < 1) throw ArithmeticError("zeta: conductor must be positive");
  k %= m;
  if (k < 0) k += m;
  CycScalar z;
  z.m_ = m;
  z.c_ = cyc_table(m).pw[k];
  z.normalize_();
  return z;
}

bool CycScalar::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

const Rational& CycScalar::rat() const {
  if (m_ != 1) throw ArithmeticError("CycScalar::rat: not rational");
  return c_[0];
}

void CycScalar::normalize_() {
  if (m_ == 1) return;
  for (size_t k = 1; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return;
  Rational r = c_[0];
  m_ = 1;
  c_.assign(1, r);
}

CycScalar CycScalar::lifted(long m2) const {
  if (m2 == m_) return *this;
  if (m2 % m_ != 0) throw ArithmeticError("CycScalar::lifted: conductor not a multiple");
  const CycTable& t2 = cyc_table(m2);
  long step = m2 / m_;
  CycScalar r;
  r.m_ = m2;
  r.c_.assign(t2.phi, Rational(0));
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    const auto& row = t2.pw[(static_cast<long>(k) * step) % m2];
    for (int j = 0; j < t2.phi; ++j)
      if (!row[j].is_zero()) r.c_[j] += c_[k] * row[j];
  }
  return r;  // no normalize_: callers may rely on the requested conductor
}

void CycScalar::align_(CycScalar& a, CycScalar& b) {
  if (a.m_ == b.m_) return;
  long l = std::lcm(a.m_, b.m_);
  if (a.m_ != l) a = a.lifted(l);
  if (b.m_ != l) b = b.lifted(l);
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  if (o.is_zero()) return *this;
  if (m_ == o.m_) {
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    normalize_();
    return *this;
  }
  CycScalar b = o;
  align_(*this, b);
  for (size_t k = 0; k < c_.size(); ++k) c_[k] += b.c_[k];
  normalize_();
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) {
  *this += -o;
  return *this;
}

CycScalar CycScalar::operator-() const {
  CycScalar r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycScalar& CycScalar::operator*=(const CycScalar& o) {
  if (is_zero() || o.is_one()) return *this;
  if (o.is_zero()) { *this = CycScalar(0); return *this; }
  if (o.m_ == 1) {  // rational scaling
    for (auto& x : c_) x *= o.c_[0];
    return *this;
  }
  if (m_ == 1) {
    Rational s = c_[0];
    *this = o;
    for (auto& x : c_) x *= s;
    return *this;
  }
  CycScalar b = o;
  align_(*this, b);
  const CycTable& t = cyc_table(m_);
  int phi = t.phi;
  std::vector<Rational> conv(2 * phi - 1, Rational(0));
  for (int i = 0; i < phi; ++i) {
    if (c_[i].is_zero()) continue;
    for (int j = 0; j < phi; ++j) {
      if (b.c_[j].is_zero()) continue;
      conv[i + j] += c_[i] * b.c_[j];
    }
  }
  std::vector<Rational> res(conv.begin(), conv.begin() + phi);
  for (int k = phi; k < 2 * phi - 1; ++k) {
    if (conv[k].is_zero()) continue;
    const auto& row = t.pw[k % m_];
    for (int j = 0; j < phi; ++j)
      if (!row[j].is_zero()) res[j] += conv[k] * row[j];
  }
  c_ = std::move(res);
  normalize_();
  return *this;
}

namespace {

// Polynomials over Q for the extended Euclid in Q[x]/Phi_m.
using QPoly = std::vector<Rational>;

void qp_trim(QPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

QPoly qp_sub(QPoly a, const QPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Rational(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  qp_trim(a);
  return a;
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  qp_trim(r);
  return r;
}

// division with remainder: a = q*b + r
std::pair<QPoly, QPoly> qp_divmod(QPoly a, const QPoly& b) {
  QPoly q;
  if (b.empty()) throw ArithmeticError("cyclotomic: polynomial division by zero");
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  Rational lead = b.back().inv();
  while (a.size() >= b.size()) {
    Rational c = a.back() * lead;
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    qp_trim(a);
  }
  return {q, a};
}

}  // namespace

CycScalar CycScalar::inv() const {
  if (is_zero()) throw ArithmeticError("CycScalar: division by zero");
  if (m_ == 1) return CycScalar(c_[0].inv());
  const CycTable& t = cyc_table(m_);
  // extended Euclid: s*f + t*Phi = gcd = const
  QPoly f(c_.begin(), c_.end());
  qp_trim(f);
  QPoly g(t.cyclo.size());
  for (size_t i = 0; i < t.cyclo.size(); ++i) g[i] = Rational(t.cyclo[i]);
  QPoly r0 = g, r1 = f;
  QPoly s0 = {}, s1 = {Rational(1)};
  while (!(r1.size() == 1)) {
    if (r1.empty()) throw ArithmeticError("CycScalar::inv: not a unit (internal)");
    auto [q, r2] = qp_divmod(r0, r1);
    QPoly s2 = qp_sub(s0, qp_mul(q, s1));
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
  }
  Rational c = r1[0].inv();
  CycScalar out;
  out.m_ = m_;
  out.c_.assign(t.phi, Rational(0));
  for (size_t i = 0; i < s1.size() && i < static_cast<size_t>(t.phi); ++i)
    out.c_[i] = s1[i] * c;
  // s1 has degree < deg(Phi) = phi by construction
  out.normalize_();
  return out;
}

CycScalar& CycScalar::operator/=(const CycScalar& o) {
  *this *= o.inv();
  return *this;
}

CycScalar CycScalar::conj() const {
  if (m_ == 1) return *this;
  const CycTable& t = cyc_table(m_);
  CycScalar r;
  r.m_ = m_;
  r.c_.assign(t.phi, Rational(0));
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    const auto& row = t.pw[(m_ - static_cast<long>(k)) % m_];
    for (int j = 0; j < t.phi; ++j)
      if (!row[j].is_zero()) r.c_[j] += c_[k] * row[j];
  }
  r.normalize_();
  return r;
}

CycScalar CycScalar::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  CycScalar r(1), base = *this;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

bool operator==(const CycScalar& a, const CycScalar& b) {
  return CycScalar::compare(a, b) == 0;
}

int CycScalar::compare(const CycScalar& a, const CycScalar& b) {
  if (a.m_ == b.m_) {
    for (size_t k = 0; k < a.c_.size(); ++k) {
      if (a.c_[k] < b.c_[k]) return -1;
      if (b.c_[k] < a.c_[k]) return 1;
    }
    return 0;
  }
  long l = std::lcm(a.m_, b.m_);
  return compare(a.lifted(l), b.lifted(l));
}

long discrete_log(const CycScalar& z, long m) {
  for (long k = 0; k < m; ++k)
    if (z == CycScalar::zeta(m, k)) return k;
  throw ArithmeticError("discrete_log: not an m-th root of unity");
}

bool is_root_of_unity(const CycScalar& z, long m) {
  for (long k = 0; k < m; ++k)
    if (z == CycScalar::zeta(m, k)) return true;
  return false;
}

std::string CycScalar::str() const {
  std::ostringstream os;
  if (m_ == 1) {
    os << c_[0].str();
    return os.str();
  }
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << c_[k].str() << ")";
    if (k == 1) os << "*z";
    else if (k > 1) os << "*z^" << k;
    first = false;
  }
  if (first) os << "0";
  os << " @zeta" << m_;
  return os.str();
}

CycScalar CycScalar::parse(const std::string& s) {
  auto at = s.find('@');
  if (at == std::string::npos) return CycScalar(Rational::parse(s));
  std::string body = s.substr(0, at);
  std::string tag = s.substr(at);
  if (tag.rfind("@zeta", 0) != 0) throw std::invalid_argument("CycScalar::parse: bad tag");
  long m = std::stol(tag.substr(5));
  const CycTable& t = cyc_table(m);
  CycScalar out;
  out.m_ = m;
  out.c_.assign(t.phi, Rational(0));
  // terms of the form "(q)" "(q)*z" "(q)*z^k" joined by " + "
  size_t pos = 0;
  auto skip_ws = [&] { while (pos < body.size() && body[pos] == ' ') ++pos; };
  skip_ws();
  if (pos < body.size() && body[pos] == '0' && pos + 1 >= body.size()) return out;
  while (pos < body.size()) {
    skip_ws();
    if (pos >= body.size()) break;
    if (body[pos] == '+') { ++pos; continue; }
    if (body[pos] != '(') throw std::invalid_argument("CycScalar::parse: expected '('");
    size_t close = body.find(')', pos);
    if (close == std::string::npos) throw std::invalid_argument("CycScalar::parse: unbalanced");
    Rational coef = Rational::parse(body.substr(pos + 1, close - pos - 1));
    pos = close + 1;
    long k = 0;
    if (pos < body.size() && body[pos] == '*') {
      pos += 2;  // "*z"
      if (pos < body.size() && body[pos] == '^') {
        ++pos;
        size_t end = pos;
        while (end < body.size() && isdigit(body[end])) ++end;
        k = std::stol(body.substr(pos, end - pos));
        pos = end;
      } else {
        k = 1;
      }
    }
    if (k >= t.phi) throw std::invalid_argument("CycScalar::parse: exponent out of range");
    out.c_[k] = coef;
  }
  out.normalize_();
  return out;
}

}  // namespace qd
