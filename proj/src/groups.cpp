#include "qd/groups.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace qd {

// ---- FiniteGroup -----------------------------------------------------------

int FiniteGroup::power(int g, long e) const {
  long m = order_of(g);
  e %= m;
  if (e < 0) e += m;
  int r = id;
  for (long i = 0; i < e; ++i) r = mul(r, g);
  return r;
}

int FiniteGroup::order_of(int g) const {
  int r = g, k = 1;
  while (r != id) {
    r = mul(r, g);
    ++k;
  }
  return k;
}

long FiniteGroup::exponent() const {
  long e = 1;
  for (int g = 0; g < n; ++g) e = std::lcm(e, static_cast<long>(order_of(g)));
  return e;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteGroup FiniteGroup::from_table(Eigen::MatrixXi mul, std::string name) {
  FiniteGroup G;
  G.n = static_cast<int>(mul.rows());
  if (mul.cols() != G.n) throw GroupError("from_table: non-square table");
  if (G.n > kMaxGroupOrder)
    throw BoundExceeded("from_table: order " + std::to_string(G.n) + " exceeds bound " +
                        std::to_string(kMaxGroupOrder));
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b)
      if (mul(a, b) < 0 || mul(a, b) >= G.n) throw GroupError("from_table: entry out of range");
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b)
      for (int c = 0; c < G.n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw GroupError("from_table: non-associative at (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(c) + ")");
  int id = -1;
  for (int e = 0; e < G.n; ++e) {
    bool ok = true;
    for (int g = 0; g < G.n && ok; ++g) ok = (mul(e, g) == g && mul(g, e) == g);
    if (ok) { id = e; break; }
  }
  if (id < 0) throw GroupError("from_table: no identity");
  G.id = id;
  G.inv.assign(G.n, -1);
  for (int g = 0; g < G.n; ++g) {
    for (int h = 0; h < G.n; ++h)
      if (mul(g, h) == id && mul(h, g) == id) { G.inv[g] = h; break; }
    if (G.inv[g] < 0) throw GroupError("from_table: missing inverse");
  }
  G.mul = std::move(mul);
  G.name = std::move(name);
  return G;
}

// ---- Subgroup / GroupHom ---------------------------------------------------

bool Subgroup::contains(int g) const {
  return std::binary_search(elems.begin(), elems.end(), g);
}

bool Subgroup::operator<(const Subgroup& o) const {
  if (elems.size() != o.elems.size()) return elems.size() < o.elems.size();
  return elems < o.elems;
}

bool GroupHom::is_bijective() const {
  if (src->n != dst->n) return false;
  std::vector<char> seen(dst->n, 0);
  for (int v : img) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool verify_hom(const GroupHom& f) {
  const FiniteGroup& A = *f.src;
  const FiniteGroup& B = *f.dst;
  for (int a = 0; a < A.n; ++a)
    for (int b = 0; b < A.n; ++b)
      if (f.img[A.mul(a, b)] != B.mul(f.img[a], f.img[b])) return false;
  return true;
}

GroupHom compose(const GroupHom& f, const GroupHom& g) {
  GroupHom h;
  h.src = g.src;
  h.dst = f.dst;
  h.img.resize(g.src->n);
  for (int x = 0; x < g.src->n; ++x) h.img[x] = f.img[g.img[x]];
  return h;
}

GroupHom identity_hom(const FiniteGroup& G) {
  GroupHom h;
  h.src = h.dst = &G;
  h.img.resize(G.n);
  std::iota(h.img.begin(), h.img.end(), 0);
  return h;
}

GroupHom inverse_aut(const GroupHom& f) {
  GroupHom h;
  h.src = f.dst;
  h.dst = f.src;
  h.img.assign(f.src->n, -1);
  for (int x = 0; x < f.src->n; ++x) h.img[f.img[x]] = x;
  return h;
}

// ---- permutation helpers ---------------------------------------------------

namespace {
std::vector<int> perm_compose(const std::vector<int>& p, const std::vector<int>& q) {
  std::vector<int> r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
  return r;
}
}  // namespace

std::vector<int> perm_parse_cycles(int degree, const std::string& s) {
  std::vector<int> p(degree);
  std::iota(p.begin(), p.end(), 0);
  size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != '(') { ++pos; continue; }
    size_t close = s.find(')', pos);
    if (close == std::string::npos) throw GroupError("perm_parse_cycles: unbalanced");
    std::string body = s.substr(pos + 1, close - pos - 1);
    std::vector<int> cyc;
    std::string tok;
    std::istringstream is(body);
    // points are single digits unless separated by spaces/commas
    bool has_sep = body.find(' ') != std::string::npos || body.find(',') != std::string::npos;
    if (has_sep) {
      for (char& ch : body)
        if (ch == ',') ch = ' ';
      std::istringstream is2(body);
      int v;
      while (is2 >> v) cyc.push_back(v - 1);
    } else {
      for (char ch : body) {
        if (!isdigit(ch)) throw GroupError("perm_parse_cycles: bad point");
        cyc.push_back(ch - '1');
      }
    }
    for (int v : cyc)
      if (v < 0 || v >= degree) throw GroupError("perm_parse_cycles: point out of range");
    for (size_t i = 0; i < cyc.size(); ++i) p[cyc[i]] = cyc[(i + 1) % cyc.size()];
    pos = close + 1;
  }
  return p;
}

std::string perm_cycle_string(const std::vector<int>& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += '(';
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  // compact single-digit form: drop spaces when all points < 10
  bool small = p.size() <= 9;
  if (small) {
    std::string c;
    for (char ch : out)
      if (ch != ' ') c += ch;
    return c;
  }
  return out;
}

FiniteGroup group_from_perm_gens(int degree, const std::vector<std::vector<int>>& gens,
                                 const std::string& name) {
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != degree) throw GroupError("perm_gens: wrong degree");
    std::vector<char> seen(degree, 0);
    for (int v : g) {
      if (v < 0 || v >= degree || seen[v]) throw GroupError("perm_gens: not a permutation");
      seen[v] = 1;
    }
  }
  std::vector<int> idp(degree);
  std::iota(idp.begin(), idp.end(), 0);
  std::set<std::vector<int>> elems{idp};
  std::queue<std::vector<int>> work;
  work.push(idp);
  while (!work.empty()) {
    auto cur = work.front();
    work.pop();
    for (const auto& g : gens) {
      auto nx = perm_compose(cur, g);
      if (elems.insert(nx).second) {
        if (static_cast<int>(elems.size()) > kMaxGroupOrder)
          throw BoundExceeded("perm_gens: group order exceeds bound");
        work.push(nx);
      }
    }
  }
  std::vector<std::vector<int>> sorted(elems.begin(), elems.end());
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = static_cast<int>(i);
  int n = static_cast<int>(sorted.size());
  Eigen::MatrixXi mul(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul(a, b) = index.at(perm_compose(sorted[a], sorted[b]));
  FiniteGroup G = FiniteGroup::from_table(std::move(mul), name);
  G.perms = std::move(sorted);
  return G;
}

// ---- constructions ---------------------------------------------------------

FiniteGroup cyclic_group(int n) {
  if (n < 1 || n > kMaxGroupOrder) throw BoundExceeded("cyclic_group: bad order");
  Eigen::MatrixXi mul(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul(a, b) = (a + b) % n;
  return FiniteGroup::from_table(std::move(mul), "Z" + std::to_string(n));
}

FiniteGroup symmetric_group(int n) {
  long long order = 1;
  for (int i = 2; i <= n; ++i) order *= i;
  if (order > kMaxGroupOrder) throw BoundExceeded("symmetric_group: order exceeds bound");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> gens;
  if (n >= 2) {
    std::vector<int> t = p;
    std::swap(t[0], t[1]);
    gens.push_back(t);
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
    gens.push_back(c);
  }
  FiniteGroup G = gens.empty() ? cyclic_group(1)
                               : group_from_perm_gens(n, gens, "S" + std::to_string(n));
  G.name = "S" + std::to_string(n);
  return G;
}

FiniteGroup dihedral_group(int m) {
  int n = 2 * m;
  if (n > kMaxGroupOrder) throw BoundExceeded("dihedral_group: order exceeds bound");
  // element a*m + i = s^a r^i with s r s = r^-1
  Eigen::MatrixXi mul(n, n);
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < m; ++i)
      for (int b = 0; b < 2; ++b)
        for (int j = 0; j < m; ++j) {
          int ii = b ? (m - i) % m : i;
          mul(a * m + i, b * m + j) = ((a + b) % 2) * m + (ii + j) % m;
        }
  return FiniteGroup::from_table(std::move(mul), "D" + std::to_string(m));
}

FiniteGroup quaternion_group() {
  // elements: index 2*axis + sign, axis in {1,i,j,k}
  auto enc = [](int axis, int sgn) { return 2 * axis + (sgn < 0 ? 1 : 0); };
  int ax_tab[4][4], sg_tab[4][4];
  auto set = [&](int a, int b, int ax, int sg) { ax_tab[a][b] = ax; sg_tab[a][b] = sg; };
  for (int a = 0; a < 4; ++a) { set(0, a, a, 1); set(a, 0, a, 1); }
  set(1, 1, 0, -1); set(2, 2, 0, -1); set(3, 3, 0, -1);
  set(1, 2, 3, 1);  set(2, 1, 3, -1);
  set(2, 3, 1, 1);  set(3, 2, 1, -1);
  set(3, 1, 2, 1);  set(1, 3, 2, -1);
  Eigen::MatrixXi mul(8, 8);
  for (int a = 0; a < 4; ++a)
    for (int sa : {1, -1})
      for (int b = 0; b < 4; ++b)
        for (int sb : {1, -1})
          mul(enc(a, sa), enc(b, sb)) = enc(ax_tab[a][b], sa * sb * sg_tab[a][b]);
  return FiniteGroup::from_table(std::move(mul), "Q8");
}

FiniteGroup elementary_abelian(int p, int k) {
  long long n = 1;
  for (int i = 0; i < k; ++i) n *= p;
  if (n > kMaxGroupOrder) throw BoundExceeded("elementary_abelian: order exceeds bound");
  int nn = static_cast<int>(n);
  Eigen::MatrixXi mul(nn, nn);
  for (int a = 0; a < nn; ++a)
    for (int b = 0; b < nn; ++b) {
      int r = 0, pw = 1, x = a, y = b;
      for (int i = 0; i < k; ++i) {
        r += ((x % p + y % p) % p) * pw;
        x /= p; y /= p; pw *= p;
      }
      mul(a, b) = r;
    }
  return FiniteGroup::from_table(std::move(mul),
                                 "Z" + std::to_string(p) + "^" + std::to_string(k));
}

FiniteGroup extraspecial_plus(int p, int nhalf) {
  long long n = 1;
  for (int i = 0; i < 2 * nhalf + 1; ++i) n *= p;
  if (n > kMaxGroupOrder) throw BoundExceeded("extraspecial_plus: order exceeds bound");
  int nn = static_cast<int>(n);
  // element = (a, b, c) with a,b in F_p^nhalf, c in F_p;
  // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a.b')
  int block = 1;
  for (int i = 0; i < nhalf; ++i) block *= p;
  auto dec = [&](int x, std::vector<int>& a, std::vector<int>& b, int& c) {
    a.resize(nhalf); b.resize(nhalf);
    for (int i = 0; i < nhalf; ++i) { a[i] = x % p; x /= p; }
    for (int i = 0; i < nhalf; ++i) { b[i] = x % p; x /= p; }
    c = x % p;
  };
  auto encv = [&](const std::vector<int>& a, const std::vector<int>& b, int c) {
    int x = c, base = block * block;
    x = c * base;
    int pw = 1;
    for (int i = 0; i < nhalf; ++i) { x += a[i] * pw; pw *= p; }
    for (int i = 0; i < nhalf; ++i) { x += b[i] * pw; pw *= p; }
    return x;
  };
  Eigen::MatrixXi mul(nn, nn);
  std::vector<int> a1, b1, a2, b2;
  int c1, c2;
  for (int x = 0; x < nn; ++x)
    for (int y = 0; y < nn; ++y) {
      dec(x, a1, b1, c1);
      dec(y, a2, b2, c2);
      int dot = 0;
      for (int i = 0; i < nhalf; ++i) dot = (dot + a1[i] * b2[i]) % p;
      std::vector<int> a(nhalf), b(nhalf);
      for (int i = 0; i < nhalf; ++i) {
        a[i] = (a1[i] + a2[i]) % p;
        b[i] = (b1[i] + b2[i]) % p;
      }
      mul(x, y) = encv(a, b, (c1 + c2 + dot) % p);
    }
  return FiniteGroup::from_table(std::move(mul), "E" + std::to_string(p) + "+" +
                                                     std::to_string(2 * nhalf + 1));
}

FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
  long long n = static_cast<long long>(A.n) * B.n;
  if (n > kMaxGroupOrder) throw BoundExceeded("direct_product: order exceeds bound");
  int nn = static_cast<int>(n);
  Eigen::MatrixXi mul(nn, nn);
  for (int a = 0; a < A.n; ++a)
    for (int b = 0; b < B.n; ++b)
      for (int c = 0; c < A.n; ++c)
        for (int d = 0; d < B.n; ++d)
          mul(a * B.n + b, c * B.n + d) = A.mul(a, c) * B.n + B.mul(b, d);
  return FiniteGroup::from_table(std::move(mul), A.name + "x" + B.name);
}

FiniteGroup semidirect_product(const FiniteGroup& N, const FiniteGroup& Q,
                               const std::vector<std::vector<int>>& action) {
  if (static_cast<int>(action.size()) != Q.n)
    throw GroupError("semidirect_product: action must give one automorphism per Q element");
  for (int q = 0; q < Q.n; ++q) {
    GroupHom f{&N, &N, action[q]};
    if (static_cast<int>(action[q].size()) != N.n || !f.is_bijective() || !verify_hom(f))
      throw GroupError("semidirect_product: action[q] is not an automorphism of N");
  }
  for (int q = 0; q < Q.n; ++q)
    for (int r = 0; r < Q.n; ++r)
      for (int x = 0; x < N.n; ++x)
        if (action[Q.mul(q, r)][x] != action[q][action[r][x]])
          throw GroupError("semidirect_product: action is not a homomorphism Q -> Aut(N)");
  long long n = static_cast<long long>(N.n) * Q.n;
  if (n > kMaxGroupOrder) throw BoundExceeded("semidirect_product: order exceeds bound");
  int nn = static_cast<int>(n);
  // element (x, q) = x * |Q| + q, product (x,q)(y,r) = (x * q.y, qr)
  Eigen::MatrixXi mul(nn, nn);
  for (int x = 0; x < N.n; ++x)
    for (int q = 0; q < Q.n; ++q)
      for (int y = 0; y < N.n; ++y)
        for (int r = 0; r < Q.n; ++r)
          mul(x * Q.n + q, y * Q.n + r) = N.mul(x, action[q][y]) * Q.n + Q.mul(q, r);
  return FiniteGroup::from_table(std::move(mul), N.name + ":" + Q.name);
}

FiniteGroup named_group(const std::string& name) {
  if (name == "Q8") return quaternion_group();
  if (name.size() >= 2 && name[0] == 'S') return symmetric_group(std::stoi(name.substr(1)));
  if (name.size() >= 2 && name[0] == 'D') return dihedral_group(std::stoi(name.substr(1)));
  if (name.size() >= 2 && name[0] == 'E') {
    auto plus = name.find('+');
    if (plus == std::string::npos) throw GroupError("named_group: bad extraspecial name");
    int p = std::stoi(name.substr(1, plus - 1));
    int m = std::stoi(name.substr(plus + 1));
    if (m % 2 == 0) throw GroupError("named_group: extraspecial rank must be odd");
    return extraspecial_plus(p, (m - 1) / 2);
  }
  if (name.size() >= 2 && name[0] == 'Z') {
    auto caret = name.find('^');
    if (caret == std::string::npos) return cyclic_group(std::stoi(name.substr(1)));
    int base = std::stoi(name.substr(1, caret - 1));
    int k = std::stoi(name.substr(caret + 1));
    FiniteGroup G = cyclic_group(base);
    FiniteGroup R = G;
    for (int i = 1; i < k; ++i) R = direct_product(R, G);
    R.name = name;
    return R;
  }
  throw GroupError("named_group: unknown name '" + name + "'");
}

FiniteGroup build_group(const GroupSpec& spec) {
  if (spec.kind == "named") return named_group(spec.name);
  if (spec.kind == "cayley") {
    auto G = FiniteGroup::from_table(spec.table, spec.name.empty() ? "cayley" : spec.name);
    return G;
  }
  if (spec.kind == "perm_gens")
    return group_from_perm_gens(spec.degree, spec.gens,
                                spec.name.empty() ? "permgroup" : spec.name);
  if (spec.kind == "direct") {
    if (spec.parts.size() != 2) throw GroupError("build_group: direct needs two parts");
    return direct_product(build_group(spec.parts[0]), build_group(spec.parts[1]));
  }
  if (spec.kind == "semidirect") {
    if (spec.parts.size() != 2) throw GroupError("build_group: semidirect needs N, Q");
    FiniteGroup N = build_group(spec.parts[0]);
    FiniteGroup Q = build_group(spec.parts[1]);
    return semidirect_product(N, Q, spec.action);
  }
  if (spec.kind == "extraspecial") return extraspecial_plus(spec.p, spec.half_rank);
  throw GroupError("build_group: unknown kind '" + spec.kind + "'");
}

// ---- conjugation data ------------------------------------------------------

Subgroup centralizer(const FiniteGroup& G, int g) {
  Subgroup s;
  for (int t = 0; t < G.n; ++t)
    if (G.commute(t, g)) s.elems.push_back(t);
  return s;
}

ConjData conjugacy_data(const FiniteGroup& G) {
  ConjData c;
  c.class_of.assign(G.n, -1);
  for (int g = 0; g < G.n; ++g) {
    if (c.class_of[g] >= 0) continue;
    std::vector<int> cls;
    for (int t = 0; t < G.n; ++t) {
      int x = G.conj(t, g);
      if (c.class_of[x] < 0) {
        c.class_of[x] = static_cast<int>(c.classes.size());
        cls.push_back(x);
      }
    }
    std::sort(cls.begin(), cls.end());
    c.classes.push_back(cls);
    c.reps.push_back(cls.front());
  }
  for (int k = 0; k < static_cast<int>(c.classes.size()); ++k)
    c.centralizers.push_back(centralizer(G, c.reps[k]));
  for (int z = 0; z < G.n; ++z) {
    bool central = true;
    for (int t = 0; t < G.n && central; ++t) central = G.commute(z, t);
    if (central) c.center.elems.push_back(z);
  }
  return c;
}

// ---- subgroups -------------------------------------------------------------

Subgroup subgroup_closure(const FiniteGroup& G, std::vector<int> gens) {
  std::set<int> elems{G.id};
  std::queue<int> work;
  work.push(G.id);
  for (int g : gens)
    if (elems.insert(g).second) work.push(g);
  while (!work.empty()) {
    int x = work.front();
    work.pop();
    std::vector<int> cur(elems.begin(), elems.end());
    for (int y : cur) {
      for (int z : {G.mul(x, y), G.mul(y, x)})
        if (elems.insert(z).second) work.push(z);
    }
  }
  Subgroup s;
  s.elems.assign(elems.begin(), elems.end());
  return s;
}

Subgroup whole_group(const FiniteGroup& G) {
  Subgroup s;
  s.elems.resize(G.n);
  std::iota(s.elems.begin(), s.elems.end(), 0);
  return s;
}

Subgroup trivial_subgroup(const FiniteGroup& G) {
  Subgroup s;
  s.elems = {G.id};
  return s;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& G) {
  std::set<std::vector<int>> found;
  found.insert({G.id});
  // cyclic seeds
  for (int g = 0; g < G.n; ++g) found.insert(subgroup_closure(G, {g}).elems);
  // pairwise joins to fixpoint
  while (true) {
    std::vector<std::vector<int>> cur(found.begin(), found.end());
    bool grew = false;
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        std::vector<int> gens = cur[i];
        gens.insert(gens.end(), cur[j].begin(), cur[j].end());
        auto join = subgroup_closure(G, gens).elems;
        if (found.insert(join).second) grew = true;
      }
    if (!grew) break;
  }
  std::vector<Subgroup> out;
  for (auto& e : found) out.push_back(Subgroup{e});
  std::sort(out.begin(), out.end());
  return out;
}

bool is_normal(const FiniteGroup& G, const Subgroup& H) {
  for (int t = 0; t < G.n; ++t)
    for (int h : H.elems)
      if (!H.contains(G.conj(t, h))) return false;
  return true;
}

bool is_abelian_subgroup(const FiniteGroup& G, const Subgroup& H) {
  for (int a : H.elems)
    for (int b : H.elems)
      if (!G.commute(a, b)) return false;
  return true;
}

Subgroup commutator_subgroup(const FiniteGroup& G) {
  std::vector<int> gens;
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b)
      gens.push_back(G.mul(G.mul(a, b), G.inv[G.mul(b, a)]));
  return subgroup_closure(G, gens);
}

std::pair<FiniteGroup, std::vector<int>> quotient_group(const FiniteGroup& G, const Subgroup& N) {
  if (!is_normal(G, N)) throw GroupError("quotient_group: subgroup not normal");
  std::vector<int> coset_of(G.n, -1);
  std::vector<int> reps;
  for (int g = 0; g < G.n; ++g) {
    if (coset_of[g] >= 0) continue;
    std::vector<int> coset;
    for (int h : N.elems) coset.push_back(G.mul(g, h));
    int rep = *std::min_element(coset.begin(), coset.end());
    int idx = static_cast<int>(reps.size());
    reps.push_back(rep);
    for (int x : coset) coset_of[x] = idx;
  }
  // reindex cosets sorted by representative
  std::vector<int> order(reps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return reps[a] < reps[b]; });
  std::vector<int> newidx(reps.size());
  for (size_t i = 0; i < order.size(); ++i) newidx[order[i]] = static_cast<int>(i);
  std::vector<int> sorted_reps(reps.size());
  for (size_t i = 0; i < reps.size(); ++i) sorted_reps[newidx[i]] = reps[i];
  int q = static_cast<int>(reps.size());
  Eigen::MatrixXi mul(q, q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      mul(a, b) = newidx[coset_of[G.mul(sorted_reps[a], sorted_reps[b])]];
  FiniteGroup Q = FiniteGroup::from_table(std::move(mul), G.name + "/N");
  std::vector<int> proj(G.n);
  for (int g = 0; g < G.n; ++g) proj[g] = newidx[coset_of[g]];
  return {std::move(Q), std::move(proj)};
}

std::pair<FiniteGroup, std::vector<int>> abelianization(const FiniteGroup& G) {
  auto [Q, proj] = quotient_group(G, commutator_subgroup(G));
  Q.name = G.name + "_ab";
  return {std::move(Q), std::move(proj)};
}

std::pair<FiniteGroup, std::vector<int>> subgroup_as_group(const FiniteGroup& G,
                                                           const Subgroup& H) {
  int m = H.order();
  std::map<int, int> idx;
  for (int i = 0; i < m; ++i) idx[H.elems[i]] = i;
  Eigen::MatrixXi mul(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int pr = G.mul(H.elems[a], H.elems[b]);
      auto it = idx.find(pr);
      if (it == idx.end()) throw GroupError("subgroup_as_group: set not closed");
      mul(a, b) = it->second;
    }
  return {FiniteGroup::from_table(std::move(mul), G.name + "_sub" + std::to_string(m)),
          H.elems};
}

std::vector<Subgroup> normal_abelian_subgroups(const FiniteGroup& G) {
  std::vector<Subgroup> out;
  for (const auto& H : all_subgroups(G))
    if (is_abelian_subgroup(G, H) && is_normal(G, H)) out.push_back(H);
  return out;
}

std::vector<Subgroup> semidirect_complements(const FiniteGroup& G, const Subgroup& N) {
  std::vector<Subgroup> out;
  for (const auto& Q : all_subgroups(G)) {
    if (Q.order() * N.order() != G.n) continue;
    bool trivial_meet = true;
    for (int x : Q.elems)
      if (x != G.id && N.contains(x)) { trivial_meet = false; break; }
    if (trivial_meet) out.push_back(Q);
  }
  return out;
}

std::vector<std::pair<Subgroup, Subgroup>> direct_factorizations(const FiniteGroup& G) {
  std::vector<std::pair<Subgroup, Subgroup>> out;
  auto subs = all_subgroups(G);
  for (const auto& H : subs)
    for (const auto& C : subs) {
      if (H.order() * C.order() != G.n) continue;
      if (!is_abelian_subgroup(G, C)) continue;
      bool trivial_meet = true;
      for (int x : C.elems)
        if (x != G.id && H.contains(x)) { trivial_meet = false; break; }
      if (!trivial_meet) continue;
      bool commuting = true;
      for (int h : H.elems) {
        for (int c : C.elems)
          if (!G.commute(h, c)) { commuting = false; break; }
        if (!commuting) break;
      }
      if (commuting) out.push_back({H, C});
    }
  return out;
}

// ---- automorphisms ---------------------------------------------------------

std::vector<int> minimal_generating_set(const FiniteGroup& G) {
  std::vector<int> gens;
  Subgroup cur = trivial_subgroup(G);
  while (cur.order() < G.n) {
    int best = -1, best_size = cur.order();
    for (int g = 0; g < G.n; ++g) {
      if (cur.contains(g)) continue;
      auto trial = gens;
      trial.push_back(g);
      int sz = subgroup_closure(G, trial).order();
      if (sz > best_size) { best_size = sz; best = g; }
    }
    gens.push_back(best);
    cur = subgroup_closure(G, gens);
  }
  return gens;
}

namespace {

// class-size profile of powers, a cheap conjugation invariant
std::vector<int> power_profile(const FiniteGroup& G, const ConjData& cd, int g) {
  int m = G.order_of(g);
  std::vector<int> prof;
  prof.push_back(m);
  int x = g;
  for (int k = 1; k <= m; ++k) {
    prof.push_back(static_cast<int>(cd.classes[cd.class_of[x]].size()));
    x = G.mul(x, g);
  }
  return prof;
}

// Backtracking over generator images. Each partial assignment is closed into
// a consistent partial homomorphism or rejected.
struct HomSearch {
  const FiniteGroup& A;
  const FiniteGroup& B;
  std::vector<int> gens;
  std::vector<std::vector<int>> candidates;  // per generator
  bool require_bijective;
  long cap;
  std::vector<GroupHom> out;

  // extend f (defined on `domain`) by g -> h; returns new domain or empty on conflict
  bool extend(std::vector<int>& f, std::vector<int>& domain, int g, int h) const {
    if (f[g] >= 0) return f[g] == h;
    f[g] = h;
    domain.push_back(g);
    size_t frontier = domain.size() - 1;
    while (frontier < domain.size()) {
      int x = domain[frontier++];
      size_t sz = domain.size();
      for (size_t i = 0; i < sz; ++i) {
        int y = domain[i];
        for (auto [pr, im] : {std::pair{A.mul(x, y), B.mul(f[x], f[y])},
                              std::pair{A.mul(y, x), B.mul(f[y], f[x])}}) {
          if (f[pr] < 0) {
            f[pr] = im;
            domain.push_back(pr);
          } else if (f[pr] != im) {
            return false;
          }
        }
      }
    }
    return true;
  }

  void rec(size_t gi, const std::vector<int>& f, const std::vector<int>& domain) {
    if (static_cast<long>(out.size()) > cap)
      throw BoundExceeded("hom search: result cap exceeded");
    if (gi == gens.size()) {
      if (static_cast<int>(domain.size()) != A.n) return;  // gens must generate A
      GroupHom hom{&A, &B, f};
      if (require_bijective && !hom.is_bijective()) return;
      out.push_back(std::move(hom));
      return;
    }
    for (int h : candidates[gi]) {
      std::vector<int> f2 = f;
      std::vector<int> d2 = domain;
      if (extend(f2, d2, gens[gi], h)) rec(gi + 1, f2, d2);
    }
  }
};

}  // namespace

std::vector<GroupHom> all_homs(const FiniteGroup& A, const FiniteGroup& B, long cap) {
  HomSearch hs{A, B, minimal_generating_set(A), {}, false, cap, {}};
  for (int g : hs.gens) {
    std::vector<int> cand;
    int og = A.order_of(g);
    for (int h = 0; h < B.n; ++h)
      if (og % B.order_of(h) == 0) cand.push_back(h);
    hs.candidates.push_back(cand);
  }
  std::vector<int> f(A.n, -1), domain;
  f[A.id] = B.id;
  domain.push_back(A.id);
  hs.rec(0, f, domain);
  return hs.out;
}

AutData automorphism_data(const FiniteGroup& G, int bound) {
  if (G.n > bound) throw BoundExceeded("automorphism_data: order exceeds bound");
  ConjData cd = conjugacy_data(G);
  HomSearch hs{G, G, minimal_generating_set(G), {}, true, 1000000, {}};
  for (int g : hs.gens) {
    auto prof = power_profile(G, cd, g);
    std::vector<int> cand;
    for (int h = 0; h < G.n; ++h)
      if (power_profile(G, cd, h) == prof) cand.push_back(h);
    hs.candidates.push_back(cand);
  }
  std::vector<int> f(G.n, -1), domain;
  f[G.id] = G.id;
  domain.push_back(G.id);
  hs.rec(0, f, domain);

  AutData out;
  out.auts = std::move(hs.out);
  // inner automorphisms, deduplicated
  std::set<std::vector<int>> inner_tabs;
  for (int t = 0; t < G.n; ++t) {
    std::vector<int> img(G.n);
    for (int g = 0; g < G.n; ++g) img[g] = G.conj(t, g);
    if (inner_tabs.insert(img).second) out.inners.push_back(GroupHom{&G, &G, img});
  }
  // one representative per Inn-coset
  std::set<std::vector<int>> seen;
  for (const auto& a : out.auts) {
    if (seen.count(a.img)) continue;
    out.outer_reps.push_back(a);
    for (const auto& i : out.inners) seen.insert(compose(i, a).img);
  }
  // central automorphisms
  ConjData cdz = cd;
  for (const auto& a : out.auts) {
    bool central = true;
    for (int g = 0; g < G.n && central; ++g)
      central = cdz.center.contains(G.mul(a.img[g], G.inv[g]));
    if (central) out.central_auts.push_back(a);
  }
  return out;
}

std::optional<GroupHom> find_isomorphism(const FiniteGroup& A, const FiniteGroup& B) {
  if (A.n != B.n) return std::nullopt;
  // order multiset prescreen
  std::multiset<int> oa, ob;
  for (int g = 0; g < A.n; ++g) oa.insert(A.order_of(g));
  for (int g = 0; g < B.n; ++g) ob.insert(B.order_of(g));
  if (oa != ob) return std::nullopt;
  ConjData cb = conjugacy_data(B);
  HomSearch hs{A, B, minimal_generating_set(A), {}, true, 0, {}};
  ConjData ca = conjugacy_data(A);
  for (int g : hs.gens) {
    auto prof = power_profile(A, ca, g);
    std::vector<int> cand;
    for (int h = 0; h < B.n; ++h)
      if (power_profile(B, cb, h) == prof) cand.push_back(h);
    if (cand.empty()) return std::nullopt;
    hs.candidates.push_back(cand);
  }
  std::vector<int> f(A.n, -1), domain;
  f[A.id] = B.id;
  domain.push_back(A.id);
  try {
    hs.rec(0, f, domain);
  } catch (const BoundExceeded&) {
    // cap 1 reached: at least two isomorphisms found; return the first
  }
  if (hs.out.empty()) return std::nullopt;
  return hs.out.front();
}

bool isomorphic(const FiniteGroup& A, const FiniteGroup& B) {
  return find_isomorphism(A, B).has_value();
}

// ---- abelian structure -----------------------------------------------------

AbelianStructure abelian_structure(const FiniteGroup& A) {
  if (!A.is_abelian()) throw GroupError("abelian_structure: group not abelian");
  // peel a maximal-order cyclic factor, recurse on the quotient, lift with the
  // order-correcting adjustment
  std::vector<int> gens;
  std::vector<long> orders;
  std::function<void(const FiniteGroup&, std::vector<int>)> peel =
      [&](const FiniteGroup& H, std::vector<int> to_parent) {
        if (H.n == 1) return;
        int g = 0;
        for (int x = 0; x < H.n; ++x)
          if (H.order_of(x) > H.order_of(g)) g = x;
        long m = H.order_of(g);
        gens.push_back(to_parent[g]);
        orders.push_back(m);
        auto [Q, proj] = quotient_group(H, subgroup_closure(H, {g}));
        if (Q.n == 1) return;
        // lift quotient elements back to H with the order-correcting adjustment,
        // then recurse on Q through the translated parent map
        std::vector<int> pre(Q.n, -1);
        for (int x = 0; x < H.n; ++x)
          if (pre[proj[x]] < 0) pre[proj[x]] = x;
        std::function<int(int)> correct = [&](int qelt) -> int {
          int b = pre[qelt];
          int mq = Q.order_of(qelt);
          int bm = H.power(b, mq);  // lies in <g>
          // bm = g^t
          long t = -1;
          int cur = H.id;
          for (long k = 0; k < m; ++k) {
            if (cur == bm) { t = k; break; }
            cur = H.mul(cur, g);
          }
          if (t < 0 || t % mq != 0)
            throw GroupError("abelian_structure: lift correction failed");
          return H.mul(b, H.power(g, m - ((t / mq) % m)));
        };
        std::vector<int> qmap(Q.n);
        for (int qe = 0; qe < Q.n; ++qe) qmap[qe] = to_parent[correct(qe)];
        peel(Q, qmap);
      };
  std::vector<int> ident(A.n);
  std::iota(ident.begin(), ident.end(), 0);
  peel(A, ident);

  AbelianStructure st;
  // ascending divisibility chain m1 | m2 | ...
  std::reverse(gens.begin(), gens.end());
  std::reverse(orders.begin(), orders.end());
  st.gens = gens;
  st.factors = orders;
  // dlog by odometer enumeration; also verifies independence
  st.dlog.assign(A.n, {});
  std::vector<long> e(st.factors.size(), 0);
  int count = 0;
  while (true) {
    int x = A.id;
    for (size_t i = 0; i < e.size(); ++i) x = A.mul(x, A.power(st.gens[i], e[i]));
    if (!st.dlog[x].empty() && x != A.id)
      throw GroupError("abelian_structure: generators not independent");
    if (st.dlog[x].empty()) {
      st.dlog[x] = e;
      ++count;
    }
    size_t i = 0;
    while (i < e.size() && ++e[i] == st.factors[i]) e[i++] = 0;
    if (i == e.size()) break;
    if (e.empty()) break;
  }
  if (count != A.n) throw GroupError("abelian_structure: generators do not span");
  return st;
}

AbelianDual abelian_dual(const FiniteGroup& A) {
  AbelianDual d;
  d.st = abelian_structure(A);
  for (long f : d.st.factors) d.exponent = std::lcm(d.exponent, f);
  size_t k = d.st.factors.size();
  std::vector<long> e(k, 0);
  while (true) {
    d.chars.push_back(DualCharacter{e});
    size_t i = 0;
    while (i < k && ++e[i] == d.st.factors[i]) e[i++] = 0;
    if (i == k || k == 0) break;
  }
  return d;
}

CycScalar AbelianDual::eval(int chi, int elem) const {
  const auto& exps = chars[chi].exps;
  const auto& x = st.dlog[elem];
  long e = 0;
  for (size_t i = 0; i < exps.size(); ++i)
    e = (e + exps[i] * x[i] % exponent * (exponent / st.factors[i])) % exponent;
  return CycScalar::zeta(exponent, e);
}

int AbelianDual::mul_chars(int chi1, int chi2) const {
  DualCharacter c;
  c.exps.resize(st.factors.size());
  for (size_t i = 0; i < c.exps.size(); ++i)
    c.exps[i] = (chars[chi1].exps[i] + chars[chi2].exps[i]) % st.factors[i];
  return char_index(c);
}

int AbelianDual::inv_char(int chi) const {
  DualCharacter c;
  c.exps.resize(st.factors.size());
  for (size_t i = 0; i < c.exps.size(); ++i)
    c.exps[i] = (st.factors[i] - chars[chi].exps[i]) % st.factors[i];
  return char_index(c);
}

int AbelianDual::char_index(const DualCharacter& c) const {
  long idx = 0, base = 1;
  for (size_t i = 0; i < st.factors.size(); ++i) {
    idx += c.exps[i] * base;
    base *= st.factors[i];
  }
  return static_cast<int>(idx);
}

// ---- hom spaces -------------------------------------------------------------

std::vector<AbHom> all_abhoms(const AbelianStructure& A, const FiniteGroup& Bgrp,
                              const AbelianStructure& B, long cap) {
  (void)B;
  // candidates per generator: elements of order dividing the factor
  std::vector<std::vector<int>> cands;
  long total = 1;
  for (size_t i = 0; i < A.factors.size(); ++i) {
    std::vector<int> c;
    for (int b = 0; b < Bgrp.n; ++b)
      if (A.factors[i] % Bgrp.order_of(b) == 0) c.push_back(b);
    total *= static_cast<long>(c.size());
    if (total > cap) throw BoundExceeded("all_abhoms: hom space exceeds cap");
    cands.push_back(std::move(c));
  }
  std::vector<AbHom> out;
  std::vector<size_t> e(cands.size(), 0);
  while (true) {
    AbHom h;
    for (size_t i = 0; i < cands.size(); ++i) h.gen_images.push_back(cands[i][e[i]]);
    out.push_back(std::move(h));
    size_t i = 0;
    while (i < e.size() && ++e[i] == cands[i].size()) e[i++] = 0;
    if (i == e.size() || e.empty()) break;
  }
  return out;
}

std::vector<BilForm> alternating_forms(const FiniteGroup& A, const AbelianStructure& st) {
  size_t k = st.factors.size();
  long e = 1;
  for (long f : st.factors) e = std::lcm(e, f);
  // free entries t_ij in Z/gcd(m_i, m_j) for i < j
  std::vector<std::pair<size_t, size_t>> slots;
  std::vector<long> mods;
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i + 1; j < k; ++j) {
      slots.push_back({i, j});
      mods.push_back(std::gcd(st.factors[i], st.factors[j]));
    }
  std::vector<long> t(slots.size(), 0);
  std::vector<BilForm> out;
  while (true) {
    BilForm F;
    F.e = e;
    F.E = Eigen::MatrixXi::Zero(A.n, A.n);
    for (int x = 0; x < A.n; ++x)
      for (int y = 0; y < A.n; ++y) {
        long acc = 0;
        for (size_t s = 0; s < slots.size(); ++s) {
          auto [i, j] = slots[s];
          long g = mods[s];
          // form(a_i, a_j) = zeta_g^{t_s}, form(a_j, a_i) = inverse
          acc += (st.dlog[x][i] * st.dlog[y][j] - st.dlog[x][j] * st.dlog[y][i]) % e *
                 ((e / g) * t[s] % e);
        }
        F.E(x, y) = static_cast<int>(((acc % e) + e) % e);
      }
    out.push_back(std::move(F));
    size_t s = 0;
    while (s < t.size() && ++t[s] == mods[s]) t[s++] = 0;
    if (s == t.size() || t.empty()) break;
  }
  return out;
}

HomAltData hom_and_alternating(const FiniteGroup& G, long cap) {
  HomAltData out;
  auto [abg, abproj] = abelianization(G);
  AbelianDual abdual = abelian_dual(abg);
  long e = G.exponent();

  // full Hom(G_ab, dual G_ab) when small enough
  bool full_b = true;
  {
    // b determined by images (characters) of the generators, order-constrained
    std::vector<std::vector<int>> cands;
    long total = 1;
    for (size_t i = 0; i < abdual.st.factors.size(); ++i) {
      std::vector<int> c;
      for (int chi = 0; chi < abdual.size(); ++chi) {
        // order of chi divides factor i?
        bool ok = true;
        for (size_t j = 0; j < abdual.st.factors.size() && ok; ++j)
          ok = (abdual.chars[chi].exps[j] * abdual.st.factors[i]) % abdual.st.factors[j] == 0;
        if (ok) c.push_back(chi);
      }
      total *= static_cast<long>(c.size());
      if (total > cap) { full_b = false; break; }
      cands.push_back(std::move(c));
    }
    if (full_b) {
      std::vector<size_t> idx(cands.size(), 0);
      while (true) {
        BilForm F;
        F.e = e;
        F.E = Eigen::MatrixXi::Zero(G.n, G.n);
        for (int g = 0; g < G.n; ++g) {
          // character b(g) = prod images^{dlog components of proj(g)}
          const auto& dl = abdual.st.dlog[abproj[g]];
          for (int h = 0; h < G.n; ++h) {
            long acc = 0;
            for (size_t i = 0; i < cands.size(); ++i) {
              int chi = cands[i][idx[i]];
              CycScalar v = abdual.eval(chi, abproj[h]);
              long dl_exp = discrete_log(v, abdual.exponent);
              acc = (acc + dl[i] % e * (dl_exp * (e / abdual.exponent)) % e) % e;
            }
            F.E(g, h) = static_cast<int>(((acc % e) + e) % e);
          }
        }
        out.B_homs.push_back(std::move(F));
        size_t i = 0;
        while (i < idx.size() && ++idx[i] == cands[i].size()) idx[i++] = 0;
        if (i == idx.size() || idx.empty()) break;
      }
    }
  }
  // alternating part via basis form entries on G_ab, pulled back to G
  {
    auto forms_ab = alternating_forms(abg, abdual.st);
    for (auto& F : forms_ab) {
      BilForm FG;
      FG.e = F.e;
      FG.E = Eigen::MatrixXi::Zero(G.n, G.n);
      for (int g = 0; g < G.n; ++g)
        for (int h = 0; h < G.n; ++h) FG.E(g, h) = F.E(abproj[g], abproj[h]);
      out.B_alt.push_back(std::move(FG));
    }
  }

  // E side: center
  ConjData cd = conjugacy_data(G);
  auto [zg, zmap] = subgroup_as_group(G, cd.center);
  AbelianDual zdual = abelian_dual(zg);
  long zcount = 1;
  bool full_e = true;
  for (size_t i = 0; i < zdual.st.factors.size(); ++i) {
    long cnt = 0;
    for (int b = 0; b < zg.n; ++b)
      if (zdual.st.factors[i] % zg.order_of(b) == 0) ++cnt;
    zcount *= cnt;
    if (zcount > cap) { full_e = false; break; }
  }
  if (full_e) {
    // a: dual(Z) -> Z determined by images of the dual basis characters
    std::vector<std::vector<int>> cands;
    for (size_t i = 0; i < zdual.st.factors.size(); ++i) {
      std::vector<int> c;
      for (int b = 0; b < zg.n; ++b)
        if (zdual.st.factors[i] % zg.order_of(b) == 0) c.push_back(b);
      cands.push_back(std::move(c));
    }
    std::vector<size_t> idx(cands.size(), 0);
    while (true) {
      // image per character of dual(Z): a(prod chi_i^{c_i}) = prod img_i^{c_i}
      std::vector<int> amap(zdual.size());
      for (int chi = 0; chi < zdual.size(); ++chi) {
        int z = zg.id;
        for (size_t i = 0; i < cands.size(); ++i)
          z = zg.mul(z, zg.power(cands[i][idx[i]], zdual.chars[chi].exps[i]));
        amap[chi] = z;
      }
      out.E_homs.push_back(std::move(amap));
      if (idx.empty()) break;
      size_t i = 0;
      while (i < idx.size() && ++idx[i] == cands[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  }
  // alternating a's via form entries: a with chi_j(a(chi_i)) = zeta^{t_ij}
  {
    size_t k = zdual.st.factors.size();
    std::vector<std::pair<size_t, size_t>> slots;
    std::vector<long> mods;
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j) {
        slots.push_back({i, j});
        mods.push_back(std::gcd(zdual.st.factors[i], zdual.st.factors[j]));
      }
    std::vector<long> t(slots.size(), 0);
    while (true) {
      // dlog vector of a(chi_i): component j from t entries
      std::vector<std::vector<long>> imgdlog(k, std::vector<long>(k, 0));
      for (size_t s = 0; s < slots.size(); ++s) {
        auto [i, j] = slots[s];
        long g = mods[s];
        imgdlog[i][j] = (zdual.st.factors[j] / g) * t[s] % zdual.st.factors[j];
        imgdlog[j][i] = (zdual.st.factors[i] - (zdual.st.factors[i] / g) * t[s] % zdual.st.factors[i]) %
                        zdual.st.factors[i];
      }
      std::vector<int> amap(zdual.size());
      for (int chi = 0; chi < zdual.size(); ++chi) {
        int z = zg.id;
        for (size_t i = 0; i < k; ++i) {
          // a(chi_i) element from its dlog
          int gi = zg.id;
          for (size_t j = 0; j < k; ++j)
            gi = zg.mul(gi, zg.power(zdual.st.gens[j], imgdlog[i][j]));
          z = zg.mul(z, zg.power(gi, zdual.chars[chi].exps[i]));
        }
        amap[chi] = z;
      }
      out.E_alt.push_back(std::move(amap));
      if (t.empty()) break;
      size_t s = 0;
      while (s < t.size() && ++t[s] == mods[s]) t[s++] = 0;
      if (s == t.size()) break;
    }
  }
  return out;
}

}  // namespace qd
