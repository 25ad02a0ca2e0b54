#pragma once

// Hilbert symbols at the places of Q(sqrt d) and the local-global
// hyperbolicity test over Q(sqrt d).

#include <array>
#include <map>
#include <mutex>
#include <set>
#include <vector>

#include "qfkit/fields.hpp"
#include "qfkit/localglobal.hpp"
#include "qfkit/quadfield.hpp"

namespace qfkit {

namespace detail {

inline BigInt bmod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

inline BigInt ipow(long long p, int k) {
  BigInt r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

/// Root of x^2 = d in Z_p correct modulo p^m (p odd with (d|p) = 1, or p = 2 with d = 1 mod 8).
inline BigInt padic_sqrt(long long d, long long p, int m) {
  if (p == 2) {
    BigInt r = 1;
    for (int k = 3; k <= m + 1; ++k) {
      BigInt mod = ipow(2, k + 1);
      if (bmod(r * r - d, mod) != 0) r += ipow(2, k - 1);
    }
    return r;
  }
  BigInt r = sqrt_mod(mod_floor(d, p), p);
  BigInt pk = p;
  long long inv2r = static_cast<long long>(
      powmod(static_cast<unsigned long long>(mod_floor(2 * static_cast<long long>(r), p)),
             static_cast<unsigned long long>(p - 2), static_cast<unsigned long long>(p)));
  for (int k = 1; k < m; ++k) {
    BigInt c = (r * r - d) / pk;  // exact
    long long t = static_cast<long long>(bmod(-c * inv2r, p));
    r += pk * t;
    pk *= p;
  }
  return r;
}

/// Square class in Q_p of x + y*r where r is the chosen root of d, as a squarefree integer.
inline long long split_class(const QuadElement& z, long long p, int sign) {
  BigInt D = boost::multiprecision::lcm(den(z.x), den(z.y));
  BigInt X = num(z.x * Rational(D)), Y = num(z.y * Rational(D));
  BigInt N = X * X - BigInt(z.d) * Y * Y;
  if (N == 0) fail(ErrorCode::ZeroElement, "zero in Q(sqrt d)");
  int extra = p == 2 ? 4 : 2;
  int m = vp(N, p) + extra;
  BigInt pm = ipow(p, m);
  BigInt r = bmod(padic_sqrt(z.d, p, m), pm);
  if (sign < 0) r = bmod(-r, pm);
  BigInt t = bmod(X + Y * r, pm);
  int v = vp(t, p);
  BigInt u = t / ipow(p, v);
  int vd = vp(D, p);
  BigInt du = D / ipow(p, vd);
  long long mod = p == 2 ? 8 : p;
  long long uu = static_cast<long long>(bmod(u, mod));
  long long dd = static_cast<long long>(bmod(du, mod));
  long long unit;
  if (p == 2) {
    unit = mod_floor(uu * dd, 8);  // odd residues are self-inverse mod 8
    if (unit == 7) unit = -1;
  } else {
    unit = legendre(uu, p) * legendre(dd, p) == 1 ? 1 : least_nonresidue(p);
  }
  return ((v - vd) % 2 ? p : 1) * unit;
}

/// Arithmetic in the ring of integers of a non-split dyadic completion of Q(sqrt d),
/// in the basis {1, b} with b^2 = m0 + m1 b, modulo 2^prec.
struct DyadicField {
  long long d = 0;
  bool inert = false;
  unsigned long long m0 = 0, m1 = 0;
  int e = 1;
  std::map<std::pair<unsigned, unsigned>, int> unit_class;  // residue key -> class id
  std::vector<std::pair<unsigned long long, unsigned long long>> unit_reps;
  std::array<std::array<int, 16>, 16> table{};

  struct Elt {
    unsigned long long x = 0, y = 0;
    int prec = 64;
  };

  static unsigned long long mask(int prec) { return prec >= 64 ? ~0ULL : ((1ULL << prec) - 1); }

  Elt mul(const Elt& a, const Elt& b) const {
    Elt r;
    r.prec = std::min(a.prec, b.prec);
    r.x = a.x * b.x + a.y * b.y * m0;
    r.y = a.x * b.y + a.y * b.x + a.y * b.y * m1;
    r.x &= mask(r.prec);
    r.y &= mask(r.prec);
    return r;
  }
  Elt add(const Elt& a, const Elt& b) const {
    Elt r;
    r.prec = std::min(a.prec, b.prec);
    r.x = (a.x + b.x) & mask(r.prec);
    r.y = (a.y + b.y) & mask(r.prec);
    return r;
  }

  static int v2(unsigned long long x, int prec) {
    if ((x & mask(prec)) == 0) return 1000;
    return __builtin_ctzll(x);
  }
  int val(const Elt& a) const {
    int vx = v2(a.x, a.prec), vy = v2(a.y, a.prec);
    if (inert) return std::min(vx, vy);
    return std::min(vx >= 1000 ? 1000 : 2 * vx, vy >= 1000 ? 1000 : 2 * vy + 1);
  }

  static unsigned long long inv_odd(unsigned long long o) {
    unsigned long long x = o;  // Newton iteration for the inverse mod 2^64
    for (int i = 0; i < 6; ++i) x *= 2 - o * x;
    return x;
  }

  Elt div_uniformizer(const Elt& a) const {
    Elt r;
    r.prec = a.prec - 1;
    if (inert) {
      r.x = a.x >> 1;
      r.y = a.y >> 1;
    } else if (m1 == 0) {
      unsigned long long o = inv_odd(static_cast<unsigned long long>(d / 2));
      r.x = a.y;
      r.y = (a.x >> 1) * o;
    } else {
      unsigned long long o = inv_odd(static_cast<unsigned long long>((d - 1) / 2));
      r.x = a.y - a.x * o;
      r.y = (a.x >> 1) * o;
    }
    r.x &= mask(r.prec);
    r.y &= mask(r.prec);
    return r;
  }

  std::pair<unsigned, unsigned> key(const Elt& u) const {
    if (inert) return {static_cast<unsigned>(u.x & 7), static_cast<unsigned>(u.y & 7)};
    return {static_cast<unsigned>(u.x & 7), static_cast<unsigned>(u.y & 3)};
  }

  /// Class in E*/E*^2 as 8*parity(v) + unit class; -1 when the valuation exceeds the precision budget.
  int class_of(const Elt& a) const {
    int v = val(a);
    if (v >= 1000 || v > 40) return -1;
    Elt u = a;
    for (int i = 0; i < v; ++i) u = div_uniformizer(u);
    auto it = unit_class.find(key(u));
    if (it == unit_class.end()) fail(ErrorCode::Degenerate, "dyadic unit class lookup failed");
    return (v % 2) * 8 + it->second;
  }

  Elt from_quad(const QuadElement& z) const {
    Rational x = z.x, y = z.y;
    // clear powers of 2 in the denominators by a square factor
    int k = std::max(vp(den(x), 2), vp(den(y), 2));
    if (k % 2) ++k;
    Rational s = Rational(BigInt(1) << k);
    x *= s;
    y *= s;
    auto to_u64 = [](const Rational& q) {
      BigInt n = num(q), dd = den(q);
      BigInt mod = BigInt(1) << 64;
      BigInt nr = n % mod;
      if (nr < 0) nr += mod;
      BigInt dr = dd % mod;
      unsigned long long nu = static_cast<unsigned long long>(nr), du = static_cast<unsigned long long>(dr);
      return nu * inv_odd(du);
    };
    unsigned long long a = to_u64(x), c = to_u64(y);
    Elt r;
    if (inert) {
      r.x = a - c;
      r.y = 2 * c;
    } else if (m1 == 0) {
      r.x = a;
      r.y = c;
    } else {
      r.x = a - c;
      r.y = c;
    }
    return r;
  }

  Elt rep(int cls) const {
    auto [x, y] = unit_reps.at(static_cast<std::size_t>(cls % 8));
    Elt r{x, y, 64};
    if (cls >= 8) r = mul(r, uniformizer());
    return r;
  }
  Elt uniformizer() const {
    if (inert) return Elt{2, 0, 64};
    return Elt{0, 1, 64};
  }

  int class_mul(int a, int b) const { return class_of(mul(rep(a), rep(b))); }
  int neg_class(int a) const { return class_of(mul(rep(a), Elt{~0ULL, 0, 64})); }

  explicit DyadicField(long long d_) : d(d_) {
    long long r = mod_floor(d, 8);
    if (r == 1) fail(ErrorCode::PreconditionFailed, "2 splits in Q(sqrt d)");
    if (r == 5) {
      inert = true;
      m0 = static_cast<unsigned long long>((d - 1) / 4);
      m1 = 1;
      e = 1;
    } else if (r == 2 || r == 6) {
      m0 = static_cast<unsigned long long>(d);
      m1 = 0;
      e = 2;
    } else {
      m0 = static_cast<unsigned long long>(d - 1);
      m1 = 2;
      e = 2;
    }
    build_unit_classes();
    build_table();
  }

  void build_unit_classes() {
    unsigned ymax = inert ? 8 : 4;
    std::vector<Elt> units{Elt{1, 0, 64}};
    for (unsigned x = 0; x < 8; ++x)
      for (unsigned y = 0; y < ymax; ++y) {
        Elt u{x, y, 64};
        if (val(u) == 0) units.push_back(u);
      }
    std::set<std::pair<unsigned, unsigned>> squares;
    for (const auto& u : units) squares.insert(key(mul(u, u)));
    std::vector<Elt> sq_elts;
    for (auto [x, y] : squares) sq_elts.push_back(Elt{x, y, 64});
    int next = 0;
    for (const auto& u : units) {
      if (unit_class.count(key(u))) continue;
      for (const auto& s : sq_elts) unit_class[key(mul(u, s))] = next;
      unit_reps.emplace_back(u.x, u.y);
      ++next;
    }
    if (next != 8) fail(ErrorCode::Degenerate, "unexpected dyadic unit group structure");
  }

  bool brute_symbol(int ca, int cb) const {
    Elt a = rep(ca), b = rep(cb);
    Elt ab = mul(a, b);
    if (class_of(mul(ab, Elt{~0ULL, 0, 64})) == 0) return true;
    const unsigned K = 64;
    for (unsigned yx = 0; yx < K; ++yx)
      for (unsigned yy = 0; yy < K; ++yy) {
        Elt Y{yx, yy, 64};
        Elt w = add(a, mul(b, mul(Y, Y)));
        if (class_of(w) == 0) return true;
        if (val(Y) >= 1) {
          Elt w2 = add(mul(a, mul(Y, Y)), b);
          if (class_of(w2) == 0) return true;
        }
      }
    return false;
  }

  void build_table() {
    for (int i = 0; i < 16; ++i)
      for (int j = i; j < 16; ++j) table[i][j] = table[j][i] = brute_symbol(i, j) ? 1 : -1;
    for (int i = 0; i < 16; ++i) {
      int ones = 0;
      for (int j = 0; j < 16; ++j) ones += table[i][j] == 1;
      if ((i == 0 && ones != 16) || (i != 0 && ones != 8) || table[i][neg_class(i)] != 1)
        fail(ErrorCode::Degenerate, "dyadic Hilbert table failed its consistency check");
    }
  }

  int symbol(const QuadElement& a, const QuadElement& b) const {
    int ca = class_of(from_quad(a)), cb = class_of(from_quad(b));
    if (ca < 0 || cb < 0) fail(ErrorCode::Overflow, "dyadic valuation beyond precision");
    return table[ca][cb];
  }
};

inline const DyadicField& dyadic_field(long long d) {
  static std::mutex mu;
  static std::map<long long, std::unique_ptr<DyadicField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<DyadicField>(d);
  return *slot;
}

inline int tame_unit_residue_inert(const QuadElement& z, long long p, int& v) {
  int vx = z.x == 0 ? 1 << 20 : vp(z.x, p), vy = z.y == 0 ? 1 << 20 : vp(z.y, p);
  v = std::min(vx, vy);
  Rational n = z.norm();
  Rational scale = 1;
  for (int i = 0; i < std::abs(2 * v); ++i) scale *= p;
  Rational nu = v >= 0 ? n / scale : n * scale;
  return legendre(num(nu) * den(nu), p);
}

inline int tame_unit_residue_ramified(QuadElement z, long long p, int& v) {
  v = vp(z.norm(), p);
  QuadElement s = QuadElement::sqrt_d(z.d);
  z = v >= 0 ? z / s.pow(v) : z * s.pow(-v);
  return legendre(num(z.x) * den(z.x), p);
}

}  // namespace detail

/// Places of Q(sqrt d) above the rational prime p.
inline std::vector<Place> quad_places_over(long long p, long long d) {
  require_quadratic_d(d);
  SplitTag tag = split_prime_in_quadratic(p, d);
  std::vector<Place> out;
  for (int s : tag == SplitTag::Split ? std::vector<int>{1, -1} : std::vector<int>{1}) {
    Place v;
    v.kind = Place::Kind::QuadFieldPrime;
    v.p = p;
    v.d = d;
    v.tag = tag;
    v.sign = s;
    out.push_back(v);
  }
  return out;
}

inline std::vector<Place> quad_real_places(long long d) {
  std::vector<Place> out;
  if (d < 0) return out;
  for (int s : {1, -1}) {
    Place v = Place::real();
    v.d = d;
    v.sign = s;
    out.push_back(v);
  }
  return out;
}

/// Hilbert symbol (a,b) at a place of Q(sqrt d).
inline int hilbert_symbol_quad(const QuadElement& a, const QuadElement& b, const Place& v) {
  if (a.is_zero() || b.is_zero()) fail(ErrorCode::ZeroArgument, "Hilbert symbol of zero");
  long long d = a.d;
  if (v.is_real()) {
    if (d < 0) return 1;
    return (real_sign(a, v.sign) < 0 && real_sign(b, v.sign) < 0) ? -1 : 1;
  }
  if (v.kind != Place::Kind::QuadFieldPrime) fail(ErrorCode::UnsupportedLocalField, "not a place of Q(sqrt d)");
  long long p = v.p;
  SplitTag tag = split_prime_in_quadratic(p, d);
  if (tag == SplitTag::Split) {
    return hilbert_Q(detail::split_class(a, p, v.sign), detail::split_class(b, p, v.sign), p);
  }
  if (p == 2) return detail::dyadic_field(d).symbol(a, b);
  int al = 0, be = 0;
  if (tag == SplitTag::Inert) {
    int ua = detail::tame_unit_residue_inert(a, p, al);
    int ub = detail::tame_unit_residue_inert(b, p, be);
    int r = 1;
    if (be % 2 && ua == -1) r = -r;
    if (al % 2 && ub == -1) r = -r;
    return r;
  }
  int ua = detail::tame_unit_residue_ramified(a, p, al);
  int ub = detail::tame_unit_residue_ramified(b, p, be);
  int r = 1;
  if ((al % 2) && (be % 2) && legendre(-1, p) == -1) r = -r;
  if (be % 2 && ua == -1) r = -r;
  if (al % 2 && ub == -1) r = -r;
  return r;
}

/// Rational primes below the places where symbols of these elements can be nontrivial.
inline std::vector<long long> quad_support(const std::vector<QuadElement>& xs, long long d) {
  std::set<long long> s{2};
  for (long long q : prime_divisors(std::abs(d))) s.insert(q);
  auto add = [&](const BigInt& n) {
    BigInt a = n < 0 ? BigInt(-n) : n;
    if (a <= 1) return;
    for (long long q : prime_divisors(to_ll(a))) s.insert(q);
  };
  for (const auto& x : xs) {
    Rational n = x.norm();
    add(num(n));
    add(den(n));
    add(den(x.x));
    add(den(x.y));
  }
  return {s.begin(), s.end()};
}

/// Hyperbolicity of <x1,...,xn> over Q(sqrt d).
inline bool is_hyperbolic_quadfield(const std::vector<QuadElement>& xs, long long d) {
  require_quadratic_d(d);
  std::size_t n = xs.size();
  if (n % 2) return false;
  if (n == 0) return true;
  std::size_t m = n / 2;
  QuadElement disc(d, (m % 2) ? -1 : 1);
  for (const auto& x : xs) {
    if (x.is_zero()) fail(ErrorCode::ZeroElement, "zero entry");
    disc = disc * x;
  }
  if (!is_square_quad(disc)) return false;
  for (const auto& v : quad_real_places(d)) {
    int sig = 0;
    for (const auto& x : xs) sig += real_sign(x, v.sign);
    if (sig != 0) return false;
  }
  QuadElement minus1(d, -1);
  int target_exp = static_cast<int>((m * (m - 1) / 2) % 2);
  for (long long p : quad_support(xs, d)) {
    for (const auto& v : quad_places_over(p, d)) {
      int s = 1;
      QuadElement prefix(d, 1);
      for (std::size_t i = 0; i < n; ++i) {
        if (i) s *= hilbert_symbol_quad(prefix, xs[i], v);
        prefix = prefix * xs[i];
      }
      int target = target_exp ? hilbert_symbol_quad(minus1, minus1, v) : 1;
      if (s != target) return false;
    }
  }
  return true;
}

/// Hyperbolicity over Q(sqrt d) of a form with rational entries.
inline bool is_hyperbolic_quadfield(const QuadForm& f, long long d) {
  std::vector<QuadElement> xs;
  for (long long x : rational_entries(f)) xs.emplace_back(d, x);
  return is_hyperbolic_quadfield(xs, d);
}

}  // namespace qfkit
