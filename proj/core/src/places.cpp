#include <campana/places.hpp>

#include <campana/errors.hpp>

#include <algorithm>
#include <array>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace campana {

Place Place::prime(const BigInt& p) {
  if (!is_prime(p)) throw std::invalid_argument("Place: " + p.get_str() + " is not prime");
  Place v;
  v.infinite_ = false;
  v.p_ = p;
  return v;
}

const BigInt& Place::p() const {
  if (infinite_) throw std::logic_error("Place: the real place has no prime");
  return p_;
}

std::string Place::to_string() const { return infinite_ ? "inf" : p_.get_str(); }

Place Place::parse(std::string_view text) {
  if (text == "inf" || text == "oo" || text == "infinity") return infinity();
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("not a place: '" + std::string(text) + "'");
  }
  return prime(BigInt(std::string(text)));
}

std::strong_ordering operator<=>(const Place& x, const Place& y) {
  if (x.infinite_ || y.infinite_) return y.infinite_ <=> x.infinite_;
  int c = cmp(x.p_, y.p_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Place& v) { return os << v.to_string(); }

PlaceSet::PlaceSet(std::initializer_list<Place> places) {
  for (const auto& v : places) insert(v);
}

PlaceSet PlaceSet::from_primes(const std::vector<BigInt>& primes) {
  PlaceSet s;
  for (const auto& p : primes) s.insert(Place::prime(p));
  return s;
}

PlaceSet PlaceSet::from_primes(std::initializer_list<long> primes) {
  PlaceSet s;
  for (long p : primes) s.insert(Place::prime(p));
  return s;
}

void PlaceSet::insert(const Place& v) {
  auto it = std::lower_bound(places_.begin(), places_.end(), v);
  if (it == places_.end() || *it != v) places_.insert(it, v);
}

bool PlaceSet::contains(const Place& v) const {
  return std::binary_search(places_.begin(), places_.end(), v);
}

bool PlaceSet::contains_prime(const BigInt& p) const {
  return std::any_of(places_.begin(), places_.end(),
                     [&](const Place& v) { return v.is_finite() && v.p() == p; });
}

std::vector<BigInt> PlaceSet::primes() const {
  std::vector<BigInt> out;
  for (const auto& v : places_) {
    if (v.is_finite()) out.push_back(v.p());
  }
  return out;
}

PlaceSet PlaceSet::intersect(const PlaceSet& other) const {
  PlaceSet out;
  std::set_intersection(places_.begin(), places_.end(), other.places_.begin(), other.places_.end(),
                        std::back_inserter(out.places_));
  return out;
}

PlaceSet PlaceSet::unite(const PlaceSet& other) const {
  PlaceSet out;
  std::set_union(places_.begin(), places_.end(), other.places_.begin(), other.places_.end(),
                 std::back_inserter(out.places_));
  return out;
}

std::string PlaceSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < places_.size(); ++i) {
    if (i) out += ", ";
    out += places_[i].to_string();
  }
  return out + "}";
}

std::ostream& operator<<(std::ostream& os, const PlaceSet& s) { return os << s.to_string(); }

namespace {

void require_nonzero(const Rational& a, const Rational& b) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("Hilbert symbol of zero");
}

int sign_of_parity(unsigned long e) { return (e & 1) ? -1 : 1; }

// (u-1)/2 and (u^2-1)/8 modulo 2 for an odd integer u.
unsigned long eps2(const BigInt& u) { return (mpz_fdiv_ui(u.get_mpz_t(), 4) == 3) ? 1 : 0; }
unsigned long omega2(const BigInt& u) {
  unsigned long r = mpz_fdiv_ui(u.get_mpz_t(), 8);
  return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert(const Rational& a, const Rational& b, const Place& v) {
  require_nonzero(a, b);
  if (v.is_infinite()) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
  const BigInt& p = v.p();
  BigInt u, w;
  long alpha = split_unit(a, p, u);
  long beta = split_unit(b, p, w);
  unsigned long al = static_cast<unsigned long>(alpha & 1), be = static_cast<unsigned long>(beta & 1);
  if (p == 2) {
    return sign_of_parity(eps2(u) * eps2(w) + al * omega2(w) + be * omega2(u));
  }
  unsigned long eps_p = mpz_fdiv_ui(p.get_mpz_t(), 4) == 3 ? 1 : 0;
  int s = sign_of_parity(al * be * eps_p);
  if (be) s *= legendre(u, p);
  if (al) s *= legendre(w, p);
  return s;
}

namespace {

using i128 = __int128;

long two_adic_extra(const BigInt& p) { return p == 2 ? 1 : 0; }

// Square-class representative of r at p as an integer with valuation 0 or 1.
BigInt reduced_square_class(const Rational& r, const BigInt& p, long& val) {
  BigInt unit;
  long e = split_unit(r, p, unit);
  val = e & 1;
  return val ? BigInt(unit * p) : unit;
}

i128 mod_pos(i128 x, i128 m) {
  x %= m;
  return x < 0 ? x + m : x;
}

i128 to_mod(const BigInt& x, i128 m) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(m));
  return static_cast<i128>(r.get_ui());
}

struct OracleSearch {
  i128 p;
  unsigned depth;
  std::array<i128, 24> pow{};  // p^0 .. p^depth
  i128 A, B;                   // reduced representatives mod p^depth
  long vA, vB, v2;

  // v_p(x) for x known modulo p^j, capped at j.
  long val_capped(i128 x, unsigned j) const {
    if (x == 0) return j;
    long v = 0;
    while (v < long(j) && x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  }

  bool residue_ok(const std::array<i128, 3>& c, unsigned j) const {
    i128 m = pow[j];
    i128 z = c[0] % m, x = c[1] % m, y = c[2] % m;
    i128 F = mod_pos(z * z % m - (A % m) * (x * x % m) % m - (B % m) * (y * y % m) % m, m);
    return F == 0;
  }

  bool liftable(const std::array<i128, 3>& c, unsigned j) const {
    long e = std::min({v2 + val_capped(c[0] % pow[j], j), v2 + vA + val_capped(c[1] % pow[j], j),
                       v2 + vB + val_capped(c[2] % pow[j], j)});
    return 2 * e + 1 <= long(j);
  }

  // kind: 0 = fixed at 1, 1 = free, 2 = free with first digit zero.
  bool dfs(std::array<i128, 3>& c, const std::array<int, 3>& kind, unsigned j) const {
    if (j > 0 && liftable(c, j)) return true;
    if (j == depth) return false;
    std::array<int, 3> idx{};
    int nfree = 0;
    for (int i = 0; i < 3; ++i) {
      if (kind[i] != 0) idx[nfree++] = i;
    }
    std::array<i128, 3> base = c;
    std::array<i128, 3> digit{};
    while (true) {
      bool allowed = true;
      for (int k = 0; k < nfree; ++k) {
        if (kind[idx[k]] == 2 && j == 0 && digit[k] != 0) allowed = false;
      }
      if (allowed) {
        for (int k = 0; k < nfree; ++k) c[idx[k]] = base[idx[k]] + digit[k] * pow[j];
        if (residue_ok(c, j + 1) && dfs(c, kind, j + 1)) return true;
      }
      int k = 0;
      while (k < nfree && ++digit[k] == p) digit[k++] = 0;
      if (k == nfree) break;
    }
    c = base;
    return false;
  }
};

}  // namespace

unsigned min_oracle_precision(const Rational& a, const Rational& b, const BigInt& p) {
  require_nonzero(a, b);
  long m = std::max(std::labs(valuation(a, p)), std::labs(valuation(b, p)));
  return static_cast<unsigned>(2 * (m + two_adic_extra(p)) + 1);
}

unsigned default_oracle_precision(const Rational& a, const Rational& b, const BigInt& p) {
  require_nonzero(a, b);
  long m = std::max(std::labs(valuation(a, p)), std::labs(valuation(b, p)));
  return static_cast<unsigned>(std::max<long>(2 * m + 3, min_oracle_precision(a, b, p)));
}

int hilbert_oracle(const Rational& a, const Rational& b, const BigInt& p, unsigned precision) {
  require_nonzero(a, b);
  if (!is_prime(p)) throw std::invalid_argument("hilbert_oracle: p must be prime");
  if (precision < min_oracle_precision(a, b, p)) {
    throw std::invalid_argument("hilbert_oracle: precision " + std::to_string(precision) +
                                " below the required " +
                                std::to_string(min_oracle_precision(a, b, p)));
  }
  if (p > 1000003) {
    throw std::invalid_argument("hilbert_oracle: prime too large for exhaustive search");
  }
  OracleSearch s;
  s.p = p.get_si();
  // Clearing denominators keeps the square class: a = (num*den) / den^2.
  Rational A0(BigInt(a.num() * a.den())), B0(BigInt(b.num() * b.den()));
  BigInt Ar = reduced_square_class(A0, p, s.vA);
  BigInt Br = reduced_square_class(B0, p, s.vB);
  s.v2 = two_adic_extra(p);
  s.depth = static_cast<unsigned>(std::min<long>(precision, 2 * (std::max(s.vA, s.vB) + s.v2) + 1));
  s.pow[0] = 1;
  for (unsigned i = 1; i <= s.depth; ++i) s.pow[i] = s.pow[i - 1] * s.p;
  s.A = to_mod(Ar, s.pow[s.depth]);
  s.B = to_mod(Br, s.pow[s.depth]);

  static const std::array<std::array<int, 3>, 3> charts = {{{0, 1, 1}, {2, 0, 1}, {2, 2, 0}}};
  for (const auto& kind : charts) {
    std::array<i128, 3> c{};
    for (int i = 0; i < 3; ++i) c[i] = kind[i] == 0 ? 1 : 0;
    if (s.dfs(c, kind, 0)) return 1;
  }
  return -1;
}

int hilbert_oracle(const Rational& a, const Rational& b, const BigInt& p) {
  return hilbert_oracle(a, b, p, default_oracle_precision(a, b, p));
}

int hilbert_oracle_real(const Rational& a, const Rational& b) {
  require_nonzero(a, b);
  return (a.sign() > 0 || b.sign() > 0) ? 1 : -1;
}

PlaceSet odd_support(const Rational& lambda) {
  if (lambda.is_zero()) throw std::invalid_argument("odd_support: zero");
  PlaceSet out;
  for (const auto& [p, e] : factorize(lambda).factors) {
    if (e % 2 != 0) out.insert(Place::prime(p));
  }
  return out;
}

PlaceSet scan_places(const Rational& a, const Rational& b) {
  require_nonzero(a, b);
  PlaceSet out{Place::infinity(), Place::prime(2)};
  for (const auto& p : prime_support(a)) out.insert(Place::prime(p));
  for (const auto& p : prime_support(b)) out.insert(Place::prime(p));
  return out;
}

PlaceSet delta(const Rational& a, const Rational& b) {
  PlaceSet out;
  for (const auto& v : scan_places(a, b)) {
    if (hilbert(a, b, v) == -1) out.insert(v);
  }
  return out;
}

PlaceSet delta_upper(const Rational& a, const Rational& b) {
  return delta(a, b).intersect(odd_support(a).unite(odd_support(b)));
}

PlaceSet omega(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  return delta_upper(a, b).intersect(delta_upper(c, d));
}

bool reciprocity_check(const Rational& a, const Rational& b) {
  int prod = 1;
  for (const auto& v : scan_places(a, b)) prod *= hilbert(a, b, v);
  return prod == 1;
}

Rational find_local_counterexample(const Rational& a, const Place& v, std::size_t cap) {
  if (a.is_zero()) throw std::invalid_argument("find_local_counterexample: zero");
  if (is_square_local(a, v)) {
    throw std::invalid_argument("find_local_counterexample: " + a.to_string() +
                                " is a square at " + v.to_string());
  }
  if (v.is_infinite()) return Rational(-1);
  std::size_t tried = 0;
  for (long k = 1;; ++k) {
    for (const BigInt& base : {BigInt(k), BigInt(k * v.p())}) {
      for (int sign : {1, -1}) {
        if (tried++ >= cap) {
          throw SearchExhausted("find_local_counterexample: cap of " + std::to_string(cap) +
                                " candidates reached");
        }
        Rational b(BigInt(base * sign));
        if (hilbert(a, b, v) == -1) return b;
      }
    }
  }
}

}  // namespace campana
