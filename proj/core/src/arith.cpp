#include <campana/arith.hpp>
#include <campana/places.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace campana {

namespace {

constexpr std::uint32_t kSieveLimit = 1000000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kSieveLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kSieveLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= kSieveLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool strong_probable_prime(const BigInt& n, const BigInt& d, unsigned long s, unsigned long base) {
  BigInt a(base);
  if (a % n == 0) return true;
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  BigInt n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Pollard-Brent rho. Returns a nontrivial factor of the odd composite n.
BigInt pollard_brent(const BigInt& n) {
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x, ys, q = 1, g = 1;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto f = [&](const BigInt& v) -> BigInt { return (v * v + c) % n; };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          BigInt diff = x - y;
          q = q * abs(diff) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        BigInt diff = x - ys;
        g = gcd(abs(diff), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const BigInt& n, std::map<BigInt, unsigned, BigIntLess>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  BigInt f = pollard_brent(n);
  factor_into(f, out);
  factor_into(BigInt(n / f), out);
}

}  // namespace

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num_text = body.substr(0, slash);
  std::string_view den_text = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  BigInt num{std::string(num_text)}, den{std::string(den_text)};
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  if (negative) num = -num;
  return Rational(num, den);
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  return Rational(den_, num_);
}

Rational Rational::abs() const { return Rational(BigInt(::abs(num_)), den_); }

Rational Rational::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), num_.get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), den_.get_mpz_t(), static_cast<unsigned long>(exponent));
  Rational out;
  out.num_ = std::move(n);
  out.den_ = std::move(d);
  return out;
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

std::string Rational::to_fraction_string() const { return num_.get_str() + "/" + den_.get_str(); }

Rational operator+(const Rational& x, const Rational& y) {
  if (x.den_ == 1 && y.den_ == 1) return Rational(BigInt(x.num_ + y.num_));
  return Rational(BigInt(x.num_ * y.den_ + y.num_ * x.den_), BigInt(x.den_ * y.den_));
}

Rational operator-(const Rational& x, const Rational& y) {
  if (x.den_ == 1 && y.den_ == 1) return Rational(BigInt(x.num_ - y.num_));
  return Rational(BigInt(x.num_ * y.den_ - y.num_ * x.den_), BigInt(x.den_ * y.den_));
}

Rational operator*(const Rational& x, const Rational& y) {
  if (x.den_ == 1 && y.den_ == 1) return Rational(BigInt(x.num_ * y.num_));
  return Rational(BigInt(x.num_ * y.num_), BigInt(x.den_ * y.den_));
}

Rational operator/(const Rational& x, const Rational& y) {
  if (y.is_zero()) throw std::domain_error("Rational: division by zero");
  return Rational(BigInt(x.num_ * y.den_), BigInt(x.den_ * y.num_));
}

Rational operator-(const Rational& x) {
  Rational out = x;
  out.num_ = -out.num_;
  return out;
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
  int c = cmp(BigInt(x.num_ * y.den_), BigInt(y.num_ * x.den_));
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational Factorization::product() const {
  Rational out(sign);
  for (const auto& [p, e] : factors) out *= Rational(p).pow(e);
  return out;
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  static const unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  static const unsigned long extra[] = {41, 43, 47, 53, 59, 61, 67, 71, 73, 79};
  for (unsigned long b : bases) {
    if (n == b) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
  }
  if (n < 41 * 41) return true;
  BigInt d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (unsigned long b : bases) {
    if (!strong_probable_prime(n, d, s, b)) return false;
  }
  static const BigInt deterministic_limit("3317044064679887385961981");
  if (n < deterministic_limit) return true;
  for (unsigned long b : extra) {
    if (!strong_probable_prime(n, d, s, b)) return false;
  }
  return true;
}

std::map<BigInt, unsigned, BigIntLess> factor_integer(const BigInt& n) {
  if (n < 1) throw std::invalid_argument("factor_integer: argument must be positive");
  std::map<BigInt, unsigned, BigIntLess> out;
  BigInt m = n;
  const auto& primes = small_primes();
  if (mpz_fits_ulong_p(m.get_mpz_t())) {
    unsigned long v = m.get_ui();
    for (std::uint32_t p : primes) {
      if (std::uint64_t(p) * p > v) break;
      if (v % p != 0) continue;
      unsigned e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      out[BigInt(p)] = e;
    }
    m = v;
    if (m == 1) return out;
    // After dividing out every prime up to sqrt(v), the rest is prime.
    if (BigInt(kSieveLimit) * kSieveLimit >= m) {
      out[m] += 1;
      return out;
    }
  } else {
    for (std::uint32_t p : primes) {
      if (BigInt(p) * p > m) break;
      if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      out[BigInt(p)] = e;
      if (is_prime(m)) break;
    }
  }
  if (m == 1) return out;
  if (m < BigInt(kSieveLimit) * kSieveLimit) {
    out[m] += 1;
    return out;
  }
  factor_into(m, out);
  return out;
}

Factorization factorize(const Rational& n) {
  if (n.is_zero()) throw std::invalid_argument("factorize: zero has no factorization");
  Factorization f;
  f.sign = n.sign();
  for (const auto& [p, e] : factor_integer(BigInt(abs(n.num())))) f.factors[p] += long(e);
  for (const auto& [p, e] : factor_integer(n.den())) f.factors[p] -= long(e);
  return f;
}

std::vector<BigInt> prime_support(const Rational& r) {
  if (r.is_zero()) throw std::invalid_argument("prime_support: zero");
  std::vector<BigInt> out;
  for (const auto& [p, e] : factorize(r).factors) out.push_back(p);
  return out;
}

long valuation(const Rational& r, const BigInt& p) {
  if (r.is_zero()) throw std::invalid_argument("valuation: zero has no finite valuation");
  if (p < 2) throw std::invalid_argument("valuation: p must be a prime");
  BigInt tmp;
  long v = long(mpz_remove(tmp.get_mpz_t(), r.num().get_mpz_t(), p.get_mpz_t()));
  v -= long(mpz_remove(tmp.get_mpz_t(), r.den().get_mpz_t(), p.get_mpz_t()));
  return v;
}

long ExtInt::value() const {
  if (infinite_) throw std::logic_error("ExtInt: value of +infinity");
  return value_;
}

ExtInt valuation_ext(const Rational& r, const BigInt& p) {
  if (r.is_zero()) return ExtInt::infinity();
  return valuation(r, p);
}

BigInt crt(std::span<const Congruence> system) {
  BigInt x = 0, m = 1;
  for (const auto& c : system) {
    if (c.modulus <= 0) throw std::invalid_argument("crt: moduli must be positive");
    if (gcd(m, c.modulus) != 1) throw std::invalid_argument("crt: moduli are not pairwise coprime");
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), c.modulus.get_mpz_t());
    // x + m*t = residue (mod modulus)
    BigInt t = (c.residue - x) * inv;
    mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), c.modulus.get_mpz_t());
    x += m * t;
    m *= c.modulus;
  }
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return x;
}

int legendre(const BigInt& a, const BigInt& p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre: p must be an odd prime");
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return mpz_jacobi(r.get_mpz_t(), p.get_mpz_t());
}

long split_unit(const Rational& r, const BigInt& p, BigInt& unit) {
  if (r.is_zero()) throw std::invalid_argument("split_unit: zero");
  BigInt num, den;
  long v = long(mpz_remove(num.get_mpz_t(), r.num().get_mpz_t(), p.get_mpz_t()));
  v -= long(mpz_remove(den.get_mpz_t(), r.den().get_mpz_t(), p.get_mpz_t()));
  unit = num * den;
  return v;
}

bool is_square_local(const Rational& a, const Place& v) {
  if (a.is_zero()) throw std::invalid_argument("is_square_local: zero");
  if (v.is_infinite()) return a.sign() > 0;
  BigInt unit;
  long e = split_unit(a, v.p(), unit);
  if (e % 2 != 0) return false;
  if (v.p() == 2) return mpz_fdiv_ui(unit.get_mpz_t(), 8) == 1;
  return legendre(unit, v.p()) == 1;
}

bool rational_sqrt(const Rational& a, Rational& root) {
  if (a.sign() < 0) return false;
  if (!mpz_perfect_square_p(a.num().get_mpz_t()) || !mpz_perfect_square_p(a.den().get_mpz_t())) return false;
  root = Rational(BigInt(sqrt(a.num())), BigInt(sqrt(a.den())));
  return true;
}

BigInt common_denominator(std::span<const Rational> values) {
  BigInt out = 1;
  for (const auto& v : values) out = lcm(out, v.den());
  return out;
}

}  // namespace campana
