#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gkz/errors.hpp"

namespace gkz {

using Rational = mpq_class;
using BigInt = mpz_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
// gmpxx has no long long constructor; long is 64-bit on the supported targets.
inline Rational qi(long long v) { return Rational(static_cast<long>(v)); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Parses "p/q", "p", or an exact decimal such as "-0.125". Floating-point
// notation with exponents is rejected.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return InvalidInput("not an exact rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  auto is_int_str = [](std::string_view t) {
    std::size_t i = 0;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int_str(num) || !is_int_str(den) || den[0] == '-' || den[0] == '+') throw bad();
    BigInt n(num[0] == '+' ? num.substr(1) : num, 10), d(den, 10);
    if (d == 0) throw InvalidInput("zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
  }
  if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
    if (ip.empty()) ip = "0";
    if (fp.empty() || !is_int_str(ip)) throw bad();
    for (char c : fp)
      if (c < '0' || c > '9') throw bad();
    BigInt n(ip + fp, 10), d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, fp.size());
    Rational q(neg ? BigInt(-n) : n, d);
    q.canonicalize();
    return q;
  }
  if (!is_int_str(s)) throw bad();
  return Rational(BigInt(s[0] == '+' ? s.substr(1) : s, 10));
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::vector<std::string> to_strings(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

inline Rational floor_of(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

// Arithmetic in Z/pZ for a runtime prime p < 2^63.
class ModField {
public:
  explicit ModField(std::uint64_t p) : p_(p) {}

  std::uint64_t modulus() const noexcept { return p_; }

  std::uint64_t reduce(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p_) : r);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const {
    if (a == 0) throw Error("inverse of zero in Z/" + std::to_string(p_));
    return pow(a, p_ - 2);
  }

  std::uint64_t from_integer(const BigInt& z) const {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
    return r.get_ui();
  }
  bool divides(const BigInt& z) const { return from_integer(z) == 0; }

  // Throws when p divides the denominator.
  std::uint64_t from_rational(const Rational& q) const {
    std::uint64_t d = from_integer(q.get_den());
    if (d == 0) throw InvalidInput("denominator of " + to_string(q) + " divisible by " + std::to_string(p_));
    return mul(from_integer(q.get_num()), inv(d));
  }

private:
  std::uint64_t p_;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace gkz
