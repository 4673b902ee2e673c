#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hkr {

// Element of k = Q[v]/(1 + v + ... + v^{p-1}) in the basis v^0..v^{p-2}.
//
// Values whose coefficients fit in 52 bits are stored inline as int64
// numerators over a shared positive denominator; anything larger is held as
// GMP rationals. The representation is canonical either way, so equality is a
// coefficient comparison.
//
// p == 0 marks a rational constant not yet tied to a modulus; it combines with
// a value of any p.
class CycNum {
 public:
  static constexpr int kMaxP = 13;
  static constexpr int kMaxCoeffs = kMaxP - 1;

  CycNum() = default;
  CycNum(long value);  // NOLINT: implicit rational constant
  static CycNum rational(const mpq_class& q);
  // Coefficients of v^0, v^1, ... of any length; reduced mod p.
  static CycNum from_coeffs(int p, const std::vector<mpq_class>& c);
  static CycNum v_power(int p, long e);

  int p() const { return p_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  mpq_class to_rational() const;  // throws PreconditionError if not rational
  mpq_class coeff(int i) const;
  // Length p-1 (or 1 for an untied constant).
  std::vector<mpq_class> coeffs() const;
  CycNum with_p(int p) const;

  CycNum operator-() const;
  CycNum operator+(const CycNum& o) const;
  CycNum operator-(const CycNum& o) const;
  CycNum operator*(const CycNum& o) const;
  CycNum operator/(const CycNum& o) const { return *this * o.inverse(); }
  CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
  CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }
  bool operator==(const CycNum& o) const;
  bool operator!=(const CycNum& o) const { return !(*this == o); }

  CycNum inverse() const;
  // Galois conjugation v -> v^{-1}.
  CycNum bar() const;

  std::string str() const;
  static CycNum parse(int p, std::string_view text);

 private:
  using i128 = __int128;
  static CycNum from_acc(int p, int n, i128* acc, i128 den);
  static CycNum from_mpq(int p, std::vector<mpq_class> c);
  std::vector<mpq_class> padded(int n) const;
  static int common_p(const CycNum& a, const CycNum& b);

  int8_t p_ = 0;
  int8_t n_ = 1;
  bool big_ = false;
  int64_t den_ = 1;
  std::array<int64_t, kMaxCoeffs> num_{};
  std::shared_ptr<const std::vector<mpq_class>> big_rep_;
};

std::ostream& operator<<(std::ostream& os, const CycNum& x);

bool is_prime(long n);

// Raw input for reduce(): exponent num/den with den in {1, 2}.
struct HalfExp {
  long num;
  int den = 1;
  bool operator<(const HalfExp& o) const {
    return std::pair(num * o.den, den) < std::pair(o.num * den, o.den);
  }
};

CycNum reduce(int p, const std::map<HalfExp, mpq_class>& raw);
long half_exponent(int p, long num, int den);

CycNum qint(int p, long n);
CycNum qfact_braces(int p, long m);  // {m} = prod_{i=1}^m (v^i - v^{-i})
CycNum qbinom(int p, long n, long m);
CycNum qfact(int p, long m);  // [m]!

}  // namespace hkr
