#include "hkr/cyclo.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "hkr/errors.hpp"

namespace hkr {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr int64_t kLim = int64_t(1) << 52;

i128 abs128(i128 x) { return x < 0 ? -x : x; }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(i128 x) {
  bool neg = x < 0;
  u128 u = neg ? u128(-x) : u128(x);
  mpz_class hi = static_cast<unsigned long>(uint64_t(u >> 64));
  mpz_class lo = static_cast<unsigned long>(uint64_t(u));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

bool fits_small(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2) <= 52; }

long posmod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// Fold a coefficient vector in v^0..v^{len-1} into the basis v^0..v^{p-2}.
std::vector<mpq_class> fold_mpq(int p, std::vector<mpq_class> c) {
  if (p == 0) {
    for (size_t i = 1; i < c.size(); ++i)
      if (c[i] != 0) throw PreconditionError("CycNum: power of v without a modulus");
    c.resize(1);
    return c;
  }
  std::vector<mpq_class> r(p);
  for (size_t i = 0; i < c.size(); ++i) r[i % p] += c[i];
  mpq_class top = r[p - 1];
  r.resize(p - 1);
  if (top != 0)
    for (auto& x : r) x -= top;
  return r;
}

}  // namespace

CycNum::CycNum(long value) { num_[0] = value; if (std::labs(value) > kLim) *this = rational(mpq_class(value)); }

CycNum CycNum::rational(const mpq_class& q) { return from_mpq(0, {q}); }

CycNum CycNum::from_coeffs(int p, const std::vector<mpq_class>& c) {
  if (p != 0 && (p < 3 || p > kMaxP))
    throw PreconditionError("CycNum: modulus " + std::to_string(p) + " out of supported range");
  return from_mpq(p, fold_mpq(p, c));
}

CycNum CycNum::v_power(int p, long e) {
  if (p < 3 || p > kMaxP) throw PreconditionError("CycNum: unsupported modulus");
  long k = posmod(e, p);
  CycNum r;
  r.p_ = static_cast<int8_t>(p);
  r.n_ = static_cast<int8_t>(p - 1);
  if (k < p - 1)
    r.num_[k] = 1;
  else
    for (int i = 0; i < p - 1; ++i) r.num_[i] = -1;
  return r;
}

CycNum CycNum::from_acc(int p, int n, i128* acc, i128 den) {
  if (den < 0) {
    den = -den;
    for (int i = 0; i < n; ++i) acc[i] = -acc[i];
  }
  if (den != 1) {
    u128 g = u128(den);
    for (int i = 0; i < n && g != 1; ++i)
      if (acc[i] != 0) g = gcd128(g, u128(abs128(acc[i])));
    if (g > 1) {
      den /= i128(g);
      for (int i = 0; i < n; ++i) acc[i] /= i128(g);
    }
  }
  bool fits = den <= kLim;
  for (int i = 0; i < n && fits; ++i) fits = abs128(acc[i]) <= kLim;
  if (fits) {
    CycNum r;
    r.p_ = static_cast<int8_t>(p);
    r.n_ = static_cast<int8_t>(n);
    r.den_ = int64_t(den);
    for (int i = 0; i < n; ++i) r.num_[i] = int64_t(acc[i]);
    return r;
  }
  std::vector<mpq_class> c(n);
  mpz_class d = to_mpz(den);
  for (int i = 0; i < n; ++i) {
    c[i] = mpq_class(to_mpz(acc[i]), d);
    c[i].canonicalize();
  }
  return from_mpq(p, std::move(c));
}

CycNum CycNum::from_mpq(int p, std::vector<mpq_class> c) {
  int n = p == 0 ? 1 : p - 1;
  c.resize(n);
  mpz_class l = 1;
  for (auto& x : c) {
    x.canonicalize();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  bool fits = fits_small(l);
  std::vector<mpz_class> nums(n);
  for (int i = 0; i < n && fits; ++i) {
    nums[i] = c[i].get_num() * (l / c[i].get_den());
    fits = fits_small(nums[i]);
  }
  CycNum r;
  r.p_ = static_cast<int8_t>(p);
  r.n_ = static_cast<int8_t>(n);
  if (fits) {
    r.den_ = l.get_si();
    for (int i = 0; i < n; ++i) r.num_[i] = nums[i].get_si();
  } else {
    r.big_ = true;
    r.big_rep_ = std::make_shared<const std::vector<mpq_class>>(std::move(c));
  }
  return r;
}

std::vector<mpq_class> CycNum::padded(int n) const {
  std::vector<mpq_class> c(n);
  if (big_) {
    for (int i = 0; i < n_ && i < n; ++i) c[i] = (*big_rep_)[i];
  } else {
    for (int i = 0; i < n_ && i < n; ++i) {
      c[i] = mpq_class(mpz_class(static_cast<long>(num_[i])), mpz_class(static_cast<long>(den_)));
      c[i].canonicalize();
    }
  }
  return c;
}

int CycNum::common_p(const CycNum& a, const CycNum& b) {
  if (a.p_ == b.p_ || b.p_ == 0) return a.p_;
  if (a.p_ == 0) return b.p_;
  throw PreconditionError("CycNum: mixing moduli " + std::to_string(a.p_) + " and " +
                          std::to_string(b.p_));
}

bool CycNum::is_zero() const {
  if (big_) return false;
  for (int i = 0; i < n_; ++i)
    if (num_[i] != 0) return false;
  return true;
}

bool CycNum::is_one() const {
  if (big_ || den_ != 1 || num_[0] != 1) return false;
  for (int i = 1; i < n_; ++i)
    if (num_[i] != 0) return false;
  return true;
}

bool CycNum::is_rational() const {
  if (big_) {
    for (int i = 1; i < n_; ++i)
      if ((*big_rep_)[i] != 0) return false;
    return true;
  }
  for (int i = 1; i < n_; ++i)
    if (num_[i] != 0) return false;
  return true;
}

mpq_class CycNum::to_rational() const {
  if (!is_rational()) throw PreconditionError("value " + str() + " is not rational");
  return coeff(0);
}

mpq_class CycNum::coeff(int i) const {
  if (i < 0 || i >= n_) return 0;
  if (big_) return (*big_rep_)[i];
  mpq_class q(mpz_class(static_cast<long>(num_[i])), mpz_class(static_cast<long>(den_)));
  q.canonicalize();
  return q;
}

std::vector<mpq_class> CycNum::coeffs() const { return padded(n_); }

CycNum CycNum::with_p(int p) const {
  if (p_ == p) return *this;
  if (p_ != 0) throw PreconditionError("CycNum: cannot change modulus");
  return from_coeffs(p, coeffs());
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  if (big_) {
    auto c = *big_rep_;
    for (auto& x : c) x = -x;
    r.big_rep_ = std::make_shared<const std::vector<mpq_class>>(std::move(c));
  } else {
    for (int i = 0; i < n_; ++i) r.num_[i] = -num_[i];
  }
  return r;
}

CycNum CycNum::operator+(const CycNum& o) const {
  int p = common_p(*this, o);
  int n = p == 0 ? 1 : p - 1;
  if (!big_ && !o.big_) {
    i128 acc[kMaxCoeffs];
    i128 den;
    if (den_ == o.den_) {
      for (int i = 0; i < n; ++i) acc[i] = i128(num_[i]) + o.num_[i];
      den = den_;
      if (den == 1) {
        bool fits = true;
        for (int i = 0; i < n && fits; ++i) fits = abs128(acc[i]) <= kLim;
        if (fits) {
          CycNum r;
          r.p_ = static_cast<int8_t>(p);
          r.n_ = static_cast<int8_t>(n);
          for (int i = 0; i < n; ++i) r.num_[i] = int64_t(acc[i]);
          return r;
        }
      }
    } else {
      for (int i = 0; i < n; ++i) acc[i] = i128(num_[i]) * o.den_ + i128(o.num_[i]) * den_;
      den = i128(den_) * o.den_;
    }
    return from_acc(p, n, acc, den);
  }
  auto a = padded(n), b = o.padded(n);
  for (int i = 0; i < n; ++i) a[i] += b[i];
  return from_mpq(p, std::move(a));
}

CycNum CycNum::operator-(const CycNum& o) const { return *this + (-o); }

CycNum CycNum::operator*(const CycNum& o) const {
  int p = common_p(*this, o);
  int n = p == 0 ? 1 : p - 1;
  if (!big_ && !o.big_) {
    i128 acc[2 * kMaxCoeffs] = {};
    for (int i = 0; i < n_; ++i) {
      if (num_[i] == 0) continue;
      for (int j = 0; j < o.n_; ++j) acc[i + j] += i128(num_[i]) * o.num_[j];
    }
    if (p != 0) {
      for (int k = 2 * n - 2; k >= p; --k) {
        acc[k - p] += acc[k];
        acc[k] = 0;
      }
      if (n_ + o.n_ - 1 >= p) {
        i128 top = acc[p - 1];
        if (top != 0)
          for (int i = 0; i < p - 1; ++i) acc[i] -= top;
      }
    }
    return from_acc(p, n, acc, i128(den_) * o.den_);
  }
  auto a = padded(n_), b = o.padded(o.n_);
  std::vector<mpq_class> c(n_ + o.n_ - 1);
  for (int i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < o.n_; ++j) c[i + j] += a[i] * b[j];
  }
  return from_mpq(p, fold_mpq(p, std::move(c)));
}

bool CycNum::operator==(const CycNum& o) const {
  if (big_ != o.big_) return false;
  int n = std::max(n_, o.n_);
  if (!big_) {
    if (den_ != o.den_) return false;
    for (int i = 0; i < n; ++i)
      if (num_[i] != o.num_[i]) return false;
    return true;
  }
  return padded(n) == o.padded(n);
}

namespace {

using Poly = std::vector<mpq_class>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

void poly_divmod(Poly a, const Poly& b, Poly& q, Poly& r) {
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size() && !a.empty()) {
    size_t shift = a.size() - b.size();
    mpq_class f = a.back() / b.back();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  trim(q);
  r = a;
}

}  // namespace

CycNum CycNum::inverse() const {
  if (is_zero()) throw PreconditionError("CycNum: inverse of zero");
  if (is_rational()) {
    CycNum r = from_mpq(p_, {1 / coeff(0)});
    return r;
  }
  int p = p_;
  Poly r0(p, 1), r1 = coeffs();
  trim(r1);
  Poly s0, s1{1};
  while (r1.size() > 1) {
    Poly q, r;
    poly_divmod(r0, r1, q, r);
    Poly s = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  mpq_class c = r1.at(0);
  for (auto& x : s1) x /= c;
  return from_coeffs(p, s1);
}

CycNum CycNum::bar() const {
  if (p_ == 0) return *this;
  auto c = coeffs();
  std::vector<mpq_class> r(p_);
  for (int i = 0; i < n_; ++i) r[(p_ - i) % p_] = c[i];
  return from_coeffs(p_, r);
}

std::string CycNum::str() const {
  auto c = coeffs();
  std::string out;
  for (int i = 0; i < static_cast<int>(c.size()); ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += c[i].get_str();
    if (i == 1) out += "*v";
    if (i > 1) out += "*v^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.str(); }

namespace {

std::string strip(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

mpq_class parse_rational(const std::string& s) {
  if (s.empty()) throw PreconditionError("CycNum parse: empty coefficient");
  for (char ch : s)
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '/'))
      throw PreconditionError("CycNum parse: bad coefficient '" + s + "'");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw PreconditionError("CycNum parse: bad coefficient '" + s + "'");
  if (q.get_den() == 0) throw PreconditionError("CycNum parse: zero denominator");
  q.canonicalize();
  return q;
}

}  // namespace

CycNum CycNum::parse(int p, std::string_view text) {
  std::map<HalfExp, mpq_class> raw;
  std::string all = strip(text);
  if (all.empty()) throw PreconditionError("CycNum parse: empty string");
  size_t start = 0;
  while (start <= all.size()) {
    size_t plus = all.find('+', start);
    std::string term = strip(std::string_view(all).substr(
        start, plus == std::string::npos ? std::string::npos : plus - start));
    size_t vpos = term.find('v');
    long e = 0;
    mpq_class c;
    if (vpos == std::string::npos) {
      c = parse_rational(term);
    } else {
      std::string pre = strip(std::string_view(term).substr(0, vpos));
      std::string post = strip(std::string_view(term).substr(vpos + 1));
      if (!pre.empty() && pre.back() == '*') pre = strip(std::string_view(pre).substr(0, pre.size() - 1));
      if (pre.empty())
        c = 1;
      else if (pre == "-")
        c = -1;
      else
        c = parse_rational(pre);
      e = 1;
      if (!post.empty()) {
        if (post[0] != '^') throw PreconditionError("CycNum parse: bad term '" + term + "'");
        try {
          size_t used = 0;
          e = std::stol(post.substr(1), &used);
          if (used + 1 != post.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw PreconditionError("CycNum parse: bad exponent in '" + term + "'");
        }
      }
      if (p == 0) throw PreconditionError("CycNum parse: v requires a modulus");
    }
    raw[HalfExp{e, 1}] += c;
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  if (p == 0) return rational(raw[HalfExp{0, 1}]);
  return reduce(p, raw);
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long half_exponent(int p, long num, int den) {
  if (den == 1) return posmod(num, p);
  if (den == 2) return posmod(posmod(num, p) * ((p + 1) / 2), p);
  throw PreconditionError("exponent denominator must be 1 or 2, got " + std::to_string(den));
}

CycNum reduce(int p, const std::map<HalfExp, mpq_class>& raw) {
  std::vector<mpq_class> c(p);
  for (const auto& [e, q] : raw) c[half_exponent(p, e.num, e.den)] += q;
  return CycNum::from_coeffs(p, c);
}

namespace {

struct Tables {
  std::vector<CycNum> qint, braces, qfact;
  std::vector<std::vector<CycNum>> qbinom;
};

const Tables& tables(int p) {
  static std::mutex mu;
  static std::unordered_map<int, std::unique_ptr<Tables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[p];
  if (slot) return *slot;
  if (!is_prime(p) || p < 3 || p > CycNum::kMaxP)
    throw PreconditionError("unsupported modulus p=" + std::to_string(p));
  auto t = std::make_unique<Tables>();
  auto vv = [p](long e) { return CycNum::v_power(p, e); };
  CycNum denom = vv(1) - vv(-1);
  CycNum denom_inv = denom.inverse();
  t->qint.resize(p);
  for (int n = 0; n < p; ++n) t->qint[n] = (vv(n) - vv(-n)) * denom_inv;
  t->braces.resize(p);
  t->qfact.resize(p);
  t->braces[0] = CycNum(1).with_p(p);
  t->qfact[0] = CycNum(1).with_p(p);
  for (int m = 1; m < p; ++m) {
    t->braces[m] = t->braces[m - 1] * (vv(m) - vv(-m));
    t->qfact[m] = t->qfact[m - 1] * t->qint[m];
  }
  t->qbinom.assign(p, std::vector<CycNum>(p));
  for (int m = 0; m < p; ++m) {
    CycNum inv = t->braces[m].inverse();
    for (int n = 0; n < p; ++n) {
      CycNum num = CycNum(1).with_p(p);
      for (int s = 0; s < m; ++s) num *= vv(n - s) - vv(s - n);
      t->qbinom[n][m] = num * inv;
    }
  }
  slot = std::move(t);
  return *slot;
}

}  // namespace

CycNum qint(int p, long n) { return tables(p).qint[posmod(n, p)]; }

CycNum qfact_braces(int p, long m) {
  if (m < 0) throw PreconditionError("qfact_braces: negative argument");
  if (m >= p) return CycNum(0).with_p(p);
  return tables(p).braces[m];
}

CycNum qfact(int p, long m) {
  if (m < 0) throw PreconditionError("qfact: negative argument");
  if (m >= p) return CycNum(0).with_p(p);
  return tables(p).qfact[m];
}

CycNum qbinom(int p, long n, long m) {
  if (m < 0) throw PreconditionError("qbinom: negative lower index");
  if (m >= p) throw PreconditionError("qbinom: lower index must be below p ({m} vanishes)");
  return tables(p).qbinom[posmod(n, p)][m];
}

}  // namespace hkr
