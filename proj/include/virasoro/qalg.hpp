#pragma once
// Exact q-polynomials and truncated q-series.
//
// QPoly keeps exponents in quarter units so that the quarter- and half-integer
// pieces of a quadratic exponent add up exactly; finalize_integral() is the
// single place where integrality is demanded.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "virasoro/errors.hpp"

namespace vir {

using Coeff = mpz_class;
using Quarter = std::int64_t;  // exponent measured in units of q^{1/4}

class QPoly {
 public:
  QPoly() = default;
  static QPoly constant(const Coeff& c) { return monomial(0, c); }
  static QPoly monomial(Quarter e, const Coeff& c = 1);
  // coefficients[i] multiplies q^i; the whole thing is then shifted by q^{shift/4}
  static QPoly from_dense(const std::vector<Coeff>& coefficients, Quarter shift = 0);

  const std::map<Quarter, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool integral() const { return integral_; }
  std::size_t size() const { return terms_.size(); }

  Coeff coeff(Quarter e) const;
  // coefficient of q^n, n in whole units
  Coeff at(std::int64_t n) const { return coeff(4 * n); }
  Quarter min_exponent() const;
  Quarter max_exponent() const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const QPoly& o);
  QPoly operator-() const;
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.terms_ == b.terms_; }

  QPoly shifted(Quarter e) const;   // times q^{e/4}
  QPoly inverted() const;           // q -> 1/q
  QPoly below(Quarter bound) const; // drop exponents >= bound
  void add_term(Quarter e, const Coeff& c);

  std::string to_string() const;

 private:
  std::map<Quarter, Coeff> terms_;
  bool integral_ = false;
  friend QPoly finalize_integral(QPoly p);
};

// Throws FractionalExponent unless every exponent is a whole power of q.
QPoly finalize_integral(QPoly p);

QPoly gaussian_binomial(std::int64_t A, std::int64_t B);
// A given in quarter units; anything other than a whole number raises NonIntegralArgument.
QPoly gaussian_half_args(Quarter A4, std::int64_t B);

// Dense coefficient list of [A;B], cached per thread. Empty when B<0 or B>A.
const std::vector<Coeff>& gaussian_dense(int A, int B);

class QSeries {
 public:
  explicit QSeries(int order = 1);
  static QSeries one(int order);
  static QSeries from_poly(const QPoly& p, int order);  // p must be integral

  int order() const { return static_cast<int>(c_.size()); }
  const Coeff& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  Coeff& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<Coeff>& coeffs() const { return c_; }

  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend bool operator==(const QSeries& a, const QSeries& b) { return a.c_ == b.c_; }

  QSeries shifted(std::int64_t k) const;  // times q^k, k >= 0
  QSeries truncated(int order) const;
  // index of first differing coefficient, or -1
  friend int first_difference(const QSeries& a, const QSeries& b);

  std::string to_string() const;

 private:
  std::vector<Coeff> c_;
};

inline constexpr int kInfinity = -1;
// 1/(q)_n to order N; n == kInfinity gives 1/(q)_infinity.
QSeries pochhammer_inverse(int n, int N);

// In-place helpers on dense coefficient vectors, truncated at `limit` entries.
void mul_dense(std::vector<Coeff>& acc, const std::vector<Coeff>& f, std::size_t limit);
void divide_one_minus_qk(std::vector<Coeff>& v, int k);  // v /= (1 - q^k) as a power series
void multiply_one_minus_qk(std::vector<Coeff>& v, int k, std::size_t limit);

}  // namespace vir
