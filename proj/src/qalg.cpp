#include "virasoro/qalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace vir {

QPoly QPoly::monomial(Quarter e, const Coeff& c) {
  QPoly p;
  if (c != 0) p.terms_.emplace(e, c);
  return p;
}

QPoly QPoly::from_dense(const std::vector<Coeff>& coefficients, Quarter shift) {
  QPoly p;
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (coefficients[i] != 0) p.terms_.emplace_hint(p.terms_.end(), shift + 4 * static_cast<Quarter>(i), coefficients[i]);
  p.integral_ = false;
  return p;
}

Coeff QPoly::coeff(Quarter e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Coeff(0) : it->second;
}

Quarter QPoly::min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
Quarter QPoly::max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

void QPoly::add_term(Quarter e, const Coeff& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  if (e % 4 != 0) integral_ = false;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  bool both = integral_ && o.integral_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  integral_ = both;
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  bool both = integral_ && o.integral_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  integral_ = both;
  return *this;
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  r.integral_ = a.integral_ && b.integral_;
  return r;
}

QPoly& QPoly::operator*=(const QPoly& o) { return *this = *this * o; }

QPoly QPoly::shifted(Quarter e) const {
  QPoly r;
  for (const auto& [x, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), x + e, c);
  r.integral_ = integral_ && e % 4 == 0;
  return r;
}

QPoly QPoly::inverted() const {
  QPoly r;
  for (const auto& [x, c] : terms_) r.terms_.emplace(-x, c);
  r.integral_ = integral_;
  return r;
}

QPoly QPoly::below(Quarter bound) const {
  QPoly r;
  for (const auto& [x, c] : terms_) {
    if (x >= bound) break;
    r.terms_.emplace_hint(r.terms_.end(), x, c);
  }
  r.integral_ = integral_;
  return r;
}

std::string QPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Coeff mag = abs(c);
    bool unit = mag == 1 && e != 0;
    if (!unit) os << mag.get_str();
    if (e == 0) continue;
    if (!unit) os << "*";
    os << "q";
    if (e == 4) continue;
    if (e % 4 == 0) os << "^" << e / 4;
    else os << "^(" << e << "/4)";
  }
  return os.str();
}

QPoly finalize_integral(QPoly p) {
  for (const auto& [e, c] : p.terms_)
    if (e % 4 != 0)
      throw FractionalExponent("exponent " + std::to_string(e) + "/4 is not a whole power of q");
  p.integral_ = true;
  return p;
}

void divide_one_minus_qk(std::vector<Coeff>& v, int k) {
  for (std::size_t i = static_cast<std::size_t>(k); i < v.size(); ++i) v[i] += v[i - static_cast<std::size_t>(k)];
}

void multiply_one_minus_qk(std::vector<Coeff>& v, int k, std::size_t limit) {
  if (v.size() + static_cast<std::size_t>(k) > limit) {
    if (v.size() < limit) v.resize(limit);
  } else {
    v.resize(v.size() + static_cast<std::size_t>(k));
  }
  for (std::size_t i = v.size(); i-- > static_cast<std::size_t>(k);) v[i] -= v[i - static_cast<std::size_t>(k)];
}

void mul_dense(std::vector<Coeff>& acc, const std::vector<Coeff>& f, std::size_t limit) {
  if (acc.empty() || f.empty()) {
    acc.clear();
    return;
  }
  std::size_t n = std::min(limit, acc.size() + f.size() - 1);
  std::vector<Coeff> out(n);
  for (std::size_t i = 0; i < acc.size() && i < n; ++i) {
    if (acc[i] == 0) continue;
    std::size_t top = std::min(f.size(), n - i);
    for (std::size_t j = 0; j < top; ++j)
      if (f[j] != 0) mpz_addmul(out[i + j].get_mpz_t(), acc[i].get_mpz_t(), f[j].get_mpz_t());
  }
  acc = std::move(out);
}

const std::vector<Coeff>& gaussian_dense(int A, int B) {
  thread_local std::map<std::pair<int, int>, std::vector<Coeff>> cache;
  static const std::vector<Coeff> empty;
  if (B < 0 || B > A) return empty;
  if (B > A - B) B = A - B;
  auto key = std::make_pair(A, B);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::size_t size = static_cast<std::size_t>(B) * static_cast<std::size_t>(A - B) + 1;
  std::vector<Coeff> v(1, Coeff(1));
  for (int i = 1; i <= B; ++i) {
    multiply_one_minus_qk(v, A - B + i, size);
    v.resize(size);
    divide_one_minus_qk(v, i);
  }
  v.resize(size);
  return cache.emplace(key, std::move(v)).first->second;
}

QPoly gaussian_binomial(std::int64_t A, std::int64_t B) {
  if (B < 0 || B > A) return finalize_integral(QPoly{});
  return finalize_integral(QPoly::from_dense(gaussian_dense(static_cast<int>(A), static_cast<int>(B))));
}

QPoly gaussian_half_args(Quarter A4, std::int64_t B) {
  if (A4 % 4 != 0)
    throw NonIntegralArgument("binomial top " + std::to_string(A4) + "/4 is not an integer");
  return gaussian_binomial(A4 / 4, B);
}

QSeries::QSeries(int order) : c_(static_cast<std::size_t>(std::max(order, 1))) {}

QSeries QSeries::one(int order) {
  QSeries s(order);
  s.c_[0] = 1;
  return s;
}

QSeries QSeries::from_poly(const QPoly& p, int order) {
  QSeries s(order);
  for (const auto& [e, c] : p.terms()) {
    if (e % 4 != 0 || e < 0)
      throw FractionalExponent("series conversion needs nonnegative whole exponents");
    if (e / 4 < order) s.c_[static_cast<std::size_t>(e / 4)] += c;
  }
  return s;
}

QSeries& QSeries::operator+=(const QSeries& o) {
  std::size_t n = std::min(c_.size(), o.c_.size());
  c_.resize(n);
  for (std::size_t i = 0; i < n; ++i) c_[i] += o.c_[i];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
  std::size_t n = std::min(c_.size(), o.c_.size());
  c_.resize(n);
  for (std::size_t i = 0; i < n; ++i) c_[i] -= o.c_[i];
  return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  QSeries r = a;
  std::size_t n = std::min(a.c_.size(), b.c_.size());
  mul_dense(r.c_, b.c_, n);
  r.c_.resize(n);
  return r;
}

QSeries QSeries::shifted(std::int64_t k) const {
  QSeries r(order());
  for (std::size_t i = 0; i + static_cast<std::size_t>(k) < c_.size(); ++i) r.c_[i + static_cast<std::size_t>(k)] = c_[i];
  return r;
}

QSeries QSeries::truncated(int order) const {
  QSeries r = *this;
  r.c_.resize(static_cast<std::size_t>(order));
  return r;
}

int first_difference(const QSeries& a, const QSeries& b) {
  std::size_t n = std::min(a.c_.size(), b.c_.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a.c_[i] != b.c_[i]) return static_cast<int>(i);
  return -1;
}

std::string QSeries::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? " " : "") << c_[i].get_str();
  return os.str();
}

QSeries pochhammer_inverse(int n, int N) {
  QSeries s = QSeries::one(N);
  std::vector<Coeff> v = s.coeffs();
  int top = n == kInfinity ? N - 1 : std::min(n, N - 1);
  for (int i = 1; i <= top; ++i) divide_one_minus_qk(v, i);
  QSeries r(N);
  for (int i = 0; i < N; ++i) r[i] = v[static_cast<std::size_t>(i)];
  return r;
}

}  // namespace vir
