#include "ropelab/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ropelab {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("polynomial coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("polynomial coefficient overflow");
  return r;
}

}  // namespace

IntPoly::IntPoly(std::int64_t constant) {
  if (constant != 0) coeffs_ = {constant};
}

IntPoly::IntPoly(std::vector<std::int64_t> coeffs, int low) : coeffs_(std::move(coeffs)), low_(low) { trim(); }

IntPoly IntPoly::monomial(std::int64_t c, int power) { return IntPoly(std::vector<std::int64_t>{c}, power); }

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<int>(lead);
  }
  if (coeffs_.empty()) low_ = 0;
}

std::int64_t IntPoly::coeff(int power) const {
  const int i = power - low_;
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[i];
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& c : r.coeffs_) c = checked_mul(c, -1);
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int lo = std::min(low_, o.low_);
  const int hi = std::max(high(), o.high());
  std::vector<std::int64_t> out(static_cast<std::size_t>(hi - lo + 1), 0);
  for (int p = lo; p <= hi; ++p) out[p - lo] = checked_add(coeff(p), o.coeff(p));
  coeffs_ = std::move(out);
  low_ = lo;
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) { return *this += -o; }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<std::int64_t> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] = checked_add(out[i + j], checked_mul(a.coeffs_[i], b.coeffs_[j]));
  return IntPoly(std::move(out), a.low_ + b.low_);
}

bool IntPoly::divides_into(const IntPoly& d, IntPoly* q) const {
  if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (is_zero()) {
    if (q) *q = IntPoly();
    return true;
  }
  // Both are t^low times a polynomial with non-zero constant term, so plain
  // long division on the coefficient vectors decides divisibility.
  if (coeffs_.size() < d.coeffs_.size()) return false;
  std::vector<std::int64_t> rem = coeffs_;
  const std::size_t qn = coeffs_.size() - d.coeffs_.size() + 1;
  std::vector<std::int64_t> quot(qn, 0);
  const std::int64_t lead = d.coeffs_.back();
  for (std::size_t k = qn; k-- > 0;) {
    const std::int64_t top = rem[k + d.coeffs_.size() - 1];
    if (top % lead != 0) return false;
    const std::int64_t c = top / lead;
    quot[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < d.coeffs_.size(); ++j) rem[k + j] = checked_add(rem[k + j], -checked_mul(c, d.coeffs_[j]));
  }
  if (std::any_of(rem.begin(), rem.end(), [](std::int64_t c) { return c != 0; })) return false;
  if (q) *q = IntPoly(std::move(quot), low_ - d.low_);
  return true;
}

IntPoly IntPoly::exact_div(const IntPoly& d) const {
  IntPoly q;
  if (!divides_into(d, &q)) throw std::domain_error("inexact polynomial division");
  return q;
}

std::int64_t IntPoly::eval(std::int64_t t) const {
  if (is_zero()) return 0;
  if (low_ < 0 && t != 1 && t != -1) throw std::domain_error("negative power evaluated away from t = +-1");
  std::int64_t acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = checked_add(checked_mul(acc, t), coeffs_[i]);
  // acc = sum c_i t^i; multiply by t^low.
  const int lo = low_;
  if (lo >= 0) {
    for (int k = 0; k < lo; ++k) acc = checked_mul(acc, t);
  } else if (t == -1 && (-lo) % 2 == 1) {
    acc = -acc;
  }
  return acc;
}

IntPoly IntPoly::normalized() const {
  if (is_zero()) return *this;
  IntPoly r(coeffs_, 0);
  if (r.coeffs_.front() < 0) r = -r;
  return r;
}

bool IntPoly::is_palindromic() const {
  for (std::size_t i = 0, j = coeffs_.size(); i < j--; ++i)
    if (coeffs_[i] != coeffs_[j]) return false;
  return true;
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const std::int64_t c = coeffs_[i];
    if (c == 0) continue;
    const int p = low_ + static_cast<int>(i);
    const std::int64_t mag = c < 0 ? -c : c;
    out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    if (mag != 1 || p == 0) out << mag;
    if (p != 0) out << (mag != 1 ? "*" : "") << "t" << (p != 1 ? "^" + std::to_string(p) : "");
    first = false;
  }
  return out.str();
}

IntPoly determinant(std::vector<std::vector<IntPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return IntPoly(1);
  int sign = 1;
  IntPoly prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k].is_zero()) ++swap;
      if (swap == n) return IntPoly();
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev);
      m[i][k] = IntPoly();
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace ropelab
