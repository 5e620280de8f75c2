#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ropelab {

/// Laurent polynomial in t with 64-bit integer coefficients. Arithmetic
/// throws std::overflow_error instead of wrapping.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::int64_t constant);  // NOLINT: implicit from integers is convenient
  /// coeffs[i] multiplies t^(low + i).
  IntPoly(std::vector<std::int64_t> coeffs, int low = 0);

  static IntPoly monomial(std::int64_t c, int power);

  bool is_zero() const { return coeffs_.empty(); }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::int64_t coeff(int power) const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  bool operator==(const IntPoly&) const = default;

  /// Exact division; throws std::domain_error if `d` does not divide.
  IntPoly exact_div(const IntPoly& d) const;
  /// Remainder-free division test (leaves quotient in *q when it succeeds).
  bool divides_into(const IntPoly& d, IntPoly* q) const;

  /// Evaluate at an integer (powers of t may be negative only for t = ±1).
  std::int64_t eval(std::int64_t t) const;

  /// Strip powers of t and fix the sign so the lowest coefficient is positive.
  IntPoly normalized() const;
  bool is_palindromic() const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<std::int64_t> coeffs_;
  int low_ = 0;
};

/// Determinant of a square matrix over Z[t, 1/t] by fraction-free elimination.
IntPoly determinant(std::vector<std::vector<IntPoly>> m);

}  // namespace ropelab
