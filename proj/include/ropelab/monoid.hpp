#pragma once

#include <map>
#include <string>
#include <string_view>

#include "ropelab/error.hpp"

namespace ropelab {

using Label = std::string;

/// Throws InvalidLabel unless `label` can round-trip through the text form:
/// non-empty, no whitespace or '*', not starting with a sign or digit-star.
void check_label(std::string_view label);

/// Element of the free commutative monoid on prime labels (a multiset).
class MonoidElement {
 public:
  MonoidElement() = default;
  static MonoidElement prime(const Label& label, int count = 1);

  const std::map<Label, int>& terms() const { return counts_; }
  int count(const Label& label) const;
  int size() const;
  bool is_unit() const { return counts_.empty(); }

  MonoidElement& operator+=(const MonoidElement& other);
  friend MonoidElement operator+(MonoidElement a, const MonoidElement& b) { return a += b; }
  bool operator==(const MonoidElement&) const = default;

  /// "3_1 + 2*4_1"; the unit prints as "0".
  std::string to_string() const;
  static MonoidElement parse(std::string_view text);

 private:
  std::map<Label, int> counts_;
};

inline MonoidElement msum(const MonoidElement& a, const MonoidElement& b) { return a + b; }

/// Element of the Grothendieck group: finitely supported label -> integer.
class GrothendieckElement {
 public:
  GrothendieckElement() = default;
  static GrothendieckElement generator(const Label& label, long coeff = 1);

  const std::map<Label, long>& terms() const { return coeffs_; }
  long coeff(const Label& label) const;
  bool is_zero() const { return coeffs_.empty(); }

  GrothendieckElement& operator+=(const GrothendieckElement& other);
  GrothendieckElement& operator-=(const GrothendieckElement& other);
  GrothendieckElement operator-() const;
  friend GrothendieckElement operator+(GrothendieckElement a, const GrothendieckElement& b) { return a += b; }
  friend GrothendieckElement operator-(GrothendieckElement a, const GrothendieckElement& b) { return a -= b; }
  friend GrothendieckElement operator*(long k, const GrothendieckElement& g);
  bool operator==(const GrothendieckElement&) const = default;

  /// "3_1 + 2*4_1 - 5_2"; zero prints as "0".
  std::string to_string() const;
  static GrothendieckElement parse(std::string_view text);

 private:
  void add(const Label& label, long delta);
  std::map<Label, long> coeffs_;
};

GrothendieckElement complete(const MonoidElement& a);
GrothendieckElement gdiff(const MonoidElement& a, const MonoidElement& b);

/// Sum of coefficient * value over the support of `g`. Throws MissingLabel if
/// `v` lacks a label in the support.
template <class Value>
Value extend_linearly(const std::map<Label, Value>& v, const GrothendieckElement& g) {
  Value total{};
  for (const auto& [label, c] : g.terms()) {
    auto it = v.find(label);
    if (it == v.end()) throw RopeError(ErrorCode::MissingLabel, "no value for label " + label);
    total += static_cast<Value>(c) * it->second;
  }
  return total;
}

}  // namespace ropelab
