#include "ropelab/monoid.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace ropelab {

namespace {

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

// "2*4_1" -> (2, "4_1"); "4_1" -> (1, "4_1").
std::pair<long, Label> parse_term(const std::string& tok) {
  const auto star = tok.find('*');
  if (star == std::string::npos) {
    check_label(tok);
    return {1, tok};
  }
  const std::string num = tok.substr(0, star);
  if (num.empty() || !std::all_of(num.begin(), num.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw RopeError(ErrorCode::Parse, "bad coefficient in term '" + tok + "'");
  Label label = tok.substr(star + 1);
  check_label(label);
  return {std::stol(num), label};
}

// Signed terms of "a + 2*b - c" (a leading "-a" is allowed).
std::vector<std::pair<long, Label>> parse_sum(std::string_view text) {
  std::vector<std::string> toks = split_ws(text);
  std::vector<std::pair<long, Label>> terms;
  if (toks.empty()) throw RopeError(ErrorCode::Parse, "empty expression");
  if (toks.size() == 1 && toks[0] == "0") return terms;
  long sign = 1;
  bool expect_term = true;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    std::string tok = toks[i];
    if (expect_term) {
      if (i == 0 && tok.size() > 1 && tok[0] == '-') {
        sign = -1;
        tok.erase(0, 1);
      }
      auto [c, label] = parse_term(tok);
      terms.emplace_back(sign * c, label);
      expect_term = false;
    } else {
      if (tok == "+")
        sign = 1;
      else if (tok == "-")
        sign = -1;
      else
        throw RopeError(ErrorCode::Parse, "expected '+' or '-' but found '" + tok + "'");
      expect_term = true;
    }
  }
  if (expect_term) throw RopeError(ErrorCode::Parse, "dangling operator");
  return terms;
}

template <class Map>
std::string format_sum(const Map& m) {
  if (m.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [label, c] : m) {
    const long mag = c < 0 ? -static_cast<long>(c) : static_cast<long>(c);
    if (first)
      out << (c < 0 ? "-" : "");
    else
      out << (c < 0 ? " - " : " + ");
    if (mag != 1) out << mag << '*';
    out << label;
    first = false;
  }
  return out.str();
}

}  // namespace

void check_label(std::string_view label) {
  auto bad = [&](const char* why) {
    throw RopeError(ErrorCode::InvalidLabel, "label '" + std::string(label) + "' " + why);
  };
  if (label.empty()) bad("is empty");
  if (label == "0") bad("is reserved for zero");
  if (label[0] == '+' || label[0] == '-') bad("starts with a sign");
  for (unsigned char c : label)
    if (std::isspace(c) || c == '*') bad("contains whitespace or '*'");
}

MonoidElement MonoidElement::prime(const Label& label, int count) {
  check_label(label);
  if (count < 0) throw RopeError(ErrorCode::InvalidLabel, "negative multiplicity in a monoid element");
  MonoidElement m;
  if (count > 0) m.counts_[label] = count;
  return m;
}

int MonoidElement::count(const Label& label) const {
  auto it = counts_.find(label);
  return it == counts_.end() ? 0 : it->second;
}

int MonoidElement::size() const {
  int n = 0;
  for (const auto& [label, c] : counts_) n += c;
  return n;
}

MonoidElement& MonoidElement::operator+=(const MonoidElement& other) {
  for (const auto& [label, c] : other.counts_) counts_[label] += c;
  return *this;
}

std::string MonoidElement::to_string() const { return format_sum(counts_); }

MonoidElement MonoidElement::parse(std::string_view text) {
  MonoidElement m;
  for (const auto& [c, label] : parse_sum(text)) {
    if (c < 0) throw RopeError(ErrorCode::Parse, "monoid elements have no negative terms");
    m += prime(label, static_cast<int>(c));
  }
  return m;
}

GrothendieckElement GrothendieckElement::generator(const Label& label, long coeff) {
  check_label(label);
  GrothendieckElement g;
  g.add(label, coeff);
  return g;
}

long GrothendieckElement::coeff(const Label& label) const {
  auto it = coeffs_.find(label);
  return it == coeffs_.end() ? 0 : it->second;
}

void GrothendieckElement::add(const Label& label, long delta) {
  long& slot = coeffs_[label];
  slot += delta;
  if (slot == 0) coeffs_.erase(label);
}

GrothendieckElement& GrothendieckElement::operator+=(const GrothendieckElement& other) {
  for (const auto& [label, c] : other.coeffs_) add(label, c);
  return *this;
}

GrothendieckElement& GrothendieckElement::operator-=(const GrothendieckElement& other) {
  for (const auto& [label, c] : other.coeffs_) add(label, -c);
  return *this;
}

GrothendieckElement GrothendieckElement::operator-() const {
  GrothendieckElement g;
  g -= *this;
  return g;
}

GrothendieckElement operator*(long k, const GrothendieckElement& g) {
  GrothendieckElement out;
  if (k == 0) return out;
  for (const auto& [label, c] : g.coeffs_) out.coeffs_[label] = k * c;
  return out;
}

std::string GrothendieckElement::to_string() const { return format_sum(coeffs_); }

GrothendieckElement GrothendieckElement::parse(std::string_view text) {
  GrothendieckElement g;
  for (const auto& [c, label] : parse_sum(text)) g.add(label, c);
  return g;
}

GrothendieckElement complete(const MonoidElement& a) {
  GrothendieckElement g;
  for (const auto& [label, c] : a.terms()) g += GrothendieckElement::generator(label, c);
  return g;
}

GrothendieckElement gdiff(const MonoidElement& a, const MonoidElement& b) { return complete(a) - complete(b); }

}  // namespace ropelab
