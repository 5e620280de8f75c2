#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "ropelab/error.hpp"
#include "ropelab/knotid.hpp"

namespace ropelab {

namespace detail {
extern const std::string_view kKnotTableJson;
}

namespace {

// Alexander matrix row for one crossing (positive: over 1-t, in t, out -1;
// negative: over 1-t, in -1, out t).
std::vector<std::vector<IntPoly>> alexander_matrix(const Diagram& d) {
  const int n = d.crossing_count();
  std::vector<std::vector<IntPoly>> m(n, std::vector<IntPoly>(n));
  const IntPoly one_minus_t(std::vector<std::int64_t>{1, -1});
  const IntPoly t = IntPoly::monomial(1, 1);
  const auto arcs = d.crossings();
  for (int c = 0; c < n; ++c) {
    const auto& x = arcs[c];
    m[c][x.over] += one_minus_t;
    if (x.sign > 0) {
      m[c][x.under_in] += t;
      m[c][x.under_out] += IntPoly(-1);
    } else {
      m[c][x.under_in] += IntPoly(-1);
      m[c][x.under_out] += t;
    }
  }
  return m;
}

std::int64_t mod(std::int64_t a, std::int64_t p) {
  const std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t result = 1, base = mod(a, p), e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Exhaustive enumeration with propagation: a crossing with two known arcs
// fixes the third, so only genuinely free arcs branch.
std::int64_t count_colorings_enumerate(int arcs, const std::vector<Diagram::CrossingArcs>& cs, int p) {
  std::vector<int> color(arcs, -1);
  std::int64_t count = 0;
  const std::int64_t half = inverse_mod(2, p);
  std::function<void()> search = [&]() {
    std::vector<int> assigned;
    bool changed = true;
    bool ok = true;
    while (changed && ok) {
      changed = false;
      for (const auto& c : cs) {
        int* o = &color[c.over];
        int* a = &color[c.under_in];
        int* b = &color[c.under_out];
        const int known = (*o >= 0) + (*a >= 0) + (*b >= 0);
        if (known == 3) {
          if (mod(2 * *o - *a - *b, p) != 0) ok = false;
        } else if (known == 2) {
          int* slot;
          std::int64_t value;
          if (*o < 0) {
            slot = o;
            value = mod((*a + *b) * half, p);
          } else if (*a < 0) {
            slot = a;
            value = mod(2 * *o - *b, p);
          } else {
            slot = b;
            value = mod(2 * *o - *a, p);
          }
          // Arcs may repeat inside one crossing (kinks); re-check on the next pass.
          *slot = static_cast<int>(value);
          assigned.push_back(static_cast<int>(slot - color.data()));
          changed = true;
        }
        if (!ok) break;
      }
    }
    if (ok) {
      auto free_arc = std::find(color.begin(), color.end(), -1);
      if (free_arc == color.end()) {
        ++count;
      } else {
        for (int v = 0; v < p; ++v) {
          *free_arc = v;
          search();
        }
        *free_arc = -1;
      }
    }
    for (int idx : assigned) color[idx] = -1;
  };
  search();
  return count;
}

std::int64_t count_colorings_rank(int arcs, const std::vector<Diagram::CrossingArcs>& cs, int p) {
  std::vector<std::vector<std::int64_t>> m(cs.size(), std::vector<std::int64_t>(arcs, 0));
  for (std::size_t r = 0; r < cs.size(); ++r) {
    m[r][cs[r].over] += 2;
    m[r][cs[r].under_in] -= 1;
    m[r][cs[r].under_out] -= 1;
    for (auto& v : m[r]) v = mod(v, p);
  }
  int rank = 0;
  for (int col = 0; col < arcs && rank < static_cast<int>(m.size()); ++col) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const std::int64_t inv = inverse_mod(m[rank][col], p);
    for (auto& v : m[rank]) v = v * inv % p;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (static_cast<int>(r) == rank || m[r][col] == 0) continue;
      const std::int64_t f = m[r][col];
      for (int k = 0; k < arcs; ++k) m[r][k] = mod(m[r][k] - f * m[rank][k], p);
    }
    ++rank;
  }
  return ipow(p, arcs - rank);
}

std::string fingerprint_label(std::int64_t det, const IntPoly& alex) {
  std::ostringstream out;
  out << "U[" << det << ':';
  for (std::size_t i = 0; i < alex.coeffs().size(); ++i) out << (i ? "," : "") << alex.coeffs()[i];
  out << ']';
  return out.str();
}

// All multisets of non-trivial table entries whose product is `target`.
void factor_search(const IntPoly& target, std::size_t start, std::vector<std::size_t>& chosen,
                   std::vector<std::vector<std::size_t>>& found) {
  const auto& table = knot_table();
  if (target == IntPoly(1)) {
    found.push_back(chosen);
    return;
  }
  if (found.size() > 1) return;  // already ambiguous
  for (std::size_t k = start; k < table.size(); ++k) {
    if (table[k].alexander == IntPoly(1)) continue;
    IntPoly q;
    if (!target.divides_into(table[k].alexander, &q)) continue;
    chosen.push_back(k);
    factor_search(q.normalized(), k, chosen, found);
    chosen.pop_back();
  }
}

}  // namespace

IntPoly alexander(const Diagram& d) {
  d.validate();
  const int n = d.crossing_count();
  if (n <= 1) return IntPoly(1);
  auto m = alexander_matrix(d);
  m.pop_back();
  for (auto& row : m) row.pop_back();
  return determinant(std::move(m)).normalized();
}

std::int64_t determinant(const Diagram& d) {
  const std::int64_t v = alexander(d).eval(-1);
  return v < 0 ? -v : v;
}

std::int64_t fox_colorings(const Diagram& d, int p) {
  d.validate();
  if (p < 3 || p % 2 == 0) throw RopeError(ErrorCode::InvalidLabel, "fox colorings need an odd prime");
  for (int k = 3; k * k <= p; k += 2)
    if (p % k == 0) throw RopeError(ErrorCode::InvalidLabel, "fox colorings need an odd prime");
  const int arcs = d.arc_count();
  const auto cs = d.crossings();
  if (cs.empty()) return p;
  return arcs <= 12 ? count_colorings_enumerate(arcs, cs, p) : count_colorings_rank(arcs, cs, p);
}

const std::vector<TableEntry>& knot_table() {
  static const std::vector<TableEntry> table = [] {
    const auto j = nlohmann::json::parse(detail::kKnotTableJson);
    std::vector<TableEntry> out;
    for (const auto& e : j.at("knots")) {
      TableEntry entry;
      entry.label = e.at("label").get<std::string>();
      entry.alexander = IntPoly(e.at("alexander").get<std::vector<std::int64_t>>()).normalized();
      entry.determinant = e.at("determinant").get<std::int64_t>();
      out.push_back(std::move(entry));
    }
    return out;
  }();
  return table;
}

MonoidElement KnotClass::as_monoid() const {
  return fingerprint ? MonoidElement::prime(*fingerprint) : primes;
}

std::string KnotClass::to_string() const {
  if (fingerprint) return *fingerprint;
  if (primes.is_unit()) return "0_1";
  return primes.to_string();
}

KnotClass classify(const Diagram& input) {
  const Diagram d = simplify(input);
  if (d.crossing_count() == 0) return {};
  const IntPoly alex = alexander(d);
  const std::int64_t det = std::abs(alex.eval(-1));
  // The table's unknot entry: trivial Alexander polynomial and determinant 1.
  if (alex == IntPoly(1)) return {};
  std::vector<std::size_t> chosen;
  std::vector<std::vector<std::size_t>> found;
  factor_search(alex, 0, chosen, found);
  if (found.size() == 1) {
    KnotClass k;
    std::int64_t det_product = 1;
    for (std::size_t idx : found.front()) {
      k.primes += MonoidElement::prime(knot_table()[idx].label);
      det_product *= knot_table()[idx].determinant;
    }
    if (det_product == det) return k;
  }
  return KnotClass{{}, fingerprint_label(det, alex)};
}

KnotClass identify(const ClosedCurve& curve, std::uint64_t seed) {
  return classify(diagram(curve, default_direction(), seed));
}

KnotClass identify(const LongCurve& curve, std::uint64_t seed) { return identify(close_long(curve), seed); }

}  // namespace ropelab
