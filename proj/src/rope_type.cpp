#include "ropelab/rope_type.hpp"

#include <sstream>

namespace ropelab {

std::string_view to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::Interval: return "interval";
    case ComponentKind::Point: return "point";
    case ComponentKind::ContainsA: return "contains-A";
    case ComponentKind::ContainsB: return "contains-B";
  }
  return "?";
}

RopeType rope_type(const Rope& rope, std::uint64_t seed) {
  RopeType out;
  const AxisDecomposition decomp = axis_decomposition(rope);
  for (const KnotBlock& block : knot_blocks(rope, decomp)) {
    RopeType::Entry entry{block.kind, std::nullopt};
    if (block.curve) entry.knot = identify(*block.curve, seed);
    out.entries.push_back(std::move(entry));
  }
  return out;
}

std::string RopeType::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out << (i ? ", " : "") << '(' << ropelab::to_string(entries[i].kind);
    if (entries[i].knot) out << ", " << entries[i].knot->to_string();
    out << ')';
  }
  out << ']';
  return out.str();
}

}  // namespace ropelab
