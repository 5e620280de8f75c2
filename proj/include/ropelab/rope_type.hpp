#pragma once

#include <vector>

#include "ropelab/geometry.hpp"
#include "ropelab/knotid.hpp"

namespace ropelab {

/// Ordered kinds of the A(r) components with the classes of their blocks.
/// Components touching A or B carry no block; their class is left empty.
struct RopeType {
  struct Entry {
    ComponentKind kind = ComponentKind::Point;
    std::optional<KnotClass> knot;
    bool operator==(const Entry&) const = default;
  };
  std::vector<Entry> entries;

  bool operator==(const RopeType&) const = default;
  std::string to_string() const;
};

RopeType rope_type(const Rope& rope, std::uint64_t seed = 0);

std::string_view to_string(ComponentKind kind);

}  // namespace ropelab
