#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "ropelab/geometry.hpp"

namespace ropelab {

namespace {

struct CellKey {
  std::int64_t i, j, k;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& c) const {
    std::uint64_t h = static_cast<std::uint64_t>(c.i) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(c.j) * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(c.k) * 0x165667B19E3779F9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

double min_self_distance(std::span<const Vec3> pts, bool closed) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t nv = pts.size();
  if (nv < 3) return kInf;
  const std::size_t ns = closed ? nv : nv - 1;
  auto seg_end = [&](std::size_t s) -> const Vec3& { return pts[(s + 1) % nv]; };

  std::vector<double> cum(ns + 1, 0.0);
  double s_max = 0.0;
  Vec3 lo = pts[0], hi = pts[0];
  for (std::size_t s = 0; s < ns; ++s) {
    const double len = distance(pts[s], seg_end(s));
    cum[s + 1] = cum[s] + len;
    s_max = std::max(s_max, len);
  }
  for (const Vec3& p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  const double total = cum[ns];
  const double diameter = distance(lo, hi);

  // Arclength strictly between segments a < b, the shorter way round when closed.
  auto gap = [&](std::size_t a, std::size_t b) {
    const double inner = cum[b] - cum[a + 1];
    if (!closed) return inner;
    const double outer = total - (cum[b + 1] - cum[a]);
    return std::min(inner, outer);
  };

  std::vector<Vec3> mids(ns);
  for (std::size_t s = 0; s < ns; ++s) mids[s] = (pts[s] + seg_end(s)) * 0.5;

  double radius = 4.0 * s_max;
  for (;;) {
    const double cell = radius + s_max;
    std::unordered_map<CellKey, std::vector<std::uint32_t>, CellHash> grid;
    grid.reserve(ns * 2);
    auto key_of = [&](const Vec3& p) {
      return CellKey{static_cast<std::int64_t>(std::floor((p.x - lo.x) / cell)),
                     static_cast<std::int64_t>(std::floor((p.y - lo.y) / cell)),
                     static_cast<std::int64_t>(std::floor((p.z - lo.z) / cell))};
    };
    for (std::size_t s = 0; s < ns; ++s) grid[key_of(mids[s])].push_back(static_cast<std::uint32_t>(s));

    double best = kInf;
    for (std::size_t a = 0; a < ns; ++a) {
      const CellKey ka = key_of(mids[a]);
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj)
          for (int dk = -1; dk <= 1; ++dk) {
            auto it = grid.find(CellKey{ka.i + di, ka.j + dj, ka.k + dk});
            if (it == grid.end()) continue;
            for (std::uint32_t b : it->second) {
              if (b <= a) continue;
              const double d = segment_distance(pts[a], seg_end(a), pts[b], seg_end(b));
              if (d >= radius || d >= best) continue;
              if (d < 0.5 * gap(a, b)) best = d;
            }
          }
    }
    if (best < kInf) return best;
    if (radius > diameter) return kInf;
    radius *= 4.0;
  }
}

double min_self_distance(const Rope& rope) { return min_self_distance(rope.samples(), false); }

double min_self_distance(const LongCurve& curve) { return min_self_distance(curve.core, false); }

}  // namespace ropelab
