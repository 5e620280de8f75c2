#include "ropelab/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include "ropelab/error.hpp"

namespace ropelab::io {

namespace {

json vec(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw RopeError(ErrorCode::Parse, "expected [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::vector<Vec3> samples_from(const json& j) {
  if (!j.is_object() || !j.contains("samples")) throw RopeError(ErrorCode::Parse, "missing \"samples\"");
  std::vector<Vec3> pts;
  for (const json& p : j.at("samples")) pts.push_back(vec_from(p));
  return pts;
}

// Converts json library exceptions into Parse errors.
template <typename F>
auto parsing(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw RopeError(ErrorCode::Parse, e.what());
  }
}

}  // namespace

json to_json(const Rope& rope) {
  json j;
  j["samples"] = json::array();
  for (const Vec3& p : rope.samples()) j["samples"].push_back(vec(p));
  if (rope.given_tangent_a()) j["tangent_a"] = vec(*rope.given_tangent_a());
  if (rope.given_tangent_b()) j["tangent_b"] = vec(*rope.given_tangent_b());
  return j;
}

Rope rope_from_json(const json& j) {
  return parsing([&] {
    std::optional<Vec3> ta, tb;
    if (j.contains("tangent_a")) ta = vec_from(j.at("tangent_a"));
    if (j.contains("tangent_b")) tb = vec_from(j.at("tangent_b"));
    return Rope(samples_from(j), ta, tb);
  });
}

json to_json(const ClosedCurve& curve) {
  json j;
  j["closed"] = true;
  j["samples"] = json::array();
  for (const Vec3& p : curve.points) j["samples"].push_back(vec(p));
  return j;
}

ClosedCurve closed_from_json(const json& j) {
  return parsing([&] {
    if (!j.value("closed", false)) throw RopeError(ErrorCode::Parse, "expected \"closed\": true");
    ClosedCurve c{samples_from(j)};
    if (c.points.size() < 3) throw RopeError(ErrorCode::Parse, "closed curve needs at least 3 samples");
    return c;
  });
}

json to_json(const RopeFamily& family) {
  json j;
  j["eps"] = family.eps;
  j["frames"] = json::array();
  for (const Frame& f : family.frames) j["frames"].push_back({{"t", f.t}, {"rope", to_json(f.rope)}});
  return j;
}

RopeFamily family_from_json(const json& j) {
  return parsing([&] {
    RopeFamily fam;
    fam.eps = j.at("eps").get<double>();
    double prev = -1.0;
    for (const json& f : j.at("frames")) {
      const double t = f.at("t").get<double>();
      if (!(t > prev)) throw RopeError(ErrorCode::Parse, "frame times must increase");
      prev = t;
      fam.frames.push_back({t, rope_from_json(f.at("rope"))});
    }
    return fam;
  });
}

json to_json(const Timeline& tl) {
  json j;
  j["tracks"] = json::array();
  for (const Track& tr : tl.tracks) {
    json bps = json::array();
    for (const auto& [t, x] : tr.breakpoints) bps.push_back({t, x});
    j["tracks"].push_back({{"label", tr.label.to_string()}, {"breakpoints", bps}});
  }
  j["events"] = json::array();
  for (const TimelineEvent& e : tl.events)
    j["events"].push_back({{"t", e.t}, {"kind", std::string(to_string(e.kind))}, {"tracks", e.tracks}});
  return j;
}

Timeline timeline_from_json(const json& j) {
  return parsing([&] {
    Timeline tl;
    for (const json& tr : j.at("tracks")) {
      Track t;
      t.label = MonoidElement::parse(tr.at("label").get<std::string>());
      for (const json& bp : tr.at("breakpoints")) {
        if (!bp.is_array() || bp.size() != 2) throw RopeError(ErrorCode::Parse, "breakpoint must be [t, x]");
        t.breakpoints.push_back({bp[0].get<double>(), bp[1].get<double>()});
      }
      tl.tracks.push_back(std::move(t));
    }
    if (j.contains("events"))
      for (const json& e : j.at("events"))
        tl.events.push_back({e.at("t").get<double>(), parse_event_kind(e.at("kind").get<std::string>()),
                             e.at("tracks").get<std::vector<int>>()});
    return tl;
  });
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw RopeError(ErrorCode::Io, "cannot read " + path.string());
  return parsing([&] { return json::parse(in); });
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw RopeError(ErrorCode::Io, "cannot write " + path.string());
  out << j.dump(1) << '\n';
}

Rope read_rope(const std::filesystem::path& path) { return rope_from_json(read_json(path)); }

RopeFamily read_family(const std::filesystem::path& path) { return family_from_json(read_json(path)); }

Timeline read_timeline(const std::filesystem::path& path) { return timeline_from_json(read_json(path)); }

void write_frames_csv(std::ostream& out, const RopeFamily& family) {
  out << "T,index,x,y,z\n" << std::setprecision(17);
  for (const Frame& f : family.frames)
    for (std::size_t i = 0; i < f.rope.size(); ++i)
      out << f.t << ',' << i << ',' << f.rope[i].x << ',' << f.rope[i].y << ',' << f.rope[i].z << '\n';
}

void write_frames_obj(std::ostream& out, const RopeFamily& family) {
  out << std::setprecision(17);
  std::size_t base = 1;
  for (std::size_t k = 0; k < family.frames.size(); ++k) {
    const Frame& f = family.frames[k];
    out << "o frame_" << k << "_T" << f.t << '\n';
    for (const Vec3& p : f.rope.samples()) out << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
    out << 'l';
    for (std::size_t i = 0; i < f.rope.size(); ++i) out << ' ' << base + i;
    out << '\n';
    base += f.rope.size();
  }
}

}  // namespace ropelab::io
