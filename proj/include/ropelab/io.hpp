#pragma once

#include <filesystem>
#include <iosfwd>

#include <json.hpp>

#include "ropelab/geometry.hpp"
#include "ropelab/homotopies.hpp"
#include "ropelab/knotid.hpp"
#include "ropelab/mccord.hpp"

namespace ropelab::io {

using nlohmann::json;

// Rope: {"samples": [[x,y,z], ...], "tangent_a"?: [..], "tangent_b"?: [..]}
json to_json(const Rope& rope);
Rope rope_from_json(const json& j);

// Closed curve: {"samples": [...], "closed": true}
json to_json(const ClosedCurve& curve);
ClosedCurve closed_from_json(const json& j);

// Family: {"eps": e, "frames": [{"t": T, "rope": {...}}, ...]}
json to_json(const RopeFamily& family);
RopeFamily family_from_json(const json& j);

// Timeline: {"tracks": [{"label", "breakpoints": [[t,x],...]}], "events": [{"t", "kind", "tracks"}]}
json to_json(const Timeline& tl);
Timeline timeline_from_json(const json& j);

/// Reads and parses a JSON file; Io for unreadable files, Parse for bad JSON.
json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

Rope read_rope(const std::filesystem::path& path);
RopeFamily read_family(const std::filesystem::path& path);
Timeline read_timeline(const std::filesystem::path& path);

/// One line per sample: T,index,x,y,z (with a header line).
void write_frames_csv(std::ostream& out, const RopeFamily& family);
/// One polyline object per frame.
void write_frames_obj(std::ostream& out, const RopeFamily& family);

}  // namespace ropelab::io
