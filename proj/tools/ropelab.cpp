// Command-line front end: analyze ropes, run deformations, evaluate loops and
// McCord timelines, and export the fixture corpus.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ropelab/error.hpp"
#include "ropelab/fixtures.hpp"
#include "ropelab/geometry.hpp"
#include "ropelab/homotopies.hpp"
#include "ropelab/io.hpp"
#include "ropelab/knotid.hpp"
#include "ropelab/mccord.hpp"
#include "ropelab/rope_type.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ropelab;

namespace {

enum Exit { kOk = 0, kInputError = 2, kIdentification = 3, kInvariant = 4 };

struct RunConfig {
  std::string input;
  std::string homotopy;
  double eps = 2.0;
  double eps_prime = 2.0;
  int frames = 64;
  std::uint64_t seed = 0;
  bool json_out = false;
  std::string out_dir;
  std::string format = "json";
  double x0 = 0.5;
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ProjectionFailed:
    case ErrorCode::DisconnectedDiagram:
      return kIdentification;
    case ErrorCode::NonGeneric:
    case ErrorCode::NonGenericX0:
      return kInvariant;
    default:
      return kInputError;
  }
}

/// "fixture:NAME" reads NAME.json from $ROPELAB_FIXTURES when set, otherwise
/// builds the named fixture in memory; anything else is a file path.
Rope load_rope(const std::string& input) {
  constexpr std::string_view kPrefix = "fixture:";
  if (input.rfind(kPrefix, 0) == 0) {
    const std::string name = input.substr(kPrefix.size());
    if (const char* dir = std::getenv("ROPELAB_FIXTURES"); dir && *dir) return io::read_rope(fs::path(dir) / (name + ".json"));
    if (auto rope = fixtures::rope_by_name(name)) return *std::move(rope);
    throw RopeError(ErrorCode::Io, "unknown fixture " + name);
  }
  return io::read_rope(input);
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

json component_json(const AxisComponent& c) {
  return {{"lo", c.lo}, {"hi", c.hi}, {"contains_a", c.contains_a}, {"contains_b", c.contains_b}};
}

int cmd_analyze(const RunConfig& cfg) {
  const Rope rope = load_rope(cfg.input);
  check_embedded(rope);
  const Measures m = measures(rope);
  const AxisDecomposition decomp = axis_decomposition(rope);
  const ExtensionSingularities sing = extension_singularities(rope);
  const RopeType type = rope_type(rope, cfg.seed);
  bool unknown = false;
  for (const auto& e : type.entries) unknown = unknown || (e.knot && e.knot->is_unknown());

  json report;
  report["l"] = m.l;
  report["l_x"] = m.l_x;
  report["l_yz"] = m.l_yz;
  report["l_A"] = decomp.l_a;
  report["l_Z"] = decomp.l_z;
  report["eps"] = cfg.eps;
  report["short"] = is_short(rope, cfg.eps);
  report["a_components"] = json::array();
  for (const AxisComponent& c : decomp.a_components) report["a_components"].push_back(component_json(c));
  report["z_components"] = json::array();
  for (const OpenInterval& z : decomp.z_components) report["z_components"].push_back({{"lo", z.lo}, {"hi", z.hi}});
  report["blocks"] = json::array();
  for (const auto& e : type.entries) {
    json b{{"kind", std::string(to_string(e.kind))}};
    b["class"] = e.knot ? json(e.knot->to_string()) : json(nullptr);
    report["blocks"].push_back(b);
  }
  report["rope_type"] = type.to_string();
  report["in_wl"] = sing.in_wl();
  report["in_wr"] = sing.in_wr();

  if (cfg.json_out) {
    std::cout << report.dump(1) << '\n';
  } else {
    std::cout << "l = " << fmt(m.l) << "\nl_x = " << fmt(m.l_x) << "\nl_yz = " << fmt(m.l_yz) << "\nl_A = " << fmt(decomp.l_a)
              << "\nl_Z = " << fmt(decomp.l_z) << "\nshort (eps=" << fmt(cfg.eps) << ") = " << (is_short(rope, cfg.eps) ? "yes" : "no")
              << "\nA(r):";
    if (decomp.a_components.empty()) std::cout << " empty";
    for (const AxisComponent& c : decomp.a_components) std::cout << " [" << fmt(c.lo) << ", " << fmt(c.hi) << "]";
    std::cout << "\nZ(r):";
    for (const OpenInterval& z : decomp.z_components) std::cout << " (" << fmt(z.lo) << ", " << fmt(z.hi) << ")";
    std::cout << "\nrope type = " << type.to_string() << "\nW_L = " << (sing.in_wl() ? "yes" : "no")
              << "\nW_R = " << (sing.in_wr() ? "yes" : "no") << '\n';
  }
  if (unknown) {
    std::cerr << "identification failed for at least one knot block\n";
    return kIdentification;
  }
  return kOk;
}

// ---- deform ---------------------------------------------------------------

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
};

void add_check(std::vector<Check>& checks, const std::string& name, bool ok, const std::string& detail = "") {
  checks.push_back({name, ok, detail});
}

bool pinned(const Rope& r) {
  return norm(r.samples().front()) <= 1e-9 && distance(r.samples().back(), Vec3{1.0, 0.0, 0.0}) <= 1e-9;
}

double distance_to_tight(const Rope& r) {
  const std::vector<Vec3> ab{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
  return hausdorff(r.samples(), ab);
}

RopeFamily sweep(const Rope& rope, const RunConfig& cfg, std::vector<Check>& checks) {
  RopeFamily fam;
  fam.eps = cfg.eps;
  const int n = cfg.frames;
  if (cfg.homotopy == "delta") {
    for (int i = 0; i <= n; ++i) {
      const double t = static_cast<double>(i) / n;
      fam.frames.push_back({t, delta_contract(rope, t)});
    }
    double worst = 0.0;
    for (int i = 1; i <= n; ++i) worst = std::max(worst, c1_distance(fam.frames[i - 1].rope, fam.frames[i].rope));
    add_check(checks, "continuity", worst < 5.0 / 64.0, "max c1 step " + fmt(worst));
    add_check(checks, "identity_at_1", hausdorff(fam.frames.back().rope.samples(), rope.samples()) <= 1e-6);
    add_check(checks, "tight_at_0", distance_to_tight(fam.frames.front().rope) <= 1e-3);
  } else if (cfg.homotopy == "wl") {
    fam = wl_retraction(rope, cfg.eps, n);
    bool short_frames = true;
    for (const Frame& f : fam.frames) short_frames = short_frames && is_short(f.rope, cfg.eps);
    add_check(checks, "short_frames", short_frames);
    add_check(checks, "tight_at_end", distance_to_tight(fam.frames.back().rope) <= 1e-3);
  } else if (cfg.homotopy == "tighten") {
    for (int i = 0; i <= n; ++i) {
      const double t = static_cast<double>(i) / n;
      fam.frames.push_back({t, tighten(rope, cfg.eps, cfg.eps_prime, t)});
    }
    const Rope& last = fam.frames.back().rope;
    add_check(checks, "final_length", measures(last).l < 1.0 + cfg.eps, "l = " + fmt(measures(last).l));
    bool monotone = true;
    for (int i = 1; i <= n; ++i)
      if (fam.frames[i].t > 0.5 && measures(fam.frames[i].rope).l_x > measures(fam.frames[i - 1].rope).l_x + 1e-9)
        monotone = false;
    add_check(checks, "l_x_monotone", monotone);
    const PhiReport phi = phi_conditions(rope, cfg.eps);
    add_check(checks, "phi_conditions", phi.ok(),
              "a=" + fmt(phi.a_violation) + " b=" + fmt(phi.b_margin) + " c=" + fmt(phi.c_margin));
    add_check(checks, "knot_class", identify(extend(rope), cfg.seed) == identify(extend(last), cfg.seed));
  } else {
    throw RopeError(ErrorCode::Parse, "unknown homotopy " + cfg.homotopy);
  }
  bool all_pinned = true, embedded = true;
  for (const Frame& f : fam.frames) {
    all_pinned = all_pinned && pinned(f.rope);
    embedded = embedded && min_self_distance(f.rope) > 0.0;
  }
  checks.insert(checks.begin(), {{"pinned", all_pinned, ""}, {"embedded", embedded, ""}});
  return fam;
}

void write_frames(const RopeFamily& fam, const RunConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  if (cfg.format == "json") {
    io::write_json(dir / "frames.json", io::to_json(fam));
    return;
  }
  std::ofstream out(dir / ("frames." + cfg.format));
  if (!out) throw RopeError(ErrorCode::Io, "cannot write into " + dir.string());
  if (cfg.format == "csv")
    io::write_frames_csv(out, fam);
  else
    io::write_frames_obj(out, fam);
}

int cmd_deform(const RunConfig& cfg) {
  const Rope rope = load_rope(cfg.input);
  check_embedded(rope);
  std::vector<Check> checks;
  const RopeFamily fam = sweep(rope, cfg, checks);
  if (!cfg.out_dir.empty()) write_frames(fam, cfg);

  bool ok = true;
  json report{{"homotopy", cfg.homotopy}, {"frames", fam.n_t()}, {"checks", json::array()}};
  for (const Check& c : checks) {
    ok = ok && c.ok;
    report["checks"].push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  }
  report["ok"] = ok;
  if (!cfg.out_dir.empty()) io::write_json(fs::path(cfg.out_dir) / "report.json", report);
  if (cfg.json_out) {
    std::cout << report.dump(1) << '\n';
  } else {
    for (const Check& c : checks)
      std::cout << (c.ok ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  " + c.detail) << '\n';
  }
  return ok ? kOk : kInvariant;
}

// ---- loop -----------------------------------------------------------------

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

/// One factor: "tie_and_push:LABELS[,eps=E][,frames=N]" or "rev(FACTOR)".
RopeFamily generate(std::string spec, const RunConfig& cfg) {
  spec = trim(spec);
  if (spec.rfind("rev(", 0) == 0 && spec.back() == ')') return reverse(generate(spec.substr(4, spec.size() - 5), cfg));
  constexpr std::string_view kGen = "tie_and_push:";
  if (spec.rfind(kGen, 0) != 0) throw RopeError(ErrorCode::Parse, "unknown loop generator '" + spec + "'");
  std::vector<std::string> parts;
  std::stringstream ss(spec.substr(kGen.size()));
  for (std::string p; std::getline(ss, p, ',');) parts.push_back(trim(p));
  if (parts.empty() || parts[0].empty()) throw RopeError(ErrorCode::Parse, "missing knot label in '" + spec + "'");
  double eps = cfg.eps;
  int frames = cfg.frames;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos) throw RopeError(ErrorCode::Parse, "expected key=value, got '" + parts[i] + "'");
    const std::string key = parts[i].substr(0, eq), value = parts[i].substr(eq + 1);
    try {
      if (key == "eps")
        eps = std::stod(value);
      else if (key == "frames")
        frames = std::stoi(value);
      else
        throw RopeError(ErrorCode::Parse, "unknown key '" + key + "'");
    } catch (const std::logic_error&) {
      throw RopeError(ErrorCode::Parse, "bad value for " + key);
    }
  }
  const KnotClass k{MonoidElement::parse(parts[0]), {}};
  return tie_and_push(k, eps, frames);
}

/// Factors joined by ';' are composed left to right.
RopeFamily generate_product(const std::string& spec, const RunConfig& cfg) {
  std::optional<RopeFamily> out;
  std::stringstream ss(spec);
  for (std::string factor; std::getline(ss, factor, ';');) {
    RopeFamily f = generate(factor, cfg);
    out = out ? concat(*out, f) : std::move(f);
  }
  if (!out) throw RopeError(ErrorCode::Parse, "empty loop specification");
  return *out;
}

json event_json(const LoopEvent& e) {
  return {{"t", e.t}, {"side", e.left ? "left" : "right"}, {"before", e.before.to_string()}, {"after", e.after.to_string()}};
}

int cmd_loop(const RunConfig& cfg) {
  const bool is_file = fs::exists(cfg.input);
  const RopeFamily fam = is_file ? io::read_family(cfg.input) : generate_product(cfg.input, cfg);
  if (!fam.is_loop()) throw RopeError(ErrorCode::NotALoop, "family does not start and end at the tight rope");
  const EventReport rep = loop_verify(fam, fam.eps, cfg.seed);
  const GrothendieckElement cls = loop_class(rep);

  if (!cfg.out_dir.empty()) {
    RunConfig c = cfg;
    write_frames(fam, c);
  }
  json report{{"generic", rep.generic}, {"flags", rep.flags}, {"class", cls.to_string()}, {"events", json::array()}};
  std::vector<LoopEvent> all = rep.left_events;
  all.insert(all.end(), rep.right_events.begin(), rep.right_events.end());
  std::sort(all.begin(), all.end(), [](const LoopEvent& a, const LoopEvent& b) { return a.t < b.t; });
  for (const LoopEvent& e : all) report["events"].push_back(event_json(e));

  if (cfg.json_out) {
    std::cout << report.dump(1) << '\n';
  } else {
    for (const LoopEvent& e : all)
      std::cout << "T=" << fmt(e.t) << ' ' << (e.left ? "left " : "right") << ' ' << e.before.to_string() << " -> "
                << e.after.to_string() << '\n';
    for (const std::string& f : rep.flags) std::cout << "NON_GENERIC " << f << '\n';
    std::cout << "class: " << cls.to_string() << '\n';
  }
  return rep.generic ? kOk : kInvariant;
}

// ---- mccord ---------------------------------------------------------------

int cmd_mccord(const RunConfig& cfg) {
  const Timeline tl = io::read_timeline(cfg.input);
  const ValidationReport v = validate(tl);
  if (!v.valid) {
    for (const std::string& p : v.problems) std::cerr << "invalid: " << p << '\n';
    return kInputError;
  }
  const GrothendieckElement cls = winding_class_auto(tl, cfg.x0);
  if (cfg.json_out)
    std::cout << json{{"class", cls.to_string()}, {"x0", cfg.x0}}.dump(1) << '\n';
  else
    std::cout << cls.to_string() << '\n';
  return kOk;
}

// ---- fixtures -------------------------------------------------------------

int cmd_fixtures_export(const RunConfig& cfg) {
  std::string dir = cfg.out_dir;
  if (dir.empty())
    if (const char* env = std::getenv("ROPELAB_FIXTURES")) dir = env;
  if (dir.empty()) throw RopeError(ErrorCode::Io, "no output directory (use --out or ROPELAB_FIXTURES)");
  fs::create_directories(dir);
  for (const auto& f : fixtures::all_ropes()) {
    io::write_json(fs::path(dir) / (f.name + ".json"), io::to_json(f.rope));
    std::cout << f.name << '\n';
  }
  return kOk;
}

int cmd_fixtures_list() {
  for (const auto& f : fixtures::all_ropes()) std::cout << f.name << "  l=" << fmt(measures(f.rope).l) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ropelab: short ropes, their deformations and loop classes"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--eps", cfg.eps, "Length slack: ropes are shorter than 1+eps")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Seed for projection jitter");
    sub->add_flag("--json", cfg.json_out, "Machine-readable output");
  };

  auto* analyze = app.add_subcommand("analyze", "Measure a rope and identify its knot blocks");
  analyze->add_option("rope", cfg.input, "Rope JSON file or fixture:NAME")->required();
  add_common(analyze);

  auto* deform = app.add_subcommand("deform", "Run a deformation and verify its invariants");
  deform->add_option("homotopy", cfg.homotopy, "delta, wl or tighten")
      ->required()
      ->check(CLI::IsMember({"delta", "wl", "tighten"}));
  deform->add_option("rope", cfg.input, "Rope JSON file or fixture:NAME")->required();
  deform->add_option("--eps-prime", cfg.eps_prime, "Input bound for tighten")->check(CLI::PositiveNumber);
  deform->add_option("--frames", cfg.frames, "Number of frame intervals")->check(CLI::Range(2, 100000));
  deform->add_option("--out", cfg.out_dir, "Directory for frames and report");
  deform->add_option("--format", cfg.format, "Frame format")->check(CLI::IsMember({"json", "csv", "obj"}));
  add_common(deform);

  auto* loop = app.add_subcommand("loop", "Verify a loop and print its class");
  loop->add_option("family", cfg.input, "Family JSON file or a generator such as tie_and_push:3_1,eps=2")->required();
  loop->add_option("--frames", cfg.frames, "Frames per generated factor")->check(CLI::Range(8, 100000));
  loop->add_option("--out", cfg.out_dir, "Directory for frames");
  loop->add_option("--format", cfg.format, "Frame format")->check(CLI::IsMember({"json", "csv", "obj"}));
  add_common(loop);

  auto* mccord = app.add_subcommand("mccord", "Validate a particle timeline and print its winding class");
  mccord->add_option("timeline", cfg.input, "Timeline JSON file")->required();
  mccord->add_option("--x0", cfg.x0, "Axis point for the flux count")->check(CLI::Range(0.0, 1.0));
  mccord->add_flag("--json", cfg.json_out, "Machine-readable output");

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Fixture corpus");
  fixtures_cmd->require_subcommand(1);
  auto* fx_export = fixtures_cmd->add_subcommand("export", "Write every fixture rope as JSON");
  fx_export->add_option("--out", cfg.out_dir, "Target directory (default $ROPELAB_FIXTURES)");
  auto* fx_list = fixtures_cmd->add_subcommand("list", "List fixture names and lengths");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze) return cmd_analyze(cfg);
    if (*deform) return cmd_deform(cfg);
    if (*loop) {
      if (!*loop->get_option("--frames")) cfg.frames = 256;
      return cmd_loop(cfg);
    }
    if (*mccord) return cmd_mccord(cfg);
    if (*fx_export) return cmd_fixtures_export(cfg);
    if (*fx_list) return cmd_fixtures_list();
  } catch (const RopeError& e) {
    std::cerr << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
