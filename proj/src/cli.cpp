#include "tilt/cli.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tilt/error.hpp"
#include "tilt/io.hpp"
#include "tilt/parallel.hpp"
#include "tilt/phantoms.hpp"
#include "tilt/projection.hpp"
#include "tilt/render.hpp"

namespace tilt {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& why) {
  fail(ErrorCode::config, "bad value '" + value + "' for '" + key + "': " + why);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || p != value.data() + value.size()) bad_value(key, value, "not a number");
  return out;
}

template <class E>
E parse_enum(const std::string& key, const std::string& value, std::initializer_list<std::pair<const char*, E>> names) {
  std::string all;
  for (auto& [n, e] : names) {
    if (value == n) return e;
    all += all.empty() ? n : std::string("|") + n;
  }
  bad_value(key, value, "expected " + all);
}

template <class E>
std::string enum_name(E v, std::initializer_list<std::pair<const char*, E>> names) {
  for (auto& [n, e] : names)
    if (e == v) return n;
  return "?";
}

const std::initializer_list<std::pair<const char*, StatementMode>> kStatement = {{"literal", StatementMode::literal},
                                                                                  {"relaxed", StatementMode::relaxed}};
const std::initializer_list<std::pair<const char*, BarRotation>> kBar = {{"mirror", BarRotation::mirror},
                                                                         {"literal", BarRotation::literal}};
const std::initializer_list<std::pair<const char*, SkeletonMethod>> kSkeleton = {
    {"thinning", SkeletonMethod::thinning}, {"formula", SkeletonMethod::formula}};
const std::initializer_list<std::pair<const char*, RemovalLayers>> kRemoval = {{"all", RemovalLayers::all},
                                                                               {"bottom", RemovalLayers::bottom}};
const std::initializer_list<std::pair<const char*, EndpointRule>> kEndpoints = {{"merged", EndpointRule::merged},
                                                                                {"stack", EndpointRule::stack}};

struct Setting {
  const char* key;
  const char* help;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<ordered_json(const RunConfig&)> get;
};

#define NUM_SETTING(KEY, HELP, FIELD, T)                                              \
  Setting {                                                                           \
    KEY, HELP, [](RunConfig& c, const std::string& v) { c.FIELD = parse_number<T>(KEY, v); }, \
        [](const RunConfig& c) { return ordered_json(c.FIELD); }                      \
  }
#define ENUM_SETTING(KEY, HELP, FIELD, TABLE)                                                 \
  Setting {                                                                                   \
    KEY, HELP, [](RunConfig& c, const std::string& v) { c.FIELD = parse_enum(KEY, v, TABLE); }, \
        [](const RunConfig& c) { return ordered_json(enum_name(c.FIELD, TABLE)); }            \
  }

const std::vector<Setting>& settings() {
  static const std::vector<Setting> table = {
      {"fixture", "phantom fixture name", [](RunConfig& c, const std::string& v) { c.fixture = v; },
       [](const RunConfig& c) { return ordered_json(c.fixture); }},
      NUM_SETTING("size", "image side in pixels", size, int),
      {"angles", "view angles a:b:n in degrees", [](RunConfig& c, const std::string& v) { c.angles = v; },
       [](const RunConfig& c) { return ordered_json(c.angles); }},
      NUM_SETTING("noise", "relative Gaussian noise level", noise, double),
      NUM_SETTING("seed", "noise seed", seed, uint64_t),
      NUM_SETTING("fov", "field of view in length units", fov, double),
      NUM_SETTING("pixel-size", "pixel size; 0 derives it from fov", pixel_size, double),
      NUM_SETTING("alpha", "TV weight", tv.alpha, double),
      NUM_SETTING("iters", "TV iterations", tv.iterations, int),
      NUM_SETTING("level", "subband grid side is 2^level", tilt.level, int),
      NUM_SETTING("threshold", "subband threshold t", tilt.threshold, double),
      NUM_SETTING("linelen", "opening line length l", tilt.line_length, int),
      NUM_SETTING("maskn", "candywrap mask size N", tilt.mask_n, int),
      NUM_SETTING("mask-cell", "subband pixels per mask cell", tilt.mask_cell_px, double),
      NUM_SETTING("s0", "initial distance", tilt.s0, double),
      NUM_SETTING("step", "distance step z", tilt.step, double),
      NUM_SETTING("smax", "largest distance tried", tilt.s_max, double),
      NUM_SETTING("endpoint-radius", "endpoint neighbourhood radius", tilt.endpoint_radius, int),
      ENUM_SETTING("statement", "bridging test: literal|relaxed", tilt.statement, kStatement),
      ENUM_SETTING("bar-rotation", "bar-side mask rotations: mirror|literal", tilt.bar_rotation, kBar),
      ENUM_SETTING("skeleton", "skeleton method: thinning|formula", tilt.skeleton, kSkeleton),
      ENUM_SETTING("removal", "layers removed after a find: all|bottom", tilt.removal, kRemoval),
      ENUM_SETTING("endpoints", "endpoint rule: merged|stack", tilt.endpoints, kEndpoints),
      NUM_SETTING("render-scale", "upsampling factor of renders", render_scale, int),
      {"out", "output directory", [](RunConfig& c, const std::string& v) { c.out_dir = v; },
       [](const RunConfig& c) { return ordered_json(c.out_dir); }},
      NUM_SETTING("threads", "worker threads, 0 for all cores", threads, int),
  };
  return table;
}

#undef NUM_SETTING
#undef ENUM_SETTING

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void prepare(const RunConfig& cfg) {
  validate(cfg);
  set_thread_count(cfg.threads);
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  require(!ec, "cannot create output directory '" + cfg.out_dir + "': " + ec.message(), ErrorCode::io);
}

void write_json(const std::string& path, const ordered_json& j) { write_text(path, j.dump(2) + "\n"); }

ordered_json read_json(const std::string& path) {
  std::string text = read_text(path);
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::malformed_input, "malformed JSON in '" + path + "': " + e.what());
  }
}

ordered_json points_json(const Polyline& pts) {
  ordered_json a = ordered_json::array();
  for (const auto& p : pts) a.push_back({p.x, p.y});
  return a;
}

// Rebuilds the parts of a report that rendering needs.
TiltReport report_from_files(const RunPaths& p) {
  ordered_json rj = read_json(p.report), cj = read_json(p.curves);
  TiltReport rep;
  try {
    rep.image_size = rj.at("image_size").get<int>();
    rep.subband_size = rj.at("subband_size").get<int>();
    rep.scale = rj.at("scale").get<double>();
    const int n = rep.subband_size;
    for (const auto& c : rj.at("components")) {
      FoundComponent f;
      f.index = c.at("id").get<int>();
      f.birth_s = c.at("birth_s").get<double>();
      f.projection = BinaryGrid(n, n);
      for (const auto& run : c.at("projection_rle")) {
        size_t start = run.at(0).get<size_t>(), len = run.at(1).get<size_t>();
        require(start + len <= size_t(n) * n, "run outside the subband grid", ErrorCode::malformed_input);
        for (size_t i = start; i < start + len; ++i) f.projection.raw()[i] = 1;
      }
      rep.found.push_back(std::move(f));
    }
    for (const auto& c : cj.at("curves")) {
      int id = c.at("id").get<int>();
      require(id >= 0 && id < int(rep.found.size()), "curve id without a component", ErrorCode::malformed_input);
      for (const auto& pt : c.at("points")) rep.found[size_t(id)].spline.curve.push_back({pt.at(0), pt.at(1)});
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::malformed_input, "malformed report: " + std::string(e.what()));
  }
  return rep;
}

}  // namespace

void validate(const RunConfig& cfg) {
  auto check = [](bool ok, const std::string& what) { require(ok, what, ErrorCode::config); };
  check(cfg.size >= 16, "size must be >= 16");
  check(cfg.noise >= 0, "noise must be >= 0");
  check(cfg.fov > 0, "fov must be positive");
  check(cfg.pixel_size >= 0, "pixel-size must be >= 0");
  check(cfg.tv.alpha >= 0, "alpha must be >= 0");
  check(cfg.tv.iterations >= 1, "iters must be >= 1");
  check(cfg.render_scale >= 1 && cfg.render_scale <= 16, "render-scale must be in 1..16");
  check(cfg.threads >= 0, "threads must be >= 0");
  check(!cfg.out_dir.empty(), "out must not be empty");
  bool known = false;
  for (const auto& n : fixture_names()) known = known || n == cfg.fixture;
  check(known, "unknown fixture '" + cfg.fixture + "'");
  try {
    parse_angles(cfg.angles);
    validate(cfg.tilt);
    decomposition_level(cfg.size, cfg.tilt.level);
  } catch (const Error& e) {
    fail(ErrorCode::config, e.what());
  }
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& s : settings()) keys.emplace_back(s.key);
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  for (const auto& s : settings())
    if (key == s.key) return s.set(cfg, value);
  fail(ErrorCode::config, "unknown config key '" + key + "'");
}

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    require(eq != std::string::npos, origin + ":" + std::to_string(lineno) + ": expected key=value", ErrorCode::config);
    try {
      apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const Error& e) {
      fail(ErrorCode::config, origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::map<std::string, std::string> settings_of(const RunConfig& cfg) {
  std::map<std::string, std::string> out;
  for (const auto& s : settings()) {
    ordered_json v = s.get(cfg);
    out[s.key] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  return out;
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  for (const auto& s : settings()) j[s.key] = s.get(cfg);
  j["effective_pixel_size"] = cfg.effective_pixel_size();
  return j;
}

ordered_json report_json(const TiltReport& rep, const RunConfig& cfg) {
  ordered_json j;
  j["format"] = "tilt-report";
  j["config"] = config_json(cfg);
  j["image_size"] = rep.image_size;
  j["subband_size"] = rep.subband_size;
  j["scale"] = rep.scale;
  j["status"] = rep.complete ? "complete" : "incomplete";
  j["complete"] = rep.complete;
  j["final_s"] = rep.final_s;
  j["component_count"] = rep.found.size();
  ordered_json comps = ordered_json::array();
  for (const auto& f : rep.found) {
    ordered_json c;
    c["id"] = f.index;
    c["birth_s"] = f.birth_s;
    c["voxels"] = f.matrix.count;
    c["projection_pixels"] = f.projection.count();
    ordered_json rle = ordered_json::array();
    for (auto [start, len] : run_length(f.projection)) rle.push_back({start, len});
    c["projection_rle"] = std::move(rle);
    c["arcs"] = f.spline.arcs;
    c["closed_ring"] = f.spline.closed_ring;
    c["spline_fallback"] = f.spline.fallback;
    c["curve_points"] = f.spline.curve.size();
    comps.push_back(std::move(c));
  }
  j["components"] = std::move(comps);
  ordered_json its = ordered_json::array();
  for (const auto& it : rep.iterations) its.push_back({{"s", it.s}, {"components", it.components}, {"found", it.found}});
  j["iterations"] = std::move(its);
  j["timings"] = {{"subbands_ms", rep.timings.subbands_ms},
                  {"loop_ms", rep.timings.loop_ms},
                  {"splines_ms", rep.timings.splines_ms}};
  return j;
}

ordered_json curves_json(const TiltReport& rep, const RunConfig& cfg) {
  ordered_json j;
  j["format"] = "tilt-curves";
  j["config"] = config_json(cfg);
  j["image_size"] = rep.image_size;
  j["frame"] = "x = column, y = row, pixel centres at integers";
  ordered_json curves = ordered_json::array();
  for (const auto& f : rep.found) {
    ordered_json c;
    c["id"] = f.index;
    c["birth_s"] = f.birth_s;
    c["fallback"] = f.spline.fallback;
    c["points"] = points_json(f.spline.curve);
    ordered_json arcs = ordered_json::array();
    for (const auto& a : f.spline.traced) arcs.push_back(points_json(a));
    c["traced_arcs"] = std::move(arcs);
    curves.push_back(std::move(c));
  }
  j["curves"] = std::move(curves);
  return j;
}

RunPaths run_paths(const RunConfig& cfg) {
  auto in = [&](const char* name) { return (std::filesystem::path(cfg.out_dir) / name).string(); };
  return {in("phantom.pfm"), in("sinogram.raw"), in("recon.pfm"),          in("report.json"),
          in("curves.json"), in("overlay.png"),  in("neighbourhoods.pgm"), in("masks.png")};
}

void cmd_phantom(const RunConfig& cfg) {
  prepare(cfg);
  const RunPaths p = run_paths(cfg);
  PhantomSpec spec = fixture(cfg.fixture, cfg.size);
  Image img = make_phantom(spec);
  img.pixel_size = cfg.effective_pixel_size();
  write_pfm(p.phantom, img);
  write_pgm(p.phantom.substr(0, p.phantom.size() - 4) + ".pgm", img, 0.0, 1.0);
  ordered_json j;
  j["config"] = config_json(cfg);
  j["kind"] = phantom_kind_name(spec.kind);
  j["size"] = spec.size;
  j["pixel_size"] = img.pixel_size;
  write_json(p.phantom + ".json", j);
}

void cmd_project(const RunConfig& cfg) {
  prepare(cfg);
  const RunPaths p = run_paths(cfg);
  Image img = read_pfm(p.phantom);
  require(img.rows == cfg.size && img.cols == cfg.size,
          "'" + p.phantom + "' is " + std::to_string(img.rows) + "x" + std::to_string(img.cols) + " but size is " +
              std::to_string(cfg.size),
          ErrorCode::config);
  ScanGeometry g = make_geometry(cfg.size, parse_angles(cfg.angles), cfg.effective_pixel_size());
  Sinogram sino = forward_project(img, g);
  if (cfg.noise > 0) sino = add_noise(sino, cfg.noise, cfg.seed);
  write_sinogram(p.sinogram, sino);
  ordered_json side = read_json(p.sinogram + ".json");
  side["config"] = config_json(cfg);
  write_json(p.sinogram + ".json", side);
}

void cmd_recon(const RunConfig& cfg) {
  prepare(cfg);
  const RunPaths p = run_paths(cfg);
  Sinogram sino = read_sinogram(p.sinogram);
  auto t0 = std::chrono::steady_clock::now();
  TvResult res = reconstruct_tv(sino, sino.geometry, cfg.tv);
  double ms = ms_since(t0);
  write_pfm(p.recon, res.image);
  write_pgm(p.recon.substr(0, p.recon.size() - 4) + ".pgm", res.image);
  ordered_json j;
  j["config"] = config_json(cfg);
  j["image_size"] = res.image.rows;
  j["pixel_size"] = res.image.pixel_size;
  j["operator_norm"] = res.operator_norm;
  j["gradient_weight"] = res.gradient_weight;
  ordered_json cps = ordered_json::array();
  for (const auto& c : res.checkpoints)
    cps.push_back({{"iteration", c.iteration}, {"objective", c.objective}, {"best", c.best}});
  j["checkpoints"] = std::move(cps);
  j["timings"] = {{"recon_ms", ms}};
  write_json(p.recon + ".json", j);
}

TiltReport cmd_tilt(const RunConfig& cfg) {
  prepare(cfg);
  const RunPaths p = run_paths(cfg);
  Image r = read_pfm(p.recon);
  require(r.rows == r.cols, "reconstruction must be square", ErrorCode::malformed_input);
  try {
    decomposition_level(r.rows, cfg.tilt.level);
  } catch (const Error& e) {
    fail(ErrorCode::config, e.what());
  }
  TiltReport rep = run_tilt(r, cfg.tilt);
  write_json(p.report, report_json(rep, cfg));
  write_json(p.curves, curves_json(rep, cfg));
  auto dir = std::filesystem::path(cfg.out_dir);
  write_pgm((dir / "sb_hl.pgm").string(), rep.subbands.hl);
  write_pgm((dir / "sb_hlbar.pgm").string(), rep.subbands.hlbar);
  return rep;
}

void cmd_render(const RunConfig& cfg) {
  prepare(cfg);
  const RunPaths p = run_paths(cfg);
  Image r = read_pfm(p.recon);
  TiltReport rep = report_from_files(p);
  require(rep.image_size == r.rows, "report and reconstruction sizes differ", ErrorCode::malformed_input);
  write_png(p.overlay, render_overlay(r, rep, cfg.render_scale));
  BinaryGrid all(rep.subband_size, rep.subband_size);
  for (const auto& f : rep.found) all |= f.projection;
  write_pgm(p.neighbourhoods, all);
  const std::vector<double> ds = {0.5, 1, 2, 3, 4, 6, 8};
  write_png(p.masks, render_mask_sheet(ds, cfg.tilt.mask_n), 0.0, 1.0);
  ordered_json j;
  j["config"] = config_json(cfg);
  j["overlay"] = "neighbourhoods in translucent red, splines in green, over the bicubically upsampled reconstruction";
  j["masks"] = {{"rows", {"+R", "+L", "-R", "-L"}}, {"distances", ds}, {"n", cfg.tilt.mask_n}};
  write_json((std::filesystem::path(cfg.out_dir) / "render.json").string(), j);
}

TiltReport cmd_all(const RunConfig& cfg) {
  cmd_phantom(cfg);
  cmd_project(cfg);
  cmd_recon(cfg);
  TiltReport rep = cmd_tilt(cfg);
  cmd_render(cfg);
  return rep;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  auto report_error = [&](ErrorCode code, const std::string& msg) {
    ordered_json j;
    j["error"] = {{"code", error_code_name(code)}, {"exit_code", int(code)}, {"message", msg}};
    err << j.dump() << "\n";
    return int(code);
  };

  CLI::App app{"Boundary recovery for limited-angle tomography"};
  app.require_subcommand(1, 1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value config file; flags override it");
  std::map<std::string, std::string> given;
  for (const auto& s : settings()) app.add_option(std::string("--") + s.key, given[s.key], s.help);
  const std::vector<std::pair<const char*, const char*>> commands = {
      {"phantom", "rasterize a fixture"},         {"project", "forward-project with noise"},
      {"recon", "TV reconstruction"},             {"tilt", "boundary neighbourhoods and splines"},
      {"render", "overlay and mask images"},      {"all", "run every stage"}};
  for (auto [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return report_error(ErrorCode::config, e.what());
  }

  try {
    RunConfig cfg;
    cfg.command = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) apply_config_text(cfg, read_text(config_path), config_path);
    for (const auto& s : settings())
      if (app.count(std::string("--") + s.key)) apply_setting(cfg, s.key, given[s.key]);
    validate(cfg);

    ordered_json summary;
    summary["command"] = cfg.command;
    summary["out"] = cfg.out_dir;
    if (cfg.command == "phantom") cmd_phantom(cfg);
    if (cfg.command == "project") cmd_project(cfg);
    if (cfg.command == "recon") cmd_recon(cfg);
    if (cfg.command == "render") cmd_render(cfg);
    if (cfg.command == "tilt" || cfg.command == "all") {
      TiltReport rep = cfg.command == "tilt" ? cmd_tilt(cfg) : cmd_all(cfg);
      summary["components"] = rep.found.size();
      summary["status"] = rep.complete ? "complete" : "incomplete";
      summary["report"] = run_paths(cfg).report;
    }
    out << summary.dump() << "\n";
    return 0;
  } catch (const Error& e) {
    return report_error(e.code(), e.what());
  } catch (const std::exception& e) {
    return report_error(ErrorCode::internal, e.what());
  }
}

}  // namespace tilt
