#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "tilt/pipeline.hpp"
#include "tilt/tvreg.hpp"

namespace tilt {

struct RunConfig {
  std::string command;
  std::string out_dir = "out";
  std::string fixture = "annulus";
  int size = 256;
  std::string angles = "-30:30:61";
  double noise = 0.03;
  uint64_t seed = 7;
  double fov = 8.0;         // field of view in length units; pixel size = fov / size
  double pixel_size = 0.0;  // overrides fov when > 0
  TvConfig tv;
  TiltConfig tilt;
  int render_scale = 2;
  int threads = 0;

  double effective_pixel_size() const { return pixel_size > 0 ? pixel_size : fov / size; }
};

void validate(const RunConfig& cfg);

// Keys accepted in config files; each is also a --key flag.
std::vector<std::string> config_keys();
// Sets one key from its text value. Throws ErrorCode::config.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
// key=value lines, # starts a comment, blank lines ignored.
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin = "config");
std::map<std::string, std::string> settings_of(const RunConfig& cfg);
nlohmann::ordered_json config_json(const RunConfig& cfg);

nlohmann::ordered_json report_json(const TiltReport& rep, const RunConfig& cfg);
nlohmann::ordered_json curves_json(const TiltReport& rep, const RunConfig& cfg);

// Stage outputs inside cfg.out_dir.
struct RunPaths {
  std::string phantom, sinogram, recon, report, curves, overlay, neighbourhoods, masks;
};
RunPaths run_paths(const RunConfig& cfg);

void cmd_phantom(const RunConfig& cfg);
void cmd_project(const RunConfig& cfg);
void cmd_recon(const RunConfig& cfg);
TiltReport cmd_tilt(const RunConfig& cfg);
void cmd_render(const RunConfig& cfg);
TiltReport cmd_all(const RunConfig& cfg);

// Full command line; returns the process exit code. Errors go to err as one
// JSON object.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace tilt
