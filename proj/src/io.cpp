#include "tilt/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tilt/error.hpp"

namespace tilt {

namespace {

static_assert(std::endian::native == std::endian::little, "file writers assume a little-endian host");

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  require(bool(f), "cannot open '" + path + "' for writing", ErrorCode::io);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(bool(f), "cannot open '" + path + "'", ErrorCode::missing_input);
  return f;
}

// Next whitespace-separated header token, skipping # comments.
std::string header_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(char(ch));
  }
  return tok;
}

int header_int(std::istream& in, const std::string& path) {
  std::string t = header_token(in);
  try {
    return std::stoi(t);
  } catch (const std::logic_error&) {
    fail(ErrorCode::malformed_input, "malformed header in '" + path + "'");
  }
}

}  // namespace

void write_pgm(const std::string& path, const BinaryGrid& g) {
  auto f = open_out(path);
  f << "P5\n" << g.cols() << " " << g.rows() << "\n255\n";
  std::vector<unsigned char> row(size_t(g.cols()));
  for (int r = 0; r < g.rows(); ++r) {
    for (int c = 0; c < g.cols(); ++c) row[size_t(c)] = g.get(r, c) ? 255 : 0;
    f.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size()));
  }
}

void write_pgm(const std::string& path, const Image& img, double lo, double hi) {
  if (lo == hi && !img.data.empty()) {
    auto [mn, mx] = std::minmax_element(img.data.begin(), img.data.end());
    lo = *mn, hi = *mx;
  }
  double span = hi > lo ? hi - lo : 1.0;
  auto f = open_out(path);
  f << "P5\n" << img.cols << " " << img.rows << "\n255\n";
  std::vector<unsigned char> px(img.size());
  for (size_t i = 0; i < img.size(); ++i)
    px[i] = (unsigned char)std::lround(std::clamp((img.data[i] - lo) / span, 0.0, 1.0) * 255.0);
  f.write(reinterpret_cast<const char*>(px.data()), std::streamsize(px.size()));
}

Image read_pgm(const std::string& path) {
  auto f = open_in(path);
  require(header_token(f) == "P5", "'" + path + "' is not a binary PGM", ErrorCode::malformed_input);
  int w = header_int(f, path), h = header_int(f, path), maxval = header_int(f, path);
  require(w > 0 && h > 0 && maxval > 0 && maxval < 256, "unsupported PGM header in '" + path + "'", ErrorCode::malformed_input);
  std::vector<unsigned char> px(size_t(w) * h);
  f.read(reinterpret_cast<char*>(px.data()), std::streamsize(px.size()));
  require(f.gcount() == std::streamsize(px.size()), "truncated PGM '" + path + "'", ErrorCode::malformed_input);
  Image img(h, w);
  for (size_t i = 0; i < px.size(); ++i) img.data[i] = double(px[i]) / maxval;
  return img;
}

void write_pfm(const std::string& path, const Image& img) {
  auto f = open_out(path);
  f << "Pf\n" << img.cols << " " << img.rows << "\n-1.0\n";
  std::vector<float> row(size_t(img.cols));
  for (int r = img.rows - 1; r >= 0; --r) {
    for (int c = 0; c < img.cols; ++c) row[size_t(c)] = float(img(r, c));
    f.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size() * sizeof(float)));
  }
}

Image read_pfm(const std::string& path) {
  auto f = open_in(path);
  require(header_token(f) == "Pf", "'" + path + "' is not a greyscale PFM", ErrorCode::malformed_input);
  int w = header_int(f, path), h = header_int(f, path);
  std::string scale = header_token(f);
  require(w > 0 && h > 0, "bad PFM size in '" + path + "'", ErrorCode::malformed_input);
  require(!scale.empty() && scale[0] == '-', "only little-endian PFM is supported", ErrorCode::malformed_input);
  Image img(h, w);
  std::vector<float> row(static_cast<size_t>(w));
  for (int r = h - 1; r >= 0; --r) {
    f.read(reinterpret_cast<char*>(row.data()), std::streamsize(row.size() * sizeof(float)));
    require(f.gcount() == std::streamsize(row.size() * sizeof(float)), "truncated PFM '" + path + "'", ErrorCode::malformed_input);
    for (int c = 0; c < w; ++c) img(r, c) = row[size_t(c)];
  }
  return img;
}

void write_sinogram(const std::string& path, const Sinogram& s) {
  {
    auto f = open_out(path);
    std::vector<float> buf(s.data.begin(), s.data.end());
    f.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size() * sizeof(float)));
  }
  const auto& g = s.geometry;
  nlohmann::ordered_json j;
  j["angles_deg"] = g.angles_deg;
  j["detector_count"] = g.detector_count;
  j["detector_spacing"] = g.detector_spacing;
  j["image_size"] = g.image_size;
  j["pixel_size"] = g.pixel_size;
  j["noise_seed"] = s.noise_seed ? nlohmann::ordered_json(*s.noise_seed) : nlohmann::ordered_json(nullptr);
  j["relative_noise"] = s.relative_noise;
  write_text(path + ".json", j.dump(2) + "\n");
}

Sinogram read_sinogram(const std::string& path) {
  Sinogram s;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path + ".json"));
    auto& g = s.geometry;
    g.angles_deg = j.at("angles_deg").get<std::vector<double>>();
    g.detector_count = j.at("detector_count").get<int>();
    g.detector_spacing = j.at("detector_spacing").get<double>();
    g.image_size = j.at("image_size").get<int>();
    g.pixel_size = j.at("pixel_size").get<double>();
    if (j.contains("noise_seed") && !j["noise_seed"].is_null()) s.noise_seed = j["noise_seed"].get<uint64_t>();
    s.relative_noise = j.value("relative_noise", 0.0);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::malformed_input, "malformed sinogram sidecar '" + path + ".json': " + e.what());
  }
  try {
    validate(s.geometry);
  } catch (const Error& e) {
    fail(ErrorCode::malformed_input, "invalid geometry in '" + path + ".json': " + e.what());
  }
  auto f = open_in(path);
  size_t n = s.geometry.views() * size_t(s.geometry.detector_count);
  std::vector<float> buf(n);
  f.read(reinterpret_cast<char*>(buf.data()), std::streamsize(n * sizeof(float)));
  require(f.gcount() == std::streamsize(n * sizeof(float)), "sinogram '" + path + "' is shorter than its sidecar says",
          ErrorCode::malformed_input);
  s.data.assign(buf.begin(), buf.end());
  return s;
}

std::string read_text(const std::string& path) {
  auto f = open_in(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  auto f = open_out(path);
  f << text;
}

}  // namespace tilt
