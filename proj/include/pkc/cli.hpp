#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pkc/arrangement.hpp"
#include "pkc/geom.hpp"

namespace pkc::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kBadConfig = 2, kBadInput = 3, kCapExceeded = 4 };

/// Exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exit 3: unreadable input or unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Metric { l2, linf };
enum class Algo { automatic, paper, bruteforce };

struct RunConfig {
  Metric metric = Metric::l2;
  int p = 2;
  int k = 0;
  Algo algo = Algo::automatic;
  std::uint64_t seed = 1;
  bool randomized = true;  ///< matrix search flavour for the nearly concentric case
  bool parallel = false;
  bool verify = false;
  double eps = kDefaultEps;
  int directions = 16;
  int line_points = 8;
  int grid = 5;
  std::optional<double> radius;
  std::optional<double> side;
  std::string input, output, render;
};

/// Throws ConfigError when p or k are out of range for the metric.
void validate(const RunConfig& cfg);

/// Points and optional disks read from one file.
struct InputData {
  std::vector<Point> points;
  std::vector<Disk> disks;
};

/// CSV rows `x,y` (points) or `x,y,r` (disks), header optional; or JSON
/// {"points": [{"x":..,"y":..}], "disks": [{"x":..,"y":..,"r":..}]}.
InputData parse_input(const std::string& text, bool json);
InputData read_input(const std::string& path);
nlohmann::ordered_json input_to_json(const InputData& data);
std::string input_to_csv(const InputData& data);
void write_text(const std::string& path, const std::string& text);

/// Solve and decide documents. Timing lives under stats.wallTimeMs only.
nlohmann::ordered_json solve(const RunConfig& cfg, const std::vector<Point>& P);
nlohmann::ordered_json decide(const RunConfig& cfg, const std::vector<Point>& P);

/// Recomputes coverage of a result document against the points.
bool verify_document(const nlohmann::json& doc, const std::vector<Point>& P, std::string* why = nullptr);

enum class Distribution { uniform, clusters, figure2 };
InputData generate(Distribution dist, int n, int k, int clusters, std::uint64_t seed);

struct RenderSpec {
  std::vector<Point> points;
  std::vector<Disk> disks;
  std::vector<Square> squares;
  const LevelArrangement* arrangement = nullptr;  ///< arcs drawn as paths
  std::vector<UnitDiskCurve> curves;              ///< curve-cover strokes
};
std::string render_svg(const RenderSpec& spec);

/// Entry point of the pkcenter tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pkc::cli
