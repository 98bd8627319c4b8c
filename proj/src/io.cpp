#include <fstream>
#include <sstream>

#include "pkc/cli.hpp"

namespace pkc::cli {

namespace {

std::vector<double> split_numbers(const std::string& line, bool* ok) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  *ok = true;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (cell.find_first_not_of(" \t\r", used) != std::string::npos) *ok = false;
    } catch (const std::exception&) {
      *ok = false;
    }
  }
  return out;
}

InputData parse_csv(const std::string& text) {
  InputData d;
  std::stringstream ss(text);
  std::string line;
  int row = 0;
  while (std::getline(ss, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    bool ok = false;
    const auto v = split_numbers(line, &ok);
    if (!ok) {
      if (row == 1) continue;  // header
      throw IoError("bad CSV row " + std::to_string(row));
    }
    if (v.size() == 2) {
      d.points.push_back({v[0], v[1]});
    } else if (v.size() == 3) {
      d.disks.push_back({{v[0], v[1]}, v[2]});
    } else {
      throw IoError("CSV row " + std::to_string(row) + " needs 2 or 3 columns");
    }
  }
  return d;
}

Point json_point(const nlohmann::json& j) {
  if (j.is_array()) return {j.at(0).get<double>(), j.at(1).get<double>()};
  return {j.at("x").get<double>(), j.at("y").get<double>()};
}

InputData parse_json(const std::string& text) {
  InputData d;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.is_array()) {
      for (const auto& e : j) d.points.push_back(json_point(e));
      return d;
    }
    if (j.contains("points"))
      for (const auto& e : j.at("points")) d.points.push_back(json_point(e));
    if (j.contains("disks"))
      for (const auto& e : j.at("disks")) d.disks.push_back({json_point(e), e.value("r", 1.0)});
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad JSON input: ") + e.what());
  }
  return d;
}

}  // namespace

InputData parse_input(const std::string& text, bool json) { return json ? parse_json(text) : parse_csv(text); }

InputData read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = path.ends_with(".json") || (first != std::string::npos && (text[first] == '{' || text[first] == '['));
  return parse_input(text, json);
}

nlohmann::ordered_json input_to_json(const InputData& data) {
  nlohmann::ordered_json j;
  j["schemaVersion"] = 1;
  j["points"] = nlohmann::ordered_json::array();
  for (Point p : data.points) j["points"].push_back({{"x", p.x}, {"y", p.y}});
  if (!data.disks.empty()) {
    j["disks"] = nlohmann::ordered_json::array();
    for (const Disk& d : data.disks) j["disks"].push_back({{"x", d.center.x}, {"y", d.center.y}, {"r", d.radius}});
  }
  return j;
}

std::string input_to_csv(const InputData& data) {
  std::ostringstream out;
  out.precision(17);
  for (Point p : data.points) out << p.x << ',' << p.y << '\n';
  for (const Disk& d : data.disks) out << d.center.x << ',' << d.center.y << ',' << d.radius << '\n';
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace pkc::cli
