#include "homax/io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "homax/errors.hpp"

namespace homax {

namespace {

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("short write to " + path);
}

template <typename T>
std::vector<T> to_vector(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw IoError(std::string(what) + " must be an array");
  std::vector<T> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw IoError(std::string(what) + " must be numeric");
    out.push_back(v.get<T>());
  }
  return out;
}

}  // namespace

Space load_space_json(const std::string& path) {
  const nlohmann::json j = parse_file(path);
  if (!j.is_object() || !j.contains("points") || !j.contains("metric") ||
      !j.contains("masses"))
    throw IoError(path + ": space file needs points, metric, masses");
  auto ids = to_vector<std::int64_t>(j["points"], "points");
  auto masses = to_vector<double>(j["masses"], "masses");
  const std::string metric = j["metric"].is_string()
                                 ? j["metric"].get<std::string>()
                                 : throw IoError(path + ": metric must be a string");
  if (metric == "matrix") {
    if (!j.contains("matrix")) throw IoError(path + ": missing matrix");
    return Space::from_matrix(std::move(ids),
                              to_vector<double>(j["matrix"], "matrix"),
                              std::move(masses));
  }
  if (metric == "abs1d") {
    if (!j.contains("coords")) throw IoError(path + ": missing coords");
    return Space::from_line(std::move(ids),
                            to_vector<double>(j["coords"], "coords"),
                            std::move(masses));
  }
  if (metric == "circle") {
    if (!j.contains("coords")) throw IoError(path + ": missing coords");
    const double e = j.value("exponent", 1.0);
    return Space::from_circle(std::move(ids),
                              to_vector<double>(j["coords"], "coords"),
                              std::move(masses), e);
  }
  throw IoError(path + ": unknown metric kind '" + metric + "'");
}

void save_space_json(const Space& s, const std::string& path) {
  nlohmann::ordered_json j;
  j["points"] = s.point_ids();
  switch (s.kind()) {
    case MetricKind::Matrix:
      j["metric"] = "matrix";
      j["matrix"] = s.matrix();
      break;
    case MetricKind::Abs1D:
      j["metric"] = "abs1d";
      j["coords"] = s.coords();
      break;
    case MetricKind::Circle:
      j["metric"] = "circle";
      j["coords"] = s.coords();
      j["exponent"] = s.circle_exponent();
      break;
  }
  j["masses"] = s.masses();
  write_file(path, j.dump(2) + "\n");
}

FieldFunction load_field_json(const std::string& path, int expected_n) {
  const nlohmann::json j = parse_file(path);
  auto values = to_vector<double>(j, "field file");
  if (static_cast<int>(values.size()) != expected_n)
    throw SizeMismatch("field length " + std::to_string(values.size()) +
                       " does not match the space (" +
                       std::to_string(expected_n) + " points)");
  return FieldFunction(std::move(values));
}

void save_field_json(const FieldFunction& f, const std::string& path) {
  write_file(path, nlohmann::ordered_json(f.values()).dump(2) + "\n");
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::string text;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text += ',';
    text += header[i];
  }
  text += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text += ',';
      text += format_g17(row[i]);
    }
    text += '\n';
  }
  write_file(path, text);
}

}  // namespace homax
