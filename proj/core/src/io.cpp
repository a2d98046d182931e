#include "hypermetric/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hypermetric/error.hpp"

namespace hypermetric::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(std::string_view token, std::size_t row, std::size_t col) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || token.empty()) {
    throw Error(Errc::ParseError, {row, col}, "not a real number: '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return std::to_string(value);
  return std::string(buf, ptr);
}

FiniteMetricSpace parse_space_csv(std::string_view text, std::optional<double> tau) {
  std::vector<std::string_view> lines;
  for (auto line : split(text, '\n')) {
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw Error(Errc::ParseError, "empty CSV input");

  std::vector<std::string> labels;
  for (auto tok : split(lines.front(), ',')) labels.emplace_back(tok);
  const std::size_t n = labels.size();
  if (lines.size() != n + 1) {
    throw Error(Errc::ParseError, "expected " + std::to_string(n) + " matrix rows after the header, found " +
                                      std::to_string(lines.size() - 1));
  }
  DistanceMatrix matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto cells = split(lines[i + 1], ',');
    if (cells.size() != n) {
      throw Error(Errc::ParseError, {i}, "row has " + std::to_string(cells.size()) + " entries, expected " +
                                             std::to_string(n));
    }
    matrix[i].reserve(n);
    for (std::size_t j = 0; j < n; ++j) matrix[i].push_back(parse_real(cells[j], i, j));
  }
  return validate_metric(matrix, tau, std::move(labels));
}

std::string space_to_csv(const FiniteMetricSpace& space) {
  std::string out;
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i != 0) out += ',';
    out += space.label(i);
  }
  out += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != 0) out += ',';
      out += format_real(space(i, j));
    }
    out += '\n';
  }
  return out;
}

FiniteMetricSpace space_from_json(const nlohmann::json& doc, std::optional<double> tau) {
  try {
    DistanceMatrix matrix = doc.at("dist").get<DistanceMatrix>();
    std::vector<std::string> labels;
    if (doc.contains("labels")) labels = doc.at("labels").get<std::vector<std::string>>();
    return validate_metric(matrix, tau, std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

nlohmann::json space_to_json(const FiniteMetricSpace& space) {
  return {{"labels", space.labels()}, {"dist", space.matrix()}};
}

GraphInput graph_from_json(const nlohmann::json& doc) {
  try {
    GraphInput g;
    g.vertices = doc.at("n").get<std::size_t>();
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw Error(Errc::ParseError, "edge must be [i, j, w]");
      g.edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<double>()});
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

nlohmann::json graph_to_json(const GraphInput& graph) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : graph.edges) edges.push_back({e.u, e.v, e.weight});
  return {{"n", graph.vertices}, {"edges", edges}};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(Errc::IoError, "write failed for '" + path.string() + "'");
}

nlohmann::json read_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, path.string() + ": " + e.what());
  }
}

FiniteMetricSpace load_space(const std::filesystem::path& path, std::optional<double> tau) {
  if (path.extension() == ".json") return space_from_json(read_json(path), tau);
  return parse_space_csv(read_text(path), tau);
}

std::string dump_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace hypermetric::io
