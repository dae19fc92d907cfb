#include "dichroma/io.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace dichroma {

namespace {

// Next line with content, comments stripped. Returns false at EOF.
bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

std::uint64_t parse_count(std::istringstream& fields, std::size_t lineno, const char* what) {
  long long value = -1;
  if (!(fields >> value) || value < 0) {
    throw InputError("line " + std::to_string(lineno) + ": expected non-negative " + what);
  }
  return static_cast<std::uint64_t>(value);
}

void expect_end(std::istringstream& fields, std::size_t lineno) {
  std::string extra;
  if (fields >> extra) {
    throw InputError("line " + std::to_string(lineno) + ": unexpected token '" + extra + "'");
  }
}

}  // namespace

Digraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_data_line(in, line, lineno)) throw InputError("edge list: missing header 'n m'");
  std::istringstream header(line);
  const auto n = parse_count(header, lineno, "vertex count");
  const auto m = parse_count(header, lineno, "arc count");
  expect_end(header, lineno);
  if (n > std::numeric_limits<Vertex>::max()) throw InputError("edge list: n too large");

  std::vector<Arc> arcs;
  arcs.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!next_data_line(in, line, lineno)) {
      throw InputError("edge list: expected " + std::to_string(m) + " arcs, found " +
                       std::to_string(i));
    }
    std::istringstream fields(line);
    const auto u = parse_count(fields, lineno, "tail");
    const auto v = parse_count(fields, lineno, "head");
    expect_end(fields, lineno);
    if (u >= n || v >= n) {
      throw InputError("line " + std::to_string(lineno) + ": vertex id out of range");
    }
    arcs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (next_data_line(in, line, lineno)) {
    throw InputError("line " + std::to_string(lineno) + ": more arcs than declared");
  }
  return Digraph(n, std::move(arcs));
}

void write_edge_list(std::ostream& out, const Digraph& d) {
  out << d.order() << ' ' << d.arc_count() << '\n';
  for (const auto& [u, v] : d.arcs()) out << u << ' ' << v << '\n';
}

Digraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_edge_list(in);
}

void save_edge_list(const std::filesystem::path& path, const Digraph& d) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_edge_list(out, d);
}

void write_dot(std::ostream& out, const Digraph& d) {
  out << "digraph D {\n";
  for (Vertex v = 0; v < d.order(); ++v) out << "  " << v << ";\n";
  for (const auto& [u, v] : d.arcs()) out << "  " << u << " -> " << v << ";\n";
  out << "}\n";
}

}  // namespace dichroma
