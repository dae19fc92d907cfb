#pragma once

#include <filesystem>
#include <iosfwd>

#include "dichroma/digraph.hpp"

namespace dichroma {

/// Edge-list text format: a header line "n m" followed by m lines "u v"
/// (0-based arc tail and head). Everything after '#' on a line is ignored.
Digraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Digraph& d);

Digraph load_edge_list(const std::filesystem::path& path);
void save_edge_list(const std::filesystem::path& path, const Digraph& d);

/// Graphviz DOT rendering; write-only.
void write_dot(std::ostream& out, const Digraph& d);

}  // namespace dichroma
