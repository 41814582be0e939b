#pragma once

#include <filesystem>
#include <iosfwd>

#include "rgr/graph.hpp"

namespace rgr {

// Text format: first data line "n m", then m lines "u v" (0-based). Blank
// lines and '#' comments are ignored. Throws FormatError on bad input.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

Graph load_graph(const std::filesystem::path& path);
void save_graph(const std::filesystem::path& path, const Graph& g);

}  // namespace rgr
