#pragma once

#include <filesystem>
#include <iosfwd>

#include "dlc/graph.hpp"

namespace dlc {

// One edge per line as two whitespace-separated labels; '#' lines and blank
// lines are skipped. Anything else is an InputError naming the line.
Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::filesystem::path& path);

// Edges as label pairs in edge_list() order. Isolated vertices are lost.
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace dlc
