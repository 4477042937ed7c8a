#include "dlc/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "dlc/error.hpp"

namespace dlc {

Graph read_edge_list(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> edges;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a) || a.front() == '#') continue;
    if (!(fields >> b) || (fields >> extra)) {
      throw InputError("edge list line " + std::to_string(number) + ": expected two labels");
    }
    edges.emplace_back(std::move(a), std::move(b));
  }
  return from_edge_list(edges);
}

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [u, v] : g.edge_list()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

}  // namespace dlc
