#include "dlc/graph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "dlc/error.hpp"

namespace dlc {
namespace {

std::shared_ptr<const LabelTable> index_labels(std::size_t n) {
  auto labels = std::make_shared<LabelTable>();
  labels->reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels->push_back(std::to_string(i));
  return labels;
}

void check_vertex(const Graph& g, Vertex v) {
  if (v >= g.order()) {
    throw InputError("vertex " + std::to_string(v) + " out of range for graph of order " +
                     std::to_string(g.order()));
  }
}

}  // namespace

Graph::Graph() : labels_(std::make_shared<LabelTable>()) {}

Graph::Graph(std::size_t n) : labels_(index_labels(n)), adjacency_(n) {}

Graph::Graph(std::shared_ptr<const LabelTable> labels)
    : labels_(std::move(labels)), adjacency_(labels_->size()) {}

Graph::Graph(std::shared_ptr<const LabelTable> labels, std::vector<std::vector<Vertex>> adjacency)
    : labels_(std::move(labels)), adjacency_(std::move(adjacency)) {
  std::size_t twice = 0;
  for (const auto& nbrs : adjacency_) twice += nbrs.size();
  edges_ = twice / 2;
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
  return from_edges(index_labels(n), edges);
}

Graph Graph::from_edges(std::shared_ptr<const LabelTable> labels,
                        std::span<const std::pair<Vertex, Vertex>> edges) {
  const std::size_t n = labels->size();
  std::vector<std::vector<Vertex>> adjacency(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InputError("edge endpoint out of range for graph of order " + std::to_string(n));
    }
    if (u == v) continue;
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }
  for (auto& nbrs : adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return Graph(std::move(labels), std::move(adjacency));
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& nbrs : adjacency_) best = std::max(best, nbrs.size());
  return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= order() || v >= order()) return false;
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::optional<Vertex> Graph::find(const std::string& label) const {
  for (std::size_t i = 0; i < labels_->size(); ++i) {
    if ((*labels_)[i] == label) return static_cast<Vertex>(i);
  }
  return std::nullopt;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edge_list() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edges_);
  for (Vertex u = 0; u < order(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.adjacency_ == b.adjacency_ &&
         (a.labels_ == b.labels_ || *a.labels_ == *b.labels_);
}

Graph from_edge_list(std::span<const std::pair<std::string, std::string>> edges) {
  auto labels = std::make_shared<LabelTable>();
  std::unordered_map<std::string, Vertex> index;
  auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.try_emplace(label, static_cast<Vertex>(labels->size()));
    if (inserted) labels->push_back(label);
    return it->second;
  };
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    const Vertex u = intern(a);
    const Vertex v = intern(b);
    pairs.emplace_back(u, v);
  }
  return Graph::from_edges(std::move(labels), pairs);
}

ComponentPartition connected_components(const Graph& g) {
  constexpr auto unassigned = static_cast<std::size_t>(-1);
  ComponentPartition part;
  part.component_of.assign(g.order(), unassigned);
  std::vector<Vertex> stack;
  for (Vertex start = 0; start < g.order(); ++start) {
    if (part.component_of[start] != unassigned) continue;
    const std::size_t id = part.sizes.size();
    std::size_t size = 0;
    part.component_of[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      ++size;
      for (Vertex w : g.neighbors(v)) {
        if (part.component_of[w] == unassigned) {
          part.component_of[w] = id;
          stack.push_back(w);
        }
      }
    }
    part.sizes.push_back(size);
  }
  return part;
}

bool is_connected(const Graph& g) { return connected_components(g).count() <= 1; }

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  Subgraph sub;
  sub.new_to_old.assign(keep.begin(), keep.end());
  std::sort(sub.new_to_old.begin(), sub.new_to_old.end());
  if (std::adjacent_find(sub.new_to_old.begin(), sub.new_to_old.end()) != sub.new_to_old.end()) {
    throw InputError("induced_subgraph: duplicate vertex");
  }
  sub.old_to_new.assign(g.order(), std::nullopt);
  auto labels = std::make_shared<LabelTable>();
  labels->reserve(sub.new_to_old.size());
  for (std::size_t i = 0; i < sub.new_to_old.size(); ++i) {
    const Vertex old = sub.new_to_old[i];
    check_vertex(g, old);
    sub.old_to_new[old] = static_cast<Vertex>(i);
    labels->push_back(g.label(old));
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i < sub.new_to_old.size(); ++i) {
    for (Vertex w : g.neighbors(sub.new_to_old[i])) {
      if (auto j = sub.old_to_new[w]; j && i < *j) edges.emplace_back(static_cast<Vertex>(i), *j);
    }
  }
  sub.graph = Graph::from_edges(std::move(labels), edges);
  return sub;
}

Subgraph giant_component(const Graph& g) {
  if (g.empty()) throw InputError("empty graph");
  const auto part = connected_components(g);
  // max_element keeps the first maximum, i.e. the component with the smallest vertex
  const auto best = static_cast<std::size_t>(
      std::max_element(part.sizes.begin(), part.sizes.end()) - part.sizes.begin());
  std::vector<Vertex> keep;
  keep.reserve(part.sizes[best]);
  for (Vertex v = 0; v < g.order(); ++v) {
    if (part.component_of[v] == best) keep.push_back(v);
  }
  return induced_subgraph(g, keep);
}

Graph remove_vertex(const Graph& g, Vertex v) {
  check_vertex(g, v);
  std::vector<Vertex> keep;
  keep.reserve(g.order() - 1);
  for (Vertex u = 0; u < g.order(); ++u) {
    if (u != v) keep.push_back(u);
  }
  return induced_subgraph(g, keep).graph;
}

Graph add_edges(const Graph& g, std::span<const std::pair<Vertex, Vertex>> edges) {
  auto all = g.edge_list();
  all.insert(all.end(), edges.begin(), edges.end());
  return Graph::from_edges(g.shared_labels(), all);
}

Graph add_star(const Graph& g, Vertex root, std::span<const Vertex> leaves) {
  check_vertex(g, root);
  std::vector<std::pair<Vertex, Vertex>> extra;
  extra.reserve(leaves.size());
  for (Vertex leaf : leaves) {
    check_vertex(g, leaf);
    if (leaf == root) throw InputError("self-loop requested");
    extra.emplace_back(root, leaf);
  }
  return add_edges(g, extra);
}

Graph add_clique(const Graph& g, std::span<const Vertex> members) {
  if (members.size() < 2) throw InputError("degenerate clique");
  for (Vertex v : members) check_vertex(g, v);
  std::vector<std::pair<Vertex, Vertex>> extra;
  extra.reserve(members.size() * (members.size() - 1) / 2);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (members[i] == members[j]) throw InputError("degenerate clique: repeated vertex");
      extra.emplace_back(members[i], members[j]);
    }
  }
  return add_edges(g, extra);
}

}  // namespace dlc
