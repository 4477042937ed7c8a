#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dlc {

using Vertex = std::uint32_t;
using LabelTable = std::vector<std::string>;

// Simple undirected graph on vertices 0..n-1. Adjacency lists are sorted and
// free of self-loops and duplicates; every vertex carries an opaque label.
// Values are immutable once built, so they can be shared between threads.
class Graph {
 public:
  Graph();
  // Edgeless graph on n vertices labelled "0".."n-1".
  explicit Graph(std::size_t n);
  // Edgeless graph over the given labels.
  explicit Graph(std::shared_ptr<const LabelTable> labels);

  // Builds from index pairs. Self-pairs and duplicates are dropped; indices
  // must be below n. Labels default to the decimal index.
  static Graph from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);
  static Graph from_edges(std::shared_ptr<const LabelTable> labels,
                          std::span<const std::pair<Vertex, Vertex>> edges);

  std::size_t order() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_; }
  bool empty() const { return adjacency_.empty(); }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  std::size_t max_degree() const;
  bool has_edge(Vertex u, Vertex v) const;

  const std::string& label(Vertex v) const { return (*labels_)[v]; }
  const LabelTable& labels() const { return *labels_; }
  const std::shared_ptr<const LabelTable>& shared_labels() const { return labels_; }
  // Linear scan; callers needing many lookups should build their own index.
  std::optional<Vertex> find(const std::string& label) const;

  // Each undirected edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edge_list() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  Graph(std::shared_ptr<const LabelTable> labels, std::vector<std::vector<Vertex>> adjacency);

  std::shared_ptr<const LabelTable> labels_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edges_ = 0;
};

// Interns labels in first-seen order; self-pairs and repeated pairs collapse.
Graph from_edge_list(std::span<const std::pair<std::string, std::string>> edges);

struct ComponentPartition {
  std::vector<std::size_t> component_of;  // vertex -> component id
  std::vector<std::size_t> sizes;         // component id -> vertex count

  std::size_t count() const { return sizes.size(); }
};

// Components are numbered in order of their smallest vertex.
ComponentPartition connected_components(const Graph& g);
bool is_connected(const Graph& g);

struct Subgraph {
  Graph graph;
  std::vector<std::optional<Vertex>> old_to_new;
  std::vector<Vertex> new_to_old;
};

// Induced subgraph on `keep` (any order, no duplicates); vertices are
// renumbered in ascending original index and keep their labels.
Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

// Largest component; ties go to the component holding the smallest vertex.
Subgraph giant_component(const Graph& g);

// Copy of g without vertex v (and its edges).
Graph remove_vertex(const Graph& g, Vertex v);

// Copy of g with root joined to every leaf it is not already adjacent to.
Graph add_star(const Graph& g, Vertex root, std::span<const Vertex> leaves);

// Copy of g with every pair inside members joined.
Graph add_clique(const Graph& g, std::span<const Vertex> members);

// Copy of g with the given extra edges (self-pairs and existing edges skipped).
Graph add_edges(const Graph& g, std::span<const std::pair<Vertex, Vertex>> edges);

}  // namespace dlc
