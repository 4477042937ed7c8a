#include "dlc/centrality.hpp"

#include <cmath>
#include <map>

#include "dlc/error.hpp"

namespace dlc {

IndexSet IndexSet::ranks(std::vector<std::size_t> ranks) {
  if (ranks.empty()) throw InputError("index set is empty");
  IndexSet s;
  s.kind_ = Kind::ranks;
  s.ranks_ = std::move(ranks);
  std::sort(s.ranks_.begin(), s.ranks_.end());
  s.ranks_.erase(std::unique(s.ranks_.begin(), s.ranks_.end()), s.ranks_.end());
  s.k_ = s.ranks_.size();
  return s;
}

IndexSet IndexSet::bottom(std::size_t k) {
  if (k == 0) throw InputError("k must be positive");
  IndexSet s;
  s.kind_ = Kind::bottom;
  s.k_ = k;
  return s;
}

IndexSet IndexSet::top(std::size_t k) {
  if (k == 0) throw InputError("k must be positive");
  IndexSet s;
  s.kind_ = Kind::top;
  s.k_ = k;
  return s;
}

IndexSet IndexSet::nontrivial() {
  IndexSet s;
  s.kind_ = Kind::nontrivial;
  s.k_ = 0;
  return s;
}

std::vector<std::size_t> IndexSet::resolve(std::size_t n, std::size_t t) const {
  std::vector<std::size_t> out;
  switch (kind_) {
    case Kind::ranks:
      for (std::size_t r : ranks_) {
        if (r < 1 || r > n) {
          throw InputError("eigen index " + std::to_string(r) + " outside 1.." + std::to_string(n));
        }
        out.push_back(r - 1);
      }
      break;
    case Kind::bottom:
    case Kind::top:
      if (k_ > n - t) throw InputError("index set exceeds nontrivial spectrum");
      for (std::size_t i = 0; i < k_; ++i) out.push_back(kind_ == Kind::bottom ? t + i : n - k_ + i);
      break;
    case Kind::nontrivial:
      if (n == t) throw InputError("index set exceeds nontrivial spectrum");
      for (std::size_t p = t; p < n; ++p) out.push_back(p);
      break;
  }
  return out;
}

std::string IndexSet::describe() const {
  switch (kind_) {
    case Kind::bottom: return "bottom-" + std::to_string(k_);
    case Kind::top: return "top-" + std::to_string(k_);
    case Kind::nontrivial: return "nontrivial";
    case Kind::ranks: break;
  }
  std::string out = "ranks:";
  for (std::size_t i = 0; i < ranks_.size(); ++i) out += (i ? "," : "") + std::to_string(ranks_[i]);
  return out;
}

Eigen::VectorXd dlc_vertex_derivatives(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& v) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.order()));
  for (Vertex u = 0; u < g.order(); ++u) {
    double sum = 0.0;
    for (Vertex w : g.neighbors(u)) {
      const double diff = v(u) - v(w);
      sum += diff * diff;
    }
    out(u) = sum;
  }
  return out;
}

Eigen::VectorXd ndlc_vertex_derivatives(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& v,
                                        double lambda) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::VectorXd scaled(n);
  for (Vertex u = 0; u < g.order(); ++u) {
    if (g.degree(u) == 0) throw InputError("isolated vertex in nDLC");
    scaled(u) = v(u) / std::sqrt(static_cast<double>(g.degree(u)));
  }
  Eigen::VectorXd out(n);
  for (Vertex u = 0; u < g.order(); ++u) {
    double spread = 0.0;
    double coupling = 0.0;
    for (Vertex w : g.neighbors(u)) {
      const double diff = scaled(u) - scaled(w);
      spread += diff * diff;
      coupling += 2.0 * scaled(u) * scaled(w);
    }
    out(u) = (1.0 - lambda) * spread - lambda * coupling;
  }
  return out;
}

double dlc_eigvec_derivative(const EigenSystem& es, const Graph& g, std::size_t position, Vertex x) {
  if (x >= g.order()) throw InputError("vertex out of range");
  const auto v = es.vector(position);
  double sum = 0.0;
  for (Vertex y : g.neighbors(x)) {
    const double diff = v(x) - v(y);
    sum += diff * diff;
  }
  return sum;
}

double ndlc_eigvec_derivative(const EigenSystem& es, const Graph& g, std::size_t position, Vertex x) {
  if (x >= g.order()) throw InputError("vertex out of range");
  if (g.degree(x) == 0) throw InputError("isolated vertex in nDLC");
  const auto v = es.vector(position);
  const double lambda = es.value(position);
  const double sx = v(x) / std::sqrt(static_cast<double>(g.degree(x)));
  double spread = 0.0;
  double coupling = 0.0;
  for (Vertex y : g.neighbors(x)) {
    const double sy = v(y) / std::sqrt(static_cast<double>(g.degree(y)));
    spread += (sx - sy) * (sx - sy);
    coupling += 2.0 * sx * sy;
  }
  return (1.0 - lambda) * spread - lambda * coupling;
}

double eigenspace_derivative(const EigenSystem& es, const Graph& g, const Eigenspace& space,
                             Vertex x, LaplacianKind kind) {
  if (space.dim == 0) throw InputError("empty eigenspace");
  double sum = 0.0;
  for (std::size_t p = space.first; p <= space.last(); ++p) {
    sum += kind == LaplacianKind::combinatorial ? dlc_eigvec_derivative(es, g, p, x)
                                                : ndlc_eigvec_derivative(es, g, p, x);
  }
  return sum / static_cast<double>(space.dim);
}

Eigen::VectorXd directional_scores(const Graph& g, const EigenSystem& es, LaplacianKind kind,
                                   std::span<const std::size_t> positions) {
  if (es.order() != g.order()) throw InputError("eigensystem does not match graph order");
  // eigenspace (by first position) -> number of selected positions inside it
  std::map<std::size_t, std::size_t> weight;
  for (std::size_t p : positions) {
    const Eigenspace& space = es.space_of(p);
    if (!space.complete) {
      throw NumericError("eigenspace at position " + std::to_string(p) + " is only partly computed");
    }
    ++weight[space.first];
  }
  Eigen::VectorXd scores = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.order()));
  for (auto [first, count] : weight) {
    const Eigenspace& space = es.space_of(first);
    if (first < es.null_dim()) continue;  // null vectors have zero derivative everywhere
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(scores.size());
    for (std::size_t p = space.first; p <= space.last(); ++p) {
      mean += kind == LaplacianKind::combinatorial ? dlc_vertex_derivatives(g, es.vector(p))
                                                   : ndlc_vertex_derivatives(g, es.vector(p), es.value(p));
    }
    scores += (static_cast<double>(count) / static_cast<double>(space.dim)) * mean;
  }
  return scores;
}

ScoreTable directional_centrality(const Graph& g, LaplacianKind kind, const IndexSet& sel,
                                  SolverPolicy policy) {
  if (g.empty()) throw InputError("empty graph");
  if (!is_connected(g)) {
    throw InputError("graph is disconnected; restrict it to its giant component first");
  }
  const std::size_t n = g.order();
  const auto positions = sel.resolve(n, 1);

  const bool extremal = sel.kind() == IndexSet::Kind::top || sel.kind() == IndexSet::Kind::bottom;
  if (policy == SolverPolicy::sparse && !extremal) {
    throw InputError("sparse solver only supports top or bottom index sets");
  }
  EigenSystem es;
  if (extremal && policy != SolverPolicy::dense) {
    es = extremal_eigensystem(g, kind, sel.kind() == IndexSet::Kind::top ? SpectrumEnd::top : SpectrumEnd::bottom,
                              sel.k());
  } else {
    es = laplacian_eigensystem(g, kind);
  }
  const Eigen::VectorXd scores = directional_scores(g, es, kind, positions);
  return ScoreTable(std::vector<double>(scores.data(), scores.data() + scores.size()), g.shared_labels());
}

ScoreTable s_dlc(const Graph& g, const IndexSet& sel, SolverPolicy policy) {
  return directional_centrality(g, LaplacianKind::combinatorial, sel, policy);
}

ScoreTable s_ndlc(const Graph& g, const IndexSet& sel, SolverPolicy policy) {
  return directional_centrality(g, LaplacianKind::normalized, sel, policy);
}

}  // namespace dlc
