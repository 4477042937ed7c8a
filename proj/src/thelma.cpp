#include "dlc/thelma.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

#include "dlc/error.hpp"
#include "dlc/random.hpp"

namespace dlc {
namespace {

enum Lane : std::uint64_t { first_step = 0, keep = 1, arrive = 2, naive_pairs = 3, chung_lu_lane = 4 };

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

// Adds every pair {i, j} (positions in the weight-descending order `by_weight`)
// independently with probability scale * min(1, density * w_i w_j), skipping
// runs of pairs geometrically. Each row draws from its own keyed stream.
void sample_pairs(const std::vector<double>& sorted_w, const std::vector<Vertex>& by_weight, double scale,
                  double density, std::uint64_t seed, std::uint64_t step, std::uint64_t lane, EdgeList& out) {
  const std::size_t n = sorted_w.size();
  if (scale <= 0.0) return;
  auto prob = [&](std::size_t i, std::size_t j) { return scale * std::min(1.0, density * sorted_w[i] * sorted_w[j]); };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Stream rng(seed, {step, lane, i});
    std::size_t j = i + 1;
    double p = prob(i, j);
    while (j < n && p > 0.0) {
      if (p < 1.0) {
        const double r = rng.uniform();
        const double jump = std::floor(std::log1p(-r) / std::log1p(-p));
        j = jump >= static_cast<double>(n) ? n : j + static_cast<std::size_t>(jump);
      }
      if (j >= n) break;
      const double q = prob(i, j);
      if (rng.uniform() < q / p) {
        const Vertex a = by_weight[i], b = by_weight[j];
        out.emplace_back(std::min(a, b), std::max(a, b));
      }
      p = q;
      ++j;
    }
  }
}

std::shared_ptr<const LabelTable> index_labels(std::size_t n) {
  auto labels = std::make_shared<LabelTable>();
  for (std::size_t i = 0; i < n; ++i) labels->push_back(std::to_string(i));
  return labels;
}

}  // namespace

double ThelmaParams::rho() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

void ThelmaParams::validate() const {
  if (weights.empty()) throw InputError("thelma: no vertices");
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw InputError("thelma: weights must be finite and non-negative");
  }
  if (!(rho() > 0.0)) throw InputError("thelma: weights sum to zero");
  if (tau.empty()) throw InputError("thelma: need at least one step");
  for (double t : tau) {
    if (!std::isfinite(t) || t <= 0.0) throw InputError("thelma: tau must be positive");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("thelma: alpha must lie in [0, 1]");
}

double edge_probability(const ThelmaParams& params, Vertex u, Vertex v, std::size_t t) {
  if (u == v) throw InputError("thelma: edge probability of a self pair");
  if (u >= params.order() || v >= params.order()) throw InputError("thelma: vertex out of range");
  if (t < 1 || t > params.steps()) throw InputError("thelma: step out of range");
  return std::min(1.0, params.tau[t - 1] * params.weights[u] * params.weights[v] / params.rho());
}

double marginal_edge_probability(const ThelmaParams& params, Vertex u, Vertex v, std::size_t t) {
  double p = edge_probability(params, u, v, 1);
  for (std::size_t s = 2; s <= t; ++s) {
    p = (1.0 - params.alpha) * p + params.alpha * edge_probability(params, u, v, s);
  }
  return p;
}

TemporalGraphSequence generate(const ThelmaParams& params, std::uint64_t seed, GenerationMode mode) {
  params.validate();
  const std::size_t n = params.order();
  const double rho = params.rho();
  const double alpha = params.alpha;
  const auto labels = index_labels(n);

  std::vector<Vertex> by_weight(n);
  std::iota(by_weight.begin(), by_weight.end(), Vertex{0});
  std::stable_sort(by_weight.begin(), by_weight.end(),
                   [&](Vertex a, Vertex b) { return params.weights[a] > params.weights[b]; });
  std::vector<double> sorted_w(n);
  for (std::size_t i = 0; i < n; ++i) sorted_w[i] = params.weights[by_weight[i]];

  TemporalGraphSequence seq;
  seq.steps.reserve(params.steps());
  Graph previous;
  for (std::size_t t = 1; t <= params.steps(); ++t) {
    const double density = params.tau[t - 1] / rho;
    auto p = [&](Vertex u, Vertex v) { return std::min(1.0, density * params.weights[u] * params.weights[v]); };
    EdgeList edges;
    if (mode == GenerationMode::naive) {
      for (Vertex u = 0; u < n; ++u) {
        Stream rng(seed, {t, naive_pairs, u});
        for (Vertex v = u + 1; v < n; ++v) {
          const double r = rng.uniform();
          double chance = p(u, v);
          if (t > 1) chance = previous.has_edge(u, v) ? 1.0 - alpha + alpha * chance : alpha * chance;
          if (r < chance) edges.emplace_back(u, v);
        }
      }
    } else if (t == 1) {
      sample_pairs(sorted_w, by_weight, 1.0, density, seed, t, first_step, edges);
    } else {
      for (Vertex u = 0; u < n; ++u) {
        Stream rng(seed, {t, keep, u});
        for (Vertex v : previous.neighbors(u)) {
          if (v > u && rng.uniform() < 1.0 - alpha + alpha * p(u, v)) edges.emplace_back(u, v);
        }
      }
      EdgeList arrivals;
      sample_pairs(sorted_w, by_weight, alpha, density, seed, t, arrive, arrivals);
      for (auto [u, v] : arrivals) {
        if (!previous.has_edge(u, v)) edges.emplace_back(u, v);
      }
    }
    Graph g = Graph::from_edges(labels, edges);
    seq.steps.push_back({static_cast<std::int64_t>(t), g});
    previous = std::move(g);
  }
  return seq;
}

WeightEstimate estimate_params(const TemporalGraphSequence& snapshots) {
  if (snapshots.empty()) throw InputError("estimate_params: empty sequence");
  auto labels = std::make_shared<LabelTable>();
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::uint64_t> total;
  for (const auto& step : snapshots.steps) {
    const Graph& g = step.graph;
    for (Vertex v = 0; v < g.order(); ++v) {
      auto [it, inserted] = index.try_emplace(g.label(v), labels->size());
      if (inserted) {
        labels->push_back(g.label(v));
        total.push_back(0);
      }
      total[it->second] += g.degree(v);
    }
  }
  const std::uint64_t steps = snapshots.size();
  WeightEstimate out{labels, std::vector<double>(total.size())};
  for (std::size_t i = 0; i < total.size(); ++i) {
    out.weights[i] = static_cast<double>((total[i] + steps - 1) / steps);
  }
  return out;
}

std::vector<double> circadian_tau(std::size_t steps, double cycles) {
  if (steps < 2) throw InputError("circadian_tau: need at least two steps");
  std::vector<double> tau(steps);
  const double span = cycles * 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < steps; ++i) {
    const double x = span * static_cast<double>(i) / static_cast<double>(steps - 1);
    tau[i] = (3.0 - std::cos(x)) / 2.0;
  }
  return tau;
}

std::vector<double> power_law_weights(std::size_t n, double exponent, double mean_weight, double max_weight) {
  if (n < 2 || exponent <= 1.0) throw InputError("power_law_weights: need n >= 2 and exponent > 1");
  if (!(mean_weight > max_weight / static_cast<double>(n) && mean_weight < max_weight)) {
    throw InputError("power_law_weights: mean must lie between max/n and max");
  }
  const double beta = 1.0 / (exponent - 1.0);
  auto mean_for = [&](double offset) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::pow((static_cast<double>(i) + offset) / offset, -beta);
    return max_weight * sum / static_cast<double>(n);
  };
  double lo = std::log(1e-9), hi = std::log(1e12);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mean_for(std::exp(mid)) < mean_weight ? lo : hi) = mid;
  }
  const double offset = std::exp(0.5 * (lo + hi));
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = max_weight * std::pow((static_cast<double>(i) + offset) / offset, -beta);
  return w;
}

Graph chung_lu(const std::vector<double>& weights, std::uint64_t seed) {
  ThelmaParams params{weights, {1.0}, 1.0};
  return generate(params, seed).steps.front().graph;
}

void write_sequence(const std::filesystem::path& dir, const TemporalGraphSequence& seq,
                    const nlohmann::json& manifest) {
  std::filesystem::create_directories(dir);
  nlohmann::json m = manifest;
  m["order"] = seq.empty() ? 0 : seq.steps.front().graph.order();
  m["steps"] = seq.size();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Graph& g = seq.steps[i].graph;
    std::ofstream out(dir / fmt::format("step_{:04d}.edges", i + 1));
    if (!out) throw InputError("cannot write into " + dir.string());
    for (auto [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
  }
  std::ofstream out(dir / "manifest.json");
  out << m.dump(2) << '\n';
}

TemporalGraphSequence read_sequence(const std::filesystem::path& dir, nlohmann::json* manifest) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw InputError("no manifest.json in " + dir.string());
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("manifest.json: " + std::string(e.what()));
  }
  const auto n = m.at("order").get<std::size_t>();
  const auto steps = m.at("steps").get<std::size_t>();
  const auto labels = index_labels(n);
  TemporalGraphSequence seq;
  for (std::size_t i = 0; i < steps; ++i) {
    const auto path = dir / fmt::format("step_{:04d}.edges", i + 1);
    std::ifstream file(path);
    if (!file) throw InputError("missing " + path.string());
    EdgeList edges;
    Vertex u = 0, v = 0;
    while (file >> u >> v) edges.emplace_back(u, v);
    if (!file.eof()) throw InputError("malformed " + path.string());
    seq.steps.push_back({static_cast<std::int64_t>(i + 1), Graph::from_edges(labels, edges)});
  }
  if (manifest) *manifest = std::move(m);
  return seq;
}

nlohmann::json to_json(const ThelmaParams& params) {
  return {{"weights", params.weights}, {"tau", params.tau}, {"alpha", params.alpha}};
}

ThelmaParams thelma_params_from_json(const nlohmann::json& j) {
  ThelmaParams p;
  try {
    p.weights = j.at("weights").get<std::vector<double>>();
    p.tau = j.at("tau").get<std::vector<double>>();
    p.alpha = j.at("alpha").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("thelma parameters: ") + e.what());
  }
  p.validate();
  return p;
}

}  // namespace dlc
