#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "dlc/flow.hpp"
#include "json.hpp"

namespace dlc {

struct ThelmaParams {
  std::vector<double> weights;  // expected-degree scale per vertex
  std::vector<double> tau;      // density multiplier per step (step t uses tau[t-1])
  double alpha = 0.05;          // masking probability

  std::size_t order() const { return weights.size(); }
  std::size_t steps() const { return tau.size(); }
  double rho() const;
  // Throws InputError unless weights are finite and non-negative with a
  // positive sum, tau is nonempty and positive, and alpha lies in [0, 1].
  void validate() const;
};

// min(1, tau_t w_u w_v / rho) for 1-based step t.
double edge_probability(const ThelmaParams& params, Vertex u, Vertex v, std::size_t t);
// Probability that {u,v} is present at step t, from the recursion
// P_1 = p_1, P_t = (1 - alpha) P_{t-1} + alpha p_t.
double marginal_edge_probability(const ThelmaParams& params, Vertex u, Vertex v, std::size_t t);

enum class GenerationMode {
  fast,   // weight-sorted geometric skipping over candidate pairs
  naive,  // one draw per pair per step
};

// Steps 1..T, snapshot start = step number. Every snapshot has all n
// vertices (labelled "0".."n-1") and shares one label table. Streams are
// keyed by (seed, step, row), so the result depends only on the seed.
TemporalGraphSequence generate(const ThelmaParams& params, std::uint64_t seed,
                               GenerationMode mode = GenerationMode::fast);

// ceil of the mean degree over snapshots, absent vertices counting as 0.
struct WeightEstimate {
  std::shared_ptr<const LabelTable> labels;  // union of labels, first-seen order
  std::vector<double> weights;
};
WeightEstimate estimate_params(const TemporalGraphSequence& snapshots);

// (3 - cos x) / 2 at T equally spaced x over [0, cycles * 2 pi].
std::vector<double> circadian_tau(std::size_t steps, double cycles);

// w_i = c (i + i0)^(-1/(exponent-1)), i = 0..n-1, with c and i0 chosen so the
// largest weight is `max_weight` and the mean is `mean_weight`.
std::vector<double> power_law_weights(std::size_t n, double exponent, double mean_weight, double max_weight);

// One clamped Chung-Lu sample (a single step with tau = 1).
Graph chung_lu(const std::vector<double>& weights, std::uint64_t seed);

// Directory layout: manifest.json plus step_0001.edges, ... (index pairs).
void write_sequence(const std::filesystem::path& dir, const TemporalGraphSequence& seq,
                    const nlohmann::json& manifest);
TemporalGraphSequence read_sequence(const std::filesystem::path& dir, nlohmann::json* manifest = nullptr);

nlohmann::json to_json(const ThelmaParams& params);
ThelmaParams thelma_params_from_json(const nlohmann::json& j);

}  // namespace dlc
