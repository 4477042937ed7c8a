#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <numeric>

#include "dlc/error.hpp"
#include "dlc/thelma.hpp"
#include "oracles.hpp"

using namespace dlc;
using doctest::Approx;

namespace {

ThelmaParams uniform(std::size_t n, std::size_t steps, double alpha, double w = 1.0) {
  return ThelmaParams{std::vector<double>(n, w), std::vector<double>(steps, 1.0), alpha};
}

// Presence counts per (step, pair) over `trials` sequences.
std::vector<std::vector<double>> frequencies(const ThelmaParams& p, std::size_t trials, GenerationMode mode) {
  const std::size_t n = p.order();
  std::vector<std::vector<double>> freq(p.steps(), std::vector<double>(n * n, 0.0));
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto seq = generate(p, 1000 + trial, mode);
    for (std::size_t t = 0; t < p.steps(); ++t) {
      for (auto [u, v] : seq.steps[t].graph.edge_list()) freq[t][u * n + v] += 1.0;
    }
  }
  for (auto& row : freq)
    for (double& f : row) f /= static_cast<double>(trials);
  return freq;
}

}  // namespace

TEST_CASE("edge probabilities") {
  ThelmaParams p{{1, 1, 8}, {1.0, 3.0}, 0.5};
  CHECK(p.rho() == 10.0);
  CHECK(edge_probability(p, 0, 1, 1) == Approx(0.1));
  CHECK(edge_probability(p, 1, 2, 2) == 1.0);
  ThelmaParams z{{0, 1, 1}, {1.0}, 0.5};
  CHECK(edge_probability(z, 0, 1, 1) == 0.0);
  CHECK_THROWS_AS(edge_probability(p, 1, 1, 1), InputError);
  CHECK_THROWS_AS(edge_probability(p, 0, 1, 3), InputError);
}

TEST_CASE("marginal probabilities") {
  ThelmaParams p{{1, 2, 3, 4}, {1.0, 1.5, 2.0, 0.5}, 0.0};
  for (std::size_t t = 1; t <= 4; ++t) CHECK(marginal_edge_probability(p, 0, 3, t) == Approx(edge_probability(p, 0, 3, 1)));
  p.alpha = 1.0;
  for (std::size_t t = 1; t <= 4; ++t) CHECK(marginal_edge_probability(p, 0, 3, t) == Approx(edge_probability(p, 0, 3, t)));
  p.alpha = 0.3;
  CHECK(marginal_edge_probability(p, 1, 2, 1) == Approx(edge_probability(p, 1, 2, 1)));
  // closed form sum against the recursion
  const double p1 = edge_probability(p, 1, 2, 1);
  const std::size_t t = 4;
  double closed = std::pow(1 - p.alpha, static_cast<double>(t - 1)) * p1;
  for (std::size_t i = 2; i <= t; ++i) {
    closed += p.alpha * std::pow(1 - p.alpha, static_cast<double>(t - i)) * edge_probability(p, 1, 2, i);
  }
  CHECK(marginal_edge_probability(p, 1, 2, t) == Approx(closed));
}

TEST_CASE("generation is deterministic and honours alpha extremes") {
  const auto p = uniform(3, 5, 0.5);
  for (auto mode : {GenerationMode::fast, GenerationMode::naive}) {
    const auto a = generate(p, 42, mode);
    const auto b = generate(p, 42, mode);
    for (std::size_t t = 0; t < 5; ++t) CHECK(a.steps[t].graph == b.steps[t].graph);
  }
  const auto still = uniform(60, 8, 0.0, 3.0);
  for (auto mode : {GenerationMode::fast, GenerationMode::naive}) {
    const auto seq = generate(still, 7, mode);
    CHECK(seq.steps[0].graph.edge_count() > 0);
    for (std::size_t t = 1; t < seq.size(); ++t) CHECK(seq.steps[t].graph == seq.steps[0].graph);
    CHECK(seq.steps[0].graph.shared_labels() == seq.steps[3].graph.shared_labels());
  }
}

TEST_CASE("monte carlo marginals match the recursion") {
  for (auto mode : {GenerationMode::fast, GenerationMode::naive}) {
    for (double alpha : {0.0, 0.25, 1.0}) {
      ThelmaParams p{{1, 2, 3, 4, 5, 1, 2, 3}, {1.0, 2.0, 0.5, 1.5, 3.0}, alpha};
      const std::size_t trials = 3000;
      const auto freq = frequencies(p, trials, mode);
      std::size_t outside = 0, total = 0;
      for (std::size_t t = 1; t <= p.steps(); ++t) {
        for (Vertex u = 0; u < p.order(); ++u) {
          for (Vertex v = u + 1; v < p.order(); ++v) {
            const double m = marginal_edge_probability(p, u, v, t);
            const double se = std::sqrt(m * (1 - m) / trials);
            const double f = freq[t - 1][u * p.order() + v];
            ++total;
            if (se == 0.0 ? f != m : std::abs(f - m) > 4 * se) ++outside;
          }
        }
      }
      CHECK(outside == 0);
      CHECK(total == 140);
    }
  }
}

TEST_CASE("consecutive steps are uncorrelated at alpha one") {
  const auto p = uniform(30, 2, 1.0, 6.0);  // every pair at 0.2
  double both = 0, first = 0, second = 0, count = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto seq = generate(p, seed);
    for (Vertex u = 0; u < 30; ++u)
      for (Vertex v = u + 1; v < 30; ++v) {
        const double a = seq.steps[0].graph.has_edge(u, v), b = seq.steps[1].graph.has_edge(u, v);
        both += a * b;
        first += a;
        second += b;
        count += 1;
      }
  }
  const double cov = both / count - (first / count) * (second / count);
  const double corr = cov / (0.2 * 0.8);
  CHECK(std::abs(corr) < 4.0 / std::sqrt(count));
}

TEST_CASE("mean degree follows tau times weight") {
  ThelmaParams p{std::vector<double>(40, 2.0), {1.0, 2.0}, 1.0};
  p.weights[0] = 4.0;
  double total = 0;
  const int trials = 2000;
  for (int s = 0; s < trials; ++s) total += static_cast<double>(generate(p, s).steps[1].graph.degree(0));
  // expected degree excludes the self pair: sum_{v != 0} tau w_0 w_v / rho
  const double expected = 2.0 * 4.0 * (p.rho() - 4.0) / p.rho();
  const double var = 39 * (2.0 * 4 * 2 / p.rho()) * (1 - 2.0 * 4 * 2 / p.rho());
  CHECK(std::abs(total / trials - expected) < 4 * std::sqrt(var / trials));
}

TEST_CASE("parameter estimation and tau") {
  TemporalGraphSequence seq;
  const auto p3 = oracle::path(3);   // degrees 1,2,1
  const auto k3 = oracle::complete(3);  // degrees 2,2,2
  seq.steps.push_back({0, p3});
  seq.steps.push_back({1, k3});
  seq.steps.push_back({2, Graph::from_edges(4, std::vector<std::pair<Vertex, Vertex>>{{0, 1}})});
  const auto est = estimate_params(seq);
  REQUIRE(est.weights.size() == 4);
  CHECK(est.weights[0] == 2.0);  // (1+2+1)/3 -> ceil(1.33)
  CHECK(est.weights[1] == 2.0);  // (2+2+1)/3
  CHECK(est.weights[3] == 0.0);
  TemporalGraphSequence half;
  half.steps.push_back({0, Graph(2)});
  half.steps.push_back({1, oracle::complete(2)});
  CHECK(estimate_params(half).weights[0] == 1.0);
  CHECK_THROWS_AS(estimate_params(TemporalGraphSequence{}), InputError);

  const auto tau = circadian_tau(500, 2);
  CHECK(tau.front() == Approx(1.0));
  CHECK(*std::min_element(tau.begin(), tau.end()) == Approx(1.0));
  CHECK(*std::max_element(tau.begin(), tau.end()) == Approx(2.0).epsilon(1e-4));
  const auto two = circadian_tau(2, 1);
  CHECK(two[0] == Approx(1.0));
  CHECK(two[1] == Approx(1.0));
  CHECK_THROWS_AS(circadian_tau(1, 1), InputError);
}

TEST_CASE("power law weights hit their targets") {
  const auto w = power_law_weights(3987, 2.18, 1.74, 617);
  CHECK(w.front() == Approx(617));
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) / w.size() == Approx(1.74).epsilon(1e-6));
  CHECK(std::is_sorted(w.rbegin(), w.rend()));
  CHECK_THROWS_AS(power_law_weights(10, 2.18, 100, 50), InputError);
}

TEST_CASE("sequence directories round trip") {
  const auto seq = generate(uniform(12, 3, 0.3, 3.0), 9);
  const auto dir = std::filesystem::temp_directory_path() / "dlc_seq_roundtrip";
  std::filesystem::remove_all(dir);
  write_sequence(dir, seq, {{"seed", 9}});
  nlohmann::json manifest;
  const auto back = read_sequence(dir, &manifest);
  CHECK(manifest["seed"] == 9);
  CHECK(manifest["order"] == 12);
  REQUIRE(back.size() == 3);
  for (std::size_t t = 0; t < 3; ++t) CHECK(back.steps[t].graph == seq.steps[t].graph);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(read_sequence(dir), InputError);

  const auto j = to_json(ThelmaParams{{1, 2}, {1}, 0.5});
  CHECK(thelma_params_from_json(j).alpha == 0.5);
  CHECK_THROWS_AS(thelma_params_from_json(nlohmann::json{{"weights", {1}}}), InputError);
}
