#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlc/centrality.hpp"
#include "dlc/flow.hpp"
#include "json.hpp"

namespace dlc {

// A named centrality used as the importance score in experiments.
struct Measure {
  enum class Kind { dlc, ndlc, lc, nlc, pagerank, katz, closeness, betweenness };

  Kind kind = Kind::dlc;
  IndexSet selection = IndexSet::top(5);
  SolverPolicy policy = SolverPolicy::automatic;

  static Measure dlc(IndexSet selection) { return {Kind::dlc, std::move(selection)}; }
  static Measure ndlc(IndexSet selection) { return {Kind::ndlc, std::move(selection)}; }
  // "dlc-top-5", "ndlc-bottom-5", "pagerank", ...
  static Measure parse(const std::string& name);
  std::string name() const;

  ScoreTable evaluate(const Graph& g) const;
};

enum class AnomalyKind { star, clique };

struct OrderedPoint {
  std::size_t size = 0;          // star: root + leaves; clique: members
  std::size_t added_edges = 0;
  double root_percentile = 0.0;  // star only (NaN for cliques)
  double participant_score = 0.0;       // mean score of leaves (star) or members (clique)
  double participant_percentile = 0.0;  // percentile of that mean
  double member_percentile = 0.0;       // percentile of the mean over root and leaves
};

// Vertices ordered by ascending importance in g (ties by index). A star of
// size s uses the first vertex as root and the next s-1 as leaves; a clique
// uses the first s. One point per requested size.
std::vector<OrderedPoint> inject_ordered(const Graph& g, const Measure& measure, AnomalyKind kind,
                                         std::span<const std::size_t> sizes, std::size_t jobs = 1);

struct RandomStarRow {
  double percent = 0.0;
  std::size_t leaves = 0;
  std::size_t trials = 0;
  double score_before = 0.0;
  double score_after = 0.0;
  double percentile_before = 0.0;
  double percentile_after = 0.0;
  double raised_fraction = 0.0;  // trials whose percentile did not drop

  double score_change() const { return score_after - score_before; }
  double percentile_change() const { return percentile_after - percentile_before; }
};

struct TrialSummary {
  std::string measure;
  std::uint64_t seed = 0;
  std::vector<RandomStarRow> rows;
};

// Per trial: a uniform root v, then round(percent/100 * n) leaves drawn from
// the other vertices without replacement; v is joined to every leaf and its
// score and percentile are compared before and after.
TrialSummary inject_random_star(const Graph& g, const Measure& measure, std::span<const double> percents,
                                std::size_t trials, std::uint64_t seed, std::size_t jobs = 1);

// Rebuilds every step over the union of labels (first-seen order) so that
// vertex indices agree across steps.
TemporalGraphSequence on_common_vertices(const TemporalGraphSequence& seq);

struct CoreAnomaly {
  Vertex root = 0;
  std::vector<Vertex> leaves;
  std::vector<Vertex> always_giant;  // vertices in the giant component at every step
  std::vector<Vertex> candidates;    // after trimming the heaviest fifth
};

// Steps must share one vertex set. `weights` ranks the trim; when absent the
// mean observed degree is used.
CoreAnomaly select_core_anomaly(const TemporalGraphSequence& seq, std::size_t leaves, std::uint64_t seed,
                                const std::vector<double>* weights = nullptr);

// Vertices s != v with a percentile at t within `width` of v's and a nonzero
// score at t+1. NaN percentiles mark vertices without a score at t.
std::vector<Vertex> cohort(std::span<const double> percentile_t, std::span<const double> score_t1, Vertex v,
                           double width = 2.5);
std::vector<Vertex> cohort(const ScoreTable& scores_t, const ScoreTable& scores_t1, Vertex v, double width = 2.5);

enum class GapGroup { root, leaf, root_cohort, leaf_cohort };
const char* to_string(GapGroup group);

struct GapSample {
  std::size_t step = 0;  // the injected step t+1
  GapGroup group = GapGroup::root;
  Vertex vertex = 0;
  Vertex anchor = 0;            // anomaly vertex the sample belongs to
  double with_without = 0.0;    // pct(G_{t+1} + A) - pct(G_{t+1})
  double with_previous = 0.0;   // pct(G_{t+1} + A) - pct(G_t)
};

struct GapReport {
  std::string measure;
  std::vector<GapSample> samples;
  std::vector<double> grid;  // 201 points over [-100, 100]
  // Empirical CDFs on the grid, per group, for each gap type.
  std::vector<std::vector<double>> with_without_cdf;   // indexed by GapGroup
  std::vector<std::vector<double>> with_previous_cdf;
  double mean_root_cohort = 0.0;
  double mean_leaf_cohort = 0.0;

  std::vector<double> gaps(std::span<const GapGroup> groups, bool with_without) const;
};

// Scores every G_t and G_t + A on their giant components; anomaly vertices
// never enter cohorts.
std::vector<GapReport> temporal_experiment(const TemporalGraphSequence& seq, const CoreAnomaly& anomaly,
                                           std::span<const Measure> measures, double width = 2.5,
                                           std::size_t jobs = 1);

double median(std::vector<double> values);

nlohmann::json to_json(const TrialSummary& summary);
// `header` = false appends rows only, for tables that stack several measures.
void write_csv(std::ostream& out, const TrialSummary& summary, bool header = true);
void write_csv(std::ostream& out, const std::string& measure, const std::vector<OrderedPoint>& curve,
               bool header = true);
void write_samples_csv(std::ostream& out, const GapReport& report, const LabelTable& labels, bool header = true);
void write_cdf_csv(std::ostream& out, const GapReport& report, bool header = true);

}  // namespace dlc

namespace dlc {

// Chung-Lu stand-in for a sparse enterprise flow snapshot: power-law
// expected degrees, giant component only.
struct SurrogateSpec {
  std::size_t candidates = 10000;
  double exponent = 2.18;
  double mean_weight = 0.65;
  double max_weight = 900.0;
  std::uint64_t seed = 1;
};
Graph surrogate_graph(const SurrogateSpec& spec = {});

}  // namespace dlc
