#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "dlc/graph.hpp"
#include "json.hpp"

namespace dlc {

// Scores within this distance of each other count as ties: 1e-10 * max|s|.
double tie_tolerance(std::span<const double> scores);

// 100 * (#lower + (#tied + 1) / 2) / n, ties excluding the vertex itself.
std::vector<double> percentiles(std::span<const double> scores);
// Average ranks with 1 = highest score.
std::vector<double> midranks(std::span<const double> scores);

// Per-vertex scores with derived percentiles and ranks.
class ScoreTable {
 public:
  ScoreTable() = default;
  ScoreTable(std::vector<double> scores, std::shared_ptr<const LabelTable> labels);

  std::size_t size() const { return scores_.size(); }
  double score(Vertex v) const { return scores_[v]; }
  double percentile(Vertex v) const { return percentiles_[v]; }
  double rank(Vertex v) const { return ranks_[v]; }
  const std::vector<double>& scores() const { return scores_; }
  const std::vector<double>& percentiles() const { return percentiles_; }
  const std::vector<double>& ranks() const { return ranks_; }
  const LabelTable& labels() const { return *labels_; }
  const std::string& label(Vertex v) const { return (*labels_)[v]; }
  const std::shared_ptr<const LabelTable>& shared_labels() const { return labels_; }

  // Percentile an outside value would get against this table:
  // 100 * (#{s < value} + #{s tied with value} / 2) / n. Agrees with
  // percentile(v) when value == score(v).
  double percentile_of(double value) const;

  // Vertices by ascending score, equal scores by index.
  std::vector<Vertex> ascending() const;
  // Vertices by descending score, equal scores by index.
  std::vector<Vertex> descending() const;

 private:
  std::vector<double> scores_;
  std::vector<double> percentiles_;
  std::vector<double> ranks_;
  std::shared_ptr<const LabelTable> labels_ = std::make_shared<LabelTable>();
  double tolerance_ = 0.0;
};

// Pearson correlation of midranks. Both tables must cover the same labels
// in the same order. Throws NumericError when either ranking is constant.
double spearman_rho(const ScoreTable& a, const ScoreTable& b);

// label,score,percentile,rank
void write_csv(std::ostream& out, const ScoreTable& table);
nlohmann::json to_json(const ScoreTable& table);

}  // namespace dlc
