#include "dlc/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "dlc/error.hpp"

namespace dlc {
namespace {

struct TieGroup {
  std::size_t start;  // position in ascending order
  std::size_t size;
};

std::vector<std::size_t> ascending_order(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  return order;
}

// Tie group of each vertex; groups chain from their smallest member.
std::vector<TieGroup> tie_groups(std::span<const double> scores) {
  const auto order = ascending_order(scores);
  const double tol = tie_tolerance(scores);
  std::vector<TieGroup> group(scores.size());
  std::size_t start = 0;
  for (std::size_t i = 1; i <= order.size(); ++i) {
    if (i < order.size() && scores[order[i]] - scores[order[start]] <= tol) continue;
    for (std::size_t j = start; j < i; ++j) group[order[j]] = {start, i - start};
    start = i;
  }
  return group;
}

}  // namespace

double tie_tolerance(std::span<const double> scores) {
  double top = 0.0;
  for (double s : scores) top = std::max(top, std::abs(s));
  return 1e-10 * top;
}

std::vector<double> percentiles(std::span<const double> scores) {
  const auto group = tie_groups(scores);
  const auto n = static_cast<double>(scores.size());
  std::vector<double> out(scores.size());
  for (std::size_t v = 0; v < scores.size(); ++v) {
    out[v] = 100.0 * (static_cast<double>(group[v].start) + 0.5 * static_cast<double>(group[v].size)) / n;
  }
  return out;
}

std::vector<double> midranks(std::span<const double> scores) {
  const auto group = tie_groups(scores);
  const auto n = static_cast<double>(scores.size());
  std::vector<double> out(scores.size());
  for (std::size_t v = 0; v < scores.size(); ++v) {
    out[v] = n - static_cast<double>(group[v].start) - 0.5 * static_cast<double>(group[v].size - 1);
  }
  return out;
}

ScoreTable::ScoreTable(std::vector<double> scores, std::shared_ptr<const LabelTable> labels)
    : scores_(std::move(scores)), labels_(std::move(labels)) {
  if (!labels_ || labels_->size() != scores_.size()) {
    throw InputError("score table: label count does not match score count");
  }
  for (double s : scores_) {
    if (!std::isfinite(s)) throw NumericError("score table: non-finite score");
  }
  percentiles_ = dlc::percentiles(scores_);
  ranks_ = midranks(scores_);
  tolerance_ = tie_tolerance(scores_);
}

double ScoreTable::percentile_of(double value) const {
  if (scores_.empty()) throw InputError("percentile of an empty table");
  std::size_t lower = 0;
  std::size_t tied = 0;
  for (double s : scores_) {
    if (std::abs(s - value) <= tolerance_) {
      ++tied;
    } else if (s < value) {
      ++lower;
    }
  }
  return 100.0 * (static_cast<double>(lower) + 0.5 * static_cast<double>(tied)) /
         static_cast<double>(scores_.size());
}

std::vector<Vertex> ScoreTable::ascending() const {
  std::vector<Vertex> order(scores_.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return scores_[a] < scores_[b]; });
  return order;
}

std::vector<Vertex> ScoreTable::descending() const {
  std::vector<Vertex> order(scores_.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return scores_[a] > scores_[b]; });
  return order;
}

double spearman_rho(const ScoreTable& a, const ScoreTable& b) {
  if (a.size() != b.size() || (a.shared_labels() != b.shared_labels() && a.labels() != b.labels())) {
    throw InputError("spearman: score tables cover different vertex sets");
  }
  const auto n = static_cast<Eigen::Index>(a.size());
  if (n < 2) throw InputError("spearman: need at least two vertices");
  const Eigen::Map<const Eigen::VectorXd> ra(a.ranks().data(), n);
  const Eigen::Map<const Eigen::VectorXd> rb(b.ranks().data(), n);
  const Eigen::VectorXd ca = ra.array() - ra.mean();
  const Eigen::VectorXd cb = rb.array() - rb.mean();
  const double denom = ca.norm() * cb.norm();
  if (denom == 0.0) throw NumericError("spearman: constant ranking");
  return std::clamp(ca.dot(cb) / denom, -1.0, 1.0);
}

void write_csv(std::ostream& out, const ScoreTable& table) {
  out << "label,score,percentile,rank\n";
  for (Vertex v = 0; v < table.size(); ++v) {
    out << fmt::format("{},{},{},{}\n", table.label(v), table.score(v), table.percentile(v), table.rank(v));
  }
}

nlohmann::json to_json(const ScoreTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (Vertex v = 0; v < table.size(); ++v) {
    rows.push_back({{"label", table.label(v)},
                    {"score", table.score(v)},
                    {"percentile", table.percentile(v)},
                    {"rank", table.rank(v)}});
  }
  return rows;
}

}  // namespace dlc
