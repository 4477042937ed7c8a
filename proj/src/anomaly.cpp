#include "dlc/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "dlc/baselines.hpp"
#include "dlc/error.hpp"
#include "dlc/parallel.hpp"
#include "dlc/random.hpp"
#include "dlc/thelma.hpp"

namespace dlc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct KindName {
  Measure::Kind kind;
  const char* name;
};
constexpr KindName kKindNames[] = {
    {Measure::Kind::dlc, "dlc"},           {Measure::Kind::ndlc, "ndlc"},
    {Measure::Kind::lc, "lc"},             {Measure::Kind::nlc, "nlc"},
    {Measure::Kind::pagerank, "pagerank"}, {Measure::Kind::katz, "katz"},
    {Measure::Kind::closeness, "closeness"}, {Measure::Kind::betweenness, "betweenness"},
};

bool directional(Measure::Kind kind) { return kind == Measure::Kind::dlc || kind == Measure::Kind::ndlc; }

std::size_t parse_count(const std::string& text, const std::string& whole) {
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw InputError(fmt::format("bad measure '{}'", whole));
  return value;
}

double mean_of(const ScoreTable& table, std::span<const Vertex> vertices) {
  double sum = 0.0;
  for (Vertex v : vertices) sum += table.score(v);
  return sum / static_cast<double>(vertices.size());
}

}  // namespace

Measure Measure::parse(const std::string& name) {
  const auto dash = name.find('-');
  const std::string head = name.substr(0, dash);
  Measure m;
  bool found = false;
  for (const auto& [kind, text] : kKindNames) {
    if (head == text) {
      m.kind = kind;
      found = true;
    }
  }
  if (!found) throw InputError(fmt::format("unknown measure '{}'", name));
  if (!directional(m.kind)) {
    if (dash != std::string::npos) throw InputError(fmt::format("measure '{}' takes no index set", head));
    return m;
  }
  if (dash == std::string::npos) throw InputError(fmt::format("measure '{}' needs an index set, e.g. {}-top-5", name, head));
  const std::string rest = name.substr(dash + 1);
  if (rest == "nontrivial") {
    m.selection = IndexSet::nontrivial();
  } else if (rest.rfind("top-", 0) == 0) {
    m.selection = IndexSet::top(parse_count(rest.substr(4), name));
  } else if (rest.rfind("bottom-", 0) == 0) {
    m.selection = IndexSet::bottom(parse_count(rest.substr(7), name));
  } else if (rest.rfind("ranks:", 0) == 0) {
    std::vector<std::size_t> ranks;
    std::string list = rest.substr(6);
    std::size_t pos = 0;
    while (pos <= list.size()) {
      const auto comma = list.find(',', pos);
      const auto end = comma == std::string::npos ? list.size() : comma;
      ranks.push_back(parse_count(list.substr(pos, end - pos), name));
      pos = end + 1;
    }
    m.selection = IndexSet::ranks(std::move(ranks));
  } else {
    throw InputError(fmt::format("bad index set in measure '{}'", name));
  }
  return m;
}

std::string Measure::name() const {
  std::string head;
  for (const auto& [k, text] : kKindNames)
    if (k == kind) head = text;
  if (!directional(kind)) return head;
  return head + "-" + selection.describe();
}

ScoreTable Measure::evaluate(const Graph& g) const {
  switch (kind) {
    case Kind::dlc: return s_dlc(g, selection, policy);
    case Kind::ndlc: return s_ndlc(g, selection, policy);
    case Kind::lc: return qi_laplacian_centrality(g);
    case Kind::nlc: return qi_normalized_laplacian_centrality(g);
    case Kind::pagerank: return pagerank(g);
    case Kind::katz: return katz(g);
    case Kind::closeness: return closeness(g);
    case Kind::betweenness: return betweenness(g);
  }
  throw InputError("unknown measure");
}

std::vector<OrderedPoint> inject_ordered(const Graph& g, const Measure& measure, AnomalyKind kind,
                                         std::span<const std::size_t> sizes, std::size_t jobs) {
  const std::size_t n = g.order();
  for (std::size_t s : sizes) {
    if (s < 2) throw InputError("anomaly size must be at least 2");
    if (s > n) throw InputError(fmt::format("anomaly size {} exceeds graph order {}", s, n));
  }
  const std::vector<Vertex> order = measure.evaluate(g).ascending();
  std::vector<OrderedPoint> curve(sizes.size());
  parallel_for(sizes.size(), jobs, [&](std::size_t i) {
    const std::size_t s = sizes[i];
    std::span<const Vertex> members(order.data(), s);
    OrderedPoint& pt = curve[i];
    pt.size = s;
    if (kind == AnomalyKind::star) {
      const Vertex root = members[0];
      const auto leaves = members.subspan(1);
      const Graph h = add_star(g, root, leaves);
      pt.added_edges = h.edge_count() - g.edge_count();
      const ScoreTable t = measure.evaluate(h);
      pt.root_percentile = t.percentile(root);
      pt.participant_score = mean_of(t, leaves);
      pt.participant_percentile = t.percentile_of(pt.participant_score);
      pt.member_percentile = t.percentile_of(mean_of(t, members));
    } else {
      const Graph h = add_clique(g, members);
      pt.added_edges = h.edge_count() - g.edge_count();
      const ScoreTable t = measure.evaluate(h);
      pt.root_percentile = kNaN;
      pt.participant_score = mean_of(t, members);
      pt.participant_percentile = t.percentile_of(pt.participant_score);
      pt.member_percentile = pt.participant_percentile;
    }
  });
  return curve;
}

TrialSummary inject_random_star(const Graph& g, const Measure& measure, std::span<const double> percents,
                                std::size_t trials, std::uint64_t seed, std::size_t jobs) {
  const std::size_t n = g.order();
  if (trials == 0) throw InputError("need at least one trial");
  std::vector<std::size_t> leaf_counts;
  for (double k : percents) {
    if (!(k > 0.0) || !std::isfinite(k)) throw InputError(fmt::format("star size {}% must be positive", k));
    const auto leaves = static_cast<std::size_t>(std::llround(k / 100.0 * static_cast<double>(n)));
    if (leaves < 1) throw InputError(fmt::format("star size {}% of {} vertices rounds to zero leaves", k, n));
    if (leaves > n - 1) throw InputError(fmt::format("star size {}% needs more than {} leaves", k, n - 1));
    leaf_counts.push_back(leaves);
  }
  const ScoreTable base = measure.evaluate(g);

  struct Trial {
    double score_before, score_after, pct_before, pct_after;
  };
  const std::size_t total = percents.size() * trials;
  std::vector<Trial> results(total);
  parallel_for(total, jobs, [&](std::size_t job) {
    const std::size_t ki = job / trials;
    const std::size_t trial = job % trials;
    Stream rng(seed, {ki, trial});
    std::vector<Vertex> pool(n);
    std::iota(pool.begin(), pool.end(), Vertex{0});
    const Vertex root = pool[rng.below(n)];
    std::swap(pool[root], pool[n - 1]);
    const std::size_t leaves = leaf_counts[ki];
    for (std::size_t i = 0; i < leaves; ++i) {
      const std::size_t j = i + rng.below(n - 1 - i);
      std::swap(pool[i], pool[j]);
    }
    const Graph h = add_star(g, root, std::span<const Vertex>(pool.data(), leaves));
    const ScoreTable t = measure.evaluate(h);
    results[job] = {base.score(root), t.score(root), base.percentile(root), t.percentile(root)};
  });

  TrialSummary summary;
  summary.measure = measure.name();
  summary.seed = seed;
  for (std::size_t ki = 0; ki < percents.size(); ++ki) {
    RandomStarRow row;
    row.percent = percents[ki];
    row.leaves = leaf_counts[ki];
    row.trials = trials;
    std::size_t raised = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      const Trial& r = results[ki * trials + trial];
      row.score_before += r.score_before;
      row.score_after += r.score_after;
      row.percentile_before += r.pct_before;
      row.percentile_after += r.pct_after;
      if (r.pct_after >= r.pct_before) ++raised;
    }
    const double m = static_cast<double>(trials);
    row.score_before /= m;
    row.score_after /= m;
    row.percentile_before /= m;
    row.percentile_after /= m;
    row.raised_fraction = static_cast<double>(raised) / m;
    summary.rows.push_back(row);
  }
  return summary;
}

TemporalGraphSequence on_common_vertices(const TemporalGraphSequence& seq) {
  auto labels = std::make_shared<LabelTable>();
  std::unordered_map<std::string, Vertex> index;
  auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.try_emplace(label, static_cast<Vertex>(labels->size()));
    if (inserted) labels->push_back(label);
    return it->second;
  };
  std::vector<std::vector<std::pair<Vertex, Vertex>>> edges(seq.size());
  for (std::size_t t = 0; t < seq.size(); ++t) {
    const Graph& g = seq.steps[t].graph;
    std::vector<Vertex> map(g.order());
    for (Vertex v = 0; v < g.order(); ++v) map[v] = intern(g.label(v));
    for (auto [u, v] : g.edge_list()) edges[t].emplace_back(map[u], map[v]);
  }
  std::shared_ptr<const LabelTable> shared = labels;
  TemporalGraphSequence out;
  for (std::size_t t = 0; t < seq.size(); ++t)
    out.steps.push_back({seq.steps[t].start, Graph::from_edges(shared, edges[t])});
  return out;
}

namespace {

void require_common_vertices(const TemporalGraphSequence& seq) {
  if (seq.empty()) throw InputError("empty graph sequence");
  const Graph& first = seq.steps.front().graph;
  for (const auto& snap : seq.steps) {
    if (snap.graph.shared_labels() == first.shared_labels()) continue;
    if (snap.graph.labels() != first.labels())
      throw InputError("sequence steps must share one vertex set");
  }
}

}  // namespace

CoreAnomaly select_core_anomaly(const TemporalGraphSequence& seq, std::size_t leaves, std::uint64_t seed,
                                const std::vector<double>* weights) {
  require_common_vertices(seq);
  const std::size_t n = seq.steps.front().graph.order();
  std::vector<char> always(n, 1);
  std::vector<double> degree_sum(n, 0.0);
  for (const auto& snap : seq.steps) {
    const Subgraph giant = giant_component(snap.graph);
    for (Vertex v = 0; v < n; ++v) {
      if (!giant.old_to_new[v]) always[v] = 0;
      degree_sum[v] += static_cast<double>(snap.graph.degree(v));
    }
  }
  std::vector<double> weight(n);
  if (weights) {
    if (weights->size() != n) throw InputError("weights do not match the vertex count");
    weight = *weights;
  } else {
    for (Vertex v = 0; v < n; ++v) weight[v] = degree_sum[v] / static_cast<double>(seq.size());
  }

  CoreAnomaly out;
  for (Vertex v = 0; v < n; ++v)
    if (always[v]) out.always_giant.push_back(v);
  std::vector<Vertex> heaviest = out.always_giant;
  std::stable_sort(heaviest.begin(), heaviest.end(), [&](Vertex a, Vertex b) { return weight[a] > weight[b]; });
  const std::size_t drop = heaviest.size() / 5;
  out.candidates.assign(heaviest.begin() + static_cast<std::ptrdiff_t>(drop), heaviest.end());
  std::sort(out.candidates.begin(), out.candidates.end());
  if (out.candidates.size() < leaves + 1)
    throw InputError(fmt::format("only {} candidate vertices for an anomaly of {} vertices",
                                 out.candidates.size(), leaves + 1));

  std::vector<Vertex> pick = out.candidates;
  Stream rng(seed, {0xc0de});
  for (std::size_t i = 0; i <= leaves; ++i) {
    const std::size_t j = i + rng.below(pick.size() - i);
    std::swap(pick[i], pick[j]);
  }
  out.root = pick[0];
  out.leaves.assign(pick.begin() + 1, pick.begin() + 1 + static_cast<std::ptrdiff_t>(leaves));
  return out;
}

std::vector<Vertex> cohort(std::span<const double> percentile_t, std::span<const double> score_t1, Vertex v,
                           double width) {
  if (percentile_t.size() != score_t1.size()) throw InputError("cohort tables differ in size");
  if (v >= percentile_t.size()) throw InputError("cohort anchor out of range");
  std::vector<Vertex> out;
  const double centre = percentile_t[v];
  if (std::isnan(centre)) return out;
  for (Vertex s = 0; s < percentile_t.size(); ++s) {
    if (s == v || std::isnan(percentile_t[s])) continue;
    if (std::abs(percentile_t[s] - centre) <= width && score_t1[s] != 0.0) out.push_back(s);
  }
  return out;
}

std::vector<Vertex> cohort(const ScoreTable& scores_t, const ScoreTable& scores_t1, Vertex v, double width) {
  return cohort(scores_t.percentiles(), scores_t1.scores(), v, width);
}

const char* to_string(GapGroup group) {
  switch (group) {
    case GapGroup::root: return "root";
    case GapGroup::leaf: return "leaf";
    case GapGroup::root_cohort: return "root_cohort";
    case GapGroup::leaf_cohort: return "leaf_cohort";
  }
  return "?";
}

std::vector<double> GapReport::gaps(std::span<const GapGroup> groups, bool with_without) const {
  std::vector<double> out;
  for (const auto& s : samples)
    if (std::find(groups.begin(), groups.end(), s.group) != groups.end())
      out.push_back(with_without ? s.with_without : s.with_previous);
  return out;
}

namespace {

// Scores of one graph scattered back to the full vertex set: percentile NaN
// and score 0 outside the giant component.
struct Scattered {
  std::vector<double> score;
  std::vector<double> percentile;
};

Scattered score_on_giant(const Graph& g, const Measure& measure) {
  const Subgraph giant = giant_component(g);
  const ScoreTable table = measure.evaluate(giant.graph);
  Scattered out{std::vector<double>(g.order(), 0.0), std::vector<double>(g.order(), kNaN)};
  for (Vertex i = 0; i < giant.new_to_old.size(); ++i) {
    out.score[giant.new_to_old[i]] = table.score(i);
    out.percentile[giant.new_to_old[i]] = table.percentile(i);
  }
  return out;
}

std::vector<double> cdf_on(const std::vector<double>& grid, std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::vector<double> out(grid.size(), kNaN);
  if (values.empty()) return out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto below = std::upper_bound(values.begin(), values.end(), grid[i]) - values.begin();
    out[i] = static_cast<double>(below) / static_cast<double>(values.size());
  }
  return out;
}

}  // namespace

std::vector<GapReport> temporal_experiment(const TemporalGraphSequence& seq, const CoreAnomaly& anomaly,
                                           std::span<const Measure> measures, double width, std::size_t jobs) {
  require_common_vertices(seq);
  if (seq.size() < 2) throw InputError("temporal experiment needs at least two steps");
  const std::size_t T = seq.size();
  const std::size_t n = seq.steps.front().graph.order();
  std::vector<char> in_anomaly(n, 0);
  in_anomaly.at(anomaly.root) = 1;
  for (Vertex v : anomaly.leaves) in_anomaly.at(v) = 1;

  std::vector<GapReport> reports;
  for (const Measure& measure : measures) {
    // without[t] for every step, with[t] for steps 2..T (index t >= 1).
    std::vector<Scattered> without(T), with(T);
    parallel_for(2 * T - 1, jobs, [&](std::size_t job) {
      if (job < T) {
        without[job] = score_on_giant(seq.steps[job].graph, measure);
      } else {
        const std::size_t t = job - T + 1;
        const Graph h = add_star(seq.steps[t].graph, anomaly.root, anomaly.leaves);
        with[t] = score_on_giant(h, measure);
      }
    });

    GapReport report;
    report.measure = measure.name();
    std::size_t root_members = 0, leaf_members = 0, anchors = 0;
    for (std::size_t t = 1; t < T; ++t) {
      const Scattered& prev = without[t - 1];
      const Scattered& now = without[t];
      const Scattered& injected = with[t];
      auto gap = [&](Vertex v, GapGroup group, Vertex anchor) {
        if (std::isnan(injected.percentile[v]) || std::isnan(now.percentile[v]) || std::isnan(prev.percentile[v]))
          throw NumericError(fmt::format("vertex {} has no score at step {}", v, t + 1));
        report.samples.push_back({t + 1, group, v, anchor, injected.percentile[v] - now.percentile[v],
                                  injected.percentile[v] - prev.percentile[v]});
      };
      auto add_cohort = [&](Vertex anchor, GapGroup group) {
        std::size_t count = 0;
        for (Vertex s : cohort(prev.percentile, now.score, anchor, width)) {
          if (in_anomaly[s]) continue;
          gap(s, group, anchor);
          ++count;
        }
        return count;
      };
      gap(anomaly.root, GapGroup::root, anomaly.root);
      root_members += add_cohort(anomaly.root, GapGroup::root_cohort);
      for (Vertex leaf : anomaly.leaves) {
        gap(leaf, GapGroup::leaf, leaf);
        leaf_members += add_cohort(leaf, GapGroup::leaf_cohort);
        ++anchors;
      }
    }
    report.mean_root_cohort = static_cast<double>(root_members) / static_cast<double>(T - 1);
    report.mean_leaf_cohort = anchors ? static_cast<double>(leaf_members) / static_cast<double>(anchors) : 0.0;

    report.grid.resize(201);
    for (std::size_t i = 0; i < 201; ++i) report.grid[i] = -100.0 + static_cast<double>(i);
    for (GapGroup group : {GapGroup::root, GapGroup::leaf, GapGroup::root_cohort, GapGroup::leaf_cohort}) {
      const GapGroup one[] = {group};
      report.with_without_cdf.push_back(cdf_on(report.grid, report.gaps(one, true)));
      report.with_previous_cdf.push_back(cdf_on(report.grid, report.gaps(one, false)));
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InputError("median of no values");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

nlohmann::json to_json(const TrialSummary& summary) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : summary.rows) {
    rows.push_back({{"percent", r.percent},
                    {"leaves", r.leaves},
                    {"trials", r.trials},
                    {"score_before", r.score_before},
                    {"score_after", r.score_after},
                    {"score_change", r.score_change()},
                    {"percentile_before", r.percentile_before},
                    {"percentile_after", r.percentile_after},
                    {"percentile_change", r.percentile_change()},
                    {"raised_fraction", r.raised_fraction}});
  }
  return {{"measure", summary.measure}, {"seed", summary.seed}, {"rows", rows}};
}

void write_csv(std::ostream& out, const TrialSummary& summary, bool header) {
  if (header)
    out << "measure,percent,leaves,trials,score_before,score_after,score_change,"
         "percentile_before,percentile_after,percentile_change,raised_fraction\n";
  for (const auto& r : summary.rows) {
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", summary.measure, r.percent, r.leaves, r.trials,
                       r.score_before, r.score_after, r.score_change(), r.percentile_before, r.percentile_after,
                       r.percentile_change(), r.raised_fraction);
  }
}

void write_csv(std::ostream& out, const std::string& measure, const std::vector<OrderedPoint>& curve,
               bool header) {
  if (header)
    out << "measure,size,added_edges,root_percentile,participant_score,participant_percentile,"
           "member_percentile\n";
  for (const auto& p : curve) {
    const std::string root = std::isnan(p.root_percentile) ? "NA" : fmt::format("{}", p.root_percentile);
    out << fmt::format("{},{},{},{},{},{},{}\n", measure, p.size, p.added_edges, root, p.participant_score,
                       p.participant_percentile, p.member_percentile);
  }
}

void write_samples_csv(std::ostream& out, const GapReport& report, const LabelTable& labels, bool header) {
  if (header) out << "measure,step,group,vertex,anchor,with_without,with_previous\n";
  for (const auto& s : report.samples) {
    out << fmt::format("{},{},{},{},{},{},{}\n", report.measure, s.step, to_string(s.group), labels.at(s.vertex),
                       labels.at(s.anchor), s.with_without, s.with_previous);
  }
}

void write_cdf_csv(std::ostream& out, const GapReport& report, bool header) {
  if (header) out << "measure,gap,group,x,cdf\n";
  for (int which = 0; which < 2; ++which) {
    const auto& cdfs = which == 0 ? report.with_without_cdf : report.with_previous_cdf;
    const char* gap = which == 0 ? "with_without" : "with_previous";
    for (std::size_t g = 0; g < cdfs.size(); ++g) {
      for (std::size_t i = 0; i < report.grid.size(); ++i) {
        const double f = cdfs[g][i];
        out << fmt::format("{},{},{},{},{}\n", report.measure, gap, to_string(static_cast<GapGroup>(g)),
                           report.grid[i], std::isnan(f) ? std::string("NA") : fmt::format("{}", f));
      }
    }
  }
}

Graph surrogate_graph(const SurrogateSpec& spec) {
  const auto weights = power_law_weights(spec.candidates, spec.exponent, spec.mean_weight, spec.max_weight);
  return giant_component(chung_lu(weights, spec.seed)).graph;
}

}  // namespace dlc
