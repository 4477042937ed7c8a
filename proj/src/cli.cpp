#include "dlc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dlc/anomaly.hpp"
#include "dlc/baselines.hpp"
#include "dlc/error.hpp"
#include "dlc/flow.hpp"
#include "dlc/graph_io.hpp"
#include "dlc/run.hpp"
#include "dlc/thelma.hpp"

namespace dlc {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

using Opts = std::vector<CLI::Option*>;

bool given(const Opts& opts) {
  return std::any_of(opts.begin(), opts.end(), [](CLI::Option* o) { return o->count() > 0; });
}

// Options every command shares. Flags that were given override the config.
struct Common {
  std::string config;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::string out;
  Opts seed_opts, jobs_opts, out_opts;

  void attach(CLI::App* app, bool seeded) {
    app->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
    if (seeded) seed_opts.push_back(app->add_option("--seed", seed, "random seed"));
    jobs_opts.push_back(app->add_option("--jobs", jobs, "worker threads (0 = all cores)"));
    out_opts.push_back(app->add_option("--out", out, "output path"));
  }
};

// Window/measure flags shared by several commands.
struct Flags {
  std::int64_t window = 60;
  std::int64_t step = 60;
  std::size_t k = 5;
  bool top = false;
  bool bottom = false;
  bool giant = false;
  std::string measure;
  std::string schema;
  Opts window_opts, step_opts, k_opts, measure_opts, schema_opts;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path);
  try {
    json j = json::parse(in, nullptr, true, true);
    if (!j.is_object()) throw InputError("config " + path + " is not a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw InputError("config " + path + ": " + e.what());
  }
}

std::vector<fs::path> config_bases(const std::string& config) {
  if (config.empty()) return {};
  return {fs::absolute(fs::path(config)).parent_path()};
}

template <class T>
T get_or(const json& cfg, const char* key, T fallback) {
  if (!cfg.contains(key) || cfg[key].is_null()) return fallback;
  try {
    return cfg[key].get<T>();
  } catch (const json::exception& e) {
    throw InputError(fmt::format("config key '{}': {}", key, e.what()));
  }
}

void apply_common(json& cfg, const Common& c) {
  if (given(c.seed_opts)) cfg["seed"] = c.seed;
  if (given(c.jobs_opts)) cfg["jobs"] = c.jobs;
  if (given(c.out_opts)) cfg["out"] = c.out;
}

void apply_flags(json& cfg, const Flags& f) {
  if (given(f.window_opts)) cfg["window"] = f.window;
  if (given(f.step_opts)) cfg["step"] = f.step;
  if (given(f.k_opts)) cfg["k"] = f.k;
  if (f.top) cfg["end"] = "top";
  if (f.bottom) cfg["end"] = "bottom";
  if (f.giant) cfg["giant"] = true;
  if (given(f.measure_opts)) cfg["measure"] = f.measure;
  if (given(f.schema_opts)) cfg["schema"] = f.schema;
}

LaplacianKind parse_laplacian(const std::string& s) {
  if (s == "combinatorial" || s == "L") return LaplacianKind::combinatorial;
  if (s == "normalized" || s == "N") return LaplacianKind::normalized;
  throw InputError("laplacian must be 'combinatorial' or 'normalized', got '" + s + "'");
}

SpectrumEnd parse_end(const std::string& s) {
  if (s == "top") return SpectrumEnd::top;
  if (s == "bottom") return SpectrumEnd::bottom;
  throw InputError("end must be 'top' or 'bottom', got '" + s + "'");
}

// "dlc" with k/end from the config, or a full name such as "ndlc-bottom-5".
Measure measure_from(const std::string& name, const json& cfg) {
  if ((name == "dlc" || name == "ndlc") && name.find('-') == std::string::npos) {
    const auto k = get_or<std::size_t>(cfg, "k", 5);
    const auto end = get_or<std::string>(cfg, "end", "top");
    parse_end(end);
    return Measure::parse(fmt::format("{}-{}-{}", name, end, k));
  }
  return Measure::parse(name);
}

std::vector<Measure> measures_from(const json& cfg, std::vector<std::string> fallback) {
  std::vector<std::string> names = fallback;
  if (cfg.contains("measure")) names = {get_or<std::string>(cfg, "measure", "")};
  else if (cfg.contains("measures")) names = get_or<std::vector<std::string>>(cfg, "measures", {});
  if (names.empty()) throw InputError("no measures given");
  std::vector<Measure> out;
  for (const auto& n : names) {
    Measure m = measure_from(n, cfg);
    const auto solver = get_or<std::string>(cfg, "solver", "auto");
    if (solver == "dense") m.policy = SolverPolicy::dense;
    else if (solver == "sparse") m.policy = SolverPolicy::sparse;
    else if (solver != "auto") throw InputError("solver must be auto, dense or sparse");
    out.push_back(m);
  }
  return out;
}

FlowSchema schema_from(const json& cfg) {
  FlowSchema schema;
  schema.header = get_or<bool>(cfg, "header", false);
  const auto delim = get_or<std::string>(cfg, "delimiter", ",");
  if (delim == "tab" || delim == "\\t") schema.delimiter = '\t';
  else if (delim.size() == 1) schema.delimiter = delim[0];
  else throw InputError("delimiter must be a single character");
  schema = FlowSchema::parse(get_or<std::string>(cfg, "schema", ""), schema);
  // named columns imply a header row
  auto named = [](const ColumnRef& c) { return std::holds_alternative<std::string>(c); };
  if (named(schema.time) || named(schema.src) || named(schema.dst) || (schema.duration && named(*schema.duration)))
    schema.header = true;
  return schema;
}

std::string to_text(const std::function<void(std::ostream&)>& write) {
  std::ostringstream s;
  write(s);
  return s.str();
}

// Writes `contents` to `path` (or `out` when path is empty) with a manifest
// alongside.
void publish_single(const std::string& path, const std::string& contents, const RunManifest& manifest,
                    std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
    return;
  }
  OutputSet files;
  files.add(path, contents);
  files.add(path + ".manifest.json", manifest.to_json().dump(2) + "\n");
  files.commit();
}

Graph load_graph(const json& cfg, const std::vector<fs::path>& bases, RunManifest& manifest) {
  if (!cfg.contains("graph")) throw InputError("no graph given");
  const json& g = cfg["graph"];
  if (g.is_string()) {
    const fs::path path = resolve_input(g.get<std::string>(), bases);
    manifest.add_input(path);
    return read_edge_list(path);
  }
  if (g.is_object() && g.contains("surrogate")) {
    const json& s = g["surrogate"];
    SurrogateSpec spec;
    spec.candidates = get_or(s, "candidates", spec.candidates);
    spec.exponent = get_or(s, "exponent", spec.exponent);
    spec.mean_weight = get_or(s, "mean", spec.mean_weight);
    spec.max_weight = get_or(s, "max", spec.max_weight);
    spec.seed = get_or(s, "seed", spec.seed);
    return surrogate_graph(spec);
  }
  throw InputError("graph must be an edge-list path or {\"surrogate\": {...}}");
}

Graph scoped(const Graph& g, bool giant) {
  if (g.empty()) throw InputError("graph has no vertices");
  if (giant) return giant_component(g).graph;
  if (!is_connected(g)) throw InputError("graph is disconnected; pass --giant to use its giant component");
  return g;
}

// ---------------------------------------------------------------- timeline

int cmd_timeline(json cfg, const std::string& config, const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  RunManifest manifest;
  manifest.command = "timeline";
  manifest.args = args;
  const auto flows = resolve_input(get_or<std::string>(cfg, "flows", ""), config_bases(config));
  manifest.add_input(flows);
  const FlowSchema schema = schema_from(cfg);
  WindowSpec spec;
  spec.length = get_or<std::int64_t>(cfg, "window", 60);
  spec.step = get_or<std::int64_t>(cfg, "step", spec.length);
  if (cfg.contains("start")) spec.start = get_or<std::int64_t>(cfg, "start", 0);
  if (cfg.contains("stop")) spec.end = get_or<std::int64_t>(cfg, "stop", 0);
  const auto k = get_or<std::size_t>(cfg, "k", 5);
  const auto kind = parse_laplacian(get_or<std::string>(cfg, "laplacian", "combinatorial"));
  const auto end = parse_end(get_or<std::string>(cfg, "end", "top"));
  const auto scope = get_or<bool>(cfg, "giant", true) ? GraphScope::giant : GraphScope::full;
  const auto jobs = get_or<std::size_t>(cfg, "jobs", 1);
  manifest.parameters = cfg;

  std::ifstream in(flows);
  if (!in) throw InputError("cannot open " + flows.string());
  const FlowParse parsed = parse_flow_csv(in, schema);
  if (parsed.skipped) err << fmt::format("warning: skipped {} of {} rows\n", parsed.skipped, parsed.rows);
  if (parsed.records.empty()) err << "warning: no flow records; timeline is empty\n";
  const auto seq = window_graphs(parsed.records, spec);
  const Timeline timeline = spectral_timeline(seq, k, kind, scope, end, jobs);
  const std::string format = get_or<std::string>(cfg, "format", "csv");
  std::string text;
  if (format == "json") text = to_json(timeline).dump(2) + "\n";
  else if (format == "csv") text = to_text([&](std::ostream& s) { write_csv(s, timeline); });
  else throw InputError("format must be csv or json");
  publish_single(get_or<std::string>(cfg, "out", ""), text, manifest, out);
  return 0;
}

// -------------------------------------------------------------- centrality

int cmd_centrality(json cfg, const std::string& config, const std::vector<std::string>& args,
                   std::ostream& out) {
  RunManifest manifest;
  manifest.command = "centrality";
  manifest.args = args;
  const auto bases = config_bases(config);
  Graph g;
  if (cfg.contains("flows")) {
    const auto flows = resolve_input(get_or<std::string>(cfg, "flows", ""), bases);
    manifest.add_input(flows);
    std::ifstream in(flows);
    const FlowParse parsed = parse_flow_csv(in, schema_from(cfg));
    WindowSpec spec;
    spec.length = get_or<std::int64_t>(cfg, "window", 60);
    spec.step = get_or<std::int64_t>(cfg, "step", spec.length);
    const auto seq = window_graphs(parsed.records, spec);
    const auto index = get_or<std::size_t>(cfg, "window_index", 0);
    if (index >= seq.size()) throw InputError(fmt::format("window index {} out of range ({} windows)", index, seq.size()));
    g = seq.steps[index].graph;
  } else {
    g = load_graph(cfg, bases, manifest);
  }
  const std::vector<Measure> measures = measures_from(cfg, {"dlc"});
  if (measures.size() != 1) throw InputError("centrality takes exactly one measure");
  manifest.parameters = cfg;
  const Graph h = scoped(g, get_or<bool>(cfg, "giant", false));
  const ScoreTable table = measures[0].evaluate(h);
  const std::string format = get_or<std::string>(cfg, "format", "csv");
  std::string text;
  if (format == "json") text = to_json(table).dump(2) + "\n";
  else if (format == "csv") text = to_text([&](std::ostream& s) { write_csv(s, table); });
  else throw InputError("format must be csv or json");
  publish_single(get_or<std::string>(cfg, "out", ""), text, manifest, out);
  return 0;
}

// ------------------------------------------------------------------ thelma

void publish_directory(const fs::path& dir, const OutputSet& files) {
  fs::path staging = dir;
  staging += ".partial";
  fs::remove_all(staging);
  fs::create_directories(staging);
  for (const auto& [name, contents] : files.files()) {
    std::ofstream f(staging / name, std::ios::binary);
    if (!f) throw InputError("cannot write into " + staging.string());
    f << contents;
  }
  fs::remove_all(dir);
  if (dir.has_parent_path()) fs::create_directories(dir.parent_path());
  fs::rename(staging, dir);
}

int cmd_thelma(json cfg, const std::vector<std::string>& args) {
  RunManifest manifest;
  manifest.command = "thelma";
  manifest.args = args;
  const auto out_dir = get_or<std::string>(cfg, "out", "");
  if (out_dir.empty()) throw InputError("thelma needs --out DIR");
  const ThelmaParams params = thelma_params_from_config(cfg);
  const auto seed = get_or<std::uint64_t>(cfg, "seed", 1);
  const auto mode_name = get_or<std::string>(cfg, "mode", "fast");
  if (mode_name != "fast" && mode_name != "naive") throw InputError("mode must be fast or naive");
  manifest.seed = seed;
  manifest.parameters = cfg;

  const auto seq = generate(params, seed, mode_name == "fast" ? GenerationMode::fast : GenerationMode::naive);
  OutputSet files;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    files.add(fmt::format("step_{:04d}.edges", i + 1), to_text([&](std::ostream& s) {
                for (auto [u, v] : seq.steps[i].graph.edge_list()) s << u << ' ' << v << '\n';
              }));
  }
  files.add("params.json", to_json(params).dump(2) + "\n");
  json m = manifest.to_json();
  m["order"] = params.order();
  m["steps"] = params.steps();
  files.add("manifest.json", m.dump(2) + "\n");
  publish_directory(out_dir, files);
  return 0;
}

// -------------------------------------------------------------- experiment

std::vector<std::size_t> ordered_sizes(const json& cfg, std::size_t n) {
  if (cfg.contains("sizes")) return get_or<std::vector<std::size_t>>(cfg, "sizes", {});
  const auto fraction = get_or<double>(cfg, "max_fraction", 0.15);
  const auto stride = std::max<std::size_t>(1, get_or<std::size_t>(cfg, "stride", 1));
  const auto largest = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  std::vector<std::size_t> sizes;
  for (std::size_t s = 2; s <= largest; s += stride) sizes.push_back(s);
  if (sizes.empty()) throw InputError("max_fraction leaves no anomaly sizes");
  return sizes;
}

json gap_summary(const GapReport& rep) {
  json groups = json::object();
  for (GapGroup g : {GapGroup::root, GapGroup::leaf, GapGroup::root_cohort, GapGroup::leaf_cohort}) {
    const GapGroup one[] = {g};
    const auto ww = rep.gaps(one, true);
    const auto wp = rep.gaps(one, false);
    groups[to_string(g)] = {{"samples", ww.size()},
                            {"median_with_without", ww.empty() ? json(nullptr) : json(median(ww))},
                            {"median_with_previous", wp.empty() ? json(nullptr) : json(median(wp))}};
  }
  return {{"measure", rep.measure},
          {"groups", groups},
          {"mean_root_cohort", rep.mean_root_cohort},
          {"mean_leaf_cohort", rep.mean_leaf_cohort}};
}

int cmd_experiment(const std::string& kind, json cfg, const std::string& config, const std::vector<std::string>& args) {
  RunManifest manifest;
  manifest.command = "experiment " + kind;
  manifest.args = args;
  const auto bases = config_bases(config);
  const auto out_dir = fs::path(get_or<std::string>(cfg, "out", ""));
  if (out_dir.empty()) throw InputError("experiment needs --out DIR");
  const auto seed = get_or<std::uint64_t>(cfg, "seed", 1);
  const auto jobs = get_or<std::size_t>(cfg, "jobs", 1);
  manifest.seed = seed;
  OutputSet files;

  if (kind == "ordered" || kind == "random") {
    const Graph g = scoped(load_graph(cfg, bases, manifest), get_or<bool>(cfg, "giant", true));
    const auto measures = measures_from(cfg, {"dlc-top-5", "ndlc-bottom-5"});
    json summary{{"order", g.order()}, {"edges", g.edge_count()}, {"max_degree", g.max_degree()}};
    if (kind == "ordered") {
      const auto shape = get_or<std::string>(cfg, "anomaly", "star");
      if (shape != "star" && shape != "clique") throw InputError("anomaly must be star or clique");
      const auto sizes = ordered_sizes(cfg, g.order());
      manifest.parameters = cfg;
      std::ostringstream csv;
      for (std::size_t i = 0; i < measures.size(); ++i) {
        const auto curve = inject_ordered(g, measures[i], shape == "star" ? AnomalyKind::star : AnomalyKind::clique,
                                          sizes, jobs);
        write_csv(csv, measures[i].name(), curve, i == 0);
      }
      files.add(out_dir / "ordered.csv", csv.str());
    } else {
      const auto percents = get_or<std::vector<double>>(cfg, "percents", {0.1, 0.5, 1.0, 5.0, 10.0});
      const auto trials = get_or<std::size_t>(cfg, "trials", 500);
      manifest.parameters = cfg;
      std::ostringstream csv;
      json rows = json::array();
      for (std::size_t i = 0; i < measures.size(); ++i) {
        const auto result = inject_random_star(g, measures[i], percents, trials, seed, jobs);
        write_csv(csv, result, i == 0);
        rows.push_back(to_json(result));
      }
      summary["measures"] = rows;
      files.add(out_dir / "random.csv", csv.str());
    }
    files.add(out_dir / "summary.json", summary.dump(2) + "\n");
  } else if (kind == "temporal") {
    TemporalGraphSequence seq;
    std::optional<std::vector<double>> weights;
    if (cfg.contains("sequence")) {
      const auto dir = resolve_input(get_or<std::string>(cfg, "sequence", ""), bases);
      manifest.add_input(dir);
      seq = read_sequence(dir);
      if (fs::exists(dir / "params.json")) {
        std::ifstream in(dir / "params.json");
        weights = thelma_params_from_json(json::parse(in)).weights;
      }
    } else if (cfg.contains("thelma")) {
      const ThelmaParams params = thelma_params_from_config(cfg["thelma"]);
      seq = generate(params, seed);
      weights = params.weights;
    } else {
      throw InputError("temporal experiment needs \"sequence\" or \"thelma\"");
    }
    const auto leaves = get_or<std::size_t>(cfg, "leaves", 30);
    const auto width = get_or<double>(cfg, "width", 2.5);
    const auto trim_by = get_or<std::string>(cfg, "trim_by", weights ? "model" : "degree");
    if (trim_by != "model" && trim_by != "degree") throw InputError("trim_by must be model or degree");
    if (trim_by == "model" && !weights) throw InputError("no model weights for trim_by=model");
    const auto measures = measures_from(cfg, {"dlc-top-5", "ndlc-bottom-5"});
    manifest.parameters = cfg;
    const auto anomaly = select_core_anomaly(seq, leaves, seed, trim_by == "model" ? &*weights : nullptr);
    const auto reports = temporal_experiment(seq, anomaly, measures, width, jobs);
    std::ostringstream samples, cdf;
    json summary{{"steps", seq.size()},
                 {"order", seq.steps.front().graph.order()},
                 {"always_giant", anomaly.always_giant.size()},
                 {"candidates", anomaly.candidates.size()},
                 {"root", seq.steps.front().graph.label(anomaly.root)}};
    json leaf_labels = json::array();
    for (Vertex v : anomaly.leaves) leaf_labels.push_back(seq.steps.front().graph.label(v));
    summary["leaves"] = leaf_labels;
    json per = json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      write_samples_csv(samples, reports[i], seq.steps.front().graph.labels(), i == 0);
      write_cdf_csv(cdf, reports[i], i == 0);
      per.push_back(gap_summary(reports[i]));
    }
    summary["measures"] = per;
    files.add(out_dir / "samples.csv", samples.str());
    files.add(out_dir / "cdf.csv", cdf.str());
    files.add(out_dir / "summary.json", summary.dump(2) + "\n");
  } else {
    throw InputError("experiment kind must be ordered, random or temporal");
  }
  files.add(out_dir / "manifest.json", manifest.to_json().dump(2) + "\n");
  files.commit();
  return 0;
}

// --------------------------------------------------------------- surrogate

int cmd_surrogate(json cfg, const std::vector<std::string>& args, std::ostream& out) {
  RunManifest manifest;
  manifest.command = "surrogate";
  manifest.args = args;
  SurrogateSpec spec;
  spec.candidates = get_or(cfg, "candidates", spec.candidates);
  spec.exponent = get_or(cfg, "exponent", spec.exponent);
  spec.mean_weight = get_or(cfg, "mean", spec.mean_weight);
  spec.max_weight = get_or(cfg, "max", spec.max_weight);
  spec.seed = get_or(cfg, "seed", spec.seed);
  manifest.seed = spec.seed;
  manifest.parameters = cfg;
  const Graph g = surrogate_graph(spec);
  std::string text = fmt::format("# chung-lu surrogate: {} vertices, {} edges, max degree {}\n", g.order(),
                                 g.edge_count(), g.max_degree());
  text += to_text([&](std::ostream& s) { write_edge_list(s, g); });
  publish_single(get_or<std::string>(cfg, "out", ""), text, manifest, out);
  return 0;
}

}  // namespace

ThelmaParams thelma_params_from_config(const json& config) {
  try {
    ThelmaParams p;
    const json& w = config.at("weights");
    if (w.is_array()) {
      p.weights = w.get<std::vector<double>>();
    } else if (w.contains("power_law")) {
      const json& pl = w["power_law"];
      p.weights = power_law_weights(pl.at("n").get<std::size_t>(), pl.at("exponent").get<double>(),
                                    pl.at("mean").get<double>(), pl.at("max").get<double>());
    } else {
      throw InputError("weights must be an array or {\"power_law\": {...}}");
    }
    const json& t = config.at("tau");
    if (t.is_array()) {
      p.tau = t.get<std::vector<double>>();
    } else if (t.contains("circadian")) {
      const json& c = t["circadian"];
      p.tau = circadian_tau(c.at("steps").get<std::size_t>(), c.value("cycles", 1.0));
    } else if (t.contains("constant")) {
      const json& c = t["constant"];
      p.tau.assign(c.at("steps").get<std::size_t>(), c.value("value", 1.0));
    } else {
      throw InputError("tau must be an array, {\"circadian\": {...}} or {\"constant\": {...}}");
    }
    p.alpha = config.at("alpha").get<double>();
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw InputError(std::string("thelma parameters: ") + e.what());
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Directional Laplacian centrality on flow graphs"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  Flags flags;
  std::string positional;

  auto* timeline = app.add_subcommand("timeline", "spectral heartbeat of windowed flow records");
  timeline->add_option("flows", positional, "flow CSV");
  std::string laplacian;
  auto* lap_opt = timeline->add_option("--laplacian", laplacian, "combinatorial or normalized");
  bool full = false;
  timeline->add_flag("--full", full, "use whole window graphs instead of giant components");

  auto* centrality = app.add_subcommand("centrality", "score the vertices of a graph");
  centrality->add_option("graph", positional, "edge list");
  std::string flows;
  auto* flows_opt = centrality->add_option("--flows", flows, "flow CSV instead of an edge list");
  std::size_t window_index = 0;
  auto* index_opt = centrality->add_option("--window-index", window_index, "which window of --flows to score");

  auto* thelma = app.add_subcommand("thelma", "generate a temporal Chung-Lu sequence");
  std::string mode;
  auto* mode_opt = thelma->add_option("--mode", mode, "fast or naive");

  auto* experiment = app.add_subcommand("experiment", "anomaly injection experiments");
  std::string kind;
  experiment->add_option("kind", kind, "ordered, random or temporal")->required();
  std::size_t trials = 0;
  auto* trials_opt = experiment->add_option("--trials", trials, "random-star trials per size");

  auto* surrogate = app.add_subcommand("surrogate", "write the Chung-Lu stand-in graph");

  std::string format;
  Opts format_opts;
  for (auto* sub : {timeline, centrality, thelma, experiment, surrogate}) {
    common.attach(sub, sub != timeline && sub != centrality);
    if (sub == timeline || sub == centrality) format_opts.push_back(sub->add_option("--format", format, "csv or json"));
  }
  for (auto* sub : {timeline, centrality}) {
    flags.window_opts.push_back(sub->add_option("--window", flags.window, "window length in seconds"));
    flags.step_opts.push_back(sub->add_option("--step", flags.step, "window step in seconds"));
    flags.schema_opts.push_back(sub->add_option("--schema", flags.schema, "column map, e.g. time=0,dur=1,src=2,dst=4"));
  }
  for (auto* sub : {timeline, centrality, experiment}) {
    flags.k_opts.push_back(sub->add_option("--k", flags.k, "eigenvalues per index set"));
    auto* top = sub->add_flag("--top", flags.top, "largest eigenvalues");
    sub->add_flag("--bottom", flags.bottom, "smallest nontrivial eigenvalues")->excludes(top);
  }
  for (auto* sub : {centrality, experiment}) {
    flags.measure_opts.push_back(sub->add_option("--measure", flags.measure, "dlc, ndlc, lc, nlc, pagerank, katz, closeness, betweenness"));
    sub->add_flag("--giant", flags.giant, "restrict to the giant component");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    json cfg = load_config(common.config);
    apply_common(cfg, common);
    apply_flags(cfg, flags);
    if (given(format_opts)) cfg["format"] = format;

    if (timeline->parsed()) {
      if (!positional.empty()) cfg["flows"] = positional;
      if (lap_opt->count()) cfg["laplacian"] = laplacian;
      if (full) cfg["giant"] = false;
      return cmd_timeline(cfg, common.config, args, out, err);
    }
    if (centrality->parsed()) {
      if (!positional.empty()) cfg["graph"] = positional;
      if (flows_opt->count()) cfg["flows"] = flows;
      if (index_opt->count()) cfg["window_index"] = window_index;
      return cmd_centrality(cfg, common.config, args, out);
    }
    if (thelma->parsed()) {
      if (mode_opt->count()) cfg["mode"] = mode;
      return cmd_thelma(cfg, args);
    }
    if (experiment->parsed()) {
      if (trials_opt->count()) cfg["trials"] = trials;
      return cmd_experiment(kind, cfg, common.config, args);
    }
    if (surrogate->parsed()) return cmd_surrogate(cfg, args, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace dlc
