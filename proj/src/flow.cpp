#include "dlc/flow.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "dlc/error.hpp"
#include "dlc/parallel.hpp"

namespace dlc {
namespace {

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t at = line.find(delimiter, begin);
    out.push_back(line.substr(begin, at == std::string_view::npos ? std::string_view::npos : at - begin));
    if (at == std::string_view::npos) break;
    begin = at + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<std::int64_t> parse_seconds(std::string_view s) {
  s = trim(s);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || value < 0) return std::nullopt;
  return value;
}

std::size_t resolve(const ColumnRef& ref, const std::vector<std::string>& header, const char* role) {
  if (const auto* index = std::get_if<std::size_t>(&ref)) return *index;
  const auto& name = std::get<std::string>(ref);
  if (header.empty()) {
    throw InputError(std::string("column '") + name + "' for " + role + " needs a header row");
  }
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InputError("missing column '" + name + "' (" + role + ")");
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

FlowSchema FlowSchema::parse(const std::string& spec) { return parse(spec, FlowSchema{}); }

FlowSchema FlowSchema::parse(const std::string& spec, FlowSchema base) {
  for (auto item : split(spec, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw InputError("schema entry '" + std::string(item) + "' lacks '='");
    const std::string key(trim(item.substr(0, eq)));
    const std::string value(trim(item.substr(eq + 1)));
    if (value.empty()) throw InputError("schema entry '" + key + "' has no column");
    ColumnRef ref = value;
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), index);
    if (ec == std::errc() && ptr == value.data() + value.size()) ref = index;
    if (key == "time") base.time = ref;
    else if (key == "duration" || key == "dur") {
      if (value == "none") base.duration.reset();
      else base.duration = ref;
    } else if (key == "src") base.src = ref;
    else if (key == "dst") base.dst = ref;
    else throw InputError("unknown schema field '" + key + "'");
  }
  return base;
}

FlowParse parse_flow_csv(std::istream& in, const FlowSchema& schema) {
  FlowParse out;
  std::string line;
  std::vector<std::string> header;
  if (schema.header) {
    if (!std::getline(in, line)) line.clear();
    for (auto field : split(line, schema.delimiter)) header.emplace_back(trim(field));
  }
  const std::size_t time_col = resolve(schema.time, header, "time");
  const std::optional<std::size_t> dur_col =
      schema.duration ? std::optional(resolve(*schema.duration, header, "duration")) : std::nullopt;
  const std::size_t src_col = resolve(schema.src, header, "src");
  const std::size_t dst_col = resolve(schema.dst, header, "dst");
  const std::size_t needed = std::max({time_col, src_col, dst_col, dur_col.value_or(0)}) + 1;

  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++out.rows;
    const auto fields = split(line, schema.delimiter);
    if (fields.size() < needed) {
      ++out.skipped;
      continue;
    }
    const auto time = parse_seconds(fields[time_col]);
    const auto duration = dur_col ? parse_seconds(fields[*dur_col]) : std::optional<std::int64_t>(0);
    const auto src = trim(fields[src_col]);
    const auto dst = trim(fields[dst_col]);
    if (!time || !duration || src.empty() || dst.empty()) {
      ++out.skipped;
      continue;
    }
    FlowRecord record{*time, *duration, std::string(src), std::string(dst), {}};
    if (schema.keep_metadata) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i == time_col || i == src_col || i == dst_col || (dur_col && i == *dur_col)) continue;
        record.metadata.emplace_back(i < header.size() ? header[i] : std::to_string(i), std::string(trim(fields[i])));
      }
    }
    out.records.push_back(std::move(record));
  }
  return out;
}

TemporalGraphSequence window_graphs(const std::vector<FlowRecord>& records, const WindowSpec& spec) {
  if (spec.length <= 0 || spec.step <= 0) throw InputError("window length and step must be positive");
  TemporalGraphSequence seq;
  if (records.empty() && !(spec.start && spec.end)) return seq;

  std::int64_t first = std::numeric_limits<std::int64_t>::max();
  std::int64_t last = std::numeric_limits<std::int64_t>::min();
  for (const auto& r : records) {
    first = std::min(first, r.time);
    last = std::max(last, r.time + r.duration);
  }
  const std::int64_t start = spec.start.value_or(first);
  const std::int64_t end = spec.end.value_or(last + 1);
  if (end <= start) return seq;
  const auto count = static_cast<std::size_t>((end - start + spec.step - 1) / spec.step);

  std::vector<std::vector<std::pair<std::string, std::string>>> edges(count);
  auto floor_div = [](std::int64_t a, std::int64_t b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); };
  for (const auto& r : records) {
    // windows a = start + j*step with time - length < a <= time + duration
    const std::int64_t lo = -floor_div(-(r.time - spec.length + 1 - start), spec.step);
    const std::int64_t hi = floor_div(r.time + r.duration - start, spec.step);
    for (std::int64_t j = std::max<std::int64_t>(lo, 0); j <= hi && j < static_cast<std::int64_t>(count); ++j) {
      edges[static_cast<std::size_t>(j)].emplace_back(r.src, r.dst);
    }
  }
  seq.steps.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    seq.steps.push_back({start + static_cast<std::int64_t>(j) * spec.step, from_edge_list(edges[j])});
  }
  return seq;
}

Timeline spectral_timeline(const TemporalGraphSequence& seq, std::size_t k, LaplacianKind kind,
                           GraphScope scope, SpectrumEnd end, std::size_t jobs) {
  if (k == 0) throw InputError("k must be positive");
  Timeline out;
  out.values = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(seq.size()), static_cast<Eigen::Index>(k),
                                         std::numeric_limits<double>::quiet_NaN());
  for (const auto& step : seq.steps) out.starts.push_back(step.start);
  parallel_for(seq.size(), jobs, [&](std::size_t row) {
    const Graph& whole = seq.steps[row].graph;
    if (whole.empty()) return;
    const Graph g = scope == GraphScope::giant ? giant_component(whole).graph : whole;
    const std::size_t t = connected_components(g).count();
    const std::size_t available = std::min(k, g.order() - t);
    if (available == 0) return;
    const auto es = extremal_eigensystem(g, kind, end, available);
    for (std::size_t c = 0; c < available; ++c) {
      const std::size_t pos = end == SpectrumEnd::top ? g.order() - 1 - c : t + c;
      out.values(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(c)) = es.value(pos);
    }
  });
  return out;
}

void write_csv(std::ostream& out, const Timeline& timeline) {
  out << "window_start";
  for (Eigen::Index c = 0; c < timeline.values.cols(); ++c) out << ",lambda_" << c + 1;
  out << '\n';
  for (Eigen::Index r = 0; r < timeline.values.rows(); ++r) {
    out << timeline.starts[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < timeline.values.cols(); ++c) {
      const double v = timeline.values(r, c);
      out << ',' << (std::isnan(v) ? std::string("NA") : fmt::format("{}", v));
    }
    out << '\n';
  }
}

nlohmann::json to_json(const Timeline& timeline) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < timeline.values.rows(); ++r) {
    nlohmann::json values = nlohmann::json::array();
    for (Eigen::Index c = 0; c < timeline.values.cols(); ++c) {
      const double v = timeline.values(r, c);
      values.push_back(std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v));
    }
    rows.push_back({{"window_start", timeline.starts[static_cast<std::size_t>(r)]}, {"eigenvalues", values}});
  }
  return rows;
}

}  // namespace dlc
