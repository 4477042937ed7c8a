#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "dlc/graph.hpp"
#include "dlc/spectra.hpp"
#include "json.hpp"

namespace dlc {

struct FlowRecord {
  std::int64_t time = 0;
  std::int64_t duration = 0;
  std::string src;
  std::string dst;
  // Remaining fields keyed by header name (or column number without a header).
  std::vector<std::pair<std::string, std::string>> metadata;
};

// A column given by 0-based position or by header name.
using ColumnRef = std::variant<std::size_t, std::string>;

struct FlowSchema {
  ColumnRef time = std::size_t{0};
  std::optional<ColumnRef> duration = ColumnRef{std::size_t{1}};
  ColumnRef src = std::size_t{2};
  ColumnRef dst = std::size_t{4};
  char delimiter = ',';
  bool header = false;
  bool keep_metadata = false;

  // "time=0,duration=1,src=2,dst=4" style overrides; names or positions.
  static FlowSchema parse(const std::string& spec);
  static FlowSchema parse(const std::string& spec, FlowSchema base);
};

struct FlowParse {
  std::vector<FlowRecord> records;
  std::size_t rows = 0;
  std::size_t skipped = 0;
};

// Streams rows; rows with too few fields, a non-integer or negative time or
// duration, or an empty endpoint are counted in `skipped`. A schema column
// absent from the header throws InputError naming it.
FlowParse parse_flow_csv(std::istream& in, const FlowSchema& schema = {});

struct WindowSpec {
  std::int64_t length = 60;
  std::int64_t step = 60;
  std::optional<std::int64_t> start;  // default: earliest record time
  std::optional<std::int64_t> end;    // default: one past the latest record end
};

struct Snapshot {
  std::int64_t start = 0;
  Graph graph;
};

struct TemporalGraphSequence {
  std::vector<Snapshot> steps;

  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
};

// A record joins window [a, a+length) when [time, time+duration] meets it.
// Each window graph holds the vertices active in that window.
TemporalGraphSequence window_graphs(const std::vector<FlowRecord>& records, const WindowSpec& spec);

enum class GraphScope { giant, full };

struct Timeline {
  std::vector<std::int64_t> starts;
  // One row per window; columns are the k largest nontrivial eigenvalues in
  // descending order (or the k smallest, ascending). Missing entries are NaN.
  Eigen::MatrixXd values;
};

Timeline spectral_timeline(const TemporalGraphSequence& seq, std::size_t k, LaplacianKind kind,
                           GraphScope scope, SpectrumEnd end = SpectrumEnd::top, std::size_t jobs = 1);

// window_start,lambda_1..lambda_k with NA for missing values.
void write_csv(std::ostream& out, const Timeline& timeline);
nlohmann::json to_json(const Timeline& timeline);

}  // namespace dlc
