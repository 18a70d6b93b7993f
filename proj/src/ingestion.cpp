#include "tiedecay/ingestion.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>

#include "tiedecay/errors.hpp"

namespace tiedecay {

namespace {

struct RawRecord {
  double t;
  std::int64_t i;
  std::int64_t j;
};

template <typename T>
bool parse_field(std::string_view field, T& out) {
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos >= line.size()) break;
    const auto start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    fields.push_back(line.substr(start, pos - start));
  }
  return fields;
}

std::vector<std::size_t> bin_counts(const EventLog& log, double dt, std::size_t num_steps) {
  std::vector<std::size_t> counts(num_steps, 0);
  for (const auto& e : log.events) ++counts[std::min(step_of(e.t, dt), num_steps) - 1];
  return counts;
}

std::size_t steps_for(double t_max, double dt) {
  return std::max<std::size_t>(1, step_of(t_max, dt));
}

}  // namespace

ContactData parse_contact_file(std::istream& in) {
  std::vector<RawRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() < 3) throw ParseError(line_no, "expected 't i j', got fewer than 3 fields");
    RawRecord r{};
    if (!parse_field(fields[0], r.t) || !std::isfinite(r.t)) {
      throw ParseError(line_no, "timestamp is not numeric: '" + std::string(fields[0]) + "'");
    }
    if (!parse_field(fields[1], r.i) || !parse_field(fields[2], r.j)) {
      throw ParseError(line_no, "node identifier is not an integer");
    }
    if (r.i == r.j) throw ParseError(line_no, "self-interaction");
    records.push_back(r);
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const RawRecord& a, const RawRecord& b) { return a.t < b.t; });

  ContactData data;
  std::unordered_map<std::int64_t, NodeId> index;
  auto id_of = [&](std::int64_t raw) {
    auto [it, inserted] = index.try_emplace(raw, static_cast<NodeId>(data.raw_ids.size()));
    if (inserted) data.raw_ids.push_back(raw);
    return it->second;
  };
  data.time_offset = records.empty() ? 0.0 : records.front().t;
  data.log.events.reserve(records.size());
  for (const auto& r : records) {
    const NodeId i = id_of(r.i);
    const NodeId j = id_of(r.j);
    data.log.events.push_back({r.t - data.time_offset, i, j});
  }
  data.log.node_count = static_cast<NodeId>(data.raw_ids.size());
  data.log.horizon = data.log.events.empty() ? 0.0 : data.log.events.back().t;
  return data;
}

void write_event_log(std::ostream& out, const EventLog& log) {
  std::array<char, 64> buf{};
  for (const auto& e : log.events) {
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), e.t);
    out << std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data())) << ' ' << e.i
        << ' ' << e.j << '\n';
  }
}

void write_node_map(std::ostream& out, const ContactData& data) {
  for (std::size_t k = 0; k < data.raw_ids.size(); ++k) out << k << ' ' << data.raw_ids[k] << '\n';
}

std::size_t step_of(double t, double dt) {
  if (t <= 0.0) return 1;
  return static_cast<std::size_t>(std::ceil(t / dt));
}

DiscretizationPlan plan_with_dt(const EventLog& log, double dt, std::size_t max_per_bin) {
  if (!(dt > 0.0)) throw StructuralError("dt must be > 0");
  DiscretizationPlan plan;
  plan.dt = dt;
  plan.num_steps = steps_for(log.horizon, dt);
  const auto counts = bin_counts(log, dt, plan.num_steps);
  plan.max_per_bin = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
  plan.bound_satisfied = plan.max_per_bin <= max_per_bin;
  return plan;
}

DiscretizationPlan choose_dt(const EventLog& log, std::size_t max_per_bin,
                             double native_resolution) {
  if (log.events.empty()) throw EmptyInputError("cannot choose dt for an empty log");
  if (max_per_bin < 1) throw StructuralError("max_per_bin must be >= 1");
  if (!(native_resolution > 0.0)) throw StructuralError("native resolution must be > 0");

  std::optional<DiscretizationPlan> best;
  constexpr std::array<double, 3> mantissas{1.0, 2.0, 5.0};
  for (double decade = 1.0;; decade *= 10.0) {
    bool past_span = false;
    for (double m : mantissas) {
      const double dt = native_resolution * m * decade;
      auto plan = plan_with_dt(log, dt, max_per_bin);
      if (plan.bound_satisfied) best = plan;
      // once one bin covers the whole log, larger dt cannot change the counts
      if (dt >= log.horizon) {
        past_span = true;
        break;
      }
    }
    if (past_span) break;
  }
  if (best) return *best;
  auto fallback = plan_with_dt(log, native_resolution, max_per_bin);
  fallback.bound_satisfied = false;
  return fallback;
}

std::vector<InteractionMatrix> discretize(const EventLog& log, const DiscretizationPlan& plan) {
  if (!(plan.dt > 0.0)) throw StructuralError("plan dt must be > 0");
  std::vector<InteractionMatrix> steps(plan.num_steps, InteractionMatrix(log.node_count));
  for (const auto& e : log.events) {
    const auto tau = step_of(e.t, plan.dt);
    if (tau > plan.num_steps) continue;
    steps[tau - 1].add(e.i, e.j);
  }
  return steps;
}

}  // namespace tiedecay
