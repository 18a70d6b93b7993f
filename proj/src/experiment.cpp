#include "tiedecay/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "tiedecay/errors.hpp"
#include "tiedecay/rng.hpp"
#include "tiedecay/sis.hpp"
#include "tiedecay/threshold.hpp"

namespace tiedecay {

namespace {

constexpr std::uint64_t kBackboneStream = 0;
constexpr std::uint64_t kEventStream = 1;
constexpr std::uint64_t kSisStream = 2;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw StructuralError("invalid value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw StructuralError("invalid boolean '" + std::string(text) + "' for " + std::string(key));
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_number<double>(key, trim(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string tag(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw StructuralError("cannot write " + path.string());
  out.precision(17);
  return out;
}

void check_grid(const std::vector<double>& values, const char* name) {
  if (values.empty()) throw StructuralError(std::string(name) + " grid is empty");
  for (double v : values) {
    if (!(v > 0.0 && v <= 1.0)) throw StructuralError(std::string(name) + " grid values must lie in (0, 1]");
  }
}

}  // namespace

std::vector<double> uniform_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw StructuralError("grid step must lie in (0, 1]");
  const auto k = static_cast<std::size_t>(std::llround(1.0 / step));
  std::vector<double> out;
  out.reserve(k);
  const bool exact = std::abs(static_cast<double>(k) * step - 1.0) < 1e-12;
  for (std::size_t i = 1; i <= k; ++i) {
    const double v = exact ? static_cast<double>(i) / static_cast<double>(k) : static_cast<double>(i) * step;
    out.push_back(std::min(1.0, v));
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (source == NetworkSource::erdos_renyi) {
    if (n < 1) throw StructuralError("n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw StructuralError("p must lie in [0, 1]");
    if (!(beta > 0.0)) throw StructuralError("beta must be > 0");
    if (!(dt > 0.0)) throw StructuralError("dt must be > 0");
    if (steps < 1) throw StructuralError("steps must be >= 1");
  } else {
    if (input.empty()) throw StructuralError("contact-file source needs an input path");
    if (!(dt >= 0.0)) throw StructuralError("dt must be >= 0");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw StructuralError("alpha must be > 0");
  if (!(initial_strength >= 0.0)) throw StructuralError("initial strength must be >= 0");
  if (!(backbone_p >= 0.0 && backbone_p <= 1.0)) throw StructuralError("backbone_p must lie in [0, 1]");
  if (period && *period < 1) throw StructuralError("period must be >= 1");
  if (l_max < 1) throw StructuralError("l_max must be >= 1");
  if (series_window < 2) throw StructuralError("series window must be >= 2");
  check_grid(lambdas, "lambda");
  check_grid(mus, "mu");
  if (replicates < 1) throw StructuralError("replicates must be >= 1");
  if (!(seed_fraction > 0.0 && seed_fraction <= 1.0)) throw StructuralError("seed_fraction must lie in (0, 1]");
  if (window < 1) throw StructuralError("window must be >= 1");
}

void apply_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "scenario") cfg.scenario = value;
  else if (key == "source") {
    if (value == "er") cfg.source = NetworkSource::erdos_renyi;
    else if (value == "contacts") cfg.source = NetworkSource::contact_file;
    else throw StructuralError("source must be 'er' or 'contacts'");
  } else if (key == "n") cfg.n = parse_number<NodeId>(key, value);
  else if (key == "p") cfg.p = parse_number<double>(key, value);
  else if (key == "connected") cfg.require_connected = parse_bool(key, value);
  else if (key == "input") {
    cfg.input = value;
    cfg.source = NetworkSource::contact_file;
  } else if (key == "alpha") cfg.alpha = parse_number<double>(key, value);
  else if (key == "beta") cfg.beta = parse_number<double>(key, value);
  else if (key == "dt") cfg.dt = parse_number<double>(key, value);
  else if (key == "max_per_bin") cfg.max_per_bin = parse_number<std::size_t>(key, value);
  else if (key == "initial_strength") cfg.initial_strength = parse_number<double>(key, value);
  else if (key == "backbone_p") cfg.backbone_p = parse_number<double>(key, value);
  else if (key == "steps") cfg.steps = parse_number<std::size_t>(key, value);
  else if (key == "l_max") cfg.l_max = parse_number<std::size_t>(key, value);
  else if (key == "period") {
    if (value == "auto") cfg.period.reset();
    else cfg.period = parse_number<std::size_t>(key, value);
  } else if (key == "series_window") cfg.series_window = parse_number<std::size_t>(key, value);
  else if (key == "series_tolerance") cfg.series_tolerance = parse_number<double>(key, value);
  else if (key == "grid") cfg.lambdas = cfg.mus = uniform_grid(parse_number<double>(key, value));
  else if (key == "lambda") cfg.lambdas = parse_list(key, value);
  else if (key == "mu") cfg.mus = parse_list(key, value);
  else if (key == "simulate") cfg.simulate = parse_bool(key, value);
  else if (key == "replicates") cfg.replicates = parse_number<std::size_t>(key, value);
  else if (key == "seed_fraction") cfg.seed_fraction = parse_number<double>(key, value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "window") cfg.window = parse_number<std::size_t>(key, value);
  else if (key == "mode") cfg.mode = parse_window_mode(value);
  else if (key == "out") cfg.out_dir = value;
  else throw StructuralError("unknown config key '" + std::string(key) + "'");
}

void apply_config(ExperimentConfig& cfg, std::istream& in) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    view = trim(view.substr(0, view.find('#')));
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) throw ParseError(number, "expected key = value");
    try {
      apply_config_value(cfg, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
    } catch (const StructuralError& e) {
      throw ParseError(number, e.what());
    }
  }
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["scenario"] = cfg.scenario;
  j["source"] = cfg.source == NetworkSource::erdos_renyi ? "er" : "contacts";
  j["n"] = cfg.n;
  j["p"] = cfg.p;
  j["connected"] = cfg.require_connected;
  j["input"] = cfg.input.string();
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["dt"] = cfg.dt;
  j["max_per_bin"] = cfg.max_per_bin;
  j["initial_strength"] = cfg.initial_strength;
  j["backbone_p"] = cfg.backbone_p;
  j["steps"] = cfg.steps;
  j["l_max"] = cfg.l_max;
  j["period"] = cfg.period ? nlohmann::json(*cfg.period) : nlohmann::json("auto");
  j["series_window"] = cfg.series_window;
  j["series_tolerance"] = cfg.series_tolerance;
  j["lambda"] = cfg.lambdas;
  j["mu"] = cfg.mus;
  j["simulate"] = cfg.simulate;
  j["replicates"] = cfg.replicates;
  j["seed_fraction"] = cfg.seed_fraction;
  j["seed"] = cfg.seed;
  j["window"] = cfg.window;
  j["mode"] = to_string(cfg.mode);
  j["out"] = cfg.out_dir.string();
  j["derived_seeds"] = {{"backbone", derive_seed(cfg.seed, kBackboneStream)},
                        {"events", derive_seed(cfg.seed, kEventStream)},
                        {"sis", derive_seed(cfg.seed, kSisStream)}};
  return j;
}

Network build_network(const ExperimentConfig& cfg) {
  if (cfg.source == NetworkSource::contact_file) {
    std::ifstream in(cfg.input);
    if (!in) throw StructuralError("cannot open contact file " + cfg.input.string());
    return build_network(cfg, parse_contact_file(in));
  }
  cfg.validate();
  Network net;
  net.backbone = generate_er({cfg.n, cfg.p, cfg.require_connected, derive_seed(cfg.seed, kBackboneStream)});
  const double horizon = static_cast<double>(cfg.steps) * cfg.dt;
  net.log = generate_event_times(net.backbone, {cfg.beta, derive_seed(cfg.seed, kEventStream)}, horizon,
                                 cfg.dt);
  net.plan = plan_with_dt(net.log, cfg.dt, cfg.max_per_bin);
  net.plan.num_steps = cfg.steps;
  net.initial = initial_tie_matrix(net.backbone, cfg.initial_strength);
  const auto steps = discretize(net.log, net.plan);
  net.snapshots = std::make_shared<const EdgeSnapshots>(
      EdgeSnapshots::evolve(net.initial, steps, DecayParams{cfg.alpha, 1.0}));
  return net;
}

Network build_network(const ExperimentConfig& cfg, const ContactData& contacts) {
  Network net;
  net.log = contacts.log;
  net.plan = cfg.dt > 0.0 ? plan_with_dt(net.log, cfg.dt, cfg.max_per_bin)
                          : choose_dt(net.log, cfg.max_per_bin);
  const NodeId n = net.log.node_count;
  net.backbone = generate_er({n, cfg.backbone_p, false, derive_seed(cfg.seed, kBackboneStream)});
  net.initial = initial_tie_matrix(net.backbone, cfg.initial_strength);
  const auto steps = discretize(net.log, net.plan);
  net.snapshots = std::make_shared<const EdgeSnapshots>(
      EdgeSnapshots::evolve(net.initial, steps, DecayParams{cfg.alpha, 1.0}));
  return net;
}

SweepCell critical_cell(const EdgeSnapshots& snapshots, double lambda, double mu,
                        const ExperimentConfig& cfg) {
  SweepCell cell;
  cell.lambda = lambda;
  cell.mu = mu;
  cell.mean_final_size = std::numeric_limits<double>::quiet_NaN();
  const std::size_t available = snapshots.count() - 1;
  if (cfg.period) {
    const std::size_t l = std::min(*cfg.period, available);
    const auto est = spectral_radius_product(SystemOperator::periodic(snapshots, lambda, mu, l));
    cell.critical_value = est.per_step();
    cell.period = l;
    cell.period_converged = est.converged;
  } else {
    SeriesOptions opts;
    opts.window = cfg.series_window;
    opts.tolerance = cfg.series_tolerance;
    opts.stop_at_convergence = true;
    const auto series = critical_value_series(snapshots, lambda, mu, std::min(cfg.l_max, available), opts);
    cell.critical_value = series.critical_value();
    cell.period = series.converged_l.value_or(series.values.size());
    cell.period_converged = series.converged();
  }
  return cell;
}

SweepGrid sweep(const Network& net, const ExperimentConfig& cfg) {
  check_grid(cfg.lambdas, "lambda");
  check_grid(cfg.mus, "mu");
  SweepGrid grid{cfg.lambdas, cfg.mus, {}};
  grid.cells.reserve(cfg.lambdas.size() * cfg.mus.size());
  const auto& snaps = *net.snapshots;
  const std::size_t steps = net.steps();
  for (double lambda : cfg.lambdas) {
    for (double mu : cfg.mus) {
      auto cell = critical_cell(snaps, lambda, mu, cfg);
      if (cfg.simulate) {
        SisParams params{lambda, mu, cfg.seed_fraction, derive_seed(cfg.seed, kSisStream)};
        cell.mean_final_size = run_ensemble(snaps, params, steps, cfg.replicates).mean_final_size;
      }
      if (!std::isfinite(cell.critical_value)) {
        throw StructuralError("non-finite critical value at lambda " + tag(lambda) + ", mu " + tag(mu));
      }
      grid.cells.push_back(cell);
    }
  }
  return grid;
}

std::vector<BoundaryPoint> boundary(const SweepGrid& grid) {
  std::vector<BoundaryPoint> out;
  out.reserve(grid.lambdas.size());
  for (std::size_t li = 0; li < grid.lambdas.size(); ++li) {
    std::vector<std::size_t> order(grid.mus.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return grid.mus[a] < grid.mus[b]; });
    BoundaryPoint best{grid.lambdas[li], 0.0, 0.0};
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t mi : order) {
      const double v = grid.at(li, mi).critical_value;
      const double gap = std::abs(v - 1.0);
      if (gap < best_gap) {
        best_gap = gap;
        best = {grid.lambdas[li], grid.mus[mi], v};
      }
    }
    out.push_back(best);
  }
  return out;
}

std::size_t outbreak_cell_count(const SweepGrid& grid) {
  return static_cast<std::size_t>(std::count_if(grid.cells.begin(), grid.cells.end(),
                                                [](const SweepCell& c) { return c.critical_value > 1.0; }));
}

double pcc(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw StructuralError("pcc samples differ in length");
  if (x.size() < 2) throw StructuralError("pcc needs at least two samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mx;
    const double dy = y[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelationError("correlation undefined for a constant sample");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double grid_pcc(const SweepGrid& grid) {
  std::vector<double> sizes, values;
  sizes.reserve(grid.size());
  values.reserve(grid.size());
  for (const auto& c : grid.cells) {
    if (std::isnan(c.mean_final_size)) throw StructuralError("grid was not simulated");
    sizes.push_back(c.mean_final_size);
    values.push_back(c.critical_value);
  }
  return pcc(sizes, values);
}

void write_grid_csv(std::ostream& out, const SweepGrid& grid) {
  out << "lambda,mu,critical_value,period,period_converged,mean_final_size\n";
  for (const auto& c : grid.cells) {
    out << c.lambda << ',' << c.mu << ',' << c.critical_value << ',' << c.period << ','
        << (c.period_converged ? 1 : 0) << ',';
    if (!std::isnan(c.mean_final_size)) out << c.mean_final_size;
    out << '\n';
  }
}

void write_boundary_csv(std::ostream& out, std::span<const BoundaryPoint> points) {
  out << "lambda,mu_star,critical_value\n";
  for (const auto& b : points) out << b.lambda << ',' << b.mu_star << ',' << b.value << '\n';
}

std::vector<WindowedComparisonRow> compare_windowed(const Network& net, const ExperimentConfig& cfg) {
  check_grid(cfg.lambdas, "lambda");
  check_grid(cfg.mus, "mu");
  const double mu = cfg.mus.front();
  const auto& snaps = *net.snapshots;
  const auto raw = bin_windows(net.log, net.plan.dt, cfg.window, net.steps());
  const auto windows = rescale_windows(raw, snaps);
  std::optional<EdgeSnapshots> windowed_steps;
  if (cfg.simulate) windowed_steps.emplace(windowed_step_snapshots(windows, net.initial));

  std::vector<WindowedComparisonRow> rows;
  for (double lambda : cfg.lambdas) {
    WindowedComparisonRow row;
    row.lambda = lambda;
    row.tie_decay_value = critical_cell(snaps, lambda, mu, cfg).critical_value;
    const auto literal = windowed_threshold(windows, lambda, mu, WindowMode::literal);
    row.windowed_literal = literal.per_window();
    row.windowed_per_step = literal.per_step();
    row.windowed_expanded = windowed_threshold(windows, lambda, mu, WindowMode::expanded).per_step();
    row.tie_decay_final_size = std::numeric_limits<double>::quiet_NaN();
    row.windowed_final_size = std::numeric_limits<double>::quiet_NaN();
    if (cfg.simulate) {
      SisParams params{lambda, mu, cfg.seed_fraction, derive_seed(cfg.seed, kSisStream)};
      row.tie_decay_final_size = run_ensemble(snaps, params, net.steps(), cfg.replicates).mean_final_size;
      row.windowed_final_size =
          run_ensemble(*windowed_steps, params, windows.num_steps, cfg.replicates).mean_final_size;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_windowed_csv(std::ostream& out, std::span<const WindowedComparisonRow> rows) {
  out << "lambda,tie_decay_value,windowed_literal,windowed_expanded,windowed_per_step,"
         "tie_decay_final_size,windowed_final_size\n";
  for (const auto& r : rows) {
    out << r.lambda << ',' << r.tie_decay_value << ',' << r.windowed_literal << ','
        << r.windowed_expanded << ',' << r.windowed_per_step << ',';
    if (!std::isnan(r.tie_decay_final_size)) out << r.tie_decay_final_size;
    out << ',';
    if (!std::isnan(r.windowed_final_size)) out << r.windowed_final_size;
    out << '\n';
  }
}

namespace {

constexpr std::array<std::string_view, 8> kScenarios = {
    "validation",         "decay-sweep",    "frequency-sweep", "sparsity-sweep",
    "period-convergence", "real-workplace", "real-conference", "windowed-compare"};

struct Artifacts {
  const ExperimentConfig& cfg;
  ScenarioResult result;

  std::ofstream open(const std::string& name) {
    const auto path = cfg.out_dir / name;
    result.files.push_back(path);
    return open_output(path);
  }

  nlohmann::json& summary() { return result.manifest["summary"]; }
};

nlohmann::json grid_summary(const SweepGrid& grid) {
  nlohmann::json j;
  j["cells"] = grid.size();
  j["outbreak_cells"] = outbreak_cell_count(grid);
  if (!grid.cells.empty() && !std::isnan(grid.cells.front().mean_final_size)) {
    std::size_t violations = 0;
    for (const auto& c : grid.cells) {
      if (c.critical_value < 0.98 && c.mean_final_size > 0.0) ++violations;
    }
    j["violations_below_0.98"] = violations;
    try {
      j["pcc"] = grid_pcc(grid);
    } catch (const UndefinedCorrelationError&) {
      j["pcc"] = nullptr;
    }
  }
  return j;
}

void emit_grid(Artifacts& a, const SweepGrid& grid, const std::string& suffix) {
  auto g = a.open("grid" + suffix + ".csv");
  write_grid_csv(g, grid);
  auto b = a.open("boundary" + suffix + ".csv");
  write_boundary_csv(b, boundary(grid));
}

void run_validation(Artifacts& a) {
  const auto& cfg = a.cfg;
  const auto grid = sweep(build_network(cfg), cfg);
  emit_grid(a, grid, "");
  a.summary()["grid"] = grid_summary(grid);

  auto table = a.open("pcc_table.csv");
  table << "alpha,beta,pcc\n";
  for (double alpha : {1e-1, 1e-2, 1e-3}) {
    for (double beta : {10.0, 50.0, 100.0}) {
      auto variant = cfg;
      variant.alpha = alpha;
      variant.beta = beta;
      variant.simulate = true;
      const auto g = sweep(build_network(variant), variant);
      nlohmann::json row{{"alpha", alpha}, {"beta", beta}};
      try {
        const double r = grid_pcc(g);
        table << alpha << ',' << beta << ',' << r << '\n';
        row["pcc"] = r;
      } catch (const UndefinedCorrelationError&) {
        table << alpha << ',' << beta << ",\n";
        row["pcc"] = nullptr;
      }
      a.summary()["pcc_table"].push_back(row);
    }
  }
}

template <typename Apply>
void run_variants(Artifacts& a, const char* name, std::initializer_list<double> values, Apply apply) {
  for (double v : values) {
    auto variant = a.cfg;
    apply(variant, v);
    const auto grid = sweep(build_network(variant), variant);
    const auto suffix = std::string("_") + name + tag(v);
    emit_grid(a, grid, suffix);
    auto s = grid_summary(grid);
    s[name] = v;
    a.summary()["variants"].push_back(s);
  }
}

void run_period_convergence(Artifacts& a) {
  const auto& cfg = a.cfg;
  const auto net = build_network(cfg);
  const std::size_t l_max = std::min(cfg.l_max, net.snapshots->count() - 1);
  SeriesOptions opts;
  opts.window = cfg.series_window;
  opts.tolerance = cfg.series_tolerance;
  for (const auto& [lambda, mu] : {std::pair{0.3, 0.7}, std::pair{0.4, 0.6}}) {
    const auto series = critical_value_series(*net.snapshots, lambda, mu, l_max, opts);
    auto out = a.open("series_lambda" + tag(lambda) + "_mu" + tag(mu) + ".csv");
    write_series_csv(out, series);
    nlohmann::json s{{"lambda", lambda}, {"mu", mu}, {"l_max", l_max}, {"final_value", series.values.back()}};
    s["converged_l"] = series.converged_l ? nlohmann::json(*series.converged_l) : nlohmann::json(nullptr);
    s["converged_value"] = series.converged() ? nlohmann::json(series.converged_value) : nlohmann::json(nullptr);
    a.summary()["series"].push_back(s);
  }
}

void run_real(Artifacts& a) {
  const auto& cfg = a.cfg;
  std::ifstream in(cfg.input);
  if (!in) throw StructuralError("cannot open contact file " + cfg.input.string());
  const auto contacts = parse_contact_file(in);
  const auto net = build_network(cfg, contacts);
  auto map = a.open("node_map.csv");
  write_node_map(map, contacts);
  a.summary()["nodes"] = net.log.node_count;
  a.summary()["events"] = net.log.events.size();
  a.summary()["dt"] = net.plan.dt;
  a.summary()["steps"] = net.steps();
  a.summary()["max_per_bin"] = net.plan.max_per_bin;
  a.summary()["bound_satisfied"] = net.plan.bound_satisfied;
  const auto grid = sweep(net, cfg);
  emit_grid(a, grid, "");
  a.summary()["grid"] = grid_summary(grid);
}

void run_windowed(Artifacts& a) {
  const auto& cfg = a.cfg;
  const auto net = build_network(cfg);
  const auto rows = compare_windowed(net, cfg);
  auto out = a.open("windowed.csv");
  write_windowed_csv(out, rows);
  auto windows = a.open("windows.csv");
  write_windows_csv(windows, rescale_windows(bin_windows(net.log, net.plan.dt, cfg.window, net.steps()),
                                             *net.snapshots));
  auto spread = [&](auto member) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& r : rows) {
      lo = std::min(lo, r.*member);
      hi = std::max(hi, r.*member);
    }
    return nlohmann::json{{"min", lo}, {"max", hi}, {"spread", hi - lo}};
  };
  a.summary()["tie_decay"] = spread(&WindowedComparisonRow::tie_decay_value);
  a.summary()["windowed_literal"] = spread(&WindowedComparisonRow::windowed_literal);
  a.summary()["windowed_expanded"] = spread(&WindowedComparisonRow::windowed_expanded);
  a.summary()["windowed_per_step"] = spread(&WindowedComparisonRow::windowed_per_step);
}

}  // namespace

std::span<const std::string_view> scenario_names() { return kScenarios; }

ExperimentConfig scenario_config(std::string_view name) {
  ExperimentConfig cfg;
  cfg.scenario = name;
  if (name == "validation") {
    cfg.p = 0.1;
    cfg.alpha = 0.1;
  } else if (name == "decay-sweep" || name == "frequency-sweep") {
    cfg.p = 0.05;
    cfg.alpha = name == "decay-sweep" ? 0.1 : 0.01;
    cfg.simulate = false;
  } else if (name == "sparsity-sweep") {
    cfg.alpha = 0.01;
    cfg.simulate = false;
  } else if (name == "period-convergence") {
    cfg.p = 0.05;
    cfg.alpha = 0.1;
    cfg.l_max = 1000;
    cfg.simulate = false;
  } else if (name == "real-workplace" || name == "real-conference") {
    cfg.source = NetworkSource::contact_file;
    cfg.alpha = 0.01;
    cfg.dt = name == "real-workplace" ? 1000.0 : 200.0;
    cfg.period = 100;
  } else if (name == "windowed-compare") {
    cfg.p = 0.1;
    cfg.alpha = 0.1;
    cfg.mus = {0.5};
  } else {
    throw StructuralError("unknown scenario '" + std::string(name) + "'");
  }
  return cfg;
}

ScenarioResult run_scenario(const ExperimentConfig& cfg) {
  const std::string_view name = cfg.scenario;
  if (std::find(kScenarios.begin(), kScenarios.end(), name) == kScenarios.end()) {
    throw StructuralError("unknown scenario '" + cfg.scenario + "'");
  }
  cfg.validate();
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw StructuralError("cannot create output directory " + cfg.out_dir.string());

  Artifacts a{cfg, {}};
  a.result.manifest["config"] = to_json(cfg);
  a.result.manifest["summary"] = nlohmann::json::object();

  if (name == "validation") run_validation(a);
  else if (name == "decay-sweep")
    run_variants(a, "alpha", {1e-1, 1e-2, 1e-3}, [](ExperimentConfig& c, double v) { c.alpha = v; });
  else if (name == "frequency-sweep")
    run_variants(a, "beta", {10.0, 50.0, 100.0}, [](ExperimentConfig& c, double v) { c.beta = v; });
  else if (name == "sparsity-sweep")
    run_variants(a, "p", {0.10, 0.05, 0.02}, [](ExperimentConfig& c, double v) {
      c.p = v;
      c.require_connected = v >= 0.05;
    });
  else if (name == "period-convergence") run_period_convergence(a);
  else if (name == "windowed-compare") run_windowed(a);
  else run_real(a);

  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : a.result.files) files.push_back(f.filename().string());
  a.result.manifest["files"] = files;
  const auto manifest_path = cfg.out_dir / "manifest.json";
  auto out = open_output(manifest_path);
  out << a.result.manifest.dump(2) << '\n';
  a.result.files.push_back(manifest_path);
  return a.result;
}

}  // namespace tiedecay
