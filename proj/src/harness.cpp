#include "liomnet/harness.hpp"

#include "liomnet/errors.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

namespace liomnet {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ArgumentError("setting '" + key + "' expects a number, got '" + text + "'");
  }
}

long long parse_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long value = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ArgumentError("setting '" + key + "' expects an integer, got '" + text + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw ArgumentError("setting '" + key + "' expects a boolean, got '" + text + "'");
}

int checked_int(const std::string& key, long long v) {
  if (v < -2147483647LL || v > 2147483647LL) throw ArgumentError("setting '" + key + "' out of range");
  return static_cast<int>(v);
}

std::string seed_text(std::uint64_t v) { return std::to_string(v); }

// Rows grouped by a key, each group kept in canonical (realization) order.
template <typename Key>
using Groups = std::map<Key, std::vector<RealizationValue>>;

std::string axis_label(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", value);
  return buf;
}

std::string svg_polyline_chart(const std::string& title, const std::string& x_label,
                               const std::string& y_label,
                               const std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>& series) {
  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (const auto& [name, points] : series) {
    for (const auto& [x, y] : points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (x_lo > x_hi) x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) y_hi = y_lo + 1.0;

  const double width = 640, height = 420, margin = 60;
  auto sx = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin); };
  auto sy = [&](double y) {
    return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin);
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\">" << title << "</text>\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
     << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
     << height - margin << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 20 << "\" text-anchor=\"middle\">"
     << x_label << "</text>\n";
  os << "<text x=\"16\" y=\"" << height / 2 << "\" transform=\"rotate(-90 16 " << height / 2
     << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
  os << "<text x=\"" << margin << "\" y=\"" << height - margin + 16 << "\">" << axis_label(x_lo)
     << "</text>\n";
  os << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 16
     << "\" text-anchor=\"end\">" << axis_label(x_hi) << "</text>\n";
  os << "<text x=\"" << margin - 4 << "\" y=\"" << height - margin << "\" text-anchor=\"end\">"
     << axis_label(y_lo) << "</text>\n";
  os << "<text x=\"" << margin - 4 << "\" y=\"" << margin + 4 << "\" text-anchor=\"end\">"
     << axis_label(y_hi) << "</text>\n";
  std::size_t index = 0;
  for (const auto& [name, points] : series) {
    const char* color = colors[index % 6];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : points) {
      if (std::isfinite(x) && std::isfinite(y)) os << sx(x) << ',' << sy(y) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << width - margin - 4 << "\" y=\"" << margin + 16 * index
       << "\" text-anchor=\"end\" fill=\"" << color << "\">" << name << "</text>\n";
    ++index;
  }
  os << "</svg>\n";
  return os.str();
}

std::string w_label(double w) { return "W=" + format_real(w); }

}  // namespace

const char* mode_name(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::merit_tnm: return "merit-tnm";
    case ExperimentMode::merit_edm: return "merit-edm";
    case ExperimentMode::entangle: return "entangle";
    case ExperimentMode::oracle_compare: return "oracle-compare";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  if (realizations < 1) throw ArgumentError("realizations must be >= 1");
  if (w_list.empty()) throw ArgumentError("disorder list must not be empty");
  for (double w : w_list) {
    if (!std::isfinite(w) || w < 0.0) throw ArgumentError("disorder widths must be finite and >= 0");
  }
  if (!std::isfinite(j) || !std::isfinite(delta)) throw ArgumentError("couplings must be finite");
  if (block_legs < 2 || block_legs % 2 != 0) throw ArgumentError("block-legs must be even and >= 2");
  if (!(t_min > 0.0) || !(t_min < t_max) || !std::isfinite(t_max)) {
    throw ArgumentError("time grid needs 0 < t-min < t-max");
  }
  if (t_points < 1) throw ArgumentError("t-points must be >= 1");
  if (dense_limit < 1 || dense_limit > 16) throw ArgumentError("dense-limit must be in [1, 16]");
  if (workers < 1) throw ArgumentError("workers must be >= 1");
  if (mode == ExperimentMode::merit_edm && resolved_chain_sites() < 2) {
    throw ArgumentError("chain-sites must be >= 2");
  }
  if (mode == ExperimentMode::oracle_compare && resolved_chain_sites() != 2 * block_legs) {
    throw ArgumentError("oracle comparison needs chain-sites = 2 * block-legs (window = chain)");
  }
}

TimeGrid ExperimentConfig::time_grid() const { return TimeGrid::log_spaced(t_min, t_max, t_points); }

int ExperimentConfig::resolved_chain_sites() const {
  switch (mode) {
    case ExperimentMode::merit_edm: return chain_sites > 0 ? chain_sites : block_legs + 1;
    case ExperimentMode::merit_tnm: return 2 * block_legs + 2;
    case ExperimentMode::entangle: return 2 * block_legs;
    case ExperimentMode::oracle_compare: return chain_sites > 0 ? chain_sites : 2 * block_legs;
  }
  return 2 * block_legs;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    values.push_back(parse_real("disorder", item));
  }
  if (values.empty()) throw ArgumentError("expected a comma-separated list of numbers");
  return values;
}

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "mode") {
    if (value == "merit-tnm") cfg.mode = ExperimentMode::merit_tnm;
    else if (value == "merit-edm") cfg.mode = ExperimentMode::merit_edm;
    else if (value == "entangle") cfg.mode = ExperimentMode::entangle;
    else if (value == "oracle-compare" || value == "oracle") cfg.mode = ExperimentMode::oracle_compare;
    else throw ArgumentError("unknown mode '" + value + "'");
  } else if (key == "method") {
    if (value == "tnm") cfg.mode = ExperimentMode::merit_tnm;
    else if (value == "edm") cfg.mode = ExperimentMode::merit_edm;
    else throw ArgumentError("method must be tnm or edm");
  } else if (key == "j") {
    cfg.j = parse_real(key, value);
  } else if (key == "delta") {
    cfg.delta = parse_real(key, value);
  } else if (key == "disorder") {
    cfg.w_list = parse_number_list(value);
  } else if (key == "block-legs") {
    cfg.block_legs = checked_int(key, parse_integer(key, value));
  } else if (key == "chain-sites") {
    cfg.chain_sites = checked_int(key, parse_integer(key, value));
  } else if (key == "realizations") {
    cfg.realizations = checked_int(key, parse_integer(key, value));
  } else if (key == "seed") {
    const long long s = parse_integer(key, value);
    if (s < 0) throw ArgumentError("seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "t-min") {
    cfg.t_min = parse_real(key, value);
  } else if (key == "t-max") {
    cfg.t_max = parse_real(key, value);
  } else if (key == "t-points") {
    cfg.t_points = checked_int(key, parse_integer(key, value));
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "dense-limit") {
    cfg.dense_limit = checked_int(key, parse_integer(key, value));
  } else if (key == "workers") {
    cfg.workers = checked_int(key, parse_integer(key, value));
  } else if (key == "diagonal-path") {
    if (value == "auto") cfg.diagonal_path = DiagonalPath::automatic;
    else if (value == "dense") cfg.diagonal_path = DiagonalPath::dense;
    else if (value == "termwise") cfg.diagonal_path = DiagonalPath::termwise;
    else throw ArgumentError("diagonal-path must be auto, dense or termwise");
  } else if (key == "svg") {
    cfg.svg = parse_bool(key, value);
  } else {
    throw ArgumentError("unknown setting '" + key + "'");
  }
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError("config line " + std::to_string(line_no) + " is not key=value");
    }
    apply_setting(cfg, content.substr(0, eq), content.substr(eq + 1));
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(cfg, buffer.str());
}

AggregateStats aggregate_realizations(std::vector<RealizationValue> rows) {
  if (rows.empty()) throw ArgumentError("cannot aggregate zero realizations");
  std::sort(rows.begin(), rows.end(), [](const RealizationValue& a, const RealizationValue& b) {
    return a.realization < b.realization;
  });
  AggregateStats stats;
  stats.count = rows.size();
  double sum = 0.0;
  for (const auto& r : rows) sum += r.value;
  stats.mean = sum / static_cast<double>(stats.count);
  if (stats.count > 1) {
    double ss = 0.0;
    for (const auto& r : rows) ss += (r.value - stats.mean) * (r.value - stats.mean);
    const double variance = ss / static_cast<double>(stats.count - 1);
    stats.sem = std::sqrt(variance / static_cast<double>(stats.count));
  }
  return stats;
}

void run_tasks(std::size_t count, int workers, const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> failures(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        task(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1, workers));
  if (threads == 1 || count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::min(threads, count));
    for (std::size_t t = 0; t < std::min(threads, count); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
}

ChainSpec realization_chain(const ExperimentConfig& cfg, double disorder_w,
                            std::uint64_t realization) {
  const int n = cfg.mode == ExperimentMode::merit_edm ? cfg.resolved_chain_sites() + 2
                                                      : cfg.resolved_chain_sites();
  return make_chain(cfg.j, cfg.delta, disorder_w,
                    sample_fields(cfg.seed, realization, n, disorder_w));
}

MeritRow merit_realization(const ExperimentConfig& cfg, double disorder_w,
                           std::uint64_t realization) {
  const ChainSpec spec = realization_chain(cfg, disorder_w, realization);
  MeritRow row;
  row.seed = cfg.seed;
  if (cfg.mode == ExperimentMode::merit_tnm) {
    // Window [2, 2b+1] leaves one chain site beyond each edge.
    const WindowLayout layout = WindowLayout::make(cfg.block_legs, 2);
    const int site = layout.center_site();
    const DenseOperator tau = tn_liom(spec, layout, site, cfg.dense_limit);
    row.method = "tnm";
    row.report = merit_split(tau, spec, layout);
    row.report.site = site - layout.window.first + 1;
  } else if (cfg.mode == ExperimentMode::merit_edm) {
    const int n = cfg.resolved_chain_sites();
    const SiteRange window(2, n + 1);
    const int local_site = (n + 1) / 2;
    const DenseOperator tau =
        exact_window_liom(spec, window, window.first + local_site - 1, cfg.dense_limit);
    row.method = "edm";
    row.report = merit_split(tau, spec, window);
    row.report.site = local_site;
  } else {
    throw ArgumentError("merit experiment needs mode merit-tnm or merit-edm");
  }
  row.report.realization = realization;
  return row;
}

std::vector<MeritRow> run_merit_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto per_w = static_cast<std::size_t>(cfg.realizations);
  std::vector<MeritRow> rows(cfg.w_list.size() * per_w);
  run_tasks(rows.size(), cfg.workers, [&](std::size_t i) {
    rows[i] = merit_realization(cfg, cfg.w_list[i / per_w], i % per_w);
  });
  return rows;
}

std::vector<EntropyRow> run_entropy_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mode != ExperimentMode::entangle) throw ArgumentError("entropy experiment needs mode entangle");
  const TimeGrid grid = cfg.time_grid();
  const auto per_w = static_cast<std::size_t>(cfg.realizations);
  const std::size_t tasks = cfg.w_list.size() * per_w;
  std::vector<EntanglementTrace> traces(tasks);
  EntropyOptions options;
  options.path = cfg.diagonal_path;
  options.dense_limit = cfg.dense_limit;
  run_tasks(tasks, cfg.workers, [&](std::size_t i) {
    const double w = cfg.w_list[i / per_w];
    const std::uint64_t r = i % per_w;
    const ChainSpec spec = realization_chain(cfg, w, r);
    traces[i] = tn_entropy_trace(spec, WindowLayout::make(cfg.block_legs, 1), grid, options);
    traces[i].seed = cfg.seed;
    traces[i].realization = r;
  });

  std::vector<EntropyRow> rows;
  rows.reserve(tasks * grid.points.size());
  for (const auto& trace : traces) {
    for (std::size_t k = 0; k < grid.points.size(); ++k) {
      rows.push_back({trace.block_legs, trace.disorder_w, trace.realization, grid.points[k],
                      trace.entropy[k], trace.seed});
    }
  }
  return rows;
}

std::vector<OracleRow> run_oracle_compare(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mode != ExperimentMode::oracle_compare) {
    throw ArgumentError("oracle comparison needs mode oracle-compare");
  }
  const TimeGrid grid = cfg.time_grid();
  const int n = cfg.resolved_chain_sites();
  const auto per_w = static_cast<std::size_t>(cfg.realizations);
  const std::size_t tasks = cfg.w_list.size() * per_w;
  std::vector<std::vector<OracleRow>> per_task(tasks);
  EntropyOptions options;
  options.path = cfg.diagonal_path;
  options.dense_limit = cfg.dense_limit;
  run_tasks(tasks, cfg.workers, [&](std::size_t i) {
    const double w = cfg.w_list[i / per_w];
    const std::uint64_t r = i % per_w;
    const ChainSpec spec = realization_chain(cfg, w, r);
    const std::vector<double> exact =
        exact_entropy_trace(spec, cfg.block_legs, grid.points, cfg.dense_limit);
    const EntanglementTrace tn =
        tn_entropy_trace(spec, WindowLayout::make(cfg.block_legs, 1), grid, options);
    auto& out = per_task[i];
    for (std::size_t k = 0; k < grid.points.size(); ++k) {
      out.push_back({n, cfg.block_legs, w, r, grid.points[k], exact[k], tn.entropy[k],
                     std::abs(tn.entropy[k] - exact[k]), cfg.seed});
    }
  });
  std::vector<OracleRow> rows;
  for (auto& chunk : per_task) rows.insert(rows.end(), chunk.begin(), chunk.end());
  return rows;
}

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string merit_raw_csv(const std::vector<MeritRow>& rows) {
  std::ostringstream os;
  os << "method,size_param,disorder_w,realization,site,delta_total,delta_1,delta_2,seed\n";
  for (const auto& row : rows) {
    const MeritReport& r = row.report;
    os << row.method << ',' << r.size_param << ',' << format_real(r.disorder_w) << ','
       << r.realization << ',' << r.site << ',' << format_real(r.delta_total) << ','
       << format_real(r.delta_interior) << ',' << format_real(r.delta_boundary) << ','
       << seed_text(row.seed) << '\n';
  }
  return os.str();
}

std::string merit_aggregate_csv(const std::vector<MeritRow>& rows) {
  struct Key {
    std::string method;
    int size_param;
    double w;
    int site;
    bool operator<(const Key& o) const {
      return std::tie(method, size_param, w, site) < std::tie(o.method, o.size_param, o.w, o.site);
    }
  };
  std::map<Key, std::array<std::vector<RealizationValue>, 3>> groups;
  for (const auto& row : rows) {
    const MeritReport& r = row.report;
    auto& g = groups[Key{row.method, r.size_param, r.disorder_w, r.site}];
    g[0].push_back({r.realization, r.delta_total});
    g[1].push_back({r.realization, r.delta_interior});
    g[2].push_back({r.realization, r.delta_boundary});
  }
  std::ostringstream os;
  os << "method,size_param,disorder_w,site,delta_total_mean,delta_total_sem,delta_1_mean,"
        "delta_1_sem,delta_2_mean,delta_2_sem,n\n";
  for (const auto& [key, values] : groups) {
    const AggregateStats total = aggregate_realizations(values[0]);
    const AggregateStats interior = aggregate_realizations(values[1]);
    const AggregateStats boundary = aggregate_realizations(values[2]);
    os << key.method << ',' << key.size_param << ',' << format_real(key.w) << ',' << key.site << ','
       << format_real(total.mean) << ',' << format_real(total.sem) << ','
       << format_real(interior.mean) << ',' << format_real(interior.sem) << ','
       << format_real(boundary.mean) << ',' << format_real(boundary.sem) << ',' << total.count
       << '\n';
  }
  return os.str();
}

std::string entropy_raw_csv(const std::vector<EntropyRow>& rows) {
  std::ostringstream os;
  os << "block_legs,disorder_w,realization,time,entropy,seed\n";
  for (const auto& r : rows) {
    os << r.block_legs << ',' << format_real(r.disorder_w) << ',' << r.realization << ','
       << format_real(r.time) << ',' << format_real(r.entropy) << ',' << seed_text(r.seed) << '\n';
  }
  return os.str();
}

std::string entropy_aggregate_csv(const std::vector<EntropyRow>& rows) {
  Groups<std::tuple<int, double, double>> groups;
  for (const auto& r : rows) {
    groups[{r.block_legs, r.disorder_w, r.time}].push_back({r.realization, r.entropy});
  }
  std::ostringstream os;
  os << "block_legs,disorder_w,time,entropy_mean,entropy_sem,n\n";
  for (const auto& [key, values] : groups) {
    const auto& [legs, w, t] = key;
    const AggregateStats s = aggregate_realizations(values);
    os << legs << ',' << format_real(w) << ',' << format_real(t) << ',' << format_real(s.mean)
       << ',' << format_real(s.sem) << ',' << s.count << '\n';
  }
  return os.str();
}

std::string oracle_raw_csv(const std::vector<OracleRow>& rows) {
  std::ostringstream os;
  os << "chain_sites,block_legs,disorder_w,realization,time,entropy_exact,entropy_tn,deviation,seed\n";
  for (const auto& r : rows) {
    os << r.chain_sites << ',' << r.block_legs << ',' << format_real(r.disorder_w) << ','
       << r.realization << ',' << format_real(r.time) << ',' << format_real(r.entropy_exact) << ','
       << format_real(r.entropy_tn) << ',' << format_real(r.deviation) << ',' << seed_text(r.seed)
       << '\n';
  }
  return os.str();
}

std::string oracle_aggregate_csv(const std::vector<OracleRow>& rows) {
  std::map<std::tuple<int, int, double, double>, std::array<std::vector<RealizationValue>, 3>> groups;
  for (const auto& r : rows) {
    auto& g = groups[{r.chain_sites, r.block_legs, r.disorder_w, r.time}];
    g[0].push_back({r.realization, r.entropy_exact});
    g[1].push_back({r.realization, r.entropy_tn});
    g[2].push_back({r.realization, r.deviation});
  }
  std::ostringstream os;
  os << "chain_sites,block_legs,disorder_w,time,exact_mean,exact_sem,tn_mean,tn_sem,"
        "deviation_mean,deviation_sem,n\n";
  for (const auto& [key, values] : groups) {
    const auto& [n, legs, w, t] = key;
    const AggregateStats exact = aggregate_realizations(values[0]);
    const AggregateStats tn = aggregate_realizations(values[1]);
    const AggregateStats dev = aggregate_realizations(values[2]);
    os << n << ',' << legs << ',' << format_real(w) << ',' << format_real(t) << ','
       << format_real(exact.mean) << ',' << format_real(exact.sem) << ',' << format_real(tn.mean)
       << ',' << format_real(tn.sem) << ',' << format_real(dev.mean) << ','
       << format_real(dev.sem) << ',' << dev.count << '\n';
  }
  return os.str();
}

std::vector<OutputFile> render_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<OutputFile> files;
  using Series = std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>;

  if (cfg.mode == ExperimentMode::merit_tnm || cfg.mode == ExperimentMode::merit_edm) {
    const auto rows = run_merit_experiment(cfg);
    files.push_back({"merit_raw.csv", merit_raw_csv(rows)});
    files.push_back({"merit_aggregate.csv", merit_aggregate_csv(rows)});
    if (cfg.svg) {
      std::vector<std::pair<double, double>> points;
      for (double w : cfg.w_list) {
        std::vector<RealizationValue> values;
        for (const auto& row : rows) {
          if (row.report.disorder_w == w) values.push_back({row.report.realization, row.report.delta_total});
        }
        points.emplace_back(w, std::log(aggregate_realizations(values).mean));
      }
      files.push_back({std::string("merit_") + mode_name(cfg.mode) + ".svg",
                       svg_polyline_chart(mode_name(cfg.mode), "W", "ln mean Delta(tau)",
                                          Series{{mode_name(cfg.mode), points}})});
    }
  } else if (cfg.mode == ExperimentMode::entangle) {
    const auto rows = run_entropy_experiment(cfg);
    files.push_back({"entropy_raw.csv", entropy_raw_csv(rows)});
    files.push_back({"entropy_aggregate.csv", entropy_aggregate_csv(rows)});
    if (cfg.svg) {
      for (double w : cfg.w_list) {
        std::map<double, std::vector<RealizationValue>> by_time;
        for (const auto& r : rows) {
          if (r.disorder_w == w) by_time[r.time].push_back({r.realization, r.entropy});
        }
        std::vector<std::pair<double, double>> points;
        for (const auto& [t, values] : by_time) {
          points.emplace_back(std::log10(t), aggregate_realizations(values).mean);
        }
        files.push_back({"entropy_W" + format_real(w) + ".svg",
                         svg_polyline_chart("entangle b=" + std::to_string(cfg.block_legs) + " " +
                                                w_label(w),
                                            "log10 t", "mean S (nats)", Series{{w_label(w), points}})});
      }
    }
  } else {
    const auto rows = run_oracle_compare(cfg);
    files.push_back({"oracle_raw.csv", oracle_raw_csv(rows)});
    files.push_back({"oracle_aggregate.csv", oracle_aggregate_csv(rows)});
    if (cfg.svg) {
      for (double w : cfg.w_list) {
        std::map<double, std::array<std::vector<RealizationValue>, 2>> by_time;
        for (const auto& r : rows) {
          if (r.disorder_w != w) continue;
          by_time[r.time][0].push_back({r.realization, r.entropy_exact});
          by_time[r.time][1].push_back({r.realization, r.entropy_tn});
        }
        std::vector<std::pair<double, double>> exact, tn;
        for (const auto& [t, values] : by_time) {
          exact.emplace_back(std::log10(t), aggregate_realizations(values[0]).mean);
          tn.emplace_back(std::log10(t), aggregate_realizations(values[1]).mean);
        }
        files.push_back({"oracle_W" + format_real(w) + ".svg",
                         svg_polyline_chart("oracle-compare " + w_label(w), "log10 t",
                                            "mean S (nats)", Series{{"exact", exact}, {"network", tn}})});
      }
    }
  }
  return files;
}

void write_outputs(const std::string& directory, const std::vector<OutputFile>& files) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw ArgumentError("cannot create output directory '" + directory + "'");
  for (const auto& file : files) {
    const auto path = std::filesystem::path(directory) / file.name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write '" + path.string() + "'");
    out << file.contents;
  }
}

}  // namespace liomnet
