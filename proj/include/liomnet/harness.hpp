#pragma once

// Disorder-averaged experiments: configuration, a deterministic worker pool
// over (W, realization) tasks, aggregation, and CSV/SVG rendering.

#include "liomnet/entanglement.hpp"
#include "liomnet/liom_metrics.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace liomnet {

enum class ExperimentMode { merit_tnm, merit_edm, entangle, oracle_compare };

const char* mode_name(ExperimentMode mode);

struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::merit_tnm;
  double j = 1.0;
  double delta = 1.0;
  std::vector<double> w_list{8.0, 12.0, 16.0, 20.0};
  int block_legs = 4;
  int chain_sites = 0;  // merit-edm and oracle-compare only; 0 picks the default
  int realizations = 100;
  std::uint64_t seed = 1;
  double t_min = 0.1;
  double t_max = 1e6;
  int t_points = 48;
  std::string out = ".";
  int dense_limit = default_dense_limit;
  int workers = 1;
  DiagonalPath diagonal_path = DiagonalPath::automatic;
  bool svg = false;

  void validate() const;
  TimeGrid time_grid() const;
  /// Sites of the isolated chain (EDM) or of the whole chain (oracle).
  int resolved_chain_sites() const;
};

/// Applies one `key=value` setting; keys match the long CLI flags without dashes.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Flat key=value text; blank lines and lines starting with '#' are ignored.
void apply_config_text(ExperimentConfig& cfg, const std::string& text);
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

std::vector<double> parse_number_list(const std::string& text);

struct RealizationValue {
  std::uint64_t realization = 0;
  double value = 0.0;
};

struct AggregateStats {
  double mean = 0.0;
  double sem = 0.0;  // sample standard deviation / sqrt(count)
  std::size_t count = 0;
};

/// Mean and standard error, summed in realization order whatever the input order.
AggregateStats aggregate_realizations(std::vector<RealizationValue> rows);

/// Runs task(i) for i in [0, count) on `workers` threads. The first failure by
/// task index is rethrown after all workers finish.
void run_tasks(std::size_t count, int workers, const std::function<void(std::size_t)>& task);

struct MeritRow {
  std::string method;  // "tnm" or "edm"
  MeritReport report;
  std::uint64_t seed = 0;
};

struct EntropyRow {
  int block_legs = 0;
  double disorder_w = 0.0;
  std::uint64_t realization = 0;
  double time = 0.0;
  double entropy = 0.0;
  std::uint64_t seed = 0;
};

struct OracleRow {
  int chain_sites = 0;
  int block_legs = 0;
  double disorder_w = 0.0;
  std::uint64_t realization = 0;
  double time = 0.0;
  double entropy_exact = 0.0;
  double entropy_tn = 0.0;
  double deviation = 0.0;
  std::uint64_t seed = 0;
};

/// Chain used for one realization of a given mode and disorder width.
ChainSpec realization_chain(const ExperimentConfig& cfg, double disorder_w,
                            std::uint64_t realization);

/// Single realization of the merit experiment (one CSV row).
MeritRow merit_realization(const ExperimentConfig& cfg, double disorder_w,
                           std::uint64_t realization);

std::vector<MeritRow> run_merit_experiment(const ExperimentConfig& cfg);
std::vector<EntropyRow> run_entropy_experiment(const ExperimentConfig& cfg);
std::vector<OracleRow> run_oracle_compare(const ExperimentConfig& cfg);

std::string merit_raw_csv(const std::vector<MeritRow>& rows);
std::string merit_aggregate_csv(const std::vector<MeritRow>& rows);
std::string entropy_raw_csv(const std::vector<EntropyRow>& rows);
std::string entropy_aggregate_csv(const std::vector<EntropyRow>& rows);
std::string oracle_raw_csv(const std::vector<OracleRow>& rows);
std::string oracle_aggregate_csv(const std::vector<OracleRow>& rows);

/// 17 significant digits, the CSV float format.
std::string format_real(double value);

struct OutputFile {
  std::string name;
  std::string contents;
};

/// Runs the configured experiment and renders every output file in memory.
std::vector<OutputFile> render_experiment(const ExperimentConfig& cfg);

/// Writes files under `directory`, creating it if needed.
void write_outputs(const std::string& directory, const std::vector<OutputFile>& files);

}  // namespace liomnet
