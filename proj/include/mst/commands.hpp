#pragma once

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mst {

enum class LogBase { Nats, Bits };
enum class OutputFormat { Csv, Json };

struct Range {
  double lo;
  double hi;
};

struct ScanConfig {
  int grid_n = 200;
  Range lambda_range{0.001, 0.999};
  Range v_range{0.001, 0.999};
  LogBase log_base = LogBase::Nats;
  std::filesystem::path output_path;
  OutputFormat format = OutputFormat::Csv;
  double tol = 1e-9;
};

/// Throws std::invalid_argument on a malformed config.
void validate(const ScanConfig& cfg);

/// Centres of a uniform partition of [lo, hi] into n cells.
std::vector<double> cell_centers(Range range, int n);

/// 1 for nats, 1/log(2) for bits.
double log_scale(LogBase base);
std::string_view to_string(LogBase base);

/// Fixed float formatting for every emitted file: 12 significant digits.
std::string format_number(double value);

using Cell = std::variant<double, long, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// CSV with a header row, or a JSON array of flat objects keyed by the header.
std::string render(const Table& table, OutputFormat format);

/// Writes `content` to `path` byte for byte. Throws std::runtime_error on I/O
/// failure.
void write_file(const std::filesystem::path& path, const std::string& content);

/// Sidecar path for auxiliary JSON next to an output file.
std::filesystem::path sidecar_path(const std::filesystem::path& output);

struct ClassifyScan {
  Table table;
  long mismatches = 0;  // off-boundary disagreements between the two paths
  std::vector<std::string> mismatch_report;
};

/// Boundary band inside which the closed-form and matrix classifications may
/// disagree.
inline constexpr double kClassifyBand = 1e-6;

ClassifyScan classify_scan(const ScanConfig& cfg);

/// "lambda,v,e3ur,argmin_r"
Table bound_scan(const ScanConfig& cfg);

struct PureCurves {
  Table table;
  nlohmann::ordered_json sidecar;
};

/// "lambda,e3ur,teleport,e3u" over lambda_range with N = 0; sidecar carries
/// the crossover lambda.
PureCurves pure_curves(const ScanConfig& cfg);

struct ConjectureCheck {
  Table table;
  nlohmann::ordered_json sidecar;
  double max_abs_err = 0.0;
};

/// "m,lambda,v,ratio,expected,abs_err" for m in 3..m_max over the entangled
/// (lambda > v) grid points; sidecar carries the bisected single-mode PPT
/// boundary for each m and v.
ConjectureCheck conjecture_check(int m_max, const ScanConfig& cfg);

struct StateQuery {
  int m = 3;
  std::optional<double> r;
  std::optional<double> lambda;
  std::optional<double> N;
  std::optional<double> v;
  LogBase log_base = LogBase::Nats;
  double tol = 1e-9;
};

/// Throws std::invalid_argument for conflicting, missing or out-of-range
/// parameters.
nlohmann::ordered_json state_info(const StateQuery& query);

}  // namespace mst
