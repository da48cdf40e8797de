// Command-line front end: figure data scans and single-state queries for
// symmetric multimode squeezed thermal states.

#include "mst/commands.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>
#include <string>

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitConsistency = 2;

mst::Range parse_range(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument(fmt::format("range must be 'lo,hi', got '{}'", text));
  }
  std::size_t used_lo = 0;
  std::size_t used_hi = 0;
  const std::string lo = text.substr(0, comma);
  const std::string hi = text.substr(comma + 1);
  try {
    const mst::Range r{std::stod(lo, &used_lo), std::stod(hi, &used_hi)};
    if (used_lo != lo.size() || used_hi != hi.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument(fmt::format("range must be 'lo,hi', got '{}'", text));
  }
}

struct ScanFlags {
  int grid_n = 200;
  std::string lambda_range = "0.001,0.999";
  std::string v_range = "0.001,0.999";
  std::string log_base = "nats";
  std::string out;
  std::string format = "csv";
  double tol = 1e-9;

  mst::ScanConfig config() const {
    mst::ScanConfig cfg;
    cfg.grid_n = grid_n;
    cfg.lambda_range = parse_range(lambda_range);
    cfg.v_range = parse_range(v_range);
    cfg.log_base = log_base == "bits" ? mst::LogBase::Bits : mst::LogBase::Nats;
    cfg.output_path = out;
    cfg.format = format == "json" ? mst::OutputFormat::Json : mst::OutputFormat::Csv;
    cfg.tol = tol;
    mst::validate(cfg);
    return cfg;
  }
};

void add_scan_flags(CLI::App* cmd, ScanFlags& flags) {
  cmd->add_option("--grid-n", flags.grid_n, "Grid points per axis")->capture_default_str();
  cmd->add_option("--lambda-range", flags.lambda_range, "lambda range as lo,hi")->capture_default_str();
  cmd->add_option("--v-range", flags.v_range, "v range as lo,hi")->capture_default_str();
  cmd->add_option("--log-base", flags.log_base, "Entropy unit")
      ->check(CLI::IsMember({"nats", "bits"}))
      ->capture_default_str();
  cmd->add_option("--out", flags.out, "Output file")->required();
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--tol", flags.tol, "PSD / feasibility tolerance")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement classification and relative-entropy bounds for multimode squeezed thermal states"};
  app.require_subcommand(1);

  ScanFlags classify_flags;
  auto* classify = app.add_subcommand("classify-scan", "Classify 3-mode states over a (lambda, v) grid");
  add_scan_flags(classify, classify_flags);

  ScanFlags bound_flags;
  auto* bound = app.add_subcommand("bound-scan", "E_3ur upper bound over a (lambda, v) grid");
  add_scan_flags(bound, bound_flags);

  ScanFlags pure_flags;
  auto* pure = app.add_subcommand("pure-curves", "E_3ur against 2 S(sigma_A) for pure 3-mode states");
  add_scan_flags(pure, pure_flags);

  ScanFlags conj_flags;
  conj_flags.grid_n = 10;
  conj_flags.lambda_range = "0.5,0.95";
  conj_flags.v_range = "0.05,0.45";
  int m_max = 6;
  auto* conj = app.add_subcommand("conjecture-check", "Check E_mur / E_2ur = m/2 and locate PPT boundaries");
  add_scan_flags(conj, conj_flags);
  conj->add_option("--m-max", m_max, "Largest mode count")->check(CLI::Range(3, 64))->capture_default_str();

  mst::StateQuery query;
  std::string info_log_base = "nats";
  auto* info = app.add_subcommand("state-info", "Print derived quantities of one state as JSON");
  info->add_option("--m", query.m, "Mode count")->capture_default_str();
  auto* opt_r = info->add_option("--r", query.r, "Squeezing parameter r");
  auto* opt_lambda = info->add_option("--lambda", query.lambda, "tanh r");
  auto* opt_n = info->add_option("--N", query.N, "Thermal photons per mode");
  auto* opt_v = info->add_option("--v", query.v, "N/(N+1)");
  opt_r->excludes(opt_lambda);
  opt_n->excludes(opt_v);
  info->add_option("--log-base", info_log_base, "Entropy unit")
      ->check(CLI::IsMember({"nats", "bits"}))
      ->capture_default_str();
  info->add_option("--tol", query.tol, "PSD / feasibility tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*classify) {
      const mst::ScanConfig cfg = classify_flags.config();
      const mst::ClassifyScan scan = mst::classify_scan(cfg);
      mst::write_file(cfg.output_path, mst::render(scan.table, cfg.format));
      if (scan.mismatches > 0) {
        std::cerr << fmt::format("{} off-boundary disagreements between closed-form and matrix classification\n",
                                 scan.mismatches);
        for (const auto& line : scan.mismatch_report) {
          std::cerr << "  " << line << '\n';
        }
        return kExitConsistency;
      }
    } else if (*bound) {
      const mst::ScanConfig cfg = bound_flags.config();
      const mst::Table table = mst::bound_scan(cfg);
      mst::write_file(cfg.output_path, mst::render(table, cfg.format));
      nlohmann::ordered_json meta;
      meta["log_base"] = mst::to_string(cfg.log_base);
      meta["rows"] = table.rows.size();
      mst::write_file(mst::sidecar_path(cfg.output_path), meta.dump(1) + "\n");
    } else if (*pure) {
      const mst::ScanConfig cfg = pure_flags.config();
      const mst::PureCurves curves = mst::pure_curves(cfg);
      mst::write_file(cfg.output_path, mst::render(curves.table, cfg.format));
      mst::write_file(mst::sidecar_path(cfg.output_path), curves.sidecar.dump(1) + "\n");
    } else if (*conj) {
      const mst::ScanConfig cfg = conj_flags.config();
      const mst::ConjectureCheck check = mst::conjecture_check(m_max, cfg);
      mst::write_file(cfg.output_path, mst::render(check.table, cfg.format));
      mst::write_file(mst::sidecar_path(cfg.output_path), check.sidecar.dump(1) + "\n");
      std::cout << fmt::format("max_abs_err={}\n", mst::format_number(check.max_abs_err));
    } else if (*info) {
      query.log_base = info_log_base == "bits" ? mst::LogBase::Bits : mst::LogBase::Nats;
      std::cout << mst::state_info(query).dump(1) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
