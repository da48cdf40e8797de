#include "mst/commands.hpp"

#include "mst/bounds.hpp"
#include "mst/parallel.hpp"
#include "mst/separability.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace mst {

namespace {

void validate_range(Range r, const char* name) {
  if (!(r.lo > 0.0 && r.hi < 1.0 && r.lo < r.hi)) {
    throw std::invalid_argument(fmt::format("{} must satisfy 0 < lo < hi < 1, got [{}, {}]", name, r.lo, r.hi));
  }
}

nlohmann::ordered_json cell_to_json(const Cell& cell) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, cell);
}

std::string cell_to_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, long>) {
          return std::to_string(v);
        } else {
          return v;
        }
      },
      cell);
}

// JSON numbers are routed through the 12-digit text form so that CSV and JSON
// outputs carry identical values.
nlohmann::ordered_json number(double value) {
  if (!std::isfinite(value)) {
    return nullptr;
  }
  return std::stod(format_number(value));
}

}  // namespace

void validate(const ScanConfig& cfg) {
  if (cfg.grid_n < 2) {
    throw std::invalid_argument(fmt::format("grid_n must be >= 2, got {}", cfg.grid_n));
  }
  validate_range(cfg.lambda_range, "lambda range");
  validate_range(cfg.v_range, "v range");
  if (!(cfg.tol > 0.0)) {
    throw std::invalid_argument(fmt::format("tol must be positive, got {}", cfg.tol));
  }
}

std::vector<double> cell_centers(Range range, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = range.lo + (range.hi - range.lo) * (i + 0.5) / n;
  }
  return out;
}

double log_scale(LogBase base) { return base == LogBase::Bits ? 1.0 / std::numbers::ln2 : 1.0; }

std::string_view to_string(LogBase base) { return base == LogBase::Bits ? "bits" : "nats"; }

std::string format_number(double value) { return fmt::format("{:.12g}", value); }

std::string render(const Table& table, OutputFormat format) {
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < table.header.size(); ++c) {
        obj[table.header[c]] = std::holds_alternative<double>(row[c]) ? number(std::get<double>(row[c]))
                                                                     : cell_to_json(row[c]);
      }
      rows.push_back(std::move(obj));
    }
    return rows.dump(1) + "\n";
  }
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    out += (c ? "," : "") + table.header[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) {
        out += ',';
      }
      out += cell_to_text(row[c]);
    }
    out += '\n';
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error(fmt::format("cannot open {} for writing", path.string()));
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw std::runtime_error(fmt::format("failed writing {}", path.string()));
  }
}

std::filesystem::path sidecar_path(const std::filesystem::path& output) {
  std::filesystem::path p = output;
  p += ".meta.json";
  return p;
}

ClassifyScan classify_scan(const ScanConfig& cfg) {
  validate(cfg);
  const auto lambdas = cell_centers(cfg.lambda_range, cfg.grid_n);
  const auto vs = cell_centers(cfg.v_range, cfg.grid_n);
  const std::size_t n = lambdas.size() * vs.size();
  std::vector<std::pair<Classification, Classification>> classes(n);
  parallel_for(n, [&](std::size_t idx) {
    const MstState state = MstState::from_lambda_v(3, lambdas[idx / vs.size()], vs[idx % vs.size()]);
    classes[idx] = {classify(state), classify_generic(state, cfg.tol)};
  });

  ClassifyScan out;
  out.table.header = {"lambda", "v", "class", "class_generic"};
  out.table.rows.reserve(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const double lambda = lambdas[idx / vs.size()];
    const double v = vs[idx % vs.size()];
    const auto [closed, generic] = classes[idx];
    out.table.rows.push_back({lambda, v, std::string(to_string(closed)), std::string(to_string(generic))});
    if (closed != generic && boundary_distance(lambda, v) > kClassifyBand) {
      ++out.mismatches;
      out.mismatch_report.push_back(fmt::format("lambda={} v={}: closed={} generic={}", format_number(lambda),
                                                format_number(v), to_string(closed), to_string(generic)));
    }
  }
  return out;
}

Table bound_scan(const ScanConfig& cfg) {
  validate(cfg);
  const auto lambdas = cell_centers(cfg.lambda_range, cfg.grid_n);
  const auto vs = cell_centers(cfg.v_range, cfg.grid_n);
  const std::size_t n = lambdas.size() * vs.size();
  std::vector<RelEntropyResult> results(n);
  parallel_for(n, [&](std::size_t idx) {
    results[idx] = e3ur_bound(MstState::from_lambda_v(3, lambdas[idx / vs.size()], vs[idx % vs.size()]));
  });
  const double scale = log_scale(cfg.log_base);
  Table table;
  table.header = {"lambda", "v", "e3ur", "argmin_r"};
  table.rows.reserve(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    table.rows.push_back({lambdas[idx / vs.size()], vs[idx % vs.size()], scale * results[idx].value,
                          results[idx].argmin_r});
  }
  return table;
}

PureCurves pure_curves(const ScanConfig& cfg) {
  validate(cfg);
  const auto lambdas = cell_centers(cfg.lambda_range, cfg.grid_n);
  std::vector<BoundReport> reports(lambdas.size());
  parallel_for(lambdas.size(),
               [&](std::size_t i) { reports[i] = e3u_bound(MstState::from_lambda_v(3, lambdas[i], 0.0)); });

  const double scale = log_scale(cfg.log_base);
  PureCurves out;
  out.table.header = {"lambda", "e3ur", "teleport", "e3u"};
  std::vector<std::size_t> sign_changes;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const BoundReport& r = reports[i];
    out.table.rows.push_back({lambdas[i], scale * r.e_rel, scale * *r.e_teleport, scale * *r.e_combined});
    if (i > 0) {
      const bool prev = reports[i - 1].e_rel > *reports[i - 1].e_teleport;
      const bool here = r.e_rel > *r.e_teleport;
      if (prev != here) {
        sign_changes.push_back(i);
      }
    }
  }

  out.sidecar["log_base"] = to_string(cfg.log_base);
  out.sidecar["rows"] = lambdas.size();
  out.sidecar["sign_changes"] = sign_changes.size();
  if (sign_changes.size() == 1) {
    const std::size_t i = sign_changes.front();
    out.sidecar["crossover_lambda"] = number(pure_crossover_lambda(lambdas[i - 1], lambdas[i]));
    out.sidecar["e3ur_better_above"] = reports.back().e_rel < *reports.back().e_teleport;
  } else {
    out.sidecar["crossover_lambda"] = nullptr;
  }
  return out;
}

ConjectureCheck conjecture_check(int m_max, const ScanConfig& cfg) {
  validate(cfg);
  if (m_max < 3) {
    throw std::invalid_argument(fmt::format("m_max must be >= 3, got {}", m_max));
  }
  const auto lambdas = cell_centers(cfg.lambda_range, cfg.grid_n);
  const auto vs = cell_centers(cfg.v_range, cfg.grid_n);

  std::vector<std::pair<double, double>> points;
  for (double lambda : lambdas) {
    for (double v : vs) {
      if (lambda > v) {
        points.emplace_back(lambda, v);
      }
    }
  }
  std::vector<double> e2(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    e2[i] = eur_bound(MstState::from_lambda_v(2, points[i].first, points[i].second)).value;
  });

  ConjectureCheck out;
  out.table.header = {"m", "lambda", "v", "ratio", "expected", "abs_err"};
  for (int m = 3; m <= m_max; ++m) {
    std::vector<double> em(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
      em[i] = eur_bound(MstState::from_lambda_v(m, points[i].first, points[i].second)).value;
    });
    const double expected = 0.5 * m;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double ratio = em[i] / e2[i];
      const double err = std::abs(ratio - expected);
      out.max_abs_err = std::max(out.max_abs_err, err);
      out.table.rows.push_back({static_cast<long>(m), points[i].first, points[i].second, ratio, expected, err});
    }
  }

  nlohmann::ordered_json thresholds = nlohmann::ordered_json::array();
  for (int m = 3; m <= m_max; ++m) {
    for (double v : vs) {
      nlohmann::ordered_json entry;
      entry["m"] = m;
      entry["v"] = number(v);
      entry["lambda_ppt"] = number(ppt_boundary_lambda(m, v));
      if (m == 3) {
        entry["lambda_closed"] = number(npt_threshold_lambda(v));
      }
      thresholds.push_back(std::move(entry));
    }
  }
  out.sidecar["max_abs_err"] = number(out.max_abs_err);
  out.sidecar["rows"] = out.table.rows.size();
  out.sidecar["ppt_thresholds"] = std::move(thresholds);
  return out;
}

nlohmann::ordered_json state_info(const StateQuery& q) {
  if (q.r.has_value() == q.lambda.has_value()) {
    throw std::invalid_argument("exactly one of --r and --lambda is required");
  }
  if (q.N.has_value() == q.v.has_value()) {
    throw std::invalid_argument("exactly one of --N and --v is required");
  }
  if (q.m < 2) {
    throw std::invalid_argument(fmt::format("--m must be >= 2, got {}", q.m));
  }
  if (q.lambda && !(*q.lambda >= 0.0 && *q.lambda < 1.0)) {
    throw std::invalid_argument(fmt::format("--lambda must lie in [0, 1), got {}", *q.lambda));
  }
  if (q.v && !(*q.v >= 0.0 && *q.v < 1.0)) {
    throw std::invalid_argument(fmt::format("--v must lie in [0, 1), got {}", *q.v));
  }
  const double r = q.r ? *q.r : std::atanh(*q.lambda);
  const double N = q.N ? *q.N : *q.v / (1.0 - *q.v);
  const MstState state(q.m, r, N);
  const double scale = log_scale(q.log_base);

  nlohmann::ordered_json out;
  out["m"] = state.m();
  out["r"] = number(state.r());
  out["N"] = number(state.N());
  out["v"] = number(state.v());
  out["lambda"] = number(state.lambda());
  out["t"] = number(state.t());
  out["s"] = number(state.s());
  nlohmann::ordered_json nus = nlohmann::ordered_json::array();
  for (double nu : symplectic_eigenvalues(mst_covariance(state))) {
    nus.push_back(number(nu));
  }
  out["symplectic_eigenvalues"] = std::move(nus);
  out["entropy"] = number(scale * von_neumann_entropy(state));
  const RelEntropyResult bound = eur_bound(state);
  if (state.m() == 3) {
    out["classification"] = to_string(classify(state));
    out["classification_generic"] = to_string(classify_generic(state, q.tol));
    out["e3ur"] = number(scale * bound.value);
    if (fully_separable_closed(state)) {
      out["warning"] = "state is fully separable (E_3 = 0); e3ur is not an entanglement bound here";
    }
  } else {
    out["emur"] = number(scale * bound.value);
  }
  out["argmin_r"] = number(bound.argmin_r);
  if (state.is_pure()) {
    out["teleport"] = number(scale * teleport_bound(state));
  }
  out["log_base"] = to_string(q.log_base);
  return out;
}

}  // namespace mst
