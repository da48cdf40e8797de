#include "mst/commands.hpp"

#include "mst/separability.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace mst;

namespace {

std::string text(const Cell& c) {
  if (std::holds_alternative<double>(c)) {
    return format_number(std::get<double>(c));
  }
  if (std::holds_alternative<long>(c)) {
    return std::to_string(std::get<long>(c));
  }
  return std::get<std::string>(c);
}

std::string row_text(const std::vector<Cell>& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    out += (i ? "," : "") + text(row[i]);
  }
  return out;
}

ScanConfig small(int n, Range lambda, Range v) {
  ScanConfig cfg;
  cfg.grid_n = n;
  cfg.lambda_range = lambda;
  cfg.v_range = v;
  return cfg;
}

}  // namespace

TEST_CASE("cell centres and number formatting") {
  const auto c = cell_centers({0.2, 0.8}, 3);
  REQUIRE(c.size() == 3);
  CHECK(format_number(c[0]) == "0.3");
  CHECK(format_number(c[1]) == "0.5");
  CHECK(format_number(c[2]) == "0.7");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(log_scale(LogBase::Bits) == doctest::Approx(1.0 / std::log(2.0)));
}

TEST_CASE("validate") {
  CHECK_NOTHROW(validate(ScanConfig{}));
  CHECK_THROWS_AS(validate(small(1, {0.1, 0.2}, {0.1, 0.2})), std::invalid_argument);
  CHECK_THROWS_AS(validate(small(3, {0.3, 0.2}, {0.1, 0.2})), std::invalid_argument);
  CHECK_THROWS_AS(validate(small(3, {0.0, 0.2}, {0.1, 0.2})), std::invalid_argument);
  CHECK_THROWS_AS(validate(small(3, {0.1, 0.2}, {0.1, 1.0})), std::invalid_argument);
}

TEST_CASE("classify_scan") {
  SUBCASE("3 x 3 over [0.2, 0.8]^2") {
    const ClassifyScan scan = classify_scan(small(3, {0.2, 0.8}, {0.2, 0.8}));
    CHECK(scan.table.header == std::vector<std::string>{"lambda", "v", "class", "class_generic"});
    REQUIRE(scan.table.rows.size() == 9);
    CHECK(scan.mismatches == 0);
    // Row-major, lambda outer.
    CHECK(row_text(scan.table.rows[1]).rfind("0.3,0.5,", 0) == 0);
    CHECK(row_text(scan.table.rows[3]).rfind("0.5,0.3,", 0) == 0);
    // Along each lambda row classes never get more entangled as v rises.
    for (int i = 0; i < 3; ++i) {
      for (int k = 1; k < 3; ++k) {
        const auto cls = [&](int kk) { return text(scan.table.rows[3 * i + kk][2]); };
        if (cls(k - 1) == "FullySeparable") {
          CHECK(cls(k) == "FullySeparable");
        }
      }
    }
  }
  SUBCASE("spot rows") {
    const ClassifyScan scan = classify_scan(small(4, {0.15, 0.55}, {0.15, 0.55}));
    REQUIRE(scan.table.rows.size() == 16);
    bool saw_insep = false;
    bool saw_sep = false;
    for (const auto& row : scan.table.rows) {
      const std::string line = row_text(row);
      if (line.rfind("0.5,0.2,", 0) == 0) {
        CHECK(line == "0.5,0.2,FullyInseparable,FullyInseparable");
        saw_insep = true;
      }
      if (line.rfind("0.2,0.5,", 0) == 0) {
        CHECK(line == "0.2,0.5,FullySeparable,FullySeparable");
        saw_sep = true;
      }
    }
    CHECK(saw_insep);
    CHECK(saw_sep);
  }
}

TEST_CASE("bound_scan") {
  const Table t = bound_scan(small(6, {0.05, 0.95}, {0.05, 0.95}));
  REQUIRE(t.rows.size() == 36);
  CHECK(t.header == std::vector<std::string>{"lambda", "v", "e3ur", "argmin_r"});
  for (const auto& row : t.rows) {
    const double e = std::get<double>(row[2]);
    CHECK(std::isfinite(e));
    CHECK(e >= 0.0);
    if (std::get<double>(row[0]) == std::get<double>(row[1])) {
      CHECK(e < 1e-8);
    }
  }
  // Fixed v: nondecreasing in lambda on the entangled side.
  for (int k = 0; k < 6; ++k) {
    double prev = -1.0;
    for (int i = 0; i < 6; ++i) {
      const auto& row = t.rows[6 * i + k];
      if (std::get<double>(row[0]) >= std::get<double>(row[1])) {
        CHECK(std::get<double>(row[2]) >= prev);
        prev = std::get<double>(row[2]);
      }
    }
  }

  ScanConfig bits = small(2, {0.3, 0.9}, {0.1, 0.2});
  const Table tn = bound_scan(bits);
  bits.log_base = LogBase::Bits;
  const Table tb = bound_scan(bits);
  CHECK(std::get<double>(tb.rows[3][2]) == doctest::Approx(std::get<double>(tn.rows[3][2]) / std::log(2.0)));
}

TEST_CASE("pure_curves") {
  const PureCurves curves = pure_curves(small(200, {0.001, 0.999}, {0.001, 0.999}));
  REQUIRE(curves.table.rows.size() == 200);
  for (const auto& row : curves.table.rows) {
    const double e = std::get<double>(row[1]);
    const double tp = std::get<double>(row[2]);
    CHECK(std::get<double>(row[3]) == std::min(e, tp));
  }
  const auto& first = curves.table.rows.front();
  CHECK(std::get<double>(first[1]) < 1e-3);
  CHECK(std::get<double>(first[2]) < 1e-3);
  const auto& last = curves.table.rows.back();
  CHECK(std::get<double>(last[1]) < std::get<double>(last[2]));
  CHECK(curves.sidecar["sign_changes"] == 1);
  CHECK(curves.sidecar["crossover_lambda"].is_number());
  CHECK(curves.sidecar["e3ur_better_above"] == true);
}

TEST_CASE("conjecture_check") {
  ScanConfig cfg = small(2, {0.5, 0.9}, {0.2, 0.4});  // v centres 0.25, 0.35
  const ConjectureCheck check = conjecture_check(4, cfg);
  CHECK(check.table.rows.size() == 2 * 4);
  for (const auto& row : check.table.rows) {
    const long m = std::get<long>(row[0]);
    CHECK(std::get<double>(row[4]) == 0.5 * m);
    CHECK(std::get<double>(row[5]) < 1e-8);
  }
  CHECK(check.max_abs_err < 1e-8);
  const auto& thresholds = check.sidecar["ppt_thresholds"];
  CHECK(thresholds.size() == 2 * 2);
  CHECK(thresholds[0]["m"] == 3);
  CHECK(std::abs(thresholds[0]["lambda_ppt"].get<double>() - thresholds[0]["lambda_closed"].get<double>()) < 1e-6);

  // v centres 0.3, 0.4, 0.5.
  const ConjectureCheck at = conjecture_check(3, small(3, {0.6, 0.9}, {0.25, 0.55}));
  CHECK(at.sidecar["ppt_thresholds"][0]["v"] == 0.3);
  for (const auto& entry : at.sidecar["ppt_thresholds"]) {
    CHECK(std::abs(entry["lambda_ppt"].get<double>() - npt_threshold_lambda(entry["v"].get<double>())) < 1e-6);
  }
  CHECK_THROWS_AS(conjecture_check(2, cfg), std::invalid_argument);
}

TEST_CASE("state_info") {
  StateQuery q;
  q.lambda = 0.0;
  q.v = 0.5;
  const auto sep = state_info(q);
  CHECK(sep["classification"] == "FullySeparable");
  CHECK(sep["entropy"].get<double>() == doctest::Approx(3.0 * 2.0 * std::log(2.0)));
  CHECK_FALSE(sep.contains("teleport"));
  CHECK(sep.contains("warning"));

  StateQuery ent;
  ent.lambda = 0.5;
  ent.v = 0.2;
  const auto insep = state_info(ent);
  CHECK(insep["classification"] == "FullyInseparable");
  CHECK(insep["classification_generic"] == "FullyInseparable");
  CHECK(std::isfinite(insep["e3ur"].get<double>()));
  CHECK_FALSE(insep.contains("warning"));
  REQUIRE(insep["symplectic_eigenvalues"].size() == 3);

  StateQuery by_r;
  by_r.r = 0.5493;
  by_r.N = 0.0;
  StateQuery by_lambda;
  by_lambda.lambda = 0.5;
  by_lambda.v = 0.0;
  const auto a = state_info(by_r);
  const auto b = state_info(by_lambda);
  for (const char* key : {"lambda", "v", "entropy", "e3ur", "teleport"}) {
    CHECK(a[key].get<double>() == doctest::Approx(b[key].get<double>()).epsilon(1e-4).scale(1.0));
  }
  CHECK(a["classification"] == b["classification"]);

  StateQuery bits = by_lambda;
  bits.log_base = LogBase::Bits;
  CHECK(state_info(bits)["teleport"].get<double>() ==
        doctest::Approx(b["teleport"].get<double>() / std::log(2.0)).epsilon(1e-10));

  StateQuery five = by_lambda;
  five.m = 5;
  const auto info5 = state_info(five);
  CHECK_FALSE(info5.contains("classification"));
  CHECK(info5.contains("emur"));

  StateQuery both = by_r;
  both.lambda = 0.5;
  CHECK_THROWS_AS(state_info(both), std::invalid_argument);
  StateQuery missing;
  missing.r = 0.1;
  CHECK_THROWS_AS(state_info(missing), std::invalid_argument);
  StateQuery out_of_range;
  out_of_range.lambda = 1.2;
  out_of_range.v = 0.1;
  CHECK_THROWS_AS(state_info(out_of_range), std::invalid_argument);
}

TEST_CASE("render and write") {
  Table t;
  t.header = {"m", "x", "name"};
  t.rows = {{3L, 0.1, std::string("a")}, {4L, 2.0 / 3.0, std::string("b")}};
  CHECK(render(t, OutputFormat::Csv) == "m,x,name\n3,0.1,a\n4,0.666666666667,b\n");
  const auto json = nlohmann::json::parse(render(t, OutputFormat::Json));
  REQUIRE(json.size() == 2);
  CHECK(json[1]["m"] == 4);
  CHECK(json[1]["x"].get<double>() == 0.666666666667);
  CHECK(json[0]["name"] == "a");

  CHECK_THROWS_AS(write_file("/nonexistent-dir/out.csv", "x"), std::runtime_error);
  CHECK(sidecar_path("out/fig3.csv").string() == "out/fig3.csv.meta.json");
}
