#include <doctest.h>

#include <cmath>
#include <regex>
#include <sstream>

#include "support/oracles.hpp"
#include "tomobell/sweep.hpp"

using namespace tomobell;

namespace {

SweepConfig quick_sweep(StateFamily family, std::size_t dim, double lo, double hi, std::size_t steps) {
  SweepConfig cfg;
  cfg.family = family;
  cfg.dim = dim;
  cfg.param_min = lo;
  cfg.param_max = hi;
  cfg.steps = steps;
  cfg.optimizer.restarts = 8;
  cfg.optimizer.threads = 1;
  return cfg;
}

std::vector<std::pair<double, double>> polyline_points(const std::string& svg, const std::string& cls) {
  const std::regex re("<polyline[^>]*class=\"" + cls + "\"[^>]*points=\"([^\"]*)\"");
  std::smatch m;
  std::vector<std::pair<double, double>> pts;
  if (!std::regex_search(svg, m, re)) return pts;
  std::istringstream in(m[1].str());
  std::string tok;
  while (in >> tok) {
    const auto comma = tok.find(',');
    pts.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
  }
  return pts;
}

}  // namespace

TEST_CASE("sweep config") {
  SweepConfig cfg = quick_sweep(StateFamily::werner, 3, -1.0, 1.0, 5);
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.param_at(0) == -1.0);
  CHECK(cfg.param_at(4) == 1.0);
  CHECK(cfg.param_at(2) == doctest::Approx(0.0));
  cfg.param_min = -1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = quick_sweep(StateFamily::isotropic, 2, 0.0, 1.0, 0);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = quick_sweep(StateFamily::isotropic, 2, 0.0, 1.0, 3);
  cfg.functional = BellFunctional::i3;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = quick_sweep(StateFamily::isotropic, 2, 0.7, 0.7, 1);
  CHECK(cfg.param_at(0) == 0.7);
}

TEST_CASE("qubit isotropic sweep") {
  const auto records = run_sweep(quick_sweep(StateFamily::isotropic, 2, 0.0, 1.0, 5));
  REQUIRE(records.size() == 5);
  for (const auto& r : records) {
    const double v = (4.0 * r.param - 1.0) / 3.0;
    CHECK(std::abs(r.bell_max - 2.0 * std::sqrt(2.0) * std::abs(v)) < 1e-3);
    CHECK(std::abs(r.purity - tomobell::testing::isotropic_purity_closed_form(2.0, r.param)) < 1e-10);
    CHECK(r.separable == (r.param <= 0.5));
    CHECK(r.classical_bound == 2.0);
    CHECK(r.partition1 == "0|1");
  }
}

TEST_CASE("qutrit Werner sweep: purity and partitions") {
  const auto records = run_sweep(quick_sweep(StateFamily::werner, 3, -1.0, 1.0, 3));
  REQUIRE(records.size() == 3);
  for (const auto& r : records) {
    CHECK(std::abs(r.purity - tomobell::testing::werner_purity_closed_form(3.0, r.param)) < 1e-10);
    CHECK(r.bell_max <= 2.0 + 1e-6);
    CHECK_NOTHROW(Partition::parse(r.partition1));
    CHECK_NOTHROW(Partition::parse(r.partition2));
  }
  CHECK_FALSE(records[0].separable);
  CHECK(records[1].separable);
}

TEST_CASE("I3 sweep leaves partitions empty") {
  SweepConfig cfg = quick_sweep(StateFamily::isotropic, 3, 1.0, 1.0, 1);
  cfg.functional = BellFunctional::i3;
  const auto records = run_sweep(cfg);
  REQUIRE(records.size() == 1);
  CHECK(records[0].bell_max > 2.0);
  CHECK(records[0].partition1.empty());
  CHECK(records[0].partition2.empty());
  std::stringstream ss;
  write_sweep_csv(ss, sweep_metadata(cfg), records);
  const SweepTable t = read_sweep_csv(ss);
  CHECK(t.records[0].partition1.empty());
  CHECK(t.records[0].bell_max == records[0].bell_max);
}

TEST_CASE("qutrit isotropic CHSH curve crosses the bound between 0.78 and 0.80") {
  SweepConfig cfg = quick_sweep(StateFamily::isotropic, 3, 0.78, 0.80, 2);
  cfg.optimizer = OptimizerConfig{};
  const auto records = run_sweep(cfg);
  CHECK(records[0].bell_max < 2.0);
  CHECK(records[1].bell_max > 2.0);
}

TEST_CASE("CSV round trip") {
  std::vector<SweepRecord> records(2);
  records[0].param = 0.1;
  records[0].bell_max = 1.2345678901234567;
  records[0].purity = 1.0 / 3.0;
  records[0].angles = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 3.141592653589793};
  records[0].partition1 = "0|12";
  records[0].partition2 = "01|2";
  records[1].param = 0.2;
  records[1].bell_max = 2.5;
  records[1].purity = 0.5;
  records[1].partition1 = "0|1";
  records[1].partition2 = "0|1";
  records[1].separable = true;
  const SweepMetadata meta{{"dim", "3"}, {"family", "werner"}, {"functional", "chsh"}, {"param", "phi"}};

  std::stringstream ss;
  write_sweep_csv(ss, meta, records);
  const std::string text = ss.str();
  CHECK(text.rfind("# dim=3 family=werner functional=chsh param=phi\nparam,bell_max,classical_bound,purity,", 0) == 0);
  const SweepTable t = read_sweep_csv(ss);
  CHECK(t.meta == meta);
  REQUIRE(t.records.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(t.records[i].param == records[i].param);
    CHECK(t.records[i].bell_max == records[i].bell_max);
    CHECK(t.records[i].purity == records[i].purity);
    CHECK(t.records[i].angles == records[i].angles);
    CHECK(t.records[i].partition1 == records[i].partition1);
    CHECK(t.records[i].partition2 == records[i].partition2);
    CHECK(t.records[i].separable == records[i].separable);
  }
}

TEST_CASE("CSV errors carry line numbers") {
  std::stringstream ss;
  write_sweep_csv(ss, {{"param", "p"}}, std::vector<SweepRecord>(2));
  std::string text = ss.str();
  const auto third = text.find('\n', text.find('\n') + 1) + 1;
  text.replace(third, 1, "x");
  std::istringstream bad(text);
  try {
    read_sweep_csv(bad);
    FAIL("expected a CSV error");
  } catch (const CsvError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  std::istringstream empty("");
  CHECK_THROWS_AS(read_sweep_csv(empty), CsvError);
  std::istringstream header("param,bell_max\n");
  CHECK_THROWS_AS(read_sweep_csv(header), CsvError);
}

TEST_CASE("SVG output") {
  SweepTable table;
  table.meta = {{"param", "p"}};
  table.records.resize(3);
  for (std::size_t i = 0; i < 3; ++i) {
    table.records[i].param = 0.5 * static_cast<double>(i);
    table.records[i].purity = 0.25 + 0.25 * static_cast<double>(i);
  }
  table.records[0].bell_max = 1.0;
  table.records[1].bell_max = 2.0;
  table.records[2].bell_max = 2.8;

  std::ostringstream a;
  std::ostringstream b;
  write_sweep_svg(a, table);
  write_sweep_svg(b, table);
  const std::string svg = a.str();
  CHECK(svg == b.str());
  CHECK(svg.find("width=\"800.000\" height=\"1200.000\"") != std::string::npos);
  CHECK(svg.find("stroke-dasharray=\"10,4,2,4\"") != std::string::npos);

  const auto bell = polyline_points(svg, "bell_max");
  const auto pur = polyline_points(svg, "purity");
  REQUIRE(bell.size() == 3);
  REQUIRE(pur.size() == 3);
  CHECK(bell.front().first == doctest::Approx(60.0));
  CHECK(bell.back().first == doctest::Approx(740.0));
  // Both panels share the x mapping; panel (b) sits 600 below panel (a).
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(bell[i].first == pur[i].first);
    CHECK(pur[i].second > 600.0);
    CHECK(bell[i].second < 600.0);
  }

  // The point at bell_max = 2 lies on the bound line.
  const std::regex line_re("<line class=\"bound\" x1=\"([^\"]*)\" y1=\"([^\"]*)\" x2=\"([^\"]*)\" y2=\"([^\"]*)\"");
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, line_re));
  CHECK(std::stod(m[2].str()) == bell[1].second);
  CHECK(std::stod(m[4].str()) == bell[1].second);
  CHECK(std::stod(m[1].str()) == bell[0].first);
  CHECK(std::stod(m[3].str()) == bell[2].first);
}
