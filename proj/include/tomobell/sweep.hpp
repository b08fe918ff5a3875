#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tomobell/bell.hpp"
#include "tomobell/optimizer.hpp"
#include "tomobell/states.hpp"

namespace tomobell {

struct SweepConfig {
  StateFamily family = StateFamily::isotropic;
  std::size_t dim = 2;
  BellFunctional functional = BellFunctional::chsh;
  double param_min = 0.0;
  double param_max = 1.0;
  std::size_t steps = 11;
  OptimizerConfig optimizer;
  std::string out_path;
  std::optional<std::string> plot_path;

  void validate() const;
  /// Parameter at step i; endpoints included.
  double param_at(std::size_t i) const;
};

struct SweepRecord {
  double param = 0.0;
  double bell_max = 0.0;
  double classical_bound = kClassicalBound;
  double purity = 0.0;
  AngleVector angles{};
  std::string partition1;
  std::string partition2;
  bool separable = false;
};

/// Evaluates the maximized functional at every sweep point. Records come back
/// in parameter order whatever the scheduling.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

/// Column names of the sweep CSV, in order.
extern const std::vector<std::string> kSweepColumns;

/// Metadata carried in the leading "# key=value ..." comment line.
using SweepMetadata = std::map<std::string, std::string>;

SweepMetadata sweep_metadata(const SweepConfig& cfg);
void write_sweep_csv(std::ostream& out, const SweepMetadata& meta, const std::vector<SweepRecord>& records);

/// Parse failure carrying the 1-based line number.
class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& what)
      : std::runtime_error("CSV line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct SweepTable {
  SweepMetadata meta;
  std::vector<SweepRecord> records;
};

SweepTable read_sweep_csv(std::istream& in);

/// Two stacked 800x600 panels: (a) bell_max against the parameter with a
/// dot-dashed line at the classical bound, (b) purity against the parameter.
void write_sweep_svg(std::ostream& out, const SweepTable& table);

}  // namespace tomobell
