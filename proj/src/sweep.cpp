#include "tomobell/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "parallel.hpp"

namespace tomobell {

const std::vector<std::string> kSweepColumns{
    "param",   "bell_max", "classical_bound", "purity",      "theta_a",     "phi_a",         "theta_b", "phi_b",
    "theta_c", "phi_c",    "theta_d",         "phi_d",       "partition_1", "partition_2", "separable_flag"};

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string coord(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, std::size_t line, const std::string& column) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty()) {
    throw CsvError(line, "column " + column + ": cannot parse '" + s + "' as a number");
  }
  return v;
}

}  // namespace

void SweepConfig::validate() const {
  const auto [lo, hi] = family_domain(family);
  if (dim < 2) throw std::invalid_argument("sweep: --dim must be at least 2");
  if (functional == BellFunctional::i3 && dim != 3) throw std::invalid_argument("sweep: i3 requires --dim 3");
  if (steps == 0) throw std::invalid_argument("sweep: --steps must be positive");
  if (!(param_min <= param_max)) throw std::invalid_argument("sweep: --param-min must not exceed --param-max");
  if (param_min < lo || param_max > hi) {
    throw std::invalid_argument("sweep: parameter range must lie inside [" + num(lo) + ", " + num(hi) + "] for the " +
                                std::string(family_name(family)) + " family");
  }
  optimizer.validate();
}

double SweepConfig::param_at(std::size_t i) const {
  if (steps == 1) return param_min;
  if (i + 1 == steps) return param_max;
  return param_min + (param_max - param_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<SweepRecord> records(cfg.steps);
  // Points run concurrently; each maximization stays single-threaded.
  OptimizerConfig inner = cfg.optimizer;
  const std::size_t workers = detail::worker_count(cfg.optimizer.threads, cfg.steps);
  if (workers > 1) inner.threads = 1;
  const BipartiteDims dims{cfg.dim, cfg.dim};

  detail::parallel_for(cfg.steps, workers, [&](std::size_t i) {
    const double param = cfg.param_at(i);
    const DensityMatrix rho = family_state(cfg.family, cfg.dim, param);
    const BellMaximum best = maximize(cfg.functional, rho, dims, inner);
    SweepRecord& r = records[i];
    r.param = param;
    r.bell_max = best.best.value;
    r.purity = purity(rho);
    r.angles = best.best.settings.angles();
    if (best.best.partitions) {
      r.partition1 = best.best.partitions->first.encode();
      r.partition2 = best.best.partitions->second.encode();
    }
    r.separable = is_separable_parameter(cfg.family, cfg.dim, param);
  });
  return records;
}

SweepMetadata sweep_metadata(const SweepConfig& cfg) {
  return {{"family", std::string(family_name(cfg.family))},
          {"dim", std::to_string(cfg.dim)},
          {"functional", std::string(functional_name(cfg.functional))},
          {"param", cfg.family == StateFamily::werner ? "phi" : "p"}};
}

void write_sweep_csv(std::ostream& out, const SweepMetadata& meta, const std::vector<SweepRecord>& records) {
  out << '#';
  for (const auto& [k, v] : meta) out << ' ' << k << '=' << v;
  out << '\n';
  for (std::size_t c = 0; c < kSweepColumns.size(); ++c) out << (c ? "," : "") << kSweepColumns[c];
  out << '\n';
  for (const auto& r : records) {
    out << num(r.param) << ',' << num(r.bell_max) << ',' << num(r.classical_bound) << ',' << num(r.purity);
    for (double a : r.angles) out << ',' << num(a);
    out << ',' << r.partition1 << ',' << r.partition2 << ',' << (r.separable ? 1 : 0) << '\n';
  }
}

SweepTable read_sweep_csv(std::istream& in) {
  SweepTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream is(line.substr(1));
      std::string kv;
      while (is >> kv) {
        const auto eq = kv.find('=');
        if (eq != std::string::npos) table.meta[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      continue;
    }
    const auto fields = split(line, ',');
    if (!have_header) {
      if (fields != kSweepColumns) throw CsvError(line_no, "unexpected header");
      have_header = true;
      continue;
    }
    if (fields.size() != kSweepColumns.size()) {
      throw CsvError(line_no, "expected " + std::to_string(kSweepColumns.size()) + " fields, found " +
                                  std::to_string(fields.size()));
    }
    SweepRecord r;
    r.param = parse_double(fields[0], line_no, kSweepColumns[0]);
    r.bell_max = parse_double(fields[1], line_no, kSweepColumns[1]);
    r.classical_bound = parse_double(fields[2], line_no, kSweepColumns[2]);
    r.purity = parse_double(fields[3], line_no, kSweepColumns[3]);
    for (std::size_t k = 0; k < kSettingAngles; ++k) r.angles[k] = parse_double(fields[4 + k], line_no, kSweepColumns[4 + k]);
    r.partition1 = fields[12];
    r.partition2 = fields[13];
    if (fields[14] != "0" && fields[14] != "1") throw CsvError(line_no, "separable_flag must be 0 or 1");
    r.separable = fields[14] == "1";
    table.records.push_back(std::move(r));
  }
  if (!have_header) throw CsvError(line_no == 0 ? 1 : line_no, "missing header");
  return table;
}

namespace {

constexpr double kPanelWidth = 800.0;
constexpr double kPanelHeight = 600.0;
constexpr double kMargin = 60.0;

struct Axis {
  double lo;
  double hi;
};

struct Panel {
  double top;
  Axis x;
  Axis y;

  double px(double v) const { return kMargin + (v - x.lo) / (x.hi - x.lo) * (kPanelWidth - 2.0 * kMargin); }
  double py(double v) const {
    return top + kPanelHeight - kMargin - (v - y.lo) / (y.hi - y.lo) * (kPanelHeight - 2.0 * kMargin);
  }
};

void polyline(std::ostream& out, const Panel& p, const std::vector<double>& xs, const std::vector<double>& ys,
              const std::string& style) {
  out << "<polyline fill=\"none\" " << style << " points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << coord(p.px(xs[i])) << ',' << coord(p.py(ys[i]));
  out << "\"/>\n";
}

void frame(std::ostream& out, const Panel& p, const std::string& title, const std::string& xlabel,
           const std::string& ylabel) {
  const double left = kMargin;
  const double right = kPanelWidth - kMargin;
  const double top = p.top + kMargin;
  const double bottom = p.top + kPanelHeight - kMargin;
  out << "<rect x=\"" << coord(left) << "\" y=\"" << coord(top) << "\" width=\"" << coord(right - left)
      << "\" height=\"" << coord(bottom - top) << "\" fill=\"none\" stroke=\"black\"/>\n";
  constexpr int kTicks = 4;
  for (int t = 0; t <= kTicks; ++t) {
    const double xv = p.x.lo + (p.x.hi - p.x.lo) * t / kTicks;
    const double yv = p.y.lo + (p.y.hi - p.y.lo) * t / kTicks;
    char xl[32];
    char yl[32];
    std::snprintf(xl, sizeof xl, "%.3g", xv);
    std::snprintf(yl, sizeof yl, "%.3g", yv);
    out << "<text x=\"" << coord(p.px(xv)) << "\" y=\"" << coord(bottom + 18.0)
        << "\" font-size=\"12\" text-anchor=\"middle\">" << xl << "</text>\n";
    out << "<text x=\"" << coord(left - 6.0) << "\" y=\"" << coord(p.py(yv) + 4.0)
        << "\" font-size=\"12\" text-anchor=\"end\">" << yl << "</text>\n";
  }
  out << "<text x=\"" << coord(0.5 * (left + right)) << "\" y=\"" << coord(bottom + 40.0)
      << "\" font-size=\"14\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  out << "<text x=\"" << coord(16.0) << "\" y=\"" << coord(0.5 * (top + bottom)) << "\" font-size=\"14\" "
      << "text-anchor=\"middle\" transform=\"rotate(-90 " << coord(16.0) << ' ' << coord(0.5 * (top + bottom))
      << ")\">" << ylabel << "</text>\n";
  out << "<text x=\"" << coord(left) << "\" y=\"" << coord(top - 16.0) << "\" font-size=\"16\">" << title
      << "</text>\n";
}

}  // namespace

void write_sweep_svg(std::ostream& out, const SweepTable& table) {
  std::vector<double> xs;
  std::vector<double> bell;
  std::vector<double> pur;
  double bound = kClassicalBound;
  for (const auto& r : table.records) {
    xs.push_back(r.param);
    bell.push_back(r.bell_max);
    pur.push_back(r.purity);
    bound = r.classical_bound;
  }
  Axis x{0.0, 1.0};
  if (!xs.empty()) {
    x = {*std::min_element(xs.begin(), xs.end()), *std::max_element(xs.begin(), xs.end())};
    if (x.hi == x.lo) x = {x.lo - 0.5, x.hi + 0.5};
  }
  double ymax = 3.0;
  for (double b : bell) ymax = std::max(ymax, b);
  const Panel top{0.0, x, {0.0, ymax}};
  const Panel bottom{kPanelHeight, x, {0.0, 1.0}};

  const auto param_it = table.meta.find("param");
  const std::string xlabel = param_it != table.meta.end() ? param_it->second : kSweepColumns[0];

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << coord(kPanelWidth) << "\" height=\""
      << coord(2.0 * kPanelHeight) << "\" viewBox=\"0 0 " << coord(kPanelWidth) << ' ' << coord(2.0 * kPanelHeight)
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  frame(out, top, "(a)", xlabel, kSweepColumns[1]);
  out << "<line class=\"bound\" x1=\"" << coord(top.px(x.lo)) << "\" y1=\"" << coord(top.py(bound)) << "\" x2=\""
      << coord(top.px(x.hi)) << "\" y2=\"" << coord(top.py(bound))
      << "\" stroke=\"black\" stroke-dasharray=\"10,4,2,4\"/>\n";
  polyline(out, top, xs, bell, "class=\"bell_max\" stroke=\"black\" stroke-width=\"2\"");
  frame(out, bottom, "(b)", xlabel, kSweepColumns[3]);
  polyline(out, bottom, xs, pur, "class=\"purity\" stroke=\"black\" stroke-width=\"2\"");
  out << "</svg>\n";
}

}  // namespace tomobell
