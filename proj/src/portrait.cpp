#include "tomobell/portrait.hpp"

#include <algorithm>
#include <stdexcept>

namespace tomobell {

Partition::Partition(std::size_t d, std::vector<std::size_t> block0) : d_(d), block0_(std::move(block0)) {
  if (d_ < 2) throw std::invalid_argument("Partition: d must be at least 2");
  std::sort(block0_.begin(), block0_.end());
  label_.assign(d_, 1);
  for (std::size_t k = 0; k < block0_.size(); ++k) {
    const std::size_t m = block0_[k];
    if (m >= d_) throw std::invalid_argument("Partition: outcome index out of range");
    if (k > 0 && block0_[k - 1] == m) throw std::invalid_argument("Partition: repeated outcome");
    label_[m] = 0;
  }
  if (block0_.empty() || block0_.front() != 0) {
    throw std::invalid_argument("Partition: block 0 must contain outcome 0 (canonical form)");
  }
  for (std::size_t m = 0; m < d_; ++m)
    if (label_[m] == 1) block1_.push_back(m);
  if (block1_.empty()) throw std::invalid_argument("Partition: block 1 is empty");
}

std::vector<double> Partition::values() const {
  std::vector<double> v(d_);
  for (std::size_t m = 0; m < d_; ++m) v[m] = label_[m] == 0 ? 1.0 : -1.0;
  return v;
}

std::string Partition::encode() const {
  std::string s;
  for (auto m : block0_) s += std::to_string(m);
  s += '|';
  for (auto m : block1_) s += std::to_string(m);
  return s;
}

Partition Partition::parse(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) throw std::invalid_argument("Partition: missing '|' in '" + std::string(text) + "'");
  std::vector<std::size_t> b0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i == bar) continue;
    const char c = text[i];
    if (c < '0' || c > '9') throw std::invalid_argument("Partition: bad character in '" + std::string(text) + "'");
    ++count;
    if (i < bar) b0.push_back(static_cast<std::size_t>(c - '0'));
  }
  Partition p(count, std::move(b0));
  if (p.encode() != text) throw std::invalid_argument("Partition: '" + std::string(text) + "' is not canonical");
  return p;
}

std::vector<Partition> enumerate_bipartitions(std::size_t d) {
  if (d < 2) throw std::invalid_argument("enumerate_bipartitions: d must be at least 2");
  if (d > 20) throw std::invalid_argument("enumerate_bipartitions: d too large");
  std::vector<Partition> out;
  const std::size_t full = (std::size_t{1} << d) - 1;
  // Bit 0 always set; the full mask would leave block 1 empty.
  for (std::size_t mask = 1; mask < full; mask += 2) {
    std::vector<std::size_t> b0;
    for (std::size_t m = 0; m < d; ++m)
      if (mask & (std::size_t{1} << m)) b0.push_back(m);
    out.emplace_back(d, std::move(b0));
  }
  std::sort(out.begin(), out.end(),
            [](const Partition& a, const Partition& b) { return a.block0() < b.block0(); });
  return out;
}

Tomogram qubit_portrait(const Tomogram& t, const Partition& part) {
  if (t.size() != part.dimension()) throw std::invalid_argument("qubit_portrait: tomogram length does not match partition");
  std::vector<double> p(2, 0.0);
  for (std::size_t m = 0; m < t.size(); ++m) p[static_cast<std::size_t>(part.block_of(m))] += t[m];
  return Tomogram(std::move(p));
}

JointTomogram two_qubit_portrait(const JointTomogram& jt, const Partition& part1, const Partition& part2) {
  if (jt.rows() != part1.dimension() || jt.cols() != part2.dimension()) {
    throw std::invalid_argument("two_qubit_portrait: joint tomogram shape does not match partitions");
  }
  std::vector<double> p(4, 0.0);
  for (std::size_t a = 0; a < jt.rows(); ++a)
    for (std::size_t b = 0; b < jt.cols(); ++b)
      p[static_cast<std::size_t>(2 * part1.block_of(a) + part2.block_of(b))] += jt(a, b);
  return JointTomogram(2, 2, std::move(p));
}

}  // namespace tomobell
