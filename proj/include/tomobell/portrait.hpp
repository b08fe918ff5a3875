#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tomobell/tomography.hpp"

namespace tomobell {

/// Split of the outcome set {0, ..., d-1} into two nonempty blocks, in
/// canonical form (block 0 holds outcome 0). Block 0 maps to the dichotomic
/// value +1 and block 1 to -1.
class Partition {
 public:
  Partition(std::size_t d, std::vector<std::size_t> block0);

  std::size_t dimension() const { return d_; }
  const std::vector<std::size_t>& block0() const { return block0_; }
  const std::vector<std::size_t>& block1() const { return block1_; }
  /// 0 or 1: the block holding outcome m.
  int block_of(std::size_t m) const { return label_[m]; }
  /// +1 for block 0, -1 for block 1, per outcome.
  std::vector<double> values() const;

  /// Digits of block 0, '|', digits of block 1, e.g. "01|2".
  std::string encode() const;
  static Partition parse(std::string_view text);

  friend bool operator==(const Partition& a, const Partition& b) { return a.d_ == b.d_ && a.block0_ == b.block0_; }

 private:
  std::size_t d_;
  std::vector<std::size_t> block0_;
  std::vector<std::size_t> block1_;
  std::vector<int> label_;
};

/// All 2^{d-1} - 1 canonical bipartitions, ordered lexicographically by block 0.
std::vector<Partition> enumerate_bipartitions(std::size_t d);

/// Coarse-grains a d-outcome tomogram into two outcomes by summing each block.
Tomogram qubit_portrait(const Tomogram& t, const Partition& part);

/// 2x2 coarse-graining of a joint tomogram, one partition per side.
JointTomogram two_qubit_portrait(const JointTomogram& jt, const Partition& part1, const Partition& part2);

}  // namespace tomobell
