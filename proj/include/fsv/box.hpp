#pragma once

#include <utility>
#include <vector>

#include "fsv/interval.hpp"

namespace fsv {

// Partition of box coordinates into fast-unstable (a), fast-stable (b) and
// slow (y) parts, in that order.
struct DimTags {
  int u = 0;
  int s = 0;
  int l = 0;
  int total() const { return u + s + l; }
};

class Box {
 public:
  Box() = default;
  Box(std::vector<Interval> coords, DimTags tags)
      : coords_(std::move(coords)), tags_(tags) {
    if (tags_.total() != static_cast<int>(coords_.size()))
      throw Error(ErrorCode::DimensionMismatch, "Box: tag/coordinate mismatch");
  }
  static Box plain(std::vector<Interval> coords) {
    DimTags t;
    t.l = static_cast<int>(coords.size());
    return Box(std::move(coords), t);
  }

  int dim() const { return static_cast<int>(coords_.size()); }
  const DimTags& tags() const { return tags_; }
  const Interval& operator[](int i) const { return coords_[i]; }
  Interval& operator[](int i) { return coords_[i]; }
  const std::vector<Interval>& coords() const { return coords_; }

  std::vector<Interval> proj_a() const {
    return {coords_.begin(), coords_.begin() + tags_.u};
  }
  std::vector<Interval> proj_b() const {
    return {coords_.begin() + tags_.u, coords_.begin() + tags_.u + tags_.s};
  }
  std::vector<Interval> proj_y() const {
    return {coords_.begin() + tags_.u + tags_.s, coords_.end()};
  }

  bool subset_of(const Box& o) const;
  bool disjoint(const Box& o) const;         // true only when provably disjoint
  Box hull_with(const Box& o) const;
  Box intersect_with(const Box& o) const;    // empty coordinates on miss
  bool is_empty() const;
  std::pair<Box, Box> split(int axis) const;
  std::vector<Box> split(int axis, int n) const;

 private:
  std::vector<Interval> coords_;
  DimTags tags_;
};

}  // namespace fsv
