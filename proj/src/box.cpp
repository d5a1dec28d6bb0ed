#include "fsv/box.hpp"

namespace fsv {

static void check_dims(const Box& a, const Box& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch, "Box: dimension mismatch");
}

bool Box::subset_of(const Box& o) const {
  check_dims(*this, o);
  for (int i = 0; i < dim(); ++i)
    if (!o[i].contains(coords_[i])) return false;
  return true;
}

bool Box::disjoint(const Box& o) const {
  check_dims(*this, o);
  for (int i = 0; i < dim(); ++i)
    if (coords_[i].disjoint(o[i])) return true;
  return false;
}

Box Box::hull_with(const Box& o) const {
  check_dims(*this, o);
  std::vector<Interval> r(coords_.size());
  for (int i = 0; i < dim(); ++i) r[i] = hull(coords_[i], o[i]);
  return Box(std::move(r), tags_);
}

Box Box::intersect_with(const Box& o) const {
  check_dims(*this, o);
  std::vector<Interval> r(coords_.size());
  for (int i = 0; i < dim(); ++i) r[i] = intersect(coords_[i], o[i]);
  return Box(std::move(r), tags_);
}

bool Box::is_empty() const {
  for (const auto& c : coords_)
    if (c.is_empty()) return true;
  return false;
}

std::pair<Box, Box> Box::split(int axis) const {
  auto parts = split(axis, 2);
  return {parts[0], parts[1]};
}

std::vector<Box> Box::split(int axis, int n) const {
  if (axis < 0 || axis >= dim() || n < 1)
    throw Error(ErrorCode::DimensionMismatch, "Box::split: bad axis or count");
  std::vector<Box> out;
  const Interval& c = coords_[axis];
  double prev = c.lo();
  for (int k = 1; k <= n; ++k) {
    // last cut lands exactly on c.hi() so the union equals the input
    double cut = (k == n) ? c.hi() : c.lo() + (c.width() * k) / n;
    if (cut < prev) cut = prev;
    std::vector<Interval> coords = coords_;
    coords[axis] = Interval(prev, cut);
    out.emplace_back(std::move(coords), tags_);
    prev = cut;
  }
  return out;
}

}  // namespace fsv
