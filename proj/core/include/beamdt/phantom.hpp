// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "beamdt/kspace.hpp"

namespace beamdt {

using cd = std::complex<double>;

/// Square lattice (2 r_s / M) I_M^2 with I_M = {-M/2, ..., M/2 - 1}.
class ObjectGrid {
 public:
  /// Throws std::invalid_argument unless M is even and positive and r_s > 0.
  ObjectGrid(int M, double r_s);

  int M() const { return M_; }
  double r_s() const { return r_s_; }
  double spacing() const { return 2.0 * r_s_ / M_; }
  double pixel_area() const { return spacing() * spacing(); }
  /// Spatial coordinate of lattice index j in I_M.
  double coord(int j) const { return spacing() * j; }
  Vec2 point(int j1, int j2) const { return {coord(j1), coord(j2)}; }

  friend bool operator==(const ObjectGrid&, const ObjectGrid&) = default;

 private:
  int M_;
  double r_s_;
};

/// Complex samples on an ObjectGrid, row-major with j1 slow and j2 fast,
/// storage offset +M/2 on both indices.
class ComplexImage {
 public:
  explicit ComplexImage(ObjectGrid grid);
  ComplexImage(ObjectGrid grid, std::vector<cd> values);

  const ObjectGrid& grid() const { return grid_; }
  int M() const { return grid_.M(); }

  cd& at(int j1, int j2) { return values_[index(j1, j2)]; }
  cd at(int j1, int j2) const { return values_[index(j1, j2)]; }

  std::span<cd> values() { return values_; }
  std::span<const cd> values() const { return values_; }

 private:
  std::size_t index(int j1, int j2) const {
    const int h = grid_.M() / 2;
    return static_cast<std::size_t>(j1 + h) * grid_.M() + static_cast<std::size_t>(j2 + h);
  }

  ObjectGrid grid_;
  std::vector<cd> values_;
};

struct Disk {
  Vec2 center;
  double radius;
  cd amplitude;
};

/// amplitude * 1_{|r| < d}. Rejects d <= 0 and d > r_s.
ComplexImage disk_phantom(const ObjectGrid& grid, double d, cd amplitude);

/// Indicator disks painted in order; later disks overwrite earlier ones.
/// Every disk must lie inside the support disk B_{r_s}.
ComplexImage two_inclusion_phantom(const ObjectGrid& grid, std::span<const Disk> disks);

/// Host disk of radius 3 with two inclusions; sized for r_s = 4.
std::vector<Disk> default_two_inclusion_preset();

}  // namespace beamdt
