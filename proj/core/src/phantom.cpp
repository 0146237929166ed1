// SPDX-License-Identifier: Apache-2.0
#include "beamdt/phantom.hpp"

#include <stdexcept>
#include <string>

namespace beamdt {

ObjectGrid::ObjectGrid(int M, double r_s) : M_(M), r_s_(r_s) {
  if (M <= 0 || M % 2 != 0) throw std::invalid_argument("grid size M must be even and positive");
  if (!(r_s > 0.0)) throw std::invalid_argument("support half-width r_s must be positive");
}

ComplexImage::ComplexImage(ObjectGrid grid)
    : grid_(grid), values_(static_cast<std::size_t>(grid.M()) * grid.M()) {}

ComplexImage::ComplexImage(ObjectGrid grid, std::vector<cd> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid.M()) * grid.M())
    throw std::invalid_argument("image values do not match the M x M grid");
}

namespace {

void paint(ComplexImage& img, const Disk& disk) {
  const ObjectGrid& g = img.grid();
  const int h = g.M() / 2;
  for (int j1 = -h; j1 < h; ++j1)
    for (int j2 = -h; j2 < h; ++j2)
      if (norm(g.point(j1, j2) - disk.center) < disk.radius) img.at(j1, j2) = disk.amplitude;
}

void require_inside_support(const ObjectGrid& grid, const Disk& disk) {
  if (!(disk.radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
  if (norm(disk.center) + disk.radius > grid.r_s() * (1.0 + 1e-12))
    throw std::invalid_argument("disk of radius " + std::to_string(disk.radius) +
                                " leaves the support disk of radius " + std::to_string(grid.r_s()));
}

}  // namespace

ComplexImage disk_phantom(const ObjectGrid& grid, double d, cd amplitude) {
  const Disk disk{{0.0, 0.0}, d, amplitude};
  require_inside_support(grid, disk);
  ComplexImage img(grid);
  paint(img, disk);
  return img;
}

ComplexImage two_inclusion_phantom(const ObjectGrid& grid, std::span<const Disk> disks) {
  for (const Disk& d : disks) require_inside_support(grid, d);
  ComplexImage img(grid);
  for (const Disk& d : disks) paint(img, d);
  return img;
}

std::vector<Disk> default_two_inclusion_preset() {
  return {
      {{0.0, 0.0}, 3.0, 1.0},
      {{-1.2, 0.8}, 0.7, 1.5},
      {{1.0, -0.8}, 0.5, 0.5},
  };
}

}  // namespace beamdt
