// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "beamdt/phantom.hpp"

using namespace beamdt;

namespace {

bool vanishes_outside_support(const ComplexImage& img) {
  const int h = img.M() / 2;
  for (int a = -h; a < h; ++a)
    for (int b = -h; b < h; ++b)
      if (norm(img.grid().point(a, b)) >= img.grid().r_s() && img.at(a, b) != cd{}) return false;
  return true;
}

}  // namespace

TEST_CASE("object grid") {
  const ObjectGrid g(8, 4.0);
  CHECK(g.spacing() == 1.0);
  CHECK(g.point(0, 0) == Vec2{0.0, 0.0});
  CHECK(g.point(-4, 3) == Vec2{-4.0, 3.0});
  CHECK_THROWS_AS(ObjectGrid(7, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ObjectGrid(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ObjectGrid(8, 0.0), std::invalid_argument);
}

TEST_CASE("image storage is j1-slow with offset M/2") {
  const ObjectGrid g(4, 1.0);
  ComplexImage img(g);
  img.at(-2, -2) = 1.0;
  img.at(-2, -1) = 2.0;
  img.at(-1, -2) = 3.0;
  img.at(1, 1) = 4.0;
  CHECK(img.values()[0] == cd(1.0));
  CHECK(img.values()[1] == cd(2.0));
  CHECK(img.values()[4] == cd(3.0));
  CHECK(img.values()[15] == cd(4.0));
  CHECK_THROWS_AS(ComplexImage(g, std::vector<cd>(15)), std::invalid_argument);
}

TEST_CASE("disk phantom") {
  const ObjectGrid g(64, 4.0);
  const auto full = disk_phantom(g, 4.0, 1.0);
  CHECK(full.at(0, 0) == cd(1.0));
  CHECK(full.at(-32, -32) == cd(0.0));
  CHECK(vanishes_outside_support(full));

  const auto f3 = disk_phantom(g, 3.0, cd(0.0, 2.0));
  for (int a = -32; a < 32; ++a)
    for (int b = -32; b < 32; ++b) {
      const bool inside = norm(g.point(a, b)) < 3.0;
      REQUIRE(f3.at(a, b) == (inside ? cd(0.0, 2.0) : cd(0.0)));
    }

  CHECK_THROWS_AS(disk_phantom(g, 5.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(disk_phantom(g, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("disk phantom mass approximates the disk area") {
  const ObjectGrid g(400, 4.0);
  const auto f3 = disk_phantom(g, 3.0, 1.0);
  cd mass{};
  for (cd z : f3.values()) mass += z;
  mass *= g.pixel_area();
  CHECK(std::abs(mass.real() - kPi * 9.0) <= 0.02 * kPi * 9.0);
}

TEST_CASE("two-inclusion phantom") {
  const ObjectGrid g(128, 4.0);
  const auto empty = two_inclusion_phantom(g, {});
  for (cd z : empty.values()) REQUIRE(z == cd{});

  const auto preset = default_two_inclusion_preset();
  REQUIRE(preset.size() == 3u);
  CHECK(preset[0].center == Vec2{0.0, 0.0});
  CHECK(preset[0].radius == 3.0);
  CHECK(preset[0].amplitude == cd(1.0));
  CHECK(preset[1].center == Vec2{-1.2, 0.8});
  CHECK(preset[1].radius == 0.7);
  CHECK(preset[1].amplitude == cd(1.5));
  CHECK(preset[2].center == Vec2{1.0, -0.8});
  CHECK(preset[2].radius == 0.5);
  CHECK(preset[2].amplitude == cd(0.5));

  const auto img = two_inclusion_phantom(g, preset);
  CHECK(vanishes_outside_support(img));
  // Inclusion values replace the host value.
  CHECK(img.at(-19, 13) == cd(1.5));
  CHECK(img.at(16, -13) == cd(0.5));
  CHECK(img.at(0, 0) == cd(1.0));
  CHECK(img.at(0, 60) == cd(0.0));

  const std::vector<Disk> outside{{{3.5, 0.0}, 1.0, 1.0}};
  CHECK_THROWS_AS(two_inclusion_phantom(g, outside), std::invalid_argument);
}
