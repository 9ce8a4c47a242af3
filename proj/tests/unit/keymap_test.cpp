/*
   Copyright 2026 The cgrx Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <cgrx/keymap.hpp>

#include <gtest/gtest.h>

#include "cgrx_testing.hpp"

namespace cgrx {
namespace {

TEST(KeyMapping, SimplePresetSplitsLowBits) {
  const auto m = KeyMapping::simple();
  EXPECT_EQ(mapKey(4, m), (GridPoint{4, 0, 0}));
  EXPECT_EQ(mapKey(22, m), (GridPoint{6, 2, 0}));
  EXPECT_EQ(mapKey(93, m), (GridPoint{5, 3, 2}));
  EXPECT_EQ(m.xMax(), 7);
  EXPECT_EQ(m.yMax(), 3);
}

TEST(KeyMapping, DefaultPresetsShareTheSplit) {
  const auto u = KeyMapping::defaultUnscaled();
  const auto s = KeyMapping::defaultScaled();
  const Key k = (Key{5} << 46) | (Key{9} << 23) | 17;
  EXPECT_EQ(mapKey(k, u), (GridPoint{17, 9, 5}));
  EXPECT_EQ(mapKey(k, s), mapKey(k, u));
  const auto w = worldCoords(mapKey(k, s), s);
  EXPECT_EQ(w[1], 9.0 * 32768.0);
  EXPECT_EQ(w[2], 5.0 * 33554432.0);
}

TEST(KeyMapping, RoundTripsEveryPreset) {
  Rng rng(3);
  for (const auto& m :
       {KeyMapping::simple(), KeyMapping::defaultUnscaled(), KeyMapping::defaultScaled()}) {
    for (int i = 0; i < 10000; ++i) {
      const Key k = rng.next();
      EXPECT_EQ(unmapPoint(mapKey(k, m), m), k);
    }
    EXPECT_EQ(unmapPoint(mapKey(~Key{0}, m), m), ~Key{0});
  }
}

TEST(KeyMapping, OrderEmbedsRowsAndPlanes) {
  Rng rng(4);
  const auto m = KeyMapping::defaultUnscaled();
  for (int i = 0; i < 10000; ++i) {
    Key a = rng.next(), b = rng.next();
    if (a > b) std::swap(a, b);
    const auto pa = mapKey(a, m), pb = mapKey(b, m);
    EXPECT_LE(std::make_pair(pa.z, pa.y), std::make_pair(pb.z, pb.y));
  }
}

TEST(KeyMapping, RejectsOutOfRangePoints) {
  const auto m = KeyMapping::simple();
  EXPECT_THROW(unmapPoint({8, 0, 0}, m), Error);
  EXPECT_THROW(unmapPoint({-1, 0, 0}, m), Error);
  try {
    unmapPoint({0, 4, 0}, m);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CoordinateOutOfRange);
  }
}

TEST(KeyMapping, ValidatesSplits) {
  EXPECT_NO_THROW(KeyMapping::simple().validate());
  EXPECT_NO_THROW(KeyMapping::defaultScaled().validate());
  EXPECT_THROW((KeyMapping{24, 20, 20, 1, 1}.validate()), Error);
  EXPECT_THROW((KeyMapping{23, 23, 17, 1, 1}.validate()), Error);
  EXPECT_THROW((KeyMapping{23, 23, 18, 3, 1}.validate()), Error);
  EXPECT_THROW(KeyMapping::fromName("morton"), Error);
  EXPECT_EQ(mappingName(KeyMapping::fromName("default-scaled")), "default-scaled");
}

TEST(KeyMapping, ScaledCoordsAreFloats) {
  const auto m = KeyMapping::defaultScaled();
  const auto c = scaledCoords({1, 2, 3}, m);
  EXPECT_FLOAT_EQ(c[0], 1.0f);
  EXPECT_FLOAT_EQ(c[1], 65536.0f);
  EXPECT_FLOAT_EQ(c[2], 100663296.0f);
}

} // namespace
} // namespace cgrx
