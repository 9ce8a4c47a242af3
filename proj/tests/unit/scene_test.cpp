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

#include <cgrx/scene.hpp>

#include <gtest/gtest.h>

#include <sstream>

namespace cgrx {
namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

TEST(Scene, TriangleIsCenteredOnItsAnchor) {
  const auto m = KeyMapping::defaultScaled();
  const auto tri = mkTri(5, 2, 1, false, m);
  const auto c = tri.centroid();
  EXPECT_NEAR(c[0], 5.0, 1e-12);
  EXPECT_NEAR(c[1], 2.0 * 32768.0, 1e-9);
  EXPECT_NEAR(c[2], 33554432.0, 1e-9);
}

TEST(Scene, AxisRaysSeeFrontUnlessFlipped) {
  const auto m = KeyMapping::simple();
  const auto normal = mkTri(0, 0, 0, false, m).normal();
  const auto flippedNormal = mkTri(0, 0, 0, true, m).normal();
  for (int a = 0; a < 3; ++a) {
    Vec3 dir{0, 0, 0};
    dir[a] = 1.0;
    EXPECT_LT(dot(dir, normal), 0.0) << "axis " << a;
    EXPECT_GT(dot(dir, flippedNormal), 0.0) << "axis " << a;
  }
}

TEST(Scene, RemapsMarkerSlotsToTheFollowingBucket) {
  EXPECT_EQ(slotToAddressable(0, 5), 0u);
  EXPECT_EQ(slotToAddressable(4, 5), 4u);
  EXPECT_EQ(slotToAddressable(5, 5), 1u);
  EXPECT_EQ(slotToAddressable(9, 5), 5u);
  EXPECT_EQ(slotToAddressable(10, 5), 1u);
  EXPECT_EQ(slotToAddressable(13, 5), 4u);
}

TEST(Scene, TracksPresentSlots) {
  SceneBuffer s(4, 4, Layout::Naive, false, false);
  EXPECT_EQ(s.triangleCount(), 0u);
  s.place(1, Triangle{{1, 0, 0}, false, TriangleRole::Representative});
  s.place(1, Triangle{{2, 0, 0}, false, TriangleRole::Representative});
  s.place(3, Triangle{{3, 0, 0}, true, TriangleRole::RowMarker});
  EXPECT_EQ(s.triangleCount(), 2u);
  EXPECT_FALSE(s[0].has_value());
  s.clear(3);
  EXPECT_EQ(s.triangleCount(), 1u);
  EXPECT_THROW(s.place(4, Triangle{}), std::out_of_range);
}

TEST(Scene, DetectsSharedAnchors) {
  SceneBuffer s(2, 2, Layout::Naive, false, false);
  s.place(0, Triangle{{1, 1, 1}, false, TriangleRole::Representative});
  s.place(1, Triangle{{1, 1, 1}, false, TriangleRole::RowMarker});
  EXPECT_THROW(s.checkDistinctAnchors(), std::logic_error);
}

TEST(Scene, DumpListsPresentSlots) {
  SceneBuffer s(3, 1, Layout::Optimized, true, false);
  s.place(0, Triangle{{7, 2, 0}, true, TriangleRole::Representative});
  s.place(2, Triangle{{-1, -1, 4}, false, TriangleRole::PlaneMarker});
  std::ostringstream out;
  writeSceneDump(out, s);
  EXPECT_EQ(out.str(), "0,7,2,0,1,rep\n2,-1,-1,4,0,planemark\n");
}

} // namespace
} // namespace cgrx
