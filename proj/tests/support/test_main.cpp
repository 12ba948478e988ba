// Copyright 2026 The lopp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "audit.hpp"

namespace {

// Fails the run if any conditional result computed by any test broke the
// R_out <= R_in (M - D) bound.
class BoundAuditEnvironment : public ::testing::Environment {
 public:
  void SetUp() override { lopp::testing::install_bound_audit(); }
  void TearDown() override {
    const auto s = lopp::testing::bound_audit_summary();
    EXPECT_EQ(s.violations, 0) << "first violation: " << s.first_violation;
  }
};

}  // namespace

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  ::testing::AddGlobalTestEnvironment(new BoundAuditEnvironment);
  return RUN_ALL_TESTS();
}
