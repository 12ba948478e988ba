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

#ifndef LOPP_TESTS_AUDIT_HPP
#define LOPP_TESTS_AUDIT_HPP

#include <string>

namespace lopp::testing {

/// Installs a result observer that checks R_out <= R_in (M - D) + 1e-9 on
/// every conditional result computed afterwards.
void install_bound_audit();

struct AuditSummary {
  long long checked = 0;
  long long applicable = 0;
  long long violations = 0;
  std::string first_violation;
};

AuditSummary bound_audit_summary();

}  // namespace lopp::testing

#endif  // LOPP_TESTS_AUDIT_HPP
