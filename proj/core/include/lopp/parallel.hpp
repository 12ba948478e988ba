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

#ifndef LOPP_PARALLEL_HPP
#define LOPP_PARALLEL_HPP

#include <functional>

namespace lopp {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each call must
/// only write to its own output slot; results are then independent of the
/// worker count. The first exception thrown by any call is rethrown.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace lopp

#endif  // LOPP_PARALLEL_HPP
