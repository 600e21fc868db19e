// Copyright 2026 The FairFrontier Authors
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

#ifndef FAIRFRONTIER_CORE_STATUS_MACROS_H_
#define FAIRFRONTIER_CORE_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define FF_STATUS_CONCAT_INNER_(a, b) a##b
#define FF_STATUS_CONCAT_(a, b) FF_STATUS_CONCAT_INNER_(a, b)

#define FF_RETURN_IF_ERROR(expr)                  \
  do {                                            \
    const absl::Status ff_status_ = (expr);       \
    if (!ff_status_.ok()) return ff_status_;      \
  } while (0)

#define FF_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, rexpr) \
  auto tmp = (rexpr);                              \
  if (!tmp.ok()) return tmp.status();              \
  lhs = std::move(tmp).value()

#define FF_ASSIGN_OR_RETURN(lhs, rexpr) \
  FF_ASSIGN_OR_RETURN_IMPL_(            \
      FF_STATUS_CONCAT_(ff_statusor_, __LINE__), lhs, rexpr)

#endif  // FAIRFRONTIER_CORE_STATUS_MACROS_H_
