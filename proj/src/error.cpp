/* Copyright 2026 The ssdtco Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "ssdtco/error.hpp"

namespace ssdtco {

const char* to_string(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::domain: return "domain";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::infeasible_fit: return "infeasible-fit";
    case ErrorKind::ill_formed_model: return "ill-formed-model";
    case ErrorKind::undefined_ratio: return "undefined-ratio";
    case ErrorKind::malformed_history: return "malformed-history";
    case ErrorKind::warmup_violation: return "warm-up-violation";
    case ErrorKind::incomplete_assignment: return "incomplete-assignment";
    case ErrorKind::undefined_rate: return "undefined-rate";
    case ErrorKind::mode_constraint: return "mode-constraint";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
    case ErrorKind::malformed_input: return "malformed-input";
    case ErrorKind::degenerate_trace: return "degenerate-trace";
    case ErrorKind::invariant: return "invariant";
    }
    return "unknown";
}

} // namespace ssdtco
