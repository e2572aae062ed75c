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
#pragma once

#include <stdexcept>
#include <string>

namespace ssdtco {

enum class ErrorKind
{
    domain,                // argument outside its mathematical domain
    insufficient_data,     // too few samples for a fit
    infeasible_fit,        // no candidate model satisfies the WAF invariants
    ill_formed_model,      // WAF model evaluates below 1
    undefined_ratio,       // ratio with an empty or zero denominator
    malformed_history,     // overlapping or inverted epoch records
    warmup_violation,      // lifetime requested for a disk with no workloads
    incomplete_assignment, // workload without a host death time
    undefined_rate,        // data-averaged rate with zero logical data
    mode_constraint,       // RAID member count invalid for the mode
    config,                // malformed configuration file or value
    io,                    // unreadable or unwritable file
    malformed_input,       // data file failed validation
    degenerate_trace,      // trace spans zero time
    invariant,             // internal consistency check failed
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace ssdtco
