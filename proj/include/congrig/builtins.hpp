// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "congrig/fuchsian.hpp"

namespace congrig {

/// Names accepted by builtin_group, in a fixed order.
const std::vector<std::string>& builtin_names();

bool is_builtin(const std::string& name);

/// The example corpus: modular, takeuchi-A, takeuchi-B, takeuchi-A2,
/// takeuchi-B2 and conj-sqrt2-demo. Throws PreconditionError for other names.
FuchsianRep builtin_group(const std::string& name);

/// Q(sqrt2, sqrt3, sqrt5) with its distinguished (all-positive) embedding.
FieldPtr takeuchi_field();

}  // namespace congrig
