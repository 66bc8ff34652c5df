// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "congrig/fuchsian.hpp"

namespace congrig {

/// A group together with the root selector its field was created from.
///
/// JSON layout (keys sorted on output):
///   field:      { minpoly: [c0, c1, ...], selector: [lo, hi] }
///   generators: [ [[e11, e12], [e21, e22]], ... ], each entry a list of
///               power-basis coefficients
///   labels, relators (word strings), label
/// Rationals are JSON integers or strings such as "-3/4"; floats are rejected.
struct GroupDocument {
  FuchsianRep rep;
  Interval selector;
};

GroupDocument document_from_rep(const FuchsianRep& rep);

/// Parses and validates (determinants, relators). Malformed input raises
/// PreconditionError with the parser position when available.
GroupDocument parse_group_document(const std::string& text);

/// Canonical text: sorted keys, two-space indent, reduced rationals.
std::string serialize_group_document(const GroupDocument& doc);

}  // namespace congrig
