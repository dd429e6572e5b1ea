#pragma once

#include <string>

#include "fockrank/model.hpp"

namespace fockrank {

/// Parses and validates the JSON instance format:
/// {
///   "statistics": "boson" | "fermion",
///   "k": int,
///   "blocks": [ { "d": int, "terms": [ {"occ": [int..], "amp": [re, im]} ] } ],
///   "u": [ [ [re, im], .. k entries ], .. one row per global mode ],
///   "v": [ [ [re, im], .. M entries ], .. k rows ],
///   "ket_blocks": [ .. ]            // optional, distinct bra/ket
/// }
/// Row i of u is global mode i; modes are block-major.  Malformed input
/// throws ValidationError naming the offending field.
Instance parse_instance(const std::string& json_text);

Instance load_instance(const std::string& path);

std::string serialize_instance(const Instance& instance);

void save_instance(const Instance& instance, const std::string& path);

}  // namespace fockrank
