#pragma once

#include <string>

namespace fqco {

/// Shortest decimal text that parses back to the same double; -0 prints
/// as "0". Used for every number written to text outputs so that files
/// are byte-reproducible.
std::string format_number(double v);

}  // namespace fqco
