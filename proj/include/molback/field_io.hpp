// field_io.hpp
// Text serialization of sampled fields: a small header (n_dims, L, N) followed
// by row-major samples, one per line, in shortest round-trip notation so the
// files cache exact data between runs.
#pragma once

#include <string>

#include "molback/grid.hpp"

namespace molback {

void write_field(const RealField& f, const std::string& path);
RealField read_field(const std::string& path);

// Shortest representation that parses back to the identical double.
std::string format_double(double v);

}  // namespace molback
