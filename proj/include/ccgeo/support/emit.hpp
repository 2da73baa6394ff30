#ifndef CCGEO_SUPPORT_EMIT_HPP
#define CCGEO_SUPPORT_EMIT_HPP

#include <string>

#include "json.hpp"

namespace ccgeo {

using Json = nlohmann::ordered_json;

// Serialises with floats printed as %.17g so that identical configs and seeds
// produce byte-identical output files.
std::string dump_deterministic(const Json& j, int indent = 2);

std::string format_double(double v);

// Writes via a temp file in the same directory followed by rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace ccgeo

#endif
