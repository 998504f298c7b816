#ifndef TWOLAYER_FIELD_IO_HPP
#define TWOLAYER_FIELD_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "twolayer/spectral.hpp"

namespace twolayer {

using NamedField = std::pair<std::string, Field>;

// CSV: a "# grid" comment line, a header, then one row per node with the
// coordinates followed by each field's value. All fields share one grid.
void write_fields_csv(const std::string& path, const std::vector<NamedField>& fields);
std::vector<NamedField> read_fields_csv(const std::string& path);

// Binary: int32 dim, int64 nx, int64 ny, float64 lx, float64 ly, then the
// float64 samples row-major (x fastest). Native byte order.
void write_field_binary(const std::string& path, const Field& f);
Field read_field_binary(const std::string& path);

}  // namespace twolayer

#endif
