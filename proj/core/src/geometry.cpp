#include "ccsim/geometry.hpp"

#include <bit>
#include <string>

namespace ccsim {

void CacheGeometry::validate() const {
  if (line_size_bytes == 0 || !std::has_single_bit(line_size_bytes)) {
    throw SimError(ErrorCode::kConfig, "line_size_bytes must be a power of 2");
  }
  if (num_sets == 0 || !std::has_single_bit(num_sets)) {
    throw SimError(ErrorCode::kConfig, "num_sets must be a power of 2");
  }
  if (ways < 1) {
    throw SimError(ErrorCode::kConfig, "ways must be >= 1");
  }
  if (did_bits < 1 || did_bits > 15) {
    throw SimError(ErrorCode::kConfig, "did_bits must be in [1, 15]");
  }
}

}  // namespace ccsim
