#pragma once

namespace kdvlab {

// Kernel execution policy. Parallel variants use OpenMP worksharing but are
// written so the result is identical to the serial path (exact min/max
// reductions with index tie-breaking, no reordered floating-point sums).
enum class Exec { serial, parallel };

} // namespace kdvlab
