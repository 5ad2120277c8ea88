#pragma once
/* Execution policy for the OpenMP kernels.  Every parallel kernel has a
 * serial twin used as reference in tests; results are bitwise identical
 * because each output cell is computed by exactly one thread with the same
 * inner loop order. */

namespace kmsurf {

enum class ExecPolicy { Serial, Parallel };

}  // namespace kmsurf
