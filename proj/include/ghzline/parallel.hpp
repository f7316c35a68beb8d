#pragma once

// Execution options shared by the OpenMP kernels (sweep grid, Monte Carlo
// chunks). Every kernel also has a serial reference path; both paths give
// bit-identical results because work is split into fixed units whose
// results are combined in a fixed order.

namespace ghzline {

enum class ExecMode { Serial, Parallel };

struct ExecOptions {
  ExecMode mode = ExecMode::Parallel;
  int threads = 0;  // 0: OpenMP default
};

inline constexpr ExecOptions kSerial{ExecMode::Serial, 1};

/// Worker count the parallel path would use for `opts`.
int effective_threads(const ExecOptions& opts);

}  // namespace ghzline
