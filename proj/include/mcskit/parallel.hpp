#pragma once

#include <functional>

#include <Eigen/Core>

namespace mcskit {

/// Worker count: MCSKIT_THREADS if set to a positive integer, otherwise the hardware
/// concurrency (at least 1).
int worker_count();

/// Calls body(i) for i in [0, count). Iterations must be independent; each writes only
/// its own outputs, so results do not depend on the worker count.
void parallel_for(Eigen::Index count, const std::function<void(Eigen::Index)>& body);

}  // namespace mcskit
