#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace lumiprobe {

// Global worker cap, settable from the CLI (--threads).
int max_threads();
void set_max_threads(int n);

// Runs fn(begin, end) over disjoint chunks of [begin, end). Each chunk writes
// its own output range, so results do not depend on the thread count.
void parallel_for_chunks(int begin, int end, const std::function<void(int, int)>& fn);

}  // namespace lumiprobe
