#pragma once

#include <cstddef>
#include <functional>

namespace perverse {

/** Worker cap: PERVERSE_THREADS if set and positive, else hardware concurrency. */
std::size_t thread_cap();

/** Runs body(0..n-1) on up to thread_cap() threads; rethrows the first exception. */
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace perverse
