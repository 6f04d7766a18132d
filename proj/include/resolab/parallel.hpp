#ifndef RESOLAB_PARALLEL_HPP
#define RESOLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace resolab {

// Process-wide worker count used by the scanning routines. Results never
// depend on it; only wall time does.
void set_jobs(int jobs);
int jobs();

// Runs fn(i) for i in [0, count) across jobs() workers. Work is handed out in
// increasing i; fn must only write to slot-private state.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace resolab

#endif  // RESOLAB_PARALLEL_HPP
