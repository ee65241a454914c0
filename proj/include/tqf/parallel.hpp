#pragma once

namespace tqf {

/// Caps the OpenMP team size used by every parallel kernel; k <= 0 restores
/// the runtime default.
void set_thread_count(int k);
int thread_count();

}  // namespace tqf
