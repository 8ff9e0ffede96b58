#pragma once

namespace dynirr {

// Worker count for OpenMP regions: jobs itself when positive, otherwise all
// available threads. Always 1 in builds without OpenMP.
int resolve_jobs(int jobs);

}  // namespace dynirr
