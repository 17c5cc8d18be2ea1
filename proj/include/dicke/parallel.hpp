#pragma once

namespace dicke::parallel {

// Caps OpenMP threads at the value of DICKE_THREADS when it is set to a
// positive integer. Returns the resulting thread limit (1 without OpenMP).
int configure_from_env();

int max_threads();

}  // namespace dicke::parallel
