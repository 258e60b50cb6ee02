// Deterministic data-parallel execution.
//
// The reproducibility contract: output bytes never depend on the worker count.
// The pattern that guarantees it is (1) split work into blocks whose boundaries
// are fixed by the problem size alone, (2) let workers claim blocks in any order,
// (3) have each block write its own slot, (4) combine slots in block order on the
// calling thread. Integer reductions commute anyway; floating reductions don't,
// hence the ordered combine.
#pragma once

#include <functional>

namespace nearcurve::exec {

// 0 = auto-detect (hardware concurrency). Takes effect for subsequent calls.
void set_threads(int n);
int threads(); // resolved count, >= 1

// Invokes fn(i) for every i in [0, n_blocks), distributed over the worker pool.
// fn must only touch state owned by block i. Exceptions are rethrown (first one
// in block order wins) after all workers finish.
void run_blocks(long long n_blocks, const std::function<void(long long)>& fn);

} // namespace nearcurve::exec
