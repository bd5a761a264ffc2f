// Pipeline-level optimization: constant-area imbalance exploration and the
// divide-and-conquer area minimizer under a yield constraint.
#pragma once

#include "statpipe/sizing.hpp"

namespace statpipe {

// Area-neutral hill climb: each step moves a fixed area increment from the
// highest-sensitivity stage (cheap delay, expensive area) to the lowest and
// keeps the move iff the analytical yield improves.  Total area is conserved
// within 0.5%.
SizingSolution unbalance_explore(const PipelineModel &p, const YieldQuery &q,
                                 int max_steps);

// Probe variant: fixes the donor/receiver pair chosen on the first step and
// applies every transfer unconditionally, driving the design past the
// accept-if-better stopping point (diminishing-returns sweep).
SizingSolution unbalance_force(const PipelineModel &p, const YieldQuery &q, int steps);

// Divide-and-conquer sizing: stages ordered by ascending sensitivity are each
// sized against a working delay budget with the full-yield quantile; after
// every stage the pipeline is re-folded incrementally.  The budget then
// absorbs the remaining slack T - (mu + quantile(Y)*sigma) and the pass
// repeats until the slack settles below 0.1% of T or 50 iterations.  Returns
// the best solution seen: minimum area among yield-feasible iterates, else
// the maximum-yield iterate, flagged infeasible.
SizingSolution global_optimize(const PipelineModel &p, const YieldQuery &q);

}  // namespace statpipe
