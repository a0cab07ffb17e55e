#ifndef SGC_TOOLS_EXACTNESS_HPP
#define SGC_TOOLS_EXACTNESS_HPP

#include <ostream>

namespace sgc::tools {

/// Runs the cross-module invariant suite; returns the number of failed
/// checks.  fast trims polynomial orders for quick smoke runs.
int run_exactness(bool fast, std::ostream& os);

}  // namespace sgc::tools

#endif
