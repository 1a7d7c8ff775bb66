// Shipped model corpus. Each benchmark is a complete system file embedded as
// text; benchmark() parses it on demand. The group protocols follow a common
// shape: the scheduler marks one position, the probabilistic step resolves
// the mark with a keep/no-op branch plus the protocol action (support only),
// and process fairness is a per-position requirement that every position be
// marked over and over. Departures from that shape, and the regularization
// choices for the prose-only models, are documented in each file's header
// comment.

#pragma once

#include "rmcfair/system.hpp"

#include <string>
#include <vector>

namespace rmcfair {

// Registry names, in shipping order.
const std::vector<std::string>& benchmark_names();

// Raw system file text. Throws std::invalid_argument listing the registry
// when the name is unknown.
const std::string& benchmark_text(const std::string& name);

// Parsed form of benchmark_text(name).
system_spec benchmark(const std::string& name);

} // namespace rmcfair
