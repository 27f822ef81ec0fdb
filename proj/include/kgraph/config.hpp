#pragma once

#include <cstddef>

namespace kgraph {

// Global term budget for symbolic operations.  Operations that would exceed
// it throw resource_error instead of truncating.  Overridable from the CLI
// (--max-terms) and the KGRAPH_MAX_TERMS environment variable.
std::size_t term_budget();
void set_term_budget(std::size_t n);

// Reads KGRAPH_MAX_TERMS once at startup, if present.
void init_term_budget_from_env();

void check_term_budget(std::size_t n, const char* where);

} // namespace kgraph
