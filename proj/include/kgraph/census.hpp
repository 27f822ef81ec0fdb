#pragma once

#include <functional>

#include "kgraph/classify.hpp"

namespace kgraph {

struct CensusRow {
    std::string canonical;
    long class_size = 0;
    bool lpb = false;
    std::string periodic;  // "yes" | "unknown(bound=N)"
    std::string verdict;
    std::string lambda;    // "c^-g" rendering, empty unless III_lambda
};

struct CensusResult {
    long total_candidates = 0;
    long valid_count = 0;
    std::vector<CensusRow> rows;  // sorted by canonical form
};

// Iterates all theta families (product of full symmetric groups over the
// colour pairs); throws resource_error when the candidate count exceeds cap.
void for_each_theta(int k, const std::vector<int>& m, long cap,
                    const std::function<void(const std::vector<std::vector<int>>&)>& fn);

// All cubic-valid graphs, in enumeration order.
std::vector<GraphPtr> all_valid_graphs(int k, const std::vector<int>& m, long cap);

// Partition into isomorphism classes via canonical forms. All graphs must
// share (k, m).
std::vector<std::vector<GraphPtr>> orbit_classes(const std::vector<GraphPtr>& graphs);

CensusResult enumerate_census(int k, const std::vector<int>& m, int periodicity_bound, long cap);

} // namespace kgraph
