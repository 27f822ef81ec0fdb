#include "kgraph/census.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "kgraph/errors.hpp"

namespace kgraph {

void for_each_theta(int k, const std::vector<int>& m, long cap,
                    const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);

    // candidate count prod (m_i m_j)!
    double est = 1;
    for (auto [i, j] : pairs) {
        long n = m[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(j)];
        for (long t = 2; t <= n; ++t) {
            est *= static_cast<double>(t);
            if (est > static_cast<double>(cap)) throw resource_error("census: candidate count exceeds cap");
        }
    }

    std::vector<std::vector<int>> perms(pairs.size());
    for (std::size_t t = 0; t < pairs.size(); ++t) {
        long n = m[static_cast<std::size_t>(pairs[t].first)] * m[static_cast<std::size_t>(pairs[t].second)];
        perms[t].resize(static_cast<std::size_t>(n));
        std::iota(perms[t].begin(), perms[t].end(), 0);
    }
    // odometer over permutations, last pair fastest
    while (true) {
        fn(perms);
        int t = static_cast<int>(pairs.size()) - 1;
        while (t >= 0 && !std::next_permutation(perms[static_cast<std::size_t>(t)].begin(), perms[static_cast<std::size_t>(t)].end()))
            --t;  // next_permutation wrapped this pair back to identity
        if (t < 0) break;
    }
}

std::vector<GraphPtr> all_valid_graphs(int k, const std::vector<int>& m, long cap) {
    std::vector<GraphPtr> out;
    for_each_theta(k, m, cap, [&](const std::vector<std::vector<int>>& theta) {
        if (validate_kgraph(k, m, theta).valid()) out.push_back(make_kgraph(k, m, theta));
    });
    return out;
}

std::vector<std::vector<GraphPtr>> orbit_classes(const std::vector<GraphPtr>& graphs) {
    std::map<std::string, std::vector<GraphPtr>> by_canon;
    for (const GraphPtr& g : graphs) {
        if (g->k != graphs.front()->k || g->m != graphs.front()->m)
            throw domain_error("orbit_classes: graphs have mixed signatures");
        by_canon[canonical_iso_form(*g)].push_back(g);
    }
    std::vector<std::vector<GraphPtr>> out;
    for (auto& [canon, cls] : by_canon) out.push_back(std::move(cls));
    return out;
}

CensusResult enumerate_census(int k, const std::vector<int>& m, int periodicity_bound, long cap) {
    CensusResult out;
    std::map<std::string, long> class_sizes;
    std::map<std::string, GraphPtr> reps;
    for_each_theta(k, m, cap, [&](const std::vector<std::vector<int>>& theta) {
        ++out.total_candidates;
        if (!validate_kgraph(k, m, theta).valid()) return;
        ++out.valid_count;
        GraphPtr g = make_kgraph(k, m, theta);
        std::string canon = canonical_iso_form(*g);
        ++class_sizes[canon];
        reps.emplace(canon, g);
    });
    for (const auto& [canon, size] : class_sizes) {
        CensusRow row;
        row.canonical = canon;
        row.class_size = size;
        const GraphPtr& g = reps.at(canon);
        row.lpb = check_little_pullback(*g).lpb;
        bool classifiable = true;
        for (int mi : m)
            if (mi < 2) classifiable = false;
        if (classifiable) {
            TypeReport tr = classify_type(g, periodicity_bound);
            row.periodic = tr.aperiodic == "false" ? "yes" : "unknown(bound=" + std::to_string(periodicity_bound) + ")";
            if (tr.aperiodic == "true") row.periodic = "no";
            row.verdict = verdict_str(tr);
            if (tr.verdict == Verdict::TypeIIILambda)
                row.lambda = "1/" + std::to_string(static_cast<long>([&] {
                                 long v = 1;
                                 for (long e = 0; e < tr.lambda_exp; ++e) v *= tr.lambda_base;
                                 return v;
                             }()));
        } else {
            PeriodicityResult per = check_periodicity(g, periodicity_bound);
            row.periodic = per.periodic ? "yes" : "unknown(bound=" + std::to_string(periodicity_bound) + ")";
            row.verdict = "n/a";
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace kgraph
