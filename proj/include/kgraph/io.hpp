#pragma once

#include <json.hpp>

#include "kgraph/averaging.hpp"
#include "kgraph/census.hpp"
#include "kgraph/classify.hpp"

namespace kgraph {

using nlohmann::json;

// Graph spec file: {"k": int, "m": [int], "theta": {"i,j": [int]}} with
// 1-based colour pairs and 0-based flat permutation arrays mapping
// (s-1)*m_j + (t-1) to (s'-1)*m_j + (t'-1).
json graph_to_json(const KGraph& g);
GraphPtr graph_from_json(const json& j);

// Words as [[colour, index], ...], 1-based.
json word_to_json(const NormalWord& w);
NormalWord word_from_json(const KGraph& g, const json& j);

// Element files: {"graph": ..., "terms": [{"u": [...], "v": [...], "coeff": "p/q"}]}
// Canonical output is sorted by (degree, u, v).
json elem_to_json(const Elem& a);
Elem elem_from_json(const json& j);
Elem elem_terms_from_json(GraphPtr g, const json& terms);

json type_report_to_json(const TypeReport& r);

json census_to_json(const CensusResult& c);
std::string census_to_csv(const CensusResult& c);

// Schedule files carry everything needed to replay: the graph, the input
// element, eps, the steps, the certified bound and the scalar.
json schedule_to_json(const GraphPtr& g, const Elem& a, const Rat& eps, const AveragingSchedule& s, const Rat& scalar);
struct ScheduleFile {
    GraphPtr graph;
    Elem element;
    Rat eps;
    AveragingSchedule schedule;
    Rat scalar;
};
ScheduleFile schedule_from_json(const json& j);

json validation_to_json(const ValidationReport& r);

} // namespace kgraph
