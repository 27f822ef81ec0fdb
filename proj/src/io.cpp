#include "kgraph/io.hpp"

#include <sstream>

#include "kgraph/errors.hpp"

namespace kgraph {

json graph_to_json(const KGraph& g) {
    json j;
    j["k"] = g.k;
    j["m"] = g.m;
    json theta = json::object();
    for (int i = 0; i < g.k; ++i)
        for (int jj = i + 1; jj < g.k; ++jj)
            theta[std::to_string(i + 1) + "," + std::to_string(jj + 1)] = g.perm(i, jj).fwd;
    j["theta"] = theta;
    return j;
}

GraphPtr graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("k") || !j.contains("m") || !j.contains("theta"))
        throw domain_error("graph spec must contain k, m, theta");
    int k = j.at("k").get<int>();
    std::vector<int> m = j.at("m").get<std::vector<int>>();
    if (k < 1 || static_cast<int>(m.size()) != k) throw domain_error("graph spec: m must have length k");
    std::vector<std::vector<int>> theta;
    for (int i = 0; i < k; ++i)
        for (int jj = i + 1; jj < k; ++jj) {
            std::string key = std::to_string(i + 1) + "," + std::to_string(jj + 1);
            if (!j.at("theta").contains(key)) throw domain_error("graph spec: missing theta entry " + key);
            theta.push_back(j.at("theta").at(key).get<std::vector<int>>());
        }
    return make_kgraph(k, m, theta);
}

json word_to_json(const NormalWord& w) {
    json out = json::array();
    for (const Edge& e : to_edges(w)) out.push_back({e.colour + 1, e.index + 1});
    return out;
}

NormalWord word_from_json(const KGraph& g, const json& j) {
    if (!j.is_array()) throw domain_error("word must be an array of [colour,index] pairs");
    std::vector<Edge> edges;
    for (const json& p : j) {
        if (!p.is_array() || p.size() != 2) throw domain_error("word entries must be [colour,index]");
        edges.push_back({p[0].get<int>() - 1, p[1].get<int>() - 1});
    }
    return normalize(g, edges);
}

json elem_to_json(const Elem& a) {
    json j;
    j["graph"] = graph_to_json(*a.graph);
    json terms = json::array();
    for (const auto& [n, comp] : a.comps)
        for (const auto& [key, c] : comp.terms) {
            json t;
            t["u"] = word_to_json(key.first);
            t["v"] = word_to_json(key.second);
            t["coeff"] = rat_str(c);
            terms.push_back(std::move(t));
        }
    j["terms"] = terms;
    return j;
}

Elem elem_terms_from_json(GraphPtr g, const json& terms) {
    if (!terms.is_array()) throw domain_error("element terms must be an array");
    std::vector<RawTerm> raw;
    for (const json& t : terms) {
        RawTerm rt;
        rt.u = word_from_json(*g, t.at("u"));
        rt.v = word_from_json(*g, t.at("v"));
        rt.c = rat_parse(t.at("coeff").get<std::string>());
        raw.push_back(std::move(rt));
    }
    return make_elem(std::move(g), raw);
}

Elem elem_from_json(const json& j) {
    GraphPtr g = graph_from_json(j.at("graph"));
    return elem_terms_from_json(g, j.at("terms"));
}

json type_report_to_json(const TypeReport& r) {
    json j;
    j["aperiodic"] = r.aperiodic == "unknown" ? "unknown(" + r.aperiodic_reason + ")" : r.aperiodic;
    j["lpb"] = r.lpb;
    j["rankG"] = r.rankG;
    json basis = json::array();
    for (const Deg& b : r.basis) basis.push_back(b);
    j["basis"] = basis;
    j["factor_certified"] = r.factor_certified;
    if (r.verdict == Verdict::NotFactor)
        j["verdict"] = "NotFactor";
    else if (r.verdict == Verdict::TypeIII1)
        j["verdict"] = "III_1";
    else {
        j["verdict"] = json{{"III_lambda", {{"base", r.lambda_base}, {"exp", r.lambda_exp}}}};
        Rat lambda = rat_pow(Rat(r.lambda_base), -r.lambda_exp);
        j["lambda"] = rat_str(lambda);
        j["lambda_decimal"] = rat_decimal(lambda, 20);
        if (r.closed_formula_agrees) j["closed_formula_agrees"] = *r.closed_formula_agrees;
    }
    if (r.witness) {
        json w;
        w["g"] = r.witness->g;
        w["pairing"] = r.witness->pairing;
        j["periodicity_witness"] = w;
    }
    return j;
}

json census_to_json(const CensusResult& c) {
    json j;
    j["total_candidates"] = c.total_candidates;
    j["valid"] = c.valid_count;
    j["classes"] = c.rows.size();
    json rows = json::array();
    for (const CensusRow& r : c.rows) {
        json row;
        row["canonical_form"] = r.canonical;
        row["class_size"] = r.class_size;
        row["lpb"] = r.lpb;
        row["periodic"] = r.periodic;
        row["verdict"] = r.verdict;
        row["lambda"] = r.lambda;
        rows.push_back(std::move(row));
    }
    j["rows"] = rows;
    return j;
}

std::string census_to_csv(const CensusResult& c) {
    std::ostringstream os;
    os << "canonical_form,class_size,lpb,periodic,verdict,lambda\n";
    for (const CensusRow& r : c.rows)
        os << '"' << r.canonical << "\"," << r.class_size << ',' << (r.lpb ? "true" : "false") << ',' << r.periodic
           << ',' << r.verdict << ',' << r.lambda << '\n';
    return os.str();
}

json schedule_to_json(const GraphPtr& g, const Elem& a, const Rat& eps, const AveragingSchedule& s, const Rat& scalar) {
    json j;
    j["graph"] = graph_to_json(*g);
    j["element"] = elem_to_json(a).at("terms");
    j["eps"] = rat_str(eps);
    j["scalar"] = rat_str(scalar);
    j["residual_bound"] = rat_str(s.residual_bound);
    json steps = json::array();
    for (const ScheduleStep& st : s.steps) {
        json e;
        e["kind"] = st.kind;
        if (st.kind == "matrix_dixmier")
            e["level_n"] = st.matrix_level;
        else {
            e["p"] = st.p;
            e["tuple_level"] = st.tuple_level;
        }
        steps.push_back(std::move(e));
    }
    j["steps"] = steps;
    return j;
}

ScheduleFile schedule_from_json(const json& j) {
    ScheduleFile f;
    f.graph = graph_from_json(j.at("graph"));
    f.element = elem_terms_from_json(f.graph, j.at("element"));
    f.eps = rat_parse(j.at("eps").get<std::string>());
    f.scalar = rat_parse(j.at("scalar").get<std::string>());
    f.schedule.residual_bound = rat_parse(j.at("residual_bound").get<std::string>());
    for (const json& e : j.at("steps")) {
        ScheduleStep st;
        st.kind = e.at("kind").get<std::string>();
        if (st.kind == "matrix_dixmier") {
            st.matrix_level = e.at("level_n").get<int>();
            st.p = deg_zero(f.graph->k);
            st.tuple_level = deg_zero(f.graph->k);
        } else {
            st.p = e.at("p").get<Deg>();
            st.tuple_level = e.at("tuple_level").get<Deg>();
        }
        f.schedule.steps.push_back(std::move(st));
    }
    return f;
}

json validation_to_json(const ValidationReport& r) {
    json j;
    j["valid"] = r.valid();
    if (!r.structural_ok) j["structural_error"] = r.structural_error;
    json v = json::array();
    for (const CubicViolation& cv : r.violations)
        v.push_back({{"colours", {cv.i + 1, cv.j + 1, cv.l + 1}}, {"edges", {cv.t1 + 1, cv.t2 + 1, cv.t3 + 1}}});
    if (!r.violations.empty()) j["violations"] = v;
    return j;
}

} // namespace kgraph
