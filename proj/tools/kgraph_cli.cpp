// Command-line front door: parse graph specs, dispatch to the toolkit,
// emit deterministic JSON reports and replayable averaging schedules.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "kgraph/config.hpp"
#include "kgraph/errors.hpp"
#include "kgraph/io.hpp"

using namespace kgraph;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

GraphPtr load_graph(const std::string& path) { return graph_from_json(load_json(path)); }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<int> parse_m(const std::string& s) {
    std::vector<int> m;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        m.push_back(std::stoi(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return m;
}

} // namespace

int main(int argc, char** argv) {
    init_term_budget_from_env();

    CLI::App app{"Exact toolkit for single-vertex k-graphs: validation, normal forms, "
                 "symbolic C*-calculus, KMS checks, averaging certificates and factor-type classification"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::size_t max_terms = 0;
    int periodicity_bound = 4;
    std::string eps_str = "1/100";
    app.add_option("--max-terms", max_terms, "term budget for symbolic operations");
    app.add_option("--periodicity-bound", periodicity_bound, "height bound for the periodicity search");
    app.add_option("--eps", eps_str, "target residual bound p/q for averaging");

    std::string graph_path, word_str, mu_str, nu_str, m_str, a_path, b_path, elem_path, out_path, sched_path, format = "json";
    int cli_k = 2;
    std::string maxdeg_str;

    auto* validate = app.add_subcommand("validate", "validate k-graph data (cubic condition)");
    validate->add_option("--graph", graph_path, "graph spec JSON file")->required();

    auto* nform = app.add_subcommand("normal-form", "colour-ordered normal form of a word");
    nform->add_option("--graph", graph_path)->required();
    nform->add_option("--word", word_str, "JSON array [[colour,index],...] (1-based)")->required();

    auto* lmin = app.add_subcommand("lambda-min", "minimal common extensions of two words");
    lmin->add_option("--graph", graph_path)->required();
    lmin->add_option("--mu", mu_str)->required();
    lmin->add_option("--nu", nu_str)->required();

    auto* lpb = app.add_subcommand("lpb", "little pull-back property and single alignment");
    lpb->add_option("--graph", graph_path)->required();
    lpb->add_option("--maxdeg", maxdeg_str, "comma-separated degree bound for the alignment scan");

    auto* period = app.add_subcommand("periodicity", "bounded periodicity search");
    period->add_option("--graph", graph_path)->required();

    auto* igroup = app.add_subcommand("intrinsic-group", "intrinsic group of a multiplicity vector");
    igroup->add_option("--m", m_str, "comma-separated multiplicities")->required();

    auto* classify = app.add_subcommand("classify", "factor type of the k-graph von Neumann algebra");
    classify->add_option("--graph", graph_path)->required();

    auto* kms = app.add_subcommand("kms-check", "exact KMS identity check for two elements");
    kms->add_option("--a", a_path, "element JSON file")->required();
    kms->add_option("--b", b_path, "element JSON file")->required();

    auto* dixmier = app.add_subcommand("dixmier", "certified averaging of an element to its omega-scalar");
    dixmier->add_option("--graph", graph_path)->required();
    dixmier->add_option("--element", elem_path, "element JSON file (terms only or full element file)")->required();
    dixmier->add_option("--schedule-out", out_path, "write the replayable schedule here");

    auto* census = app.add_subcommand("census", "enumerate and classify all theta families");
    census->add_option("--k", cli_k)->required();
    census->add_option("--m", m_str)->required();
    census->add_option("--format", format, "json or csv");

    auto* replay = app.add_subcommand("replay", "re-execute a schedule and re-verify its certificate");
    replay->add_option("--schedule", sched_path, "schedule JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (max_terms > 0) set_term_budget(max_terms);
        Rat eps = rat_parse(eps_str);

        if (validate->parsed()) {
            json spec = load_json(graph_path);
            int k = spec.at("k").get<int>();
            std::vector<int> m = spec.at("m").get<std::vector<int>>();
            std::vector<std::vector<int>> theta;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j)
                    theta.push_back(spec.at("theta").at(std::to_string(i + 1) + "," + std::to_string(j + 1)).get<std::vector<int>>());
            ValidationReport rep = validate_kgraph(k, m, theta);
            emit(validation_to_json(rep));
            return rep.valid() ? 0 : 2;
        }
        if (nform->parsed()) {
            GraphPtr g = load_graph(graph_path);
            NormalWord w = word_from_json(*g, json::parse(word_str));
            json out;
            out["word"] = word_to_json(w);
            out["degree"] = w.degree();
            emit(out);
            return 0;
        }
        if (lmin->parsed()) {
            GraphPtr g = load_graph(graph_path);
            NormalWord mu = word_from_json(*g, json::parse(mu_str));
            NormalWord nu = word_from_json(*g, json::parse(nu_str));
            json pairs = json::array();
            for (const auto& [xi, eta] : lambda_min(*g, mu, nu))
                pairs.push_back({{"xi", word_to_json(xi)}, {"eta", word_to_json(eta)}});
            json out;
            out["count"] = pairs.size();
            out["pairs"] = pairs;
            emit(out);
            return 0;
        }
        if (lpb->parsed()) {
            GraphPtr g = load_graph(graph_path);
            LpbReport rep = check_little_pullback(*g);
            json out;
            out["lpb"] = rep.lpb;
            if (rep.witness)
                out["witness"] = {{"e", {rep.witness->first.colour + 1, rep.witness->first.index + 1}},
                                  {"f", {rep.witness->second.colour + 1, rep.witness->second.index + 1}}};
            Deg maxdeg(static_cast<std::size_t>(g->k), 3);
            if (!maxdeg_str.empty()) {
                std::vector<int> v = parse_m(maxdeg_str);
                if (static_cast<int>(v.size()) != g->k) throw domain_error("--maxdeg must have k entries");
                maxdeg.assign(v.begin(), v.end());
            }
            AlignReport ar = check_singly_aligned(*g, maxdeg);
            out["singly_aligned"] = {{"maxdeg", maxdeg}, {"holds", ar.singly_aligned}};
            if (ar.witness)
                out["singly_aligned"]["witness"] = {{"mu", word_to_json(ar.witness->first)}, {"nu", word_to_json(ar.witness->second)}};
            emit(out);
            return 0;
        }
        if (period->parsed()) {
            GraphPtr g = load_graph(graph_path);
            PeriodicityResult rep = check_periodicity(g, periodicity_bound);
            json out;
            out["periodic"] = rep.periodic ? json(true) : json("unknown");
            out["bound"] = rep.bound;
            if (rep.witness) {
                out["g"] = rep.witness->g;
                out["pairing"] = rep.witness->pairing;
                out["verified"] = rep.witness->verified;
            }
            emit(out);
            return 0;
        }
        if (igroup->parsed()) {
            IntrinsicGroup ig = intrinsic_group(parse_m(m_str));
            json out;
            out["rank"] = ig.rank;
            json basis = json::array();
            for (const Deg& b : ig.basis) basis.push_back(b);
            out["basis"] = basis;
            emit(out);
            return 0;
        }
        if (classify->parsed()) {
            GraphPtr g = load_graph(graph_path);
            emit(type_report_to_json(classify_type(g, periodicity_bound)));
            return 0;
        }
        if (kms->parsed()) {
            Elem a = elem_from_json(load_json(a_path));
            Elem b = elem_from_json(load_json(b_path));
            KmsReport rep = kms_check(a, b);
            json out;
            out["holds"] = rep.holds;
            if (rep.violation)
                out["counterexample"] = {{"dA", rep.violation->na},
                                         {"dB", rep.violation->nb},
                                         {"omega(AB)", rat_str(rep.violation->lhs)},
                                         {"m^dB omega(BA)", rat_str(rep.violation->rhs)}};
            emit(out);
            return 0;
        }
        if (dixmier->parsed()) {
            GraphPtr g = load_graph(graph_path);
            json ej = load_json(elem_path);
            Elem a = ej.is_array() ? elem_terms_from_json(g, ej) : elem_terms_from_json(g, ej.at("terms"));
            DixmierResult res = dixmier_average(g, a, eps);
            json sched = schedule_to_json(g, a, eps, res.schedule, res.scalar);
            if (!out_path.empty()) {
                std::ofstream os(out_path);
                os << sched.dump(2) << "\n";
            }
            json out;
            out["scalar"] = rat_str(res.scalar);
            out["omega"] = rat_str(omega(a));
            out["residual_bound"] = rat_str(res.schedule.residual_bound);
            out["steps"] = res.schedule.steps.size();
            emit(out);
            return 0;
        }
        if (census->parsed()) {
            CensusResult res = enumerate_census(cli_k, parse_m(m_str), periodicity_bound, 10000000);
            if (format == "csv")
                std::cout << census_to_csv(res);
            else
                emit(census_to_json(res));
            return 0;
        }
        if (replay->parsed()) {
            ScheduleFile f = schedule_from_json(load_json(sched_path));
            ReplayReport rep = replay_schedule(f.graph, f.element, f.schedule, f.eps, f.scalar);
            json out;
            out["confirmed"] = rep.confirmed;
            if (!rep.confirmed) out["diff"] = rep.detail;
            emit(out);
            return rep.confirmed ? 0 : 1;
        }
    } catch (const resource_error& e) {
        emit(json{{"error", "resource"}, {"message", e.what()}});
        return 3;
    } catch (const domain_error& e) {
        emit(json{{"error", "domain"}, {"message", e.what()}});
        return 2;
    } catch (const std::exception& e) {
        emit(json{{"error", "internal"}, {"message", e.what()}});
        return 2;
    }
    return 64;
}
