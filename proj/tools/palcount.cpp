// Command-line front end: exact SRIM / irreducible counting queries,
// regeneration of the reference tables, verification suites, bounds, and
// class-group inspection.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "palcount/errors.hpp"
#include "palcount/oracle.hpp"
#include "palcount/tables.hpp"

using nlohmann::json;
using namespace palcount;

namespace {

// exit codes: 0 pass, 1 mismatch, 2 invalid input, 3 integrality failure,
// 4 overflow/guard exceeded
constexpr int kExitMismatch = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIntegrality = 3;
constexpr int kExitGuard = 4;

FieldPtr field_from_q(std::int64_t q) {
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    std::int64_t p = q;
    int r = 1;
    for (std::int64_t base = 2; base * base <= q; ++base) {
        if (q % base != 0) continue;
        p = base;
        r = 0;
        std::int64_t v = q;
        while (v > 1) {
            if (v % base != 0) throw std::invalid_argument("q must be a prime power");
            v /= base;
            ++r;
        }
        break;
    }
    return FieldSpec::make(p, r);
}

std::vector<FieldElement> parse_window(const FieldPtr& field, const std::string& text) {
    std::vector<FieldElement> out;
    if (text.empty()) return out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            out.push_back(field->element(std::stoll(cur)));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    return out;
}

// split on commas that sit outside bracketed array literals
std::vector<std::string> split_literals(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

json window_json(const std::vector<FieldElement>& w) {
    json arr = json::array();
    for (FieldElement e : w) arr.push_back(e.v);
    return arr;
}

json count_json(std::int64_t q, int n, const std::vector<FieldElement>& lead,
                const std::vector<FieldElement>& end, const CountResult& r) {
    return json{{"q", q},           {"n", n},
                {"ell", lead.size()}, {"t", end.size()},
                {"leading", window_json(lead)}, {"ending", window_json(end)},
                {"count", r.count}, {"residual", r.residual}};
}

int run_verify(const std::string& suite, const std::vector<std::int64_t>& qs, int max_n,
               int max_window, std::uint64_t budget, int table_id) {
    std::vector<std::string> issues;
    if (suite == "tables") {
        for (int id = 1; id <= 7; ++id) {
            if (table_id != 0 && id != table_id) continue;
            auto part = verify::check_tables(id, max_n, budget);
            issues.insert(issues.end(), part.begin(), part.end());
            std::printf("table %d: %s\n", id, part.empty() ? "pass" : "FAIL");
        }
        std::printf(
            "known-erratum cells (oracle-confirmed): table 1 n=14 xi1^0*xi2^2, "
            "table 1 n=14 xi1^0*xi2^4, table 2 n=6 xi1^1*xi2^0, table 4 n=6 S_3(n;1)\n");
    } else if (suite == "oracle") {
        issues = verify::check_oracle(qs, max_n, max_window, budget);
    } else if (suite == "closed-forms") {
        issues = verify::check_closed_forms(max_n);
    } else if (suite == "invariants") {
        issues = verify::check_invariants(max_n);
    } else {
        throw std::invalid_argument("unknown suite: " + suite);
    }
    for (const auto& line : issues) std::printf("mismatch: %s\n", line.c_str());
    std::printf("suite %s: %s (%zu mismatches)\n", suite.c_str(),
                issues.empty() ? "pass" : "FAIL", issues.size());
    return issues.empty() ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact counting of self-reciprocal irreducible monic polynomials and of "
                 "irreducible polynomials with prescribed coefficient windows over F_q"};
    app.require_subcommand(1);
    double tol = 0.0;
    app.add_option("--tolerance", tol,
                   "integrality tolerance (default 1e-6 or PALCOUNT_TOLERANCE)");

    auto* count = app.add_subcommand("count", "run one counting query");
    count->require_subcommand(1);
    std::int64_t q = 2;
    int n = 1;
    std::string leading_text, ending_text;

    auto* sripm = count->add_subcommand(
        "sripm", "count self-reciprocal irreducible monic polynomials of degree 2n");
    sripm->add_option("--q", q, "field size (prime power)")->required();
    sripm->add_option("--n", n, "half-degree: target polynomials have degree 2n")->required();
    sripm->add_option("--leading", leading_text, "prescribed leading coefficients c1,c2,...");

    auto* irr = count->add_subcommand(
        "irr", "count irreducible monic polynomials of degree n with prescribed windows");
    irr->add_option("--q", q, "field size (prime power)")->required();
    irr->add_option("--n", n, "degree")->required();
    irr->add_option("--leading", leading_text, "prescribed leading coefficients a1,a2,...");
    irr->add_option("--ending", ending_text, "prescribed ending coefficients b0,b1,...");

    auto* table = app.add_subcommand("table", "recompute one of the reference tables 1..7");
    int table_id = 1, max_n = 20;
    std::string format = "csv";
    bool annotate = false;
    table->add_option("--id", table_id, "table id 1..7")->required();
    table->add_option("--max-n", max_n, "row limit (default 20)");
    table->add_option("--format", format, "output format: json, csv, md")
        ->check(CLI::IsMember({"json", "csv", "md"}));
    table->add_flag("--annotate", annotate, "append the known-erratum annotation column");

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    std::vector<std::int64_t> qs{2, 3, 5};
    int vmax_n = 10, max_window = 4;
    std::uint64_t budget = 10'000'000;
    int verify_table_id = 0;
    verify_cmd
        ->add_option("--suite", suite, "one of: tables, oracle, closed-forms, invariants")
        ->required();
    verify_cmd->add_option("--q", qs, "field sizes for the oracle suite");
    verify_cmd->add_option("--max-n", vmax_n, "degree bound");
    verify_cmd->add_option("--max-window", max_window, "bound on l+t for the oracle suite");
    verify_cmd->add_option("--oracle-budget", budget, "candidate cap for exhaustive scans");
    verify_cmd->add_option("--id", verify_table_id, "restrict the tables suite to one table");

    auto* bounds_cmd =
        app.add_subcommand("bounds", "interval and positivity bounds for S_q(n;c)");
    std::int64_t bq = 2;
    int bn = 1, bell = 1;
    bounds_cmd->add_option("--q", bq, "field size")->required();
    bounds_cmd->add_option("--n", bn, "half-degree")->required();
    bounds_cmd->add_option("--ell", bell, "number of prescribed leading coefficients")
        ->required();

    auto* group_cmd = app.add_subcommand("group", "decompose the class group E^{l,t}");
    std::int64_t gq = 2;
    int gl = 1, gt = 0;
    std::string gens_text;
    bool list_elements = false;
    group_cmd->add_option("--q", gq, "field size")->required();
    group_cmd->add_option("--ell", gl, "leading window size")->required();
    group_cmd->add_option("--t", gt, "ending window size")->required();
    group_cmd->add_option("--gens", gens_text,
                          "generator override: polynomial literals POLY,POLY");
    group_cmd->add_flag("--elements", list_elements, "list every element with its exponents");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (tol > 0) set_tolerance(tol);

        if (sripm->parsed()) {
            auto field = field_from_q(q);
            auto lead = parse_window(field, leading_text);
            CountResult r = S_count({field, n, lead});
            std::cout << count_json(q, 2 * n, lead, {}, r).dump() << "\n";
            return 0;
        }
        if (irr->parsed()) {
            auto field = field_from_q(q);
            auto lead = parse_window(field, leading_text);
            auto end = parse_window(field, ending_text);
            CountResult r;
            if (lead.empty() && end.empty()) {
                r = I_total(*field, n);
            } else {
                GroupPtr G = cached_group(field, int(lead.size()), int(end.size()));
                r = I_count(G, n, ClassLabel{field, lead, end});
            }
            std::cout << count_json(q, n, lead, end, r).dump() << "\n";
            return 0;
        }
        if (table->parsed()) {
            TableFormat fmt = format == "json"  ? TableFormat::json
                              : format == "csv" ? TableFormat::csv
                                                : TableFormat::markdown;
            std::cout << render_table({table_id, max_n, annotate}, fmt);
            return 0;
        }
        if (verify_cmd->parsed())
            return run_verify(suite, qs, vmax_n, max_window, budget, verify_table_id);
        if (bounds_cmd->parsed()) {
            auto field = field_from_q(bq);
            BoundsReport rep = bounds(*field, bn, bell);
            std::cout << json{{"q", bq},
                              {"n", bn},
                              {"ell", bell},
                              {"lower", rep.lower},
                              {"upper", rep.upper},
                              {"positivity_ell", rep.positivity_ell},
                              {"cohen_lower", rep.cohen_lower},
                              {"cohen_upper", rep.cohen_upper}}
                             .dump()
                      << "\n";
            return 0;
        }
        if (group_cmd->parsed()) {
            auto field = field_from_q(gq);
            std::optional<std::vector<Poly>> gens;
            if (!gens_text.empty()) {
                gens.emplace();
                for (const std::string& lit : split_literals(gens_text))
                    gens->push_back(parse_poly(field, lit));
            }
            GroupPtr G = decompose(field, gl, gt, gens);
            json out{{"q", gq}, {"ell", gl}, {"t", gt}, {"order", G->order()}};
            out["orders"] = G->orders();
            json gens_json = json::array();
            for (const auto& g : G->generators())
                gens_json.push_back(format_poly(canonical_rep(g)));
            out["generators"] = gens_json;
            if (list_elements) {
                json elems = json::array();
                for (std::int64_t li = 0; li < G->order(); ++li) {
                    ClassLabel lab = G->label_at(li);
                    elems.push_back(json{{"leading", window_json(lab.leading)},
                                         {"ending", window_json(lab.ending)},
                                         {"exponents", G->exponent_of(lab)}});
                }
                out["elements"] = elems;
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const integrality_error& e) {
        std::cerr << "integrality failure: " << e.what() << "\n";
        return kExitIntegrality;
    } catch (const guard_error& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return kExitGuard;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return 0;
}
