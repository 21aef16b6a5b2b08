#include "palcount/tables.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace palcount {

namespace {

std::string xi_label(int a, int b) {
    return "xi1^" + std::to_string(a) + "*xi2^" + std::to_string(b);
}

// erratum cells: locations where the published prints disagree with the
// recomputed (oracle-confirmed) values
struct ErratumCell {
    int id, n;
    const char* column;
};
constexpr ErratumCell kErrata[] = {
    {1, 14, "xi1^0*xi2^2"},
    {1, 14, "xi1^0*xi2^4"},
    {2, 6, "xi1^1*xi2^0"},
    {4, 6, "S_3(n;1)"},
};

}  // namespace

TableData compute_table(const TableSpec& spec) {
    if (spec.id < 1 || spec.id > 7) throw std::invalid_argument("table id must be 1..7");
    if (spec.max_n < 1) throw std::invalid_argument("table row limit must be >= 1");
    TableData out;
    out.id = spec.id;

    auto track = [&out](const CountResult& r) {
        out.max_residual = std::max(out.max_residual, r.residual);
        return r.count;
    };

    if (spec.id >= 1 && spec.id <= 3) {
        auto field = FieldSpec::make(3);
        GroupPtr G = paper_basis_group(field, 1, 2);
        auto eng = engine_for(G);
        const int e1 = spec.id - 1;
        for (int s = 0; s < 6; ++s) out.columns.push_back(xi_label(e1, s));
        for (int n = 1; n <= spec.max_n; ++n) {
            std::vector<std::int64_t> row;
            for (int s = 0; s < 6; ++s) {
                std::vector<int> e{e1, s};
                row.push_back(track(eng->I_count(n, G->element(e))));
            }
            out.rows.push_back(std::move(row));
        }
    } else if (spec.id == 4) {
        out.columns = {"S_3(n;0)", "S_3(n;1)"};
        for (int n = 1; n <= spec.max_n; ++n)
            out.rows.push_back({track(S3_trace(n, 0)), track(S3_trace(n, 1))});
    } else if (spec.id == 5 || spec.id == 6) {
        auto field = FieldSpec::make(2);
        GroupPtr G = paper_basis_group(field, 2, 3);
        auto eng = engine_for(G);
        const int base = spec.id == 5 ? 0 : 2;
        for (int a = base; a < base + 2; ++a)
            for (int s = 0; s < 4; ++s) out.columns.push_back(xi_label(a, s));
        for (int n = 1; n <= spec.max_n; ++n) {
            std::vector<std::int64_t> row;
            for (int a = base; a < base + 2; ++a)
                for (int s = 0; s < 4; ++s) {
                    std::vector<int> e{a, s};
                    row.push_back(track(eng->I_count(n, G->element(e))));
                }
            out.rows.push_back(std::move(row));
        }
    } else {
        out.columns = {"S_2(n;0,0)", "S_2(n;0,1)", "S_2(n;1,0)", "S_2(n;1,1)"};
        for (int n = 1; n <= spec.max_n; ++n)
            out.rows.push_back({track(S2_two(n, 0, 0)), track(S2_two(n, 0, 1)),
                                track(S2_two(n, 1, 0)), track(S2_two(n, 1, 1))});
    }

    if (spec.annotate) {
        for (const ErratumCell& cell : kErrata) {
            if (cell.id != spec.id || cell.n > spec.max_n) continue;
            out.annotations.push_back(
                {cell.n, cell.column,
                 "known-erratum cell: computed value confirmed by exhaustive enumeration"});
        }
    }
    return out;
}

std::string render_table(const TableSpec& spec, TableFormat format) {
    TableData data = compute_table(spec);

    if (format == TableFormat::json) {
        nlohmann::json j;
        j["id"] = data.id;
        j["columns"] = data.columns;
        j["rows"] = nlohmann::json::array();
        for (size_t i = 0; i < data.rows.size(); ++i) {
            nlohmann::json row;
            row["n"] = int(i) + 1;
            row["values"] = data.rows[i];
            j["rows"].push_back(std::move(row));
        }
        if (spec.annotate) {
            j["annotations"] = nlohmann::json::array();
            for (const auto& a : data.annotations)
                j["annotations"].push_back({{"n", a.n}, {"column", a.column}, {"note", a.note}});
        }
        return j.dump(2) + "\n";
    }

    auto note_for = [&data](int n) {
        std::string note;
        for (const auto& a : data.annotations) {
            if (a.n != n) continue;
            if (!note.empty()) note += "; ";
            note += a.column + ": " + a.note;
        }
        return note;
    };

    if (format == TableFormat::csv) {
        std::string out = "n";
        for (const auto& c : data.columns) out += "," + c;
        if (spec.annotate) out += ",note";
        out += "\n";
        for (size_t i = 0; i < data.rows.size(); ++i) {
            out += std::to_string(i + 1);
            for (std::int64_t v : data.rows[i]) out += "," + std::to_string(v);
            if (spec.annotate) out += "," + note_for(int(i) + 1);
            out += "\n";
        }
        return out;
    }

    // markdown
    std::string out = "| n |";
    for (const auto& c : data.columns) out += " " + c + " |";
    if (spec.annotate) out += " note |";
    out += "\n|---|";
    for (size_t i = 0; i < data.columns.size(); ++i) out += "---|";
    if (spec.annotate) out += "---|";
    out += "\n";
    for (size_t i = 0; i < data.rows.size(); ++i) {
        out += "| " + std::to_string(i + 1) + " |";
        for (std::int64_t v : data.rows[i]) out += " " + std::to_string(v) + " |";
        if (spec.annotate) out += " " + note_for(int(i) + 1) + " |";
        out += "\n";
    }
    return out;
}

}  // namespace palcount
