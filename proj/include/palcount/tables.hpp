#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "palcount/sripm.hpp"

namespace palcount {

/// One of the seven reference tables. Tables 1-3 list the 18 per-class
/// irreducible counts over F_3 (l=1, t=2, generators <x+1> and <x^3+x+2>);
/// tables 5-6 the 16 over F_2 (l=2, t=3, generators <x+1> and <x^5+x+1>);
/// table 4 the F_3 trace counts; table 7 the F_2 two-coefficient counts.
struct TableSpec {
    int id = 1;        // 1..7
    int max_n = 20;    // row limit
    bool annotate = false;
};

enum class TableFormat { json, csv, markdown };

struct TableData {
    int id = 0;
    std::vector<std::string> columns;              // excluding the leading "n"
    std::vector<std::vector<std::int64_t>> rows;   // rows[i] = values for n = i+1
    struct Annotation {
        int n;
        std::string column;
        std::string note;
    };
    std::vector<Annotation> annotations;           // populated when annotate is set
    double max_residual = 0.0;
};

/// Recomputes the table from the counting engines; nothing is embedded.
TableData compute_table(const TableSpec& spec);
std::string render_table(const TableSpec& spec, TableFormat format);

namespace verify {

/// Every check returns human-readable mismatch lines; empty means pass.
/// Cells are recomputed on the primary route and compared against at least
/// one independent route (specialized closed form, partition identity, or
/// the exhaustive oracle within `oracle_budget` candidates).
std::vector<std::string> check_tables(int id, int max_n, std::uint64_t oracle_budget);
/// Per-class engine counts against the sieve oracle for every window shape
/// with l+t <= max_window.
std::vector<std::string> check_oracle(const std::vector<std::int64_t>& qs, int max_n,
                                      int max_window, std::uint64_t budget);
/// Closed forms against the general engine.
std::vector<std::string> check_closed_forms(int max_n);
/// Structural invariants: partitions, round trips, basis invariance, the
/// power-preimage solver, representative independence, bounds containment.
std::vector<std::string> check_invariants(int max_n);

}  // namespace verify

}  // namespace palcount
