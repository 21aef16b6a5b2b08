#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "palcount/classgroup.hpp"

namespace palcount {

struct OracleReport {
    std::int64_t count = 0;
    std::vector<Poly> witnesses;     // capped
    std::uint64_t enumerated = 0;    // candidates visited
};

/// Monic irreducibles of every degree up to dmax, found by marking all
/// products of an irreducible of degree <= d/2 with every monic cofactor.
/// Independent of both the Rabin test and the character-sum engine.
class IrreducibleSieve {
public:
    IrreducibleSieve(FieldPtr field, int dmax);

    const FieldPtr& field_ptr() const { return field_; }
    int dmax() const { return int(irreducible_.size()); }
    /// Encoded irreducibles of degree d, ascending. The encoding is the
    /// base-q value of the d coefficients below the monic top, constant term
    /// least significant.
    const std::vector<std::uint32_t>& irreducible(int d) const;
    Poly decode(int d, std::uint32_t code) const;

private:
    FieldPtr field_;
    std::vector<std::vector<std::uint32_t>> irreducible_;
};

/// Exact count of self-reciprocal irreducible monic polynomials of even
/// degree 2n with the prescribed leading window, by enumerating the free
/// half of the palindrome and testing irreducibility.
OracleReport brute_S(const FieldPtr& field, int degree2n, std::span<const FieldElement> leading,
                     int witness_cap = 16);

/// Exact count of irreducible monic degree-d polynomials with both windows
/// prescribed (non-overlapping), by direct enumeration.
OracleReport brute_I(const FieldPtr& field, int d, std::span<const FieldElement> leading,
                     std::span<const FieldElement> ending, int witness_cap = 16);

/// Irreducible monic degree-d polynomials whose class is eps; sieve-backed.
OracleReport brute_class_count(const GroupStructure& G, int d, const ClassLabel& eps,
                               int witness_cap = 16);
/// Bulk variant: counts for every class at once, indexed by label index.
std::vector<std::int64_t> brute_class_counts(const GroupStructure& G, int d,
                                             const IrreducibleSieve& sieve);

}  // namespace palcount
