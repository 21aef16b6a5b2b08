#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "palcount/charsum.hpp"

namespace palcount {

/// A self-reciprocal counting query: SRIM polynomials of degree 2n over the
/// field, with the leading window prescribed to `leading`.
struct SrimQuery {
    FieldPtr field;
    int n = 1;  // half-degree; the target polynomials have degree 2n
    std::vector<FieldElement> leading;
};

/// Numeric bounds around q^(n-l)/2n, the positivity threshold for l, and the
/// companion interval for the leading-window irreducible count.
struct BoundsReport {
    double lower = 0.0;
    double upper = 0.0;
    int positivity_ell = 0;
    double cohen_lower = 0.0;
    double cohen_upper = 0.0;
};

/// Leading window of f(x) = x^d g(x + 1/x) from the leading window of g:
/// f_k = sum_{j <= k/2} C(d+2j-k, j) g_{k-2j}, binomials reduced mod p by
/// Lucas, g_0 = 1.
std::vector<FieldElement> phi_map(const FieldPtr& field, int d,
                                  std::span<const FieldElement> g);
/// Inverse of phi_map via the triangular recursion g_k = f_k - sum(...).
std::vector<FieldElement> phi_inverse(const FieldPtr& field, int d,
                                      std::span<const FieldElement> f);
/// c_k = a_k + b_0^{-1} b_k + b_0^{-1} sum_{j=1}^{k-1} a_j b_{k-j}; b has
/// l+1 entries (b_0..b_l) with b_0 != 0, a and the result have l entries.
std::vector<FieldElement> psi_map(const FieldPtr& field, std::span<const FieldElement> b,
                                  std::span<const FieldElement> a);
/// Solves the triangular system; inverse bijection of psi_map on F_q^l.
std::vector<FieldElement> psi_inverse(const FieldPtr& field, std::span<const FieldElement> b,
                                      std::span<const FieldElement> c);

/// |S_q(2n; c)| exactly. Tiny cases (n = 1 or 2l > n) enumerate degree-2n
/// palindromes directly; otherwise the count is assembled from per-class
/// irreducible counts over E^{l,0} and E^{l,l+1}, with the self-square
/// correction recursing on n/2 for even n.
CountResult S_count(const SrimQuery& query);

/// Total SRIM count of degree 2n: the closed form with the power-of-2 branch.
CountResult S_total(const FieldSpec& spec, int n);
/// Same value through the halving recursion 2n S(n) = n S(n/2) + n I(n);
/// exposed for cross-checking.
CountResult S_total_via_halving(const FieldSpec& spec, int n);

/// S_2(n; a) by the explicit cosine formula with theta = arccos(1/(2 sqrt 2)).
CountResult S2_trace(int n, int a);
/// S_3(n; a): the specialized recursion for trace 0 over the fixed generator
/// pair of E^{1,2}, and the negation bijection for traces 1 and 2.
CountResult S3_trace(int n, int a);
/// S_2(n; a1, a2) by the specialized two-coefficient formulas over E^{2,0}
/// and E^{2,3} with the published generator choices.
CountResult S2_two(int n, int a1, int a2);

/// Bounds for S_q(n; c) with 1 <= l <= n/2.
BoundsReport bounds(const FieldSpec& spec, int n, int l);

/// Fully expanded per-class formulas for the fixed published bases; the
/// specialized counting paths are built from these, and the verify suites
/// compare them against the general engine. Values are pre-rounding reals.
namespace closedform {
/// F_3(n; xi1^t1 xi2^t2) over E^{1,2}, trigonometric form.
double F3_class(int n, int t1, int t2);
/// I_3(n; xi1^e1 xi2^e2) over E^{1,2}, by residue classes of k mod 6.
double I3_class(int n, int e1, int e2);
/// F_2(n; xi1^s1 xi2^s2) over E^{2,3}, via the six fixed character polynomials.
double F2_class(int n, int s1, int s2);
/// I_2(n; xi1^e1 xi2^e2) over E^{2,3}, by residue classes of k mod 4.
double I2_class(int n, int e1, int e2);
/// I_2(n; xi^t) over E^{2,0}, xi = <x+1> of order 4.
double I2_lead(int n, int t);
}  // namespace closedform

/// Shared per-(field, l, t) group cache used by the counting paths; exposed
/// so tests and the CLI reuse the same structures.
GroupPtr cached_group(const FieldPtr& field, int l, int t);
/// The published generator choices for the groups the specialized formulas
/// and table layouts depend on: E^{1,2} over F_3 (orders 3, 6), E^{2,0} over
/// F_2 (order 4), E^{2,3} over F_2 (orders 4, 4).
GroupPtr paper_basis_group(const FieldPtr& field, int l, int t);

}  // namespace palcount
