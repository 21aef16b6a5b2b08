#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "palcount/classgroup.hpp"

namespace palcount {

/// Mobius function by trial-division factorization.
int mobius(std::uint64_t k);
/// All divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// P(z; eps) = 1 + sum_{d=1}^{l+t-1} c(d; eps) z^d.
struct CharPoly {
    std::vector<std::complex<double>> coeffs;  // coeffs[0] == 1
    int degree() const { return int(coeffs.size()) - 1; }
};

/// rho_n(P): the sum of rho^{-n} over the nonzero roots of P (with
/// multiplicity), through the Newton recurrence
/// p_k = -k c_k - sum_{j=1}^{k-1} c_j p_{k-j}; equals -n [z^n] ln P(z).
std::complex<double> power_sum(const CharPoly& P, int n);

/// An exact nonnegative count plus the largest deviation from the nearest
/// integer seen on the float-assisted path before rounding.
struct CountResult {
    std::int64_t count = 0;
    double residual = 0.0;
};

/// Counting engine over one group: character coefficients, character
/// polynomials, the weighted counts F_q(n; eps) and the per-class irreducible
/// counts I_q(n; eps). All heavy state (character tables, power sums) is
/// cached per group behind a mutex; queries are thread-safe and
/// deterministic.
class CharsumEngine {
public:
    explicit CharsumEngine(GroupPtr G);
    ~CharsumEngine();

    const GroupStructure& group() const;

    /// c(d; eps) for 1 <= d <= l+t-1: the character sum over E^{l,t}(d).
    std::complex<double> c_coeff(int d, const ClassLabel& eps) const;
    CharPoly char_poly(const ClassLabel& eps) const;

    double F_value(int n, const ClassLabel& eps) const;
    double F_value_by_exp(int n, std::int64_t exp_index) const;

    CountResult I_count(int n, const ClassLabel& eps) const;
    CountResult I_count_by_exp(int n, std::int64_t exp_index) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Shared engine per group (process-wide cache keyed by the group object).
std::shared_ptr<CharsumEngine> engine_for(const GroupPtr& G);

std::complex<double> c_coeff(const GroupPtr& G, int d, const ClassLabel& eps);
CharPoly char_poly(const GroupPtr& G, const ClassLabel& eps);
double F_value(const GroupPtr& G, int n, const ClassLabel& eps);
CountResult I_count(const GroupPtr& G, int n, const ClassLabel& eps);

/// I_q(n) = (1/n) sum_{d|n} mu(d) q^{n/d}, in exact integer arithmetic.
CountResult I_total(const FieldSpec& spec, int n);
/// Irreducible count with one prescribed trace, by the closed form with the
/// separate c = 0 branch; exact integer arithmetic.
CountResult I_trace(const FieldSpec& spec, int n, FieldElement c);

}  // namespace palcount
