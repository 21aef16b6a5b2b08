#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "palcount/field.hpp"

namespace palcount {

/// Dense polynomial over F_q, coefficients ascending from the constant term.
/// Normalized: nothing stored above the degree; the zero polynomial keeps an
/// empty coefficient vector and reports degree() == -1.
class Poly {
public:
    explicit Poly(FieldPtr field) : field_(std::move(field)) {}
    Poly(FieldPtr field, std::vector<FieldElement> coeffs);

    static Poly zero(FieldPtr field) { return Poly(std::move(field)); }
    static Poly one(FieldPtr field);
    static Poly x(FieldPtr field);
    /// Coefficients given as integers ascending from the constant term; each
    /// must be a valid encoded element of the field.
    static Poly from_ints(FieldPtr field, const std::vector<std::int64_t>& coeffs);

    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == field_->one(); }
    /// Coefficient of x^j; zero outside the stored range.
    FieldElement coeff(int j) const {
        return (j >= 0 && j < int(c_.size())) ? c_[size_t(j)] : FieldElement{0};
    }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    const FieldSpec& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }

    friend bool operator==(const Poly& lhs, const Poly& rhs) {
        return *lhs.field_ == *rhs.field_ && lhs.c_ == rhs.c_;
    }

private:
    FieldPtr field_;
    std::vector<FieldElement> c_;
};

Poly poly_add(const Poly& f, const Poly& g);
Poly poly_sub(const Poly& f, const Poly& g);
Poly poly_mul(const Poly& f, const Poly& g);
/// Quotient and remainder; g must be nonzero.
std::pair<Poly, Poly> poly_divrem(const Poly& f, const Poly& g);
Poly poly_mod(const Poly& f, const Poly& g);
/// Monic gcd.
Poly poly_gcd(Poly f, Poly g);

/// f*(x) = x^deg(f) f(1/x): the coefficient vector reversed and renormalized.
Poly reciprocal(const Poly& f);
/// True iff the coefficient sequence of a monic f is palindromic.
bool is_self_reciprocal(const Poly& f);
/// Rabin test: monic f of degree d >= 1 is irreducible iff x^(q^d) == x
/// (mod f) and gcd(x^(q^(d/s)) - x, f) = 1 for every prime s | d.
bool is_irreducible(const Poly& f);

/// Leading window: [x^(deg-j)] f for j = 1..l, reading 0 below x^0.
std::vector<FieldElement> leading_coeffs(const Poly& f, int l);
/// Ending window: [x^j] f for j = 0..t-1, reading 0 above the degree.
std::vector<FieldElement> ending_coeffs(const Poly& f, int t);

/// Yields every monic degree-d polynomial satisfying the optional constraint
/// windows exactly once, in lexicographic order of the free coefficients
/// (highest-degree free position most significant). The callback may return
/// false to stop. Requires l + t <= d so the windows cannot overlap.
void enumerate_monic(const FieldPtr& field, int d,
                     const std::optional<std::vector<FieldElement>>& leading,
                     const std::optional<std::vector<FieldElement>>& ending,
                     const std::function<bool(const Poly&)>& fn);

/// Text literals: digit string, most significant coefficient first, for
/// prime fields with p <= 9 ("1011" = x^3+x+1 over F_2); or a JSON array of
/// encoded elements ascending from the constant term ([1,1,0,1] = x^3+x+1).
Poly parse_poly(const FieldPtr& field, std::string_view text);
std::string format_poly(const Poly& f);

}  // namespace palcount
