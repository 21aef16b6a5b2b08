#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace palcount {

/// Element of F_q. The value encodes the coordinate vector over F_p in base
/// p, least significant digit first; prime-field elements are their residues.
struct FieldElement {
    std::uint32_t v = 0;

    constexpr FieldElement() = default;
    constexpr explicit FieldElement(std::uint32_t value) : v(value) {}

    friend constexpr bool operator==(FieldElement, FieldElement) = default;
    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

/// Description of F_q with q = p^r. Prime fields carry no modulus; extension
/// fields reduce modulo a monic irreducible polynomial of degree r over F_p
/// (supplied, or the lexicographically first one found by search).
class FieldSpec {
public:
    static std::shared_ptr<const FieldSpec> make(std::int64_t p, int r = 1);
    static std::shared_ptr<const FieldSpec> make(std::int64_t p, int r,
                                                 std::vector<int> modulus);

    std::int64_t p() const { return p_; }
    int r() const { return r_; }
    std::int64_t q() const { return q_; }
    /// Modulus coefficients ascending, length r+1; empty when r == 1.
    const std::vector<int>& modulus() const { return modulus_; }

    FieldElement zero() const { return FieldElement{0}; }
    FieldElement one() const { return FieldElement{1}; }
    /// Element with the given encoded value; range-checked.
    FieldElement element(std::int64_t value) const;
    /// Image of the integer k under Z -> F_p -> F_q.
    FieldElement from_int(std::int64_t k) const;
    std::vector<int> coords(FieldElement a) const;

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement sub(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement inv(FieldElement a) const;
    FieldElement pow(FieldElement a, std::int64_t e) const;

    friend bool operator==(const FieldSpec& lhs, const FieldSpec& rhs) {
        return lhs.p_ == rhs.p_ && lhs.r_ == rhs.r_ && lhs.modulus_ == rhs.modulus_;
    }

    /// Stable key identifying the field (used for cross-structure caches).
    std::string key() const;

private:
    FieldSpec(std::int64_t p, int r, std::vector<int> modulus);

    FieldElement mul_nocache(FieldElement a, FieldElement b) const;

    std::int64_t p_ = 2;
    int r_ = 1;
    std::int64_t q_ = 2;
    std::vector<int> modulus_;
    // lookup tables, built when q is small enough for them to be cheap
    std::vector<std::uint32_t> add_table_, mul_table_, neg_table_, inv_table_;
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

}  // namespace palcount
