#pragma once

#include <optional>
#include <span>
#include <vector>

#include "palcount/poly.hpp"

namespace palcount {

/// An element of the class group E^{l,t}: the leading window a_1..a_l and the
/// ending window b_0..b_{t-1} shared by all polynomials in the class. When
/// t > 0 the norm b_0 is nonzero. The identity is (all-zero leading,
/// (1,0,...,0) ending).
struct ClassLabel {
    FieldPtr field;
    std::vector<FieldElement> leading;
    std::vector<FieldElement> ending;

    int ell() const { return int(leading.size()); }
    int t() const { return int(ending.size()); }

    friend bool operator==(const ClassLabel& a, const ClassLabel& b) {
        return *a.field == *b.field && a.leading == b.leading && a.ending == b.ending;
    }
};

ClassLabel identity_label(FieldPtr field, int l, int t);
/// Class of a monic polynomial of degree >= 1; windows read out-of-range
/// coefficients as zero. Requires f(0) != 0 when t > 0.
ClassLabel class_of(const Poly& f, int l, int t);
/// The monic degree-(l+t) polynomial whose windows are the label, middle
/// coefficients zero. Any representative of degree >= l+t multiplies
/// window-locally, and l+t is the least conflict-free degree.
Poly canonical_rep(const ClassLabel& label);
ClassLabel class_mul(const ClassLabel& a, const ClassLabel& b);
ClassLabel class_pow(const ClassLabel& a, std::int64_t k);
ClassLabel class_inv(const ClassLabel& a);

/// Cyclic decomposition of E^{l,t}: generators xi_j of orders r_j with an
/// eagerly materialized bijection between labels and exponent vectors.
/// Immutable after construction; all queries are const and thread-safe.
class GroupStructure {
public:
    const FieldSpec& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    int ell() const { return l_; }
    int t() const { return t_; }
    std::int64_t order() const { return order_; }  // |E| = (q - [t>0]) q^(l+t-1)
    int rank() const { return int(orders_.size()); }
    const std::vector<ClassLabel>& generators() const { return generators_; }
    const std::vector<std::int64_t>& orders() const { return orders_; }

    /// The unique (e_1,...,e_f) with 0 <= e_j < r_j and prod xi_j^e_j = eps.
    std::vector<int> exponent_of(const ClassLabel& eps) const;
    ClassLabel element(std::span<const int> exponents) const;

    /// Dense label index in [0, |E|): digits of the window coefficients with
    /// b_0 remapped to 1..q-1 when t > 0. Lexicographic in (leading, ending).
    std::int64_t label_index(const ClassLabel& eps) const;
    ClassLabel label_at(std::int64_t index) const;

    /// Mixed-radix exponent index: sum e_j * stride_j.
    std::int64_t exp_index(std::span<const int> exponents) const;
    std::int64_t stride(int j) const { return strides_[size_t(j)]; }
    std::vector<int> exponents_at(std::int64_t exp_index) const;
    std::int64_t exp_index_of_label_index(std::int64_t label_index) const {
        return exp_of_label_[size_t(label_index)];
    }
    std::int64_t label_index_of_exp_index(std::int64_t exp_index) const {
        return label_of_exp_[size_t(exp_index)];
    }

    /// E^{l,t}(d): classes of monic degree-d polynomials (nonzero constant
    /// when t > 0); all of E once d >= l+t.
    std::vector<ClassLabel> classes_of_degree(int d) const;
    /// Same set as exponent indexes, deduplicated and sorted.
    std::vector<std::int64_t> degree_class_exp_indexes(int d) const;

    friend std::shared_ptr<const GroupStructure> decompose(
        FieldPtr field, int l, int t, const std::optional<std::vector<Poly>>& generator_override);

private:
    GroupStructure() = default;

    FieldPtr field_;
    int l_ = 0, t_ = 0;
    std::int64_t order_ = 1;
    std::vector<ClassLabel> generators_;
    std::vector<std::int64_t> orders_;
    std::vector<std::int64_t> strides_;
    std::vector<std::int64_t> exp_of_label_;  // label index -> exponent index
    std::vector<std::int64_t> label_of_exp_;  // exponent index -> label index
};

using GroupPtr = std::shared_ptr<const GroupStructure>;

/// Builds the cyclic decomposition. Without an override the basis is found
/// deterministically: |E| is split into its char-p part and coprime part, and
/// within each component a basis is built greedily from maximal-order
/// elements of the running quotient, scanning labels in lexicographic order.
/// Override generators are verified to decompose E (orders multiply to |E|
/// and the exponent map is bijective) and used as given.
GroupPtr decompose(FieldPtr field, int l, int t,
                   const std::optional<std::vector<Poly>>& generator_override = std::nullopt);

/// Preimages {delta : delta^k = eps} via per-component linear congruences on
/// the exponent lattice, returned as exponent indexes.
std::vector<std::int64_t> pow_preimages(const GroupStructure& G, std::int64_t k,
                                        std::span<const int> eps_exponents);
/// Exhaustive-scan fallback through the polynomial group law; verification
/// counterpart of pow_preimages.
std::vector<std::int64_t> pow_preimages_scan(const GroupStructure& G, std::int64_t k,
                                             const ClassLabel& eps);

}  // namespace palcount
