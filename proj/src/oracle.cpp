#include "palcount/oracle.hpp"

#include <stdexcept>

#include "internal.hpp"
#include "palcount/errors.hpp"

namespace palcount {

namespace {

constexpr std::uint64_t kSearchCap = 100'000'000;

std::uint64_t pow_u64_capped(std::int64_t q, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        r *= std::uint64_t(q);
        if (r > kSearchCap) throw guard_error("oracle search space exceeds the cap");
    }
    return r;
}

}  // namespace

IrreducibleSieve::IrreducibleSieve(FieldPtr field, int dmax) : field_(std::move(field)) {
    if (dmax < 1) throw std::invalid_argument("sieve requires dmax >= 1");
    const std::int64_t q = field_->q();
    pow_u64_capped(q, dmax);
    const FieldSpec& F = *field_;
    irreducible_.resize(size_t(dmax));

    std::vector<std::uint32_t> ga, hb, prod;
    for (int d = 1; d <= dmax; ++d) {
        std::uint64_t total = 1;
        for (int i = 0; i < d; ++i) total *= std::uint64_t(q);
        std::vector<bool> reducible(total, false);
        for (int d1 = 1; d1 <= d / 2; ++d1) {
            const int d2 = d - d1;
            std::uint64_t cof = 1;
            for (int i = 0; i < d2; ++i) cof *= std::uint64_t(q);
            ga.assign(size_t(d1) + 1, 0);
            hb.assign(size_t(d2) + 1, 0);
            prod.assign(size_t(d) + 1, 0);
            for (std::uint32_t gcode : irreducible_[size_t(d1 - 1)]) {
                std::uint32_t v = gcode;
                for (int i = 0; i < d1; ++i) {
                    ga[size_t(i)] = std::uint32_t(v % q);
                    v /= std::uint32_t(q);
                }
                ga[size_t(d1)] = 1;
                for (std::uint64_t hcode = 0; hcode < cof; ++hcode) {
                    std::uint64_t w = hcode;
                    for (int i = 0; i < d2; ++i) {
                        hb[size_t(i)] = std::uint32_t(w % std::uint64_t(q));
                        w /= std::uint64_t(q);
                    }
                    hb[size_t(d2)] = 1;
                    std::fill(prod.begin(), prod.end(), 0);
                    for (int i = 0; i <= d1; ++i) {
                        if (ga[size_t(i)] == 0) continue;
                        FieldElement gi{ga[size_t(i)]};
                        for (int j = 0; j <= d2; ++j) {
                            if (hb[size_t(j)] == 0) continue;
                            prod[size_t(i + j)] =
                                F.add(FieldElement{prod[size_t(i + j)]},
                                      F.mul(gi, FieldElement{hb[size_t(j)]}))
                                    .v;
                        }
                    }
                    std::uint64_t code = 0;
                    for (int i = d - 1; i >= 0; --i) code = code * std::uint64_t(q) + prod[size_t(i)];
                    reducible[code] = true;
                }
            }
        }
        auto& out = irreducible_[size_t(d - 1)];
        for (std::uint64_t code = 0; code < total; ++code)
            if (!reducible[code]) out.push_back(std::uint32_t(code));
    }
}

const std::vector<std::uint32_t>& IrreducibleSieve::irreducible(int d) const {
    if (d < 1 || d > dmax()) throw std::invalid_argument("degree outside the sieve range");
    return irreducible_[size_t(d - 1)];
}

Poly IrreducibleSieve::decode(int d, std::uint32_t code) const {
    const std::int64_t q = field_->q();
    std::vector<FieldElement> c(size_t(d) + 1, FieldElement{0});
    std::uint64_t v = code;
    for (int i = 0; i < d; ++i) {
        c[size_t(i)] = FieldElement{std::uint32_t(v % std::uint64_t(q))};
        v /= std::uint64_t(q);
    }
    c[size_t(d)] = field_->one();
    return Poly(field_, std::move(c));
}

OracleReport brute_S(const FieldPtr& field, int degree2n, std::span<const FieldElement> leading,
                     int witness_cap) {
    if (degree2n < 2 || degree2n % 2 != 0)
        throw std::invalid_argument("brute_S requires an even degree >= 2");
    const int n = degree2n / 2;
    const int l = int(leading.size());
    if (l > degree2n) throw std::invalid_argument("window longer than the degree");
    pow_u64_capped(field->q(), n);
    const std::int64_t q = field->q();

    // palindrome symmetry folds every constraint into the top half; a window
    // reaching below x^n must agree with its mirror image
    std::vector<std::optional<FieldElement>> fixed(size_t(n) + 1);
    fixed[size_t(n)] = std::nullopt;
    auto constrain = [&](int pos, FieldElement v) {
        int hpos = pos >= n ? pos : degree2n - pos;
        auto& slot = fixed[size_t(hpos - n)];
        if (slot && !(*slot == v)) return false;
        slot = v;
        return true;
    };
    bool consistent = constrain(degree2n, field->one());
    for (int j = 1; j <= l && consistent; ++j)
        consistent = constrain(degree2n - j, leading[size_t(j - 1)]);
    if (!consistent) return {};

    std::vector<FieldElement> c(size_t(degree2n) + 1, FieldElement{0});
    for (int hpos = n; hpos <= degree2n; ++hpos) {
        if (fixed[size_t(hpos - n)]) {
            c[size_t(hpos)] = *fixed[size_t(hpos - n)];
            c[size_t(degree2n - hpos)] = *fixed[size_t(hpos - n)];
        }
    }
    std::vector<int> free_top;
    for (int hpos = degree2n - 1; hpos >= n; --hpos)
        if (!fixed[size_t(hpos - n)]) free_top.push_back(hpos);

    OracleReport rep;
    std::uint64_t total = 1;
    for (size_t i = 0; i < free_top.size(); ++i) total *= std::uint64_t(q);
    for (std::uint64_t it = 0; it < total; ++it) {
        std::uint64_t v = it;
        for (int pos : free_top) {
            FieldElement e{std::uint32_t(v % std::uint64_t(q))};
            v /= std::uint64_t(q);
            c[size_t(pos)] = e;
            c[size_t(degree2n - pos)] = e;
        }
        ++rep.enumerated;
        Poly f(field, c);
        if (is_irreducible(f)) {
            ++rep.count;
            if (int(rep.witnesses.size()) < witness_cap) rep.witnesses.push_back(f);
        }
    }
    return rep;
}

OracleReport brute_I(const FieldPtr& field, int d, std::span<const FieldElement> leading,
                     std::span<const FieldElement> ending, int witness_cap) {
    if (d < 1) throw std::invalid_argument("brute_I requires degree >= 1");
    const int l = int(leading.size()), t = int(ending.size());
    if (l + t > d) throw std::invalid_argument("constraint windows overlap (l + t > d)");
    pow_u64_capped(field->q(), d - l - t);
    OracleReport rep;
    std::optional<std::vector<FieldElement>> lead, end;
    if (l > 0) lead = std::vector<FieldElement>(leading.begin(), leading.end());
    if (t > 0) end = std::vector<FieldElement>(ending.begin(), ending.end());
    enumerate_monic(field, d, lead, end, [&](const Poly& f) {
        ++rep.enumerated;
        if (is_irreducible(f)) {
            ++rep.count;
            if (int(rep.witnesses.size()) < witness_cap) rep.witnesses.push_back(f);
        }
        return true;
    });
    return rep;
}

std::vector<std::int64_t> brute_class_counts(const GroupStructure& G, int d,
                                             const IrreducibleSieve& sieve) {
    if (!(*sieve.field_ptr() == G.field())) throw std::invalid_argument("mismatched field specs");
    if (d < 1 || d > sieve.dmax()) throw std::invalid_argument("degree outside the sieve range");
    const std::int64_t q = G.field().q();
    const int l = G.ell(), t = G.t();
    std::vector<std::int64_t> counts(size_t(G.order()), 0);
    auto digits = std::vector<std::uint32_t>(size_t(d));
    for (std::uint32_t code : sieve.irreducible(d)) {
        std::uint32_t v = code;
        for (int i = 0; i < d; ++i) {
            digits[size_t(i)] = std::uint32_t(v % std::uint64_t(q));
            v /= std::uint32_t(q);
        }
        if (t > 0 && digits[0] == 0) continue;  // zero norm lies outside every class
        // label index straight from the digit windows, top coefficient = 1
        std::int64_t idx = 0;
        for (int j = 1; j <= l; ++j) {
            int pos = d - j;
            std::uint32_t a = pos == d ? 1 : (pos >= 0 ? digits[size_t(pos)] : 0);
            idx = idx * q + a;
        }
        if (t > 0) {
            idx = idx * (q - 1) + (digits[0] - 1);
            for (int j = 1; j < t; ++j) {
                std::uint32_t b = j == d ? 1 : (j < d ? digits[size_t(j)] : 0);
                idx = idx * q + b;
            }
        }
        ++counts[size_t(idx)];
    }
    return counts;
}

OracleReport brute_class_count(const GroupStructure& G, int d, const ClassLabel& eps,
                               int witness_cap) {
    IrreducibleSieve sieve(G.field_ptr(), d);
    const std::int64_t target = G.label_index(eps);
    auto counts = brute_class_counts(G, d, sieve);
    OracleReport rep;
    rep.count = counts[size_t(target)];
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= std::uint64_t(G.field().q());
    rep.enumerated = total;
    for (std::uint32_t code : sieve.irreducible(d)) {
        if (int(rep.witnesses.size()) >= witness_cap) break;
        Poly f = sieve.decode(d, code);
        if (G.t() > 0 && f.coeff(0).v == 0) continue;
        if (G.label_index(class_of(f, G.ell(), G.t())) == target) rep.witnesses.push_back(f);
    }
    return rep;
}

}  // namespace palcount
