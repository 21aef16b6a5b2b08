#include "palcount/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "palcount/errors.hpp"

namespace palcount {

namespace {

void require_same_field(const Poly& f, const Poly& g) {
    if (!(f.field() == g.field())) throw std::invalid_argument("mismatched field specs");
}

std::vector<FieldElement> normalized(std::vector<FieldElement> c) {
    while (!c.empty() && c.back().v == 0) c.pop_back();
    return c;
}

}  // namespace

Poly::Poly(FieldPtr field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), c_(normalized(std::move(coeffs))) {
    for (FieldElement e : c_)
        if (e.v >= field_->q()) throw std::invalid_argument("coefficient out of range");
}

Poly Poly::one(FieldPtr field) {
    FieldElement e = field->one();
    return Poly(std::move(field), {e});
}

Poly Poly::x(FieldPtr field) {
    FieldElement z = field->zero(), e = field->one();
    return Poly(std::move(field), {z, e});
}

Poly Poly::from_ints(FieldPtr field, const std::vector<std::int64_t>& coeffs) {
    std::vector<FieldElement> c;
    c.reserve(coeffs.size());
    for (std::int64_t v : coeffs) c.push_back(field->element(v));
    return Poly(std::move(field), std::move(c));
}

Poly poly_add(const Poly& f, const Poly& g) {
    require_same_field(f, g);
    const FieldSpec& F = f.field();
    auto c = std::vector<FieldElement>(size_t(std::max(f.degree(), g.degree()) + 1), FieldElement{0});
    for (size_t j = 0; j < c.size(); ++j) c[j] = F.add(f.coeff(int(j)), g.coeff(int(j)));
    return Poly(f.field_ptr(), std::move(c));
}

Poly poly_sub(const Poly& f, const Poly& g) {
    require_same_field(f, g);
    const FieldSpec& F = f.field();
    auto c = std::vector<FieldElement>(size_t(std::max(f.degree(), g.degree()) + 1), FieldElement{0});
    for (size_t j = 0; j < c.size(); ++j) c[j] = F.sub(f.coeff(int(j)), g.coeff(int(j)));
    return Poly(f.field_ptr(), std::move(c));
}

Poly poly_mul(const Poly& f, const Poly& g) {
    require_same_field(f, g);
    if (f.is_zero() || g.is_zero()) return Poly::zero(f.field_ptr());
    const FieldSpec& F = f.field();
    auto c = std::vector<FieldElement>(size_t(f.degree() + g.degree() + 1), FieldElement{0});
    for (int i = 0; i <= f.degree(); ++i) {
        FieldElement fi = f.coeff(i);
        if (fi.v == 0) continue;
        for (int j = 0; j <= g.degree(); ++j)
            c[size_t(i + j)] = F.add(c[size_t(i + j)], F.mul(fi, g.coeff(j)));
    }
    return Poly(f.field_ptr(), std::move(c));
}

std::pair<Poly, Poly> poly_divrem(const Poly& f, const Poly& g) {
    require_same_field(f, g);
    if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    const FieldSpec& F = f.field();
    if (f.degree() < g.degree()) return {Poly::zero(f.field_ptr()), f};
    std::vector<FieldElement> rem(f.coeffs());
    auto quo = std::vector<FieldElement>(size_t(f.degree() - g.degree() + 1), FieldElement{0});
    FieldElement lead_inv = F.inv(g.coeff(g.degree()));
    for (int i = f.degree(); i >= g.degree(); --i) {
        FieldElement c = F.mul(rem[size_t(i)], lead_inv);
        if (c.v == 0) continue;
        quo[size_t(i - g.degree())] = c;
        for (int j = 0; j <= g.degree(); ++j) {
            auto& slot = rem[size_t(i - g.degree() + j)];
            slot = F.sub(slot, F.mul(c, g.coeff(j)));
        }
    }
    return {Poly(f.field_ptr(), std::move(quo)), Poly(f.field_ptr(), std::move(rem))};
}

Poly poly_mod(const Poly& f, const Poly& g) { return poly_divrem(f, g).second; }

Poly poly_gcd(Poly f, Poly g) {
    require_same_field(f, g);
    while (!g.is_zero()) {
        Poly r = poly_mod(f, g);
        f = std::move(g);
        g = std::move(r);
    }
    if (f.is_zero()) return f;
    const FieldSpec& F = f.field();
    FieldElement scale = F.inv(f.coeff(f.degree()));
    std::vector<FieldElement> c = f.coeffs();
    for (auto& e : c) e = F.mul(e, scale);
    return Poly(f.field_ptr(), std::move(c));
}

Poly reciprocal(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("reciprocal of the zero polynomial");
    std::vector<FieldElement> c(f.coeffs());
    std::reverse(c.begin(), c.end());
    return Poly(f.field_ptr(), std::move(c));
}

bool is_self_reciprocal(const Poly& f) {
    if (!f.is_monic()) throw std::invalid_argument("self-reciprocal test requires a monic polynomial");
    const auto& c = f.coeffs();
    for (size_t j = 0, k = c.size() - 1; j < k; ++j, --k)
        if (!(c[j] == c[k])) return false;
    return true;
}

namespace {

Poly powmod_frobenius(const Poly& base, std::int64_t q, const Poly& mod) {
    // base^q mod `mod` by square-and-multiply
    Poly r = Poly::one(base.field_ptr());
    Poly b = base;
    std::int64_t e = q;
    while (e > 0) {
        if (e & 1) r = poly_mod(poly_mul(r, b), mod);
        b = poly_mod(poly_mul(b, b), mod);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_irreducible(const Poly& f) {
    if (!f.is_monic()) throw std::invalid_argument("irreducibility test requires a monic polynomial");
    const int d = f.degree();
    if (d < 1) throw std::invalid_argument("irreducibility test requires degree >= 1");
    if (d == 1) return true;
    const FieldSpec& F = f.field();
    const std::int64_t q = F.q();

    // Frobenius ladder: frob[i] = x^(q^i) mod f
    Poly t = Poly::x(f.field_ptr());
    std::vector<Poly> frob;
    frob.reserve(size_t(d) + 1);
    frob.push_back(t);
    for (int i = 0; i < d; ++i) {
        t = powmod_frobenius(t, q, f);
        frob.push_back(t);
    }
    if (!(frob[size_t(d)] == poly_mod(Poly::x(f.field_ptr()), f))) return false;

    int dd = d;
    for (int s = 2; s <= dd; ++s) {
        if (dd % s != 0) continue;
        while (dd % s == 0) dd /= s;
        Poly u = poly_sub(frob[size_t(d / s)], Poly::x(f.field_ptr()));
        if (poly_gcd(u, f).degree() != 0) return false;
    }
    return true;
}

std::vector<FieldElement> leading_coeffs(const Poly& f, int l) {
    if (!f.is_monic() || f.degree() < 1)
        throw std::invalid_argument("leading window requires a monic polynomial of degree >= 1");
    if (l < 0) throw std::invalid_argument("window size must be nonnegative");
    auto out = std::vector<FieldElement>(size_t(l));
    for (int j = 1; j <= l; ++j) out[size_t(j - 1)] = f.coeff(f.degree() - j);
    return out;
}

std::vector<FieldElement> ending_coeffs(const Poly& f, int t) {
    if (!f.is_monic() || f.degree() < 1)
        throw std::invalid_argument("ending window requires a monic polynomial of degree >= 1");
    if (t < 0) throw std::invalid_argument("window size must be nonnegative");
    auto out = std::vector<FieldElement>(size_t(t));
    for (int j = 0; j < t; ++j) out[size_t(j)] = f.coeff(j);
    return out;
}

void enumerate_monic(const FieldPtr& field, int d,
                     const std::optional<std::vector<FieldElement>>& leading,
                     const std::optional<std::vector<FieldElement>>& ending,
                     const std::function<bool(const Poly&)>& fn) {
    if (d < 0) throw std::invalid_argument("degree must be nonnegative");
    const int l = leading ? int(leading->size()) : 0;
    const int t = ending ? int(ending->size()) : 0;
    if (l > d || t > d) throw std::invalid_argument("constraint vector longer than the degree");
    if (l + t > d) throw std::invalid_argument("constraint windows overlap (l + t > d)");

    auto c = std::vector<FieldElement>(size_t(d) + 1, FieldElement{0});
    c[size_t(d)] = field->one();
    for (int j = 1; j <= l; ++j) c[size_t(d - j)] = (*leading)[size_t(j - 1)];
    for (int j = 0; j < t; ++j) c[size_t(j)] = (*ending)[size_t(j)];

    // free positions: degrees t .. d-1-l, iterated with the highest one most
    // significant so the order is lexicographic in the free coefficients
    std::vector<int> free_pos;
    for (int j = d - 1 - l; j >= t; --j) free_pos.push_back(j);
    const std::int64_t q = field->q();

    std::vector<std::int64_t> digits(free_pos.size(), 0);
    for (;;) {
        for (size_t i = 0; i < free_pos.size(); ++i)
            c[size_t(free_pos[i])] = FieldElement{std::uint32_t(digits[i])};
        if (!fn(Poly(field, c))) return;
        // odometer increment, last digit fastest
        size_t i = free_pos.size();
        while (i > 0) {
            --i;
            if (++digits[i] < q) break;
            digits[i] = 0;
            if (i == 0) return;
        }
        if (free_pos.empty()) return;
    }
}

Poly parse_poly(const FieldPtr& field, std::string_view text) {
    size_t b = text.find_first_not_of(" \t");
    size_t e = text.find_last_not_of(" \t");
    if (b == std::string_view::npos) throw std::invalid_argument("empty polynomial literal");
    text = text.substr(b, e - b + 1);

    if (text.front() == '[') {
        if (text.back() != ']') throw std::invalid_argument("unterminated polynomial array");
        std::vector<std::int64_t> vals;
        std::string cur;
        for (char ch : text.substr(1, text.size() - 2)) {
            if (ch == ',') {
                vals.push_back(std::stoll(cur));
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(ch))) {
                cur += ch;
            }
        }
        if (!cur.empty()) vals.push_back(std::stoll(cur));
        return Poly::from_ints(field, vals);
    }

    if (field->r() != 1 || field->p() > 9)
        throw std::invalid_argument("digit literals require a prime field with p <= 9");
    std::vector<FieldElement> c;
    c.reserve(text.size());
    for (auto it = text.rbegin(); it != text.rend(); ++it) {
        if (*it < '0' || *it > '9') throw std::invalid_argument("invalid digit in polynomial literal");
        c.push_back(field->element(*it - '0'));
    }
    return Poly(field, std::move(c));
}

std::string format_poly(const Poly& f) {
    if (f.field().r() == 1 && f.field().p() <= 9 && !f.is_zero()) {
        std::string out;
        for (int j = f.degree(); j >= 0; --j) out += char('0' + f.coeff(j).v);
        return out;
    }
    std::string out = "[";
    for (int j = 0; j <= f.degree(); ++j) {
        if (j) out += ",";
        out += std::to_string(f.coeff(j).v);
    }
    return out + "]";
}

}  // namespace palcount
