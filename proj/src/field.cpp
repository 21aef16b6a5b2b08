#include "palcount/field.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "palcount/errors.hpp"

namespace palcount {

namespace {

constexpr std::int64_t kMaxQ = 1 << 16;
constexpr std::int64_t kTableQ = 256;  // precompute op tables up to this size

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// --- raw polynomial helpers over F_p, used only for modulus validation ---

using PVec = std::vector<int>;

PVec pv_norm(PVec a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

PVec pv_mulmod(const PVec& a, const PVec& b, const PVec& m, std::int64_t p) {
    PVec r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = int((r[i + j] + std::int64_t(a[i]) * b[j]) % p);
    const int dm = int(m.size()) - 1;
    for (int i = int(r.size()) - 1; i >= dm; --i) {
        int c = r[i];
        if (c == 0) continue;
        for (int j = 0; j <= dm; ++j)
            r[i - dm + j] = int(((r[i - dm + j] - std::int64_t(c) * m[j]) % p + p) % p);
    }
    r.resize(dm);
    return r;
}

PVec pv_powmod(PVec base, std::int64_t e, const PVec& m, std::int64_t p) {
    PVec r{1};
    r.resize(m.size() - 1, 0);
    base.resize(m.size() - 1, 0);
    while (e > 0) {
        if (e & 1) r = pv_mulmod(r, base, m, p);
        base = pv_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

PVec pv_gcd(PVec a, PVec b, std::int64_t p) {
    a = pv_norm(std::move(a));
    b = pv_norm(std::move(b));
    while (!b.empty()) {
        // a mod b
        std::int64_t lead_inv = 1;
        {
            std::int64_t lb = b.back(), t = 1, x = lb;
            for (std::int64_t e = p - 2; e > 0; e >>= 1) {
                if (e & 1) t = t * x % p;
                x = x * x % p;
            }
            lead_inv = t;
        }
        while (a.size() >= b.size() && !a.empty()) {
            std::int64_t c = a.back() * lead_inv % p;
            size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j)
                a[off + j] = int(((a[off + j] - c * b[j]) % p + p) % p);
            a = pv_norm(std::move(a));
        }
        std::swap(a, b);
    }
    return a;
}

// Rabin test over the prime field, for modulus validation only; the general
// test over arbitrary F_q lives with Poly.
bool prime_field_irreducible(const PVec& f, std::int64_t p) {
    const int d = int(f.size()) - 1;
    if (d < 1 || f[d] != 1) return false;
    // x^(p^d) == x (mod f)
    PVec x{0, 1};
    PVec t = x;
    t.resize(f.size() - 1, 0);
    for (int i = 0; i < d; ++i) t = pv_powmod(t, p, f, p);
    PVec xmod = x;
    xmod.resize(f.size() - 1, 0);
    if (pv_norm(t) != pv_norm(xmod)) return false;
    // gcd(x^(p^(d/s)) - x, f) == 1 for each prime s | d
    int dd = d;
    for (int s = 2; s <= dd; ++s) {
        if (dd % s != 0) continue;
        while (dd % s == 0) dd /= s;
        PVec u = x;
        u.resize(f.size() - 1, 0);
        for (int i = 0; i < d / s; ++i) u = pv_powmod(u, p, f, p);
        u[1] = int(((u[1] - 1) % p + p) % p);
        PVec g = pv_gcd(u, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

PVec find_modulus(std::int64_t p, int r) {
    // lexicographic over descending-degree free coefficients
    std::int64_t total = 1;
    for (int i = 0; i < r; ++i) total *= p;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        PVec f(r + 1, 0);
        f[r] = 1;
        std::int64_t v = idx;
        for (int j = 0; j < r; ++j) {  // constant term least significant
            f[j] = int(v % p);
            v /= p;
        }
        if (prime_field_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible modulus found");  // unreachable
}

}  // namespace

namespace {
double& tolerance_slot() {
    static double val = [] {
        if (const char* env = std::getenv("PALCOUNT_TOLERANCE")) {
            char* end = nullptr;
            double t = std::strtod(env, &end);
            if (end != env && t > 0) return t;
        }
        return 1e-6;
    }();
    return val;
}
}  // namespace

double tolerance() { return tolerance_slot(); }

void set_tolerance(double tol) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    tolerance_slot() = tol;
}

FieldSpec::FieldSpec(std::int64_t p, int r, std::vector<int> modulus)
    : p_(p), r_(r), modulus_(std::move(modulus)) {
    q_ = 1;
    for (int i = 0; i < r_; ++i) {
        q_ *= p_;
        if (q_ > kMaxQ) throw std::invalid_argument("field too large (q > 2^16)");
    }
    if (q_ <= kTableQ) {
        add_table_.resize(size_t(q_) * q_);
        mul_table_.resize(size_t(q_) * q_);
        neg_table_.resize(size_t(q_));
        inv_table_.assign(size_t(q_), 0);
        for (std::int64_t a = 0; a < q_; ++a) {
            for (std::int64_t b = 0; b < q_; ++b) {
                FieldElement s = [&] {
                    std::uint32_t out = 0, mulp = 1;
                    std::int64_t x = a, y = b;
                    for (int i = 0; i < r_; ++i) {
                        out += std::uint32_t((x % p_ + y % p_) % p_) * mulp;
                        x /= p_;
                        y /= p_;
                        mulp *= std::uint32_t(p_);
                    }
                    return FieldElement{out};
                }();
                add_table_[size_t(a) * q_ + b] = s.v;
                mul_table_[size_t(a) * q_ + b] =
                    mul_nocache(FieldElement{std::uint32_t(a)}, FieldElement{std::uint32_t(b)}).v;
            }
        }
        for (std::int64_t a = 0; a < q_; ++a) {
            std::uint32_t out = 0, mulp = 1;
            std::int64_t x = a;
            for (int i = 0; i < r_; ++i) {
                out += std::uint32_t((p_ - x % p_) % p_) * mulp;
                x /= p_;
                mulp *= std::uint32_t(p_);
            }
            neg_table_[size_t(a)] = out;
        }
        for (std::int64_t a = 1; a < q_; ++a)
            for (std::int64_t b = 1; b < q_; ++b)
                if (mul_table_[size_t(a) * q_ + b] == 1) inv_table_[size_t(a)] = std::uint32_t(b);
    }
}

std::shared_ptr<const FieldSpec> FieldSpec::make(std::int64_t p, int r) {
    if (!is_prime(p)) throw std::invalid_argument("p is not prime");
    if (r < 1) throw std::invalid_argument("extension degree must be >= 1");
    if (r == 1) return std::shared_ptr<const FieldSpec>(new FieldSpec(p, 1, {}));
    return std::shared_ptr<const FieldSpec>(new FieldSpec(p, r, find_modulus(p, r)));
}

std::shared_ptr<const FieldSpec> FieldSpec::make(std::int64_t p, int r,
                                                 std::vector<int> modulus) {
    if (!is_prime(p)) throw std::invalid_argument("p is not prime");
    if (r < 2) throw std::invalid_argument("explicit modulus requires r > 1");
    if (int(modulus.size()) != r + 1 || modulus[r] != 1)
        throw std::invalid_argument("modulus must be monic of degree r");
    for (int& c : modulus) {
        if (c < 0 || c >= p) throw std::invalid_argument("modulus coefficient out of range");
    }
    if (!prime_field_irreducible(modulus, p))
        throw std::invalid_argument("modulus is not irreducible over F_p");
    return std::shared_ptr<const FieldSpec>(new FieldSpec(p, r, std::move(modulus)));
}

FieldElement FieldSpec::element(std::int64_t value) const {
    if (value < 0 || value >= q_) throw std::invalid_argument("element value out of range");
    return FieldElement{std::uint32_t(value)};
}

FieldElement FieldSpec::from_int(std::int64_t k) const {
    return FieldElement{std::uint32_t((k % p_ + p_) % p_)};
}

std::vector<int> FieldSpec::coords(FieldElement a) const {
    auto out = std::vector<int>(size_t(r_));
    std::int64_t v = a.v;
    for (int i = 0; i < r_; ++i) {
        out[size_t(i)] = int(v % p_);
        v /= p_;
    }
    return out;
}

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
    if (!add_table_.empty()) return FieldElement{add_table_[size_t(a.v) * q_ + b.v]};
    std::uint32_t out = 0, mulp = 1;
    std::int64_t x = a.v, y = b.v;
    for (int i = 0; i < r_; ++i) {
        out += std::uint32_t((x % p_ + y % p_) % p_) * mulp;
        x /= p_;
        y /= p_;
        mulp *= std::uint32_t(p_);
    }
    return FieldElement{out};
}

FieldElement FieldSpec::neg(FieldElement a) const {
    if (!neg_table_.empty()) return FieldElement{neg_table_[a.v]};
    std::uint32_t out = 0, mulp = 1;
    std::int64_t x = a.v;
    for (int i = 0; i < r_; ++i) {
        out += std::uint32_t((p_ - x % p_) % p_) * mulp;
        x /= p_;
        mulp *= std::uint32_t(p_);
    }
    return FieldElement{out};
}

FieldElement FieldSpec::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FieldSpec::mul_nocache(FieldElement a, FieldElement b) const {
    if (r_ == 1) return FieldElement{std::uint32_t(std::int64_t(a.v) * b.v % p_)};
    std::vector<int> da = coords(a), db = coords(b);
    auto prod = std::vector<std::int64_t>(size_t(2 * r_ - 1), 0);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j)
            prod[size_t(i + j)] = (prod[size_t(i + j)] + std::int64_t(da[size_t(i)]) * db[size_t(j)]) % p_;
    for (int i = 2 * r_ - 2; i >= r_; --i) {
        std::int64_t c = prod[size_t(i)];
        if (c == 0) continue;
        for (int j = 0; j <= r_; ++j) {
            auto& slot = prod[size_t(i - r_ + j)];
            slot = ((slot - c * modulus_[size_t(j)]) % p_ + p_) % p_;
        }
    }
    std::uint32_t out = 0, mulp = 1;
    for (int i = 0; i < r_; ++i) {
        out += std::uint32_t(prod[size_t(i)]) * mulp;
        mulp *= std::uint32_t(p_);
    }
    return FieldElement{out};
}

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
    if (!mul_table_.empty()) return FieldElement{mul_table_[size_t(a.v) * q_ + b.v]};
    return mul_nocache(a, b);
}

FieldElement FieldSpec::inv(FieldElement a) const {
    if (a.v == 0) throw std::invalid_argument("inverse of zero");
    if (!inv_table_.empty()) return FieldElement{inv_table_[a.v]};
    return pow(a, q_ - 2);
}

FieldElement FieldSpec::pow(FieldElement a, std::int64_t e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    FieldElement r = one(), base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::string FieldSpec::key() const {
    std::string k = std::to_string(p_) + "^" + std::to_string(r_);
    for (int c : modulus_) k += "," + std::to_string(c);
    return k;
}

}  // namespace palcount
