#include "palcount/sripm.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "internal.hpp"
#include "palcount/errors.hpp"
#include "palcount/oracle.hpp"

namespace palcount {

using detail::int128;

namespace {

std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1;
    a %= p;
    while (e > 0) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

// C(m, j) mod p by Lucas' theorem; digit binomials in modular arithmetic so
// large p cannot overflow
std::int64_t binom_mod_p(std::int64_t m, std::int64_t j, std::int64_t p) {
    if (j < 0 || j > m) return 0;
    std::int64_t out = 1;
    while (j > 0 || m > 0) {
        std::int64_t mi = m % p, ji = j % p;
        if (ji > mi) return 0;
        std::int64_t c = 1;
        for (std::int64_t i = 1; i <= ji; ++i)
            c = c * ((mi - ji + i) % p) % p * pow_mod(i, p - 2, p) % p;
        out = out * c % p;
        m /= p;
        j /= p;
    }
    return out;
}

}  // namespace

std::vector<FieldElement> phi_map(const FieldPtr& field, int d,
                                  std::span<const FieldElement> g) {
    const int l = int(g.size());
    const std::int64_t p = field->p();
    auto out = std::vector<FieldElement>(size_t(l));
    for (int k = 1; k <= l; ++k) {
        FieldElement s = field->zero();
        for (int j = 0; 2 * j <= k; ++j) {
            FieldElement gk = (k - 2 * j == 0) ? field->one() : g[size_t(k - 2 * j - 1)];
            std::int64_t b = binom_mod_p(std::int64_t(d) + 2 * j - k, j, p);
            s = field->add(s, field->mul(field->from_int(b), gk));
        }
        out[size_t(k - 1)] = s;
    }
    return out;
}

std::vector<FieldElement> phi_inverse(const FieldPtr& field, int d,
                                      std::span<const FieldElement> f) {
    const int l = int(f.size());
    const std::int64_t p = field->p();
    auto g = std::vector<FieldElement>(size_t(l));
    for (int k = 1; k <= l; ++k) {
        FieldElement s = f[size_t(k - 1)];
        for (int j = 1; 2 * j <= k; ++j) {
            FieldElement gk = (k - 2 * j == 0) ? field->one() : g[size_t(k - 2 * j - 1)];
            std::int64_t b = binom_mod_p(std::int64_t(d) + 2 * j - k, j, p);
            s = field->sub(s, field->mul(field->from_int(b), gk));
        }
        g[size_t(k - 1)] = s;
    }
    return g;
}

std::vector<FieldElement> psi_map(const FieldPtr& field, std::span<const FieldElement> b,
                                  std::span<const FieldElement> a) {
    if (b.empty() || b[0].v == 0) throw std::invalid_argument("psi requires b_0 != 0");
    if (b.size() != a.size() + 1) throw std::invalid_argument("psi requires |b| == |a| + 1");
    const int l = int(a.size());
    FieldElement b0inv = field->inv(b[0]);
    auto c = std::vector<FieldElement>(size_t(l));
    for (int k = 1; k <= l; ++k) {
        FieldElement s = field->add(a[size_t(k - 1)], field->mul(b0inv, b[size_t(k)]));
        for (int j = 1; j < k; ++j)
            s = field->add(s, field->mul(b0inv, field->mul(a[size_t(j - 1)], b[size_t(k - j)])));
        c[size_t(k - 1)] = s;
    }
    return c;
}

std::vector<FieldElement> psi_inverse(const FieldPtr& field, std::span<const FieldElement> b,
                                      std::span<const FieldElement> c) {
    if (b.empty() || b[0].v == 0) throw std::invalid_argument("psi requires b_0 != 0");
    if (b.size() != c.size() + 1) throw std::invalid_argument("psi requires |b| == |c| + 1");
    const int l = int(c.size());
    FieldElement b0inv = field->inv(b[0]);
    auto a = std::vector<FieldElement>(size_t(l));
    for (int k = 1; k <= l; ++k) {
        FieldElement s = field->sub(c[size_t(k - 1)], field->mul(b0inv, b[size_t(k)]));
        for (int j = 1; j < k; ++j)
            s = field->sub(s, field->mul(b0inv, field->mul(a[size_t(j - 1)], b[size_t(k - j)])));
        a[size_t(k - 1)] = s;
    }
    return a;
}

// ---------------------------------------------------------------------------

GroupPtr cached_group(const FieldPtr& field, int l, int t) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, int, int>, GroupPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(field->key(), l, t);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    GroupPtr G = decompose(field, l, t);
    cache.emplace(std::move(key), G);
    return G;
}

GroupPtr paper_basis_group(const FieldPtr& field, int l, int t) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, int, int>, GroupPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(field->key(), l, t);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::optional<std::vector<Poly>> gens;
    if (field->q() == 3 && l == 1 && t == 2) {
        gens = {Poly::from_ints(field, {1, 1}), Poly::from_ints(field, {2, 1, 0, 1})};
    } else if (field->q() == 2 && l == 2 && t == 0) {
        gens = {Poly::from_ints(field, {1, 1})};
    } else if (field->q() == 2 && l == 2 && t == 3) {
        gens = {Poly::from_ints(field, {1, 1}), Poly::from_ints(field, {1, 1, 0, 0, 0, 1})};
    } else {
        throw std::invalid_argument("no published basis for this group");
    }
    GroupPtr G = decompose(field, l, t, gens);
    cache.emplace(std::move(key), G);
    return G;
}

namespace {

CountResult S_count_impl(const SrimQuery& query);

// direct enumeration for the cases the recursion cannot reach
CountResult S_small(const SrimQuery& q) {
    OracleReport rep = brute_S(q.field, 2 * q.n, q.leading, 0);
    return {rep.count, 0.0};
}

CountResult S_count_impl(const SrimQuery& query) {
    const FieldPtr& field = query.field;
    const int n = query.n;
    const int l = int(query.leading.size());
    if (n < 1) throw std::invalid_argument("S_count requires n >= 1");
    if (n == 1 || 2 * l > n) return S_small(query);

    double residual = 0.0;
    const std::int64_t q = field->q();

    // degree-n irreducibles whose substitution image carries the window
    int128 total2;  // scaled by 2
    if (l == 0) {
        CountResult tot = I_total(*field, n);
        total2 = int128(tot.count) * 2;
    } else {
        GroupPtr G0 = cached_group(field, l, 0);
        auto eng0 = engine_for(G0);
        ClassLabel lab{field, phi_inverse(field, n, query.leading), {}};
        CountResult tot = eng0->I_count(n, lab);
        residual = std::max(residual, tot.residual);
        total2 = int128(tot.count) * 2;
    }

    // minus the paired irreducibles forming the same images
    GroupPtr G1 = cached_group(field, l, l + 1);
    auto eng1 = engine_for(G1);
    int128 sub = 0;
    auto b = std::vector<FieldElement>(size_t(l) + 1);
    std::uint64_t variants = 1;
    for (int i = 0; i < l; ++i) variants *= std::uint64_t(q);
    for (std::int64_t b0 = 1; b0 < q; ++b0) {
        b[0] = FieldElement{std::uint32_t(b0)};
        for (std::uint64_t rest = 0; rest < variants; ++rest) {
            std::uint64_t v = rest;
            for (int i = 1; i <= l; ++i) {
                b[size_t(i)] = FieldElement{std::uint32_t(v % std::uint64_t(q))};
                v /= std::uint64_t(q);
            }
            ClassLabel lab{field, psi_inverse(field, b, query.leading), b};
            CountResult part = eng1->I_count(n, lab);
            residual = std::max(residual, part.residual);
            sub += part.count;
        }
    }

    // plus the self-square images, present only at even n
    int128 add = 0;
    if (n % 2 == 0) {
        auto a = std::vector<FieldElement>(size_t(l));
        auto one_a = std::vector<FieldElement>(size_t(l) + 1);
        one_a[0] = field->one();
        for (std::uint64_t it = 0; it < variants; ++it) {
            std::uint64_t v = it;
            for (int i = 0; i < l; ++i) {
                a[size_t(i)] = FieldElement{std::uint32_t(v % std::uint64_t(q))};
                one_a[size_t(i + 1)] = a[size_t(i)];
                v /= std::uint64_t(q);
            }
            if (psi_map(field, one_a, a) != query.leading) continue;
            CountResult rec = S_count_impl({field, n / 2, a});
            residual = std::max(residual, rec.residual);
            add += rec.count;
        }
    }

    int128 num = total2 - sub + add;
    if (num < 0 || num % 2 != 0)
        throw integrality_error("S_count assembled a non-integral or negative value");
    return {detail::to_int64_checked(num / 2, "S_count"), residual};
}

}  // namespace

CountResult S_count(const SrimQuery& query) { return S_count_impl(query); }

CountResult S_total(const FieldSpec& spec, int n) {
    if (n < 1) throw std::invalid_argument("S_total requires n >= 1");
    const std::int64_t q = spec.q();
    if ((n & (n - 1)) == 0) {
        int128 v = detail::pow_int128_checked(q, n, "S_total") + (q % 2 == 0 ? 1 : 0) - 1;
        return {detail::to_int64_checked(detail::div_exact(v, 2 * n, "S_total"), "S_total"), 0.0};
    }
    int128 sum = 0;
    for (std::uint64_t j : divisors(std::uint64_t(n))) {
        if (j % 2 == 0) continue;
        int mu_j = mobius(j);
        if (mu_j == 0) continue;
        sum += int128(mu_j) * detail::pow_int128_checked(q, int(std::uint64_t(n) / j), "S_total");
    }
    return {detail::to_int64_checked(detail::div_exact(sum, 2 * n, "S_total"), "S_total"), 0.0};
}

CountResult S_total_via_halving(const FieldSpec& spec, int n) {
    if (n < 1) throw std::invalid_argument("S_total requires n >= 1");
    if (n == 1) return S_total(spec, 1);
    if (n % 2 == 1) {
        int128 v = int128(I_total(spec, n).count);
        return {detail::to_int64_checked(detail::div_exact(v, 2, "S_total_via_halving"),
                                         "S_total_via_halving"),
                0.0};
    }
    int128 v = int128(S_total_via_halving(spec, n / 2).count) + int128(I_total(spec, n).count);
    return {detail::to_int64_checked(detail::div_exact(v, 2, "S_total_via_halving"),
                                     "S_total_via_halving"),
            0.0};
}

// ---------------------------------------------------------------------------
// specialized closed forms

namespace {

const double kTheta = std::acos(1.0 / (2.0 * std::sqrt(2.0)));    // q = 2, one trace
const double kTheta1 = std::acos(1.0 / (2.0 * std::sqrt(3.0)));   // q = 3
const double kTheta2 = std::acos(1.0 / std::sqrt(3.0));           // q = 3

CountResult round_checked(double v, const char* what) {
    std::int64_t c = std::llround(v);
    double residual = std::abs(v - double(c));
    if (residual >= tolerance())
        throw integrality_error(std::string(what) + ": residual exceeds the tolerance");
    if (c < 0) throw integrality_error(std::string(what) + ": negative count");
    return {c, residual};
}

}  // namespace

namespace closedform {

// F_3(n; xi1^t1 xi2^t2) over E^{1,2}, fully expanded trigonometric form
double F3_class(int n, int t1, int t2) {
    const double pi = std::numbers::pi;
    const double r3n = std::pow(3.0, 0.5 * n);
    double v = (std::pow(3.0, n) - 1.0) / 18.0;
    v -= (std::cos(2 * pi * (t1 + 2 * t2) / 3.0) + std::cos(2 * pi * t1 / 3.0)) / 9.0;
    v -= r3n / 9.0 * std::cos((2 * t1 + t2) * pi / 3.0 + n * pi / 2.0);
    v -= 2.0 * r3n / 9.0 * std::cos(2 * (t1 + t2) * pi / 3.0) * std::cos(n * kTheta1);
    v -= r3n / 9.0 * (t2 % 2 == 0 ? 1.0 : -1.0) * std::cos(2 * t1 * pi / 3.0 + n * pi / 2.0);
    v -= r3n / 9.0 * std::cos((2 * n - 2 * t1 + t2) * pi / 3.0 + n * pi / 2.0);
    v -= r3n / 9.0 * std::cos((-2 * n - 2 * t1 + t2) * pi / 3.0 + n * pi / 2.0);
    if (n % 2 == 0)
        v -= 2.0 * r3n / 9.0 * ((n / 2) % 2 == 0 ? 1.0 : -1.0) * std::cos(t2 * pi / 3.0);
    v -= 2.0 * r3n / 9.0 * (n % 2 == 0 ? 1.0 : -1.0) * std::cos(2 * t2 * pi / 3.0) *
         std::cos(n * kTheta2);
    return v;
}

// I_3(n; xi1^e1 xi2^e2) over E^{1,2} by residue classes of k mod 6. The
// delta-sets come from the per-component congruences k x == e (mod r); for
// k == 4 (mod 6) the second component solves to -e2/2 + s2.
double I3_class(int n, int e1, int e2) {
    double s = 0.0;
    for (std::uint64_t k : divisors(std::uint64_t(n))) {
        int mu_k = mobius(k);
        if (mu_k == 0) continue;
        const int m = int(std::uint64_t(n) / k);
        switch (int(k % 6)) {
            case 0:
                if (e1 == 0 && e2 == 0) s += mu_k * (std::pow(3.0, m) - 1.0);
                break;
            case 1:
                s += mu_k * F3_class(m, e1, e2);
                break;
            case 5:
                s += mu_k * F3_class(m, (3 - e1) % 3, (6 - e2) % 6);
                break;
            case 2:
                if (e2 % 2 == 0)
                    for (int s2 : {0, 3})
                        s += mu_k * F3_class(m, (3 - e1) % 3, (e2 / 2 + s2) % 6);
                break;
            case 4:
                if (e2 % 2 == 0)
                    for (int s2 : {0, 3})
                        s += mu_k * F3_class(m, e1, (6 - e2 / 2 + s2) % 6);
                break;
            case 3:
                if (e1 == 0 && e2 % 3 == 0)
                    for (int s1 = 0; s1 < 3; ++s1)
                        for (int s2 = 0; s2 < 3; ++s2)
                            s += mu_k * F3_class(m, s1, (e2 / 3 + 2 * s2) % 6);
                break;
        }
    }
    return s / n;
}

// [z^n] ln P = -rho_n(P) / n
double zlog_coeff_real(const CharPoly& P, int n) { return -power_sum(P, n).real() / n; }
std::complex<double> zlog_coeff(const CharPoly& P, int n) {
    return -power_sum(P, n) / double(n);
}

// F_2(n; xi1^s1 xi2^s2) over E^{2,3} through the six fixed character
// polynomials
double F2_class(int n, int s1, int s2) {
    using C = std::complex<double>;
    static const CharPoly P11{{C(1), C(0, 1), C(-1, -1)}};
    static const CharPoly P12{{C(1), C(0, 1), C(-1, -1), C(2, -2)}};
    static const CharPoly P21{{C(1), C(-1), C(0), C(0, -2), C(0, 4)}};
    static const CharPoly P41{{C(1), C(1), C(2), C(2), C(4)}};
    static const CharPoly P42{{C(1), C(1), C(2)}};
    auto ipow = [](int e) {
        static const C table[4] = {C(1), C(0, 1), C(-1), C(0, -1)};
        return table[((e % 4) + 4) % 4];
    };
    double v = (std::pow(2.0, n) - 1.0) / 16.0;
    v -= (((s1 + s2) % 2 == 0 ? 1.0 : -1.0) + (s1 % 2 == 0 ? 1.0 : -1.0)) / 16.0;
    v += n / 8.0 * ((ipow(-s1 - s2) + ipow(-s1)) * zlog_coeff(P11, n)).real();
    v += n / 8.0 * ((ipow(-s1 - 2 * s2) + ipow(-s1 - 3 * s2)) * zlog_coeff(P12, n)).real();
    v += n / 8.0 * ((s1 % 2 == 0 ? 1.0 : -1.0) * (ipow(-s2) * zlog_coeff(P21, n)).real());
    v += n / 8.0 * std::cos(std::numbers::pi * s2 / 2.0) * zlog_coeff_real(P41, n);
    v += n / 16.0 * (s2 % 2 == 0 ? 1.0 : -1.0) * zlog_coeff_real(P42, n);
    return v;
}

// I_2(n; xi1^e1 xi2^e2) over E^{2,3} by residue classes of k mod 4
double I2_class(int n, int e1, int e2) {
    double s = 0.0;
    for (std::uint64_t k : divisors(std::uint64_t(n))) {
        int mu_k = mobius(k);
        if (mu_k == 0) continue;
        const int m = int(std::uint64_t(n) / k);
        switch (int(k % 4)) {
            case 0:
                if (e1 == 0 && e2 == 0) s += mu_k * (std::pow(2.0, m) - 1.0);
                break;
            case 1:
                s += mu_k * F2_class(m, e1, e2);
                break;
            case 3:
                s += mu_k * F2_class(m, (4 - e1) % 4, (4 - e2) % 4);
                break;
            case 2:
                if (e1 % 2 == 0 && e2 % 2 == 0)
                    for (int x1 : {0, 2})
                        for (int x2 : {0, 2})
                            s += mu_k * F2_class(m, (e1 / 2 + x1) % 4, (e2 / 2 + x2) % 4);
                break;
        }
    }
    return s / n;
}

// I_2(n; xi^t) over E^{2,0}, xi = <x+1> of order 4
double I2_lead(int n, int t) {
    const double pi = std::numbers::pi;
    double s = 0.0;
    for (std::uint64_t k : divisors(std::uint64_t(n))) {
        int mu_k = mobius(k);
        if (mu_k == 0) continue;
        const int m = int(std::uint64_t(n) / k);
        const double sgn = m % 2 == 0 ? 1.0 : -1.0;
        switch (int(k % 4)) {
            case 0:
                if (t == 0) s += mu_k * std::pow(2.0, m);
                break;
            case 2:
                if (t % 2 == 0) s += mu_k * std::pow(2.0, m - 1);
                break;
            case 1:
                s += mu_k * (std::pow(2.0, m - 2) -
                             sgn * std::pow(2.0, 0.5 * m - 1) * std::cos((m - 2 * t) * pi / 4.0));
                break;
            case 3:
                s += mu_k * (std::pow(2.0, m - 2) -
                             sgn * std::pow(2.0, 0.5 * m - 1) * std::cos((m + 2 * t) * pi / 4.0));
                break;
        }
    }
    return s / n;
}

}  // namespace closedform

CountResult S2_trace(int n, int a) {
    if (n < 1) throw std::invalid_argument("S2_trace requires n >= 1");
    if (a != 0 && a != 1) throw std::invalid_argument("S2_trace requires a in {0, 1}");
    double s = 0.0;
    for (std::uint64_t j : divisors(std::uint64_t(n))) {
        if (j % 2 == 0) continue;
        int mu_j = mobius(j);
        if (mu_j == 0) continue;
        const int m = int(std::uint64_t(n) / j);
        double osc = (m % 2 == 0 ? 1.0 : -1.0) * std::pow(2.0, 0.5 * m + 1.0) *
                     std::cos(m * kTheta);
        s += mu_j * (a == 1 ? std::pow(2.0, m) + 1.0 - osc : std::pow(2.0, m) - 1.0 + osc);
    }
    return round_checked(s / (4.0 * n), "S2_trace");
}

CountResult S3_trace(int n, int a) {
    if (n < 1) throw std::invalid_argument("S3_trace requires n >= 1");
    if (a < 0 || a > 2) throw std::invalid_argument("S3_trace requires a in {0, 1, 2}");
    auto field = FieldSpec::make(3);

    // trace-zero count by the fixed-generator recursion
    std::function<CountResult(int)> S30 = [&](int m) -> CountResult {
        if (m == 1) {
            OracleReport rep = brute_S(field, 2, std::vector<FieldElement>{field->zero()}, 0);
            return {rep.count, 0.0};
        }
        double v = I_trace(*field, m, field->zero()).count;
        double residual = 0.0;
        if (m % 2 == 0) {
            CountResult half = S30(m / 2);
            residual = std::max(residual, half.residual);
            v += 0.5 * double(half.count);
        }
        static const int named[6][2] = {{0, 0}, {0, 3}, {2, 4}, {1, 5}, {1, 2}, {2, 1}};
        for (const auto& e : named) v -= 0.5 * closedform::I3_class(m, e[0], e[1]);
        CountResult out = round_checked(v, "S3_trace");
        out.residual = std::max(out.residual, residual);
        return out;
    };

    CountResult zero = S30(n);
    if (a == 0) return zero;
    CountResult total = S_total(*field, n);
    int128 diff = int128(total.count) - zero.count;
    return {detail::to_int64_checked(detail::div_exact(diff, 2, "S3_trace"), "S3_trace"),
            zero.residual};
}

CountResult S2_two(int n, int a1, int a2) {
    if (n < 1) throw std::invalid_argument("S2_two requires n >= 1");
    if ((a1 | a2) > 1 || a1 < 0 || a2 < 0)
        throw std::invalid_argument("S2_two requires bits as coefficients");
    auto field = FieldSpec::make(2);
    if (n == 1) {
        std::vector<FieldElement> c{FieldElement{std::uint32_t(a1)}, FieldElement{std::uint32_t(a2)}};
        OracleReport rep = brute_S(field, 2, c, 0);
        return {rep.count, 0.0};
    }

    GroupPtr G = paper_basis_group(field, 2, 3);
    double residual = 0.0;
    double v = 0.0;
    if (a1 == 0 && n % 2 == 0) {
        CountResult half = S2_trace(n / 2, a2);
        residual = std::max(residual, half.residual);
        v += 0.5 * double(half.count);
    }
    // leading-window term on E^{2,0}: phi_n^{-1}(a1, a2) = (a1, a2 + n),
    // and the window (x, y) sits at xi^(x + 2y)
    v += closedform::I2_lead(n, (a1 + 2 * ((a2 + n) % 2)) % 4);
    // paired-irreducible terms on E^{2,3}
    for (int b1 = 0; b1 < 2; ++b1) {
        for (int b2 = 0; b2 < 2; ++b2) {
            std::vector<FieldElement> b{field->one(), FieldElement{std::uint32_t(b1)},
                                        FieldElement{std::uint32_t(b2)}};
            std::vector<FieldElement> cvec{FieldElement{std::uint32_t(a1)},
                                           FieldElement{std::uint32_t(a2)}};
            ClassLabel lab{field, psi_inverse(field, b, cvec), b};
            std::vector<int> e = G->exponent_of(lab);
            v -= 0.5 * closedform::I2_class(n, e[0], e[1]);
        }
    }
    CountResult out = round_checked(v, "S2_two");
    out.residual = std::max(out.residual, residual);
    return out;
}

BoundsReport bounds(const FieldSpec& spec, int n, int l) {
    if (n < 1) throw std::invalid_argument("bounds requires n >= 1");
    if (l < 1 || 2 * l > n) throw std::invalid_argument("bounds requires 1 <= l <= n/2");
    const double q = double(spec.q());
    BoundsReport rep;
    const double center = std::pow(q, n - l) / (2.0 * n);
    const double osc = std::pow(q, l + 1) * std::pow(q, 0.5 * n) / n;
    rep.lower = center - l * osc;
    rep.upper = center + (l + 1) * osc;
    rep.positivity_ell =
        int(std::floor(n / 4.0 - std::log(q * n / 2.0) / std::log(q) / 2.0));
    const double icenter = std::pow(q, n - l) / n;
    rep.cohen_lower = icenter - (l + 1) * std::pow(q, 0.5 * n) / n;
    rep.cohen_upper = icenter + (l - 1) * std::pow(q, 0.5 * n) / n;
    return rep;
}

}  // namespace palcount
