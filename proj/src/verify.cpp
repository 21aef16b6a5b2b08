#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "palcount/errors.hpp"
#include "palcount/oracle.hpp"
#include "palcount/tables.hpp"

namespace palcount::verify {

namespace {

using Lines = std::vector<std::string>;

template <typename... Args>
void mismatch(Lines& out, Args&&... args) {
    std::ostringstream ss;
    (ss << ... << args);
    out.push_back(ss.str());
}

int max_degree_within(std::int64_t q, int cap_n, std::uint64_t budget) {
    int n = 0;
    std::uint64_t space = 1;
    while (n < cap_n && space <= budget / std::uint64_t(q)) {
        space *= std::uint64_t(q);
        ++n;
    }
    return n;
}

// expected class-partition total: the lone irreducible with zero norm (x)
// falls outside every class at degree 1 when t > 0
std::int64_t partition_expected(const FieldSpec& F, int n, int t) {
    return I_total(F, n).count - ((t > 0 && n == 1) ? 1 : 0);
}

}  // namespace

std::vector<std::string> check_tables(int id, int max_n, std::uint64_t oracle_budget) {
    Lines out;
    if (id >= 1 && id <= 3) {
        auto field = FieldSpec::make(3);
        GroupPtr G = paper_basis_group(field, 1, 2);
        auto eng = engine_for(G);
        const int e1 = id - 1;
        int oracle_n = max_degree_within(3, max_n, oracle_budget);
        IrreducibleSieve sieve(field, oracle_n);
        for (int n = 1; n <= max_n; ++n) {
            std::vector<std::int64_t> counts;
            if (n <= oracle_n) counts = brute_class_counts(*G, n, sieve);
            // engine vs closed form, and vs the oracle where the scan fits
            for (int s = 0; s < 6; ++s) {
                std::vector<int> e{e1, s};
                std::int64_t got = eng->I_count(n, G->element(e)).count;
                double cf = closedform::I3_class(n, e1, s);
                if (std::llround(cf) != got)
                    mismatch(out, "table ", id, " q=3 n=", n, " l=1 t=2 xi1^", e1, "*xi2^", s,
                             " expected(closed form) ", std::llround(cf), " got ", got);
                if (!counts.empty()) {
                    std::int64_t want =
                        counts[size_t(G->label_index_of_exp_index(G->exp_index(e)))];
                    if (want != got)
                        mismatch(out, "table ", id, " q=3 n=", n, " l=1 t=2 xi1^", e1, "*xi2^", s,
                                 " expected(oracle) ", want, " got ", got);
                }
            }
            // row partition over all 18 classes, done once with table 1
            if (id == 1) {
                std::int64_t sum = 0;
                for (std::int64_t ei = 0; ei < G->order(); ++ei)
                    sum += eng->I_count_by_exp(n, ei).count;
                std::int64_t want = partition_expected(*field, n, 2);
                if (sum != want)
                    mismatch(out, "table 1 q=3 n=", n,
                             " l=1 t=2 all-classes expected(partition) ", want, " got ", sum);
            }
        }
    } else if (id == 4) {
        auto field = FieldSpec::make(3);
        int oracle_n = max_degree_within(3, max_n, oracle_budget);
        for (int n = 1; n <= max_n; ++n) {
            for (int a = 0; a < 2; ++a) {
                std::int64_t got = S3_trace(n, a).count;
                std::vector<FieldElement> c{field->element(a)};
                std::int64_t eng = S_count({field, n, c}).count;
                if (eng != got)
                    mismatch(out, "table 4 q=3 n=", n, " l=1 t=0 trace=", a,
                             " expected(engine) ", eng, " got ", got);
                if (n <= oracle_n) {
                    std::int64_t want = brute_S(field, 2 * n, c, 0).count;
                    if (want != got)
                        mismatch(out, "table 4 q=3 n=", n, " l=1 t=0 trace=", a,
                                 " expected(oracle) ", want, " got ", got);
                }
            }
            std::int64_t sum = S3_trace(n, 0).count + 2 * S3_trace(n, 1).count;
            if (sum != S_total(*field, n).count)
                mismatch(out, "table 4 q=3 n=", n, " trace partition expected ",
                         S_total(*field, n).count, " got ", sum);
        }
    } else if (id == 5 || id == 6) {
        auto field = FieldSpec::make(2);
        GroupPtr G = paper_basis_group(field, 2, 3);
        auto eng = engine_for(G);
        const int base = id == 5 ? 0 : 2;
        int oracle_n = max_degree_within(2, max_n, oracle_budget);
        IrreducibleSieve sieve(field, oracle_n);
        for (int n = 1; n <= max_n; ++n) {
            std::vector<std::int64_t> counts;
            if (n <= oracle_n) counts = brute_class_counts(*G, n, sieve);
            for (int a = base; a < base + 2; ++a) {
                for (int s = 0; s < 4; ++s) {
                    std::vector<int> e{a, s};
                    std::int64_t got = eng->I_count(n, G->element(e)).count;
                    double cf = closedform::I2_class(n, a, s);
                    if (std::llround(cf) != got)
                        mismatch(out, "table ", id, " q=2 n=", n, " l=2 t=3 xi1^", a, "*xi2^", s,
                                 " expected(closed form) ", std::llround(cf), " got ", got);
                    if (!counts.empty()) {
                        std::int64_t want =
                            counts[size_t(G->label_index_of_exp_index(G->exp_index(e)))];
                        if (want != got)
                            mismatch(out, "table ", id, " q=2 n=", n, " l=2 t=3 xi1^", a, "*xi2^",
                                     s, " expected(oracle) ", want, " got ", got);
                    }
                }
            }
            if (id == 5) {
                std::int64_t sum = 0;
                for (std::int64_t ei = 0; ei < G->order(); ++ei)
                    sum += eng->I_count_by_exp(n, ei).count;
                std::int64_t want = partition_expected(*field, n, 3);
                if (sum != want)
                    mismatch(out, "table 5 q=2 n=", n,
                             " l=2 t=3 all-classes expected(partition) ", want, " got ", sum);
            }
        }
    } else if (id == 7) {
        auto field = FieldSpec::make(2);
        int oracle_n = max_degree_within(2, max_n, oracle_budget);
        for (int n = 1; n <= max_n; ++n) {
            for (int a1 = 0; a1 < 2; ++a1)
                for (int a2 = 0; a2 < 2; ++a2) {
                    std::int64_t got = S2_two(n, a1, a2).count;
                    std::vector<FieldElement> c{field->element(a1), field->element(a2)};
                    std::int64_t eng = S_count({field, n, c}).count;
                    if (eng != got)
                        mismatch(out, "table 7 q=2 n=", n, " l=2 t=0 c=(", a1, ",", a2,
                                 ") expected(engine) ", eng, " got ", got);
                    if (n <= oracle_n) {
                        std::int64_t want = brute_S(field, 2 * n, c, 0).count;
                        if (want != got)
                            mismatch(out, "table 7 q=2 n=", n, " l=2 t=0 c=(", a1, ",", a2,
                                     ") expected(oracle) ", want, " got ", got);
                    }
                }
        }
    } else {
        mismatch(out, "table id must be 1..7, got ", id);
    }
    return out;
}

std::vector<std::string> check_oracle(const std::vector<std::int64_t>& qs, int max_n,
                                      int max_window, std::uint64_t budget) {
    Lines out;
    for (std::int64_t q : qs) {
        int r = 1;
        std::int64_t p = q;
        for (std::int64_t base = 2; base * base <= q; ++base) {
            if (q % base == 0) {
                p = base;
                r = 0;
                std::int64_t v = q;
                while (v > 1) {
                    if (v % base != 0) throw std::invalid_argument("q must be a prime power");
                    v /= base;
                    ++r;
                }
                break;
            }
        }
        auto field = FieldSpec::make(p, r);
        int dmax = max_degree_within(q, max_n, budget);
        if (dmax < 1) continue;
        IrreducibleSieve sieve(field, dmax);
        for (int l = 0; l <= max_window; ++l) {
            for (int t = 0; l + t <= max_window; ++t) {
                if (l + t < 1) continue;
                GroupPtr G = cached_group(field, l, t);
                auto eng = engine_for(G);
                for (int n = 1; n <= dmax; ++n) {
                    auto counts = brute_class_counts(*G, n, sieve);
                    for (std::int64_t li = 0; li < G->order(); ++li) {
                        std::int64_t got =
                            eng->I_count_by_exp(n, G->exp_index_of_label_index(li)).count;
                        if (got != counts[size_t(li)])
                            mismatch(out, "q=", q, " n=", n, " l=", l, " t=", t, " label#", li,
                                     " expected(oracle) ", counts[size_t(li)], " got ", got);
                    }
                }
            }
        }
    }
    return out;
}

std::vector<std::string> check_closed_forms(int max_n) {
    Lines out;
    // trace-sum partition against the total closed form
    for (std::int64_t q : {2, 3}) {
        auto field = FieldSpec::make(q);
        for (int n = 1; n <= max_n; ++n) {
            std::int64_t sum = 0;
            for (std::int64_t c = 0; c < q; ++c) {
                std::vector<FieldElement> cc{field->element(c)};
                sum += S_count({field, n, cc}).count;
            }
            std::int64_t want = S_total(*field, n).count;
            if (sum != want)
                mismatch(out, "q=", q, " n=", n, " l=1 trace sum expected ", want, " got ", sum);
        }
    }
    // the q=2 trace formula
    {
        auto field = FieldSpec::make(2);
        for (int n = 1; n <= max_n; ++n)
            for (int a = 0; a < 2; ++a) {
                std::vector<FieldElement> c{field->element(a)};
                std::int64_t want = S_count({field, n, c}).count;
                std::int64_t got = S2_trace(n, a).count;
                if (want != got)
                    mismatch(out, "q=2 n=", n, " trace=", a, " S2_trace expected(engine) ", want,
                             " got ", got);
            }
    }
    // the q=3 trace recursion
    {
        auto field = FieldSpec::make(3);
        for (int n = 1; n <= std::min(max_n, 12); ++n)
            for (int a = 0; a < 3; ++a) {
                std::vector<FieldElement> c{field->element(a)};
                std::int64_t want = S_count({field, n, c}).count;
                std::int64_t got = S3_trace(n, a).count;
                if (want != got)
                    mismatch(out, "q=3 n=", n, " trace=", a, " S3_trace expected(engine) ", want,
                             " got ", got);
            }
    }
    // the q=2 two-coefficient formulas
    {
        auto field = FieldSpec::make(2);
        for (int n = 1; n <= max_n; ++n)
            for (int a1 = 0; a1 < 2; ++a1)
                for (int a2 = 0; a2 < 2; ++a2) {
                    std::vector<FieldElement> c{field->element(a1), field->element(a2)};
                    std::int64_t want = S_count({field, n, c}).count;
                    std::int64_t got = S2_two(n, a1, a2).count;
                    if (want != got)
                        mismatch(out, "q=2 n=", n, " c=(", a1, ",", a2,
                                 ") S2_two expected(engine) ", want, " got ", got);
                }
    }
    // one-trace closed form against the engine over E^{1,0}
    for (std::int64_t q : {2, 3, 4, 5}) {
        auto field = q == 4 ? FieldSpec::make(2, 2) : FieldSpec::make(q);
        GroupPtr G = cached_group(field, 1, 0);
        auto eng = engine_for(G);
        for (int n = 1; n <= max_n; ++n) {
            if (double(n) * std::log2(double(q)) > 52) break;
            for (std::int64_t cv = 0; cv < q; ++cv) {
                FieldElement c = field->element(cv);
                std::int64_t want = eng->I_count(n, ClassLabel{field, {c}, {}}).count;
                std::int64_t got = I_trace(*field, n, c).count;
                if (want != got)
                    mismatch(out, "q=", q, " n=", n, " c=", cv, " I_trace expected(engine) ", want,
                             " got ", got);
            }
        }
    }
    // two-leading closed form against the engine over E^{2,0}
    {
        auto field = FieldSpec::make(2);
        GroupPtr G = paper_basis_group(field, 2, 0);
        auto eng = engine_for(G);
        for (int n = 1; n <= max_n; ++n)
            for (int tpow = 0; tpow < 4; ++tpow) {
                std::vector<int> e{tpow};
                std::int64_t want = eng->I_count(n, G->element(e)).count;
                std::int64_t got = std::llround(closedform::I2_lead(n, tpow));
                if (want != got)
                    mismatch(out, "q=2 n=", n, " xi^", tpow, " I2_lead expected(engine) ", want,
                             " got ", got);
            }
    }
    // halving recursion against the direct total
    for (std::int64_t q : {2, 3}) {
        auto field = FieldSpec::make(q);
        for (int n = 1; n <= std::max(max_n, 40); ++n) {
            std::int64_t a = S_total(*field, n).count;
            std::int64_t b = S_total_via_halving(*field, n).count;
            if (a != b)
                mismatch(out, "q=", q, " n=", n, " S_total halving route expected ", a, " got ", b);
        }
    }
    return out;
}

std::vector<std::string> check_invariants(int max_n) {
    Lines out;
    std::mt19937 rng(20240915);

    struct Shape {
        std::int64_t q;
        int r, l, t;
    };
    const Shape shapes[] = {{2, 1, 1, 2}, {2, 1, 2, 3}, {2, 1, 2, 0}, {3, 1, 1, 2},
                            {3, 1, 2, 1}, {4, 2, 1, 1}, {5, 1, 1, 2}, {5, 1, 3, 0}};
    for (const Shape& sh : shapes) {
        auto field = sh.r == 1 ? FieldSpec::make(sh.q) : FieldSpec::make(2, 2);
        GroupPtr G = cached_group(field, sh.l, sh.t);
        auto eng = engine_for(G);
        const double tol = tolerance();
        for (int n = 1; n <= max_n; ++n) {
            if (double(n) * std::log2(double(sh.q)) > 26) break;  // keep the sweep cheap
            // class partition of the irreducible count
            std::int64_t sum = 0;
            double fsum = 0.0;
            for (std::int64_t ei = 0; ei < G->order(); ++ei) {
                sum += eng->I_count_by_exp(n, ei).count;
                fsum += eng->F_value_by_exp(n, ei);
            }
            std::int64_t want = partition_expected(*field, n, sh.t);
            if (sum != want)
                mismatch(out, "q=", sh.q, " l=", sh.l, " t=", sh.t, " n=", n,
                         " class partition expected ", want, " got ", sum);
            double fwant = std::pow(double(sh.q), n) - (sh.t > 0 ? 1.0 : 0.0);
            if (std::abs(fsum - fwant) > tol * std::max(1.0, fwant))
                mismatch(out, "q=", sh.q, " l=", sh.l, " t=", sh.t, " n=", n,
                         " F partition expected ", fwant, " got ", fsum);
        }

        // power preimage solver against the scan route
        for (std::int64_t k = 1; k <= 12; ++k) {
            for (int rep = 0; rep < 4; ++rep) {
                std::int64_t li = std::int64_t(rng() % std::uint64_t(G->order()));
                ClassLabel eps = G->label_at(li);
                auto a = pow_preimages(*G, k, G->exponent_of(eps));
                auto b = pow_preimages_scan(*G, k, eps);
                if (a != b)
                    mismatch(out, "q=", sh.q, " l=", sh.l, " t=", sh.t, " k=", k, " label#", li,
                             " preimage solver disagrees with the scan route");
            }
        }

        // exponent map is a homomorphism on random pairs
        for (int rep = 0; rep < 16; ++rep) {
            ClassLabel x = G->label_at(std::int64_t(rng() % std::uint64_t(G->order())));
            ClassLabel y = G->label_at(std::int64_t(rng() % std::uint64_t(G->order())));
            auto ex = G->exponent_of(x), ey = G->exponent_of(y);
            std::vector<int> esum(ex.size());
            for (size_t j = 0; j < ex.size(); ++j)
                esum[j] = int((ex[j] + ey[j]) % G->orders()[j]);
            if (!(G->element(esum) == class_mul(x, y)))
                mismatch(out, "q=", sh.q, " l=", sh.l, " t=", sh.t,
                         " exponent map is not a homomorphism at pair #", rep);
        }

        // class of a product is independent of the representative degree
        for (int rep = 0; rep < 8; ++rep) {
            ClassLabel x = G->label_at(std::int64_t(rng() % std::uint64_t(G->order())));
            ClassLabel y = G->label_at(std::int64_t(rng() % std::uint64_t(G->order())));
            Poly fx = canonical_rep(x), fy = canonical_rep(y);
            auto lift = [&](const Poly& f) {
                const int d = f.degree() + 3;
                auto c = std::vector<FieldElement>(size_t(d) + 1, field->zero());
                c[size_t(d)] = field->one();
                for (int j = 1; j <= sh.l; ++j) c[size_t(d - j)] = f.coeff(f.degree() - j);
                for (int j = 0; j < sh.t; ++j) c[size_t(j)] = f.coeff(j);
                for (int j = sh.t; j <= d - 1 - sh.l; ++j)
                    c[size_t(j)] = field->element(std::int64_t(rng() % std::uint64_t(sh.q)));
                return Poly(field, c);
            };
            ClassLabel via_canon = class_of(poly_mul(fx, fy), sh.l, sh.t);
            ClassLabel via_lift = class_of(poly_mul(lift(fx), lift(fy)), sh.l, sh.t);
            if (!(via_canon == via_lift) || !(via_canon == class_mul(x, y)))
                mismatch(out, "q=", sh.q, " l=", sh.l, " t=", sh.t,
                         " product class depends on the representative at pair #", rep);
        }
    }

    // identity-class F value through the explicit product polynomial
    {
        auto field3 = FieldSpec::make(3);
        GroupPtr G = paper_basis_group(field3, 1, 2);
        auto eng = engine_for(G);
        CharPoly prod;
        prod.coeffs = {{1.0, 0.0}};
        for (std::int64_t li = 0; li < G->order(); ++li) {
            ClassLabel eps = G->label_at(li);
            if (eps == identity_label(field3, 1, 2)) continue;
            CharPoly P = eng->char_poly(eps);
            std::vector<std::complex<double>> c(prod.coeffs.size() + P.coeffs.size() - 1, 0.0);
            for (size_t i = 0; i < prod.coeffs.size(); ++i)
                for (size_t j = 0; j < P.coeffs.size(); ++j)
                    c[i + j] += prod.coeffs[i] * P.coeffs[j];
            prod.coeffs = std::move(c);
        }
        for (int n = 1; n <= max_n; ++n) {
            double via_product =
                (std::pow(3.0, n) - 1.0) / double(G->order()) -
                power_sum(prod, n).real() / double(G->order());
            double generic = F_value(G, n, identity_label(field3, 1, 2));
            if (std::abs(via_product - generic) > 1e-6 * std::max(1.0, std::abs(generic)))
                mismatch(out, "q=3 n=", n, " identity F via product polynomial ", via_product,
                         " vs generic ", generic);
        }
    }

    // basis invariance: default and published bases give identical counts
    {
        auto field3 = FieldSpec::make(3);
        auto field2 = FieldSpec::make(2);
        struct Pair {
            GroupPtr a, b;
            std::int64_t q;
        };
        const Pair pairs[] = {
            {cached_group(field3, 1, 2), paper_basis_group(field3, 1, 2), 3},
            {cached_group(field2, 2, 3), paper_basis_group(field2, 2, 3), 2},
        };
        for (const Pair& pr : pairs) {
            auto ea = engine_for(pr.a), eb = engine_for(pr.b);
            for (int n = 1; n <= std::min(max_n, 12); ++n)
                for (std::int64_t li = 0; li < pr.a->order(); ++li) {
                    ClassLabel eps = pr.a->label_at(li);
                    std::int64_t va = ea->I_count(n, eps).count;
                    std::int64_t vb = eb->I_count(n, eps).count;
                    if (va != vb)
                        mismatch(out, "q=", pr.q, " n=", n, " label#", li,
                                 " I_count depends on the basis: ", va, " vs ", vb);
                }
        }
    }

    // phi/psi round trips on random windows
    for (std::int64_t q : {2, 3, 5}) {
        auto field = FieldSpec::make(q);
        for (int l = 1; l <= 5; ++l) {
            for (int rep = 0; rep < 8; ++rep) {
                const int d = 9 + int(rng() % 8);
                auto g = std::vector<FieldElement>(size_t(l));
                auto b = std::vector<FieldElement>(size_t(l) + 1);
                for (auto& e : g) e = field->element(std::int64_t(rng() % std::uint64_t(q)));
                b[0] = field->element(1 + std::int64_t(rng() % std::uint64_t(q - 1)));
                for (int i = 1; i <= l; ++i)
                    b[size_t(i)] = field->element(std::int64_t(rng() % std::uint64_t(q)));
                if (phi_inverse(field, d, phi_map(field, d, g)) != g)
                    mismatch(out, "q=", q, " l=", l, " d=", d, " phi round trip failed");
                if (psi_inverse(field, b, psi_map(field, b, g)) != g)
                    mismatch(out, "q=", q, " l=", l, " psi round trip failed");
            }
        }
    }

    // sandwich and interval containment for computed counts
    for (std::int64_t q : {2, 3}) {
        auto field = FieldSpec::make(q);
        for (int n = 2; n <= std::min(max_n, 14); ++n) {
            for (int l = 1; 2 * l <= n && l <= 2; ++l) {
                GroupPtr G0 = cached_group(field, l, 0);
                GroupPtr G1 = cached_group(field, l, l + 1);
                auto e0 = engine_for(G0), e1 = engine_for(G1);
                std::uint64_t cvecs = 1;
                for (int i = 0; i < l; ++i) cvecs *= std::uint64_t(q);
                for (std::uint64_t ci = 0; ci < cvecs; ++ci) {
                    auto c = std::vector<FieldElement>(size_t(l));
                    std::uint64_t v = ci;
                    for (int i = 0; i < l; ++i) {
                        c[size_t(i)] = field->element(std::int64_t(v % std::uint64_t(q)));
                        v /= std::uint64_t(q);
                    }
                    std::int64_t s = S_count({field, n, c}).count;
                    std::int64_t upper =
                        e0->I_count(n, ClassLabel{field, phi_inverse(field, n, c), {}}).count;
                    std::int64_t bsum = 0;
                    auto b = std::vector<FieldElement>(size_t(l) + 1);
                    for (std::int64_t b0 = 1; b0 < q; ++b0) {
                        b[0] = field->element(b0);
                        std::uint64_t bvar = 1;
                        for (int i = 0; i < l; ++i) bvar *= std::uint64_t(q);
                        for (std::uint64_t bi = 0; bi < bvar; ++bi) {
                            std::uint64_t w = bi;
                            for (int i = 1; i <= l; ++i) {
                                b[size_t(i)] = field->element(std::int64_t(w % std::uint64_t(q)));
                                w /= std::uint64_t(q);
                            }
                            bsum += e1->I_count(n, ClassLabel{field, psi_inverse(field, b, c), b})
                                        .count;
                        }
                    }
                    // 2*lower <= 2*S <= 2*upper avoids the half-integer
                    if (!(2 * s <= 2 * upper && 2 * s >= 2 * upper - bsum))
                        mismatch(out, "q=", q, " n=", n, " l=", l, " c#", ci,
                                 " sandwich violated: S=", s, " I=", upper, " bsum=", bsum);
                    BoundsReport rep = bounds(*field, n, l);
                    if (!(double(s) > rep.lower && double(s) < rep.upper))
                        mismatch(out, "q=", q, " n=", n, " l=", l, " c#", ci,
                                 " interval violated: S=", s, " (", rep.lower, ", ", rep.upper,
                                 ")");
                }
            }
        }
    }
    return out;
}

}  // namespace palcount::verify
