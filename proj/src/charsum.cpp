#include "palcount/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "internal.hpp"
#include "palcount/errors.hpp"

namespace palcount {

using detail::int128;

int mobius(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("mobius requires k >= 1");
    int sign = 1;
    for (std::uint64_t d = 2; d * d <= k; ++d) {
        if (k % d == 0) {
            k /= d;
            if (k % d == 0) return 0;
            sign = -sign;
        }
    }
    if (k > 1) sign = -sign;
    return sign;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("divisors requires n >= 1");
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::complex<double> power_sum(const CharPoly& P, int n) {
    if (n < 1) throw std::invalid_argument("power_sum requires n >= 1");
    if (P.coeffs.empty() || P.coeffs[0] != std::complex<double>(1.0, 0.0))
        throw std::invalid_argument("power_sum requires constant term 1");
    auto p = std::vector<std::complex<double>>(size_t(n));
    for (int k = 1; k <= n; ++k) {
        std::complex<double> ck = k <= P.degree() ? P.coeffs[size_t(k)] : 0.0;
        std::complex<double> s = -double(k) * ck;
        for (int j = 1; j < k && j <= P.degree(); ++j)
            s -= P.coeffs[size_t(j)] * p[size_t(k - j - 1)];
        p[size_t(k - 1)] = s;
    }
    return p[size_t(n - 1)];
}

// ---------------------------------------------------------------------------

struct CharsumEngine::Impl {
    GroupPtr G;
    std::int64_t E;
    int rank;
    std::vector<std::int64_t> orders;
    // roots[j][k] = exp(2 pi i k / r_j)
    std::vector<std::vector<std::complex<double>>> roots;
    // cvec[d-1][exp index] = c(d; element), d = 1..l+t-1
    std::vector<std::vector<std::complex<double>>> cvec;

    mutable std::mutex mu;
    // per-element Newton power sums p_1..p_m, grown on demand
    mutable std::vector<std::vector<std::complex<double>>> psums;
    // corr[m][exp index]: F(m; eps) minus its dominant term, real after the
    // reality check
    mutable std::map<int, std::vector<double>> corr;

    explicit Impl(GroupPtr group) : G(std::move(group)) {
        E = G->order();
        rank = G->rank();
        orders = G->orders();
        roots.resize(size_t(rank));
        for (int j = 0; j < rank; ++j) {
            auto& tab = roots[size_t(j)];
            tab.resize(size_t(orders[size_t(j)]));
            for (std::int64_t k = 0; k < orders[size_t(j)]; ++k) {
                double ang = 2.0 * std::numbers::pi * double(k) / double(orders[size_t(j)]);
                tab[size_t(k)] = {std::cos(ang), std::sin(ang)};
            }
        }
        const int window = G->ell() + G->t();
        cvec.resize(size_t(window - 1 >= 0 ? window - 1 : 0));
        for (int d = 1; d <= window - 1; ++d) {
            auto ind = std::vector<std::complex<double>>(size_t(E), 0.0);
            for (std::int64_t ei : G->degree_class_exp_indexes(d)) ind[size_t(ei)] = 1.0;
            cvec[size_t(d - 1)] = dft(std::move(ind), +1);
        }
        psums.resize(size_t(E));
    }

    // out(x) = sum_y prod_j omega_{r_j}^{sign x_j y_j} in(y), axis by axis
    std::vector<std::complex<double>> dft(std::vector<std::complex<double>> in, int sign) const {
        std::vector<std::complex<double>> out(in.size());
        std::vector<std::complex<double>> block;
        for (int j = 0; j < rank; ++j) {
            const std::int64_t r = orders[size_t(j)];
            const std::int64_t stride = G->stride(j);
            block.assign(size_t(r), 0.0);
            for (std::int64_t base = 0; base < E; ++base) {
                if ((base / stride) % r != 0) continue;
                for (std::int64_t x = 0; x < r; ++x) {
                    std::complex<double> s = 0.0;
                    for (std::int64_t y = 0; y < r; ++y) {
                        std::int64_t k = (sign > 0 ? x * y : (r - x % r) * y) % r;
                        s += roots[size_t(j)][size_t(k)] * in[size_t(base + y * stride)];
                    }
                    out[size_t(base + x * stride)] = s;
                }
            }
            std::swap(in, out);
        }
        return in;
    }

    std::complex<double> psum_at(std::int64_t ei, int n) const {
        auto& p = psums[size_t(ei)];
        if (int(p.size()) < n) {
            const int window = G->ell() + G->t();
            int from = int(p.size());
            p.resize(size_t(n));
            for (int k = from + 1; k <= n; ++k) {
                std::complex<double> ck =
                    (k <= window - 1) ? cvec[size_t(k - 1)][size_t(ei)] : 0.0;
                std::complex<double> s = -double(k) * ck;
                for (int j = 1; j < k && j <= window - 1; ++j)
                    s -= cvec[size_t(j - 1)][size_t(ei)] * p[size_t(k - j - 1)];
                p[size_t(k - 1)] = s;
            }
        }
        return p[size_t(n - 1)];
    }

    // locked: correction vector for one m: F(m;.) minus (q^m - [t>0])/|E|
    const std::vector<double>& corr_vector(int m) const {
        auto it = corr.find(m);
        if (it != corr.end()) return it->second;
        auto v = std::vector<std::complex<double>>(size_t(E), 0.0);
        const std::int64_t ident = G->exp_index(std::vector<int>(size_t(rank), 0));
        for (std::int64_t ei = 0; ei < E; ++ei) {
            if (ei == ident) continue;
            v[size_t(ei)] = psum_at(ei, m);
        }
        std::vector<std::complex<double>> w = dft(std::move(v), -1);
        auto out = std::vector<double>(size_t(E));
        const double tol = tolerance();
        for (std::int64_t ei = 0; ei < E; ++ei) {
            double im = std::abs(w[size_t(ei)].imag()) / double(E);
            if (im >= tol)
                throw integrality_error("F value has a non-vanishing imaginary part");
            out[size_t(ei)] = -w[size_t(ei)].real() / double(E);
        }
        return corr.emplace(m, std::move(out)).first->second;
    }

    void guard_exact_range(int n) const {
        double bits = double(n) * std::log2(double(G->field().q()));
        if (bits > 52.0)
            throw guard_error("q^n exceeds the float-exact range (q^n > 2^52)");
    }

    double F_by_exp(int n, std::int64_t ei) const {
        guard_exact_range(n);
        std::lock_guard<std::mutex> lock(mu);
        const std::vector<double>& c = corr_vector(n);
        int128 num = detail::pow_int128_checked(G->field().q(), n, "F_value") -
                     (G->t() > 0 ? 1 : 0);
        return double((long double)(num) / (long double)(E) + (long double)c[size_t(ei)]);
    }

    CountResult I_by_exp(int n, std::int64_t ei) const {
        guard_exact_range(n);
        std::lock_guard<std::mutex> lock(mu);
        const std::vector<int> eps = G->exponents_at(ei);
        const int tbit = G->t() > 0 ? 1 : 0;
        int128 exact = 0;
        long double float_part = 0.0L;
        for (std::uint64_t k : divisors(std::uint64_t(n))) {
            int mu_k = mobius(k);
            if (mu_k == 0) continue;
            auto sols = pow_preimages(*G, std::int64_t(k), eps);
            if (sols.empty()) continue;
            const int m = int(std::uint64_t(n) / k);
            exact += int128(mu_k) * int128(sols.size()) *
                     (detail::pow_int128_checked(G->field().q(), m, "I_count") - tbit);
            const std::vector<double>& c = corr_vector(m);
            long double part = 0.0L;
            for (std::int64_t di : sols) part += (long double)c[size_t(di)];
            float_part += mu_k > 0 ? part : -part;
        }
        long double val = (long double)(exact) / ((long double)(n) * (long double)(E)) +
                          float_part / (long double)(n);
        std::int64_t count = std::llround((double)val);
        double residual = std::abs((double)(val - (long double)count));
        if (residual >= tolerance())
            throw integrality_error("I_count residual exceeds the tolerance");
        if (count < 0) throw integrality_error("I_count produced a negative count");
        return {count, residual};
    }
};

CharsumEngine::CharsumEngine(GroupPtr G) : impl_(std::make_unique<Impl>(std::move(G))) {}
CharsumEngine::~CharsumEngine() = default;

const GroupStructure& CharsumEngine::group() const { return *impl_->G; }

std::complex<double> CharsumEngine::c_coeff(int d, const ClassLabel& eps) const {
    const int window = impl_->G->ell() + impl_->G->t();
    if (d < 1 || d > window - 1)
        throw std::invalid_argument("c_coeff requires 1 <= d <= l+t-1");
    std::int64_t ei = impl_->G->exp_index_of_label_index(impl_->G->label_index(eps));
    return impl_->cvec[size_t(d - 1)][size_t(ei)];
}

CharPoly CharsumEngine::char_poly(const ClassLabel& eps) const {
    const int window = impl_->G->ell() + impl_->G->t();
    std::int64_t ei = impl_->G->exp_index_of_label_index(impl_->G->label_index(eps));
    CharPoly P;
    P.coeffs.assign(1, {1.0, 0.0});
    for (int d = 1; d <= window - 1; ++d)
        P.coeffs.push_back(impl_->cvec[size_t(d - 1)][size_t(ei)]);
    return P;
}

double CharsumEngine::F_value(int n, const ClassLabel& eps) const {
    if (n < 1) throw std::invalid_argument("F_value requires n >= 1");
    return impl_->F_by_exp(n, impl_->G->exp_index_of_label_index(impl_->G->label_index(eps)));
}

double CharsumEngine::F_value_by_exp(int n, std::int64_t exp_index) const {
    if (n < 1) throw std::invalid_argument("F_value requires n >= 1");
    return impl_->F_by_exp(n, exp_index);
}

CountResult CharsumEngine::I_count(int n, const ClassLabel& eps) const {
    if (n < 1) throw std::invalid_argument("I_count requires n >= 1");
    return impl_->I_by_exp(n, impl_->G->exp_index_of_label_index(impl_->G->label_index(eps)));
}

CountResult CharsumEngine::I_count_by_exp(int n, std::int64_t exp_index) const {
    if (n < 1) throw std::invalid_argument("I_count requires n >= 1");
    return impl_->I_by_exp(n, exp_index);
}

std::shared_ptr<CharsumEngine> engine_for(const GroupPtr& G) {
    struct Entry {
        std::weak_ptr<const GroupStructure> guard;
        std::shared_ptr<CharsumEngine> engine;
    };
    static std::mutex mu;
    static std::unordered_map<const GroupStructure*, Entry> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(G.get());
    if (it != cache.end()) {
        if (auto live = it->second.guard.lock(); live == G) return it->second.engine;
        cache.erase(it);
    }
    auto engine = std::make_shared<CharsumEngine>(G);
    cache[G.get()] = Entry{G, engine};
    return engine;
}

std::complex<double> c_coeff(const GroupPtr& G, int d, const ClassLabel& eps) {
    return engine_for(G)->c_coeff(d, eps);
}
CharPoly char_poly(const GroupPtr& G, const ClassLabel& eps) {
    return engine_for(G)->char_poly(eps);
}
double F_value(const GroupPtr& G, int n, const ClassLabel& eps) {
    return engine_for(G)->F_value(n, eps);
}
CountResult I_count(const GroupPtr& G, int n, const ClassLabel& eps) {
    return engine_for(G)->I_count(n, eps);
}

CountResult I_total(const FieldSpec& spec, int n) {
    if (n < 1) throw std::invalid_argument("I_total requires n >= 1");
    int128 sum = 0;
    for (std::uint64_t d : divisors(std::uint64_t(n))) {
        int mu_d = mobius(d);
        if (mu_d == 0) continue;
        sum += int128(mu_d) * detail::pow_int128_checked(spec.q(), int(std::uint64_t(n) / d), "I_total");
    }
    return {detail::to_int64_checked(detail::div_exact(sum, n, "I_total"), "I_total"), 0.0};
}

CountResult I_trace(const FieldSpec& spec, int n, FieldElement c) {
    if (n < 1) throw std::invalid_argument("I_trace requires n >= 1");
    if (c.v >= spec.q()) throw std::invalid_argument("trace value out of range");
    const std::int64_t p = spec.p(), q = spec.q();
    int128 sum = 0;
    for (std::uint64_t j : divisors(std::uint64_t(n))) {
        int mu_j = mobius(j);
        if (mu_j == 0) continue;
        const bool p_divides = (j % std::uint64_t(p)) == 0;
        int128 weight = 0;
        if (c.v != 0) {
            weight = p_divides ? 0 : 1;
        } else {
            weight = 1 + (q - 1) * (p_divides ? 1 : 0);
        }
        if (weight == 0) continue;
        sum += int128(mu_j) * weight *
               detail::pow_int128_checked(q, int(std::uint64_t(n) / j), "I_trace");
    }
    return {detail::to_int64_checked(detail::div_exact(sum, int128(q) * n, "I_trace"), "I_trace"),
            0.0};
}

}  // namespace palcount
