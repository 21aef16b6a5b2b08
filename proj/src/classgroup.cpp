#include "palcount/classgroup.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "palcount/errors.hpp"

namespace palcount {

namespace {

constexpr std::int64_t kMaxGroupOrder = 1'000'000;

std::int64_t group_order(const FieldSpec& F, int l, int t) {
    std::int64_t e = F.q() - (t > 0 ? 1 : 0);
    for (int i = 0; i < l + t - 1; ++i) {
        e *= F.q();
        if (e > kMaxGroupOrder) throw guard_error("class group too large to enumerate");
    }
    return e;
}

void require_label(const ClassLabel& a) {
    if (a.t() > 0 && a.ending[0].v == 0)
        throw std::invalid_argument("class label requires a nonzero norm when t > 0");
}

void require_compatible(const ClassLabel& a, const ClassLabel& b) {
    if (!(*a.field == *b.field) || a.ell() != b.ell() || a.t() != b.t())
        throw std::invalid_argument("mismatched class-label parameters");
}

}  // namespace

ClassLabel identity_label(FieldPtr field, int l, int t) {
    ClassLabel e;
    e.leading.assign(size_t(l), field->zero());
    e.ending.assign(size_t(t), field->zero());
    if (t > 0) e.ending[0] = field->one();
    e.field = std::move(field);
    return e;
}

ClassLabel class_of(const Poly& f, int l, int t) {
    if (!f.is_monic() || f.degree() < 1)
        throw std::invalid_argument("class_of requires a monic polynomial of degree >= 1");
    if (t > 0 && f.coeff(0).v == 0)
        throw std::invalid_argument("class_of requires a nonzero constant term when t > 0");
    ClassLabel out;
    out.field = f.field_ptr();
    out.leading = leading_coeffs(f, l);
    out.ending = ending_coeffs(f, t);
    return out;
}

Poly canonical_rep(const ClassLabel& label) {
    require_label(label);
    const int l = label.ell(), t = label.t();
    const int d = l + t;
    auto c = std::vector<FieldElement>(size_t(d) + 1, FieldElement{0});
    c[size_t(d)] = label.field->one();
    for (int j = 1; j <= l; ++j) c[size_t(d - j)] = label.leading[size_t(j - 1)];
    for (int j = 0; j < t; ++j) c[size_t(j)] = label.ending[size_t(j)];
    return Poly(label.field, std::move(c));
}

ClassLabel class_mul(const ClassLabel& a, const ClassLabel& b) {
    require_compatible(a, b);
    require_label(a);
    require_label(b);
    const FieldSpec& F = *a.field;
    const int l = a.ell(), t = a.t();
    ClassLabel out;
    out.field = a.field;
    // leading windows multiply as 1 + a_1 z + ... truncated at z^l
    out.leading.assign(size_t(l), F.zero());
    for (int k = 1; k <= l; ++k) {
        FieldElement s = F.add(a.leading[size_t(k - 1)], b.leading[size_t(k - 1)]);
        for (int i = 1; i < k; ++i)
            s = F.add(s, F.mul(a.leading[size_t(i - 1)], b.leading[size_t(k - i - 1)]));
        out.leading[size_t(k - 1)] = s;
    }
    // ending windows multiply as truncated low-order products
    out.ending.assign(size_t(t), F.zero());
    for (int k = 0; k < t; ++k) {
        FieldElement s = F.zero();
        for (int i = 0; i <= k; ++i)
            s = F.add(s, F.mul(a.ending[size_t(i)], b.ending[size_t(k - i)]));
        out.ending[size_t(k)] = s;
    }
    return out;
}

ClassLabel class_pow(const ClassLabel& a, std::int64_t k) {
    if (k < 0) return class_pow(class_inv(a), -k);
    ClassLabel r = identity_label(a.field, a.ell(), a.t());
    ClassLabel base = a;
    while (k > 0) {
        if (k & 1) r = class_mul(r, base);
        base = class_mul(base, base);
        k >>= 1;
    }
    return r;
}

ClassLabel class_inv(const ClassLabel& a) {
    // |E| annihilates every element, so a^(|E|-1) inverts
    std::int64_t order = group_order(*a.field, a.ell(), a.t());
    return class_pow(a, order - 1);
}

std::int64_t GroupStructure::label_index(const ClassLabel& eps) const {
    if (!(*eps.field == *field_) || eps.ell() != l_ || eps.t() != t_)
        throw std::invalid_argument("label does not belong to this group");
    require_label(eps);
    const std::int64_t q = field_->q();
    std::int64_t idx = 0;
    for (int j = 0; j < l_; ++j) idx = idx * q + eps.leading[size_t(j)].v;
    if (t_ > 0) {
        idx = idx * (q - 1) + (eps.ending[0].v - 1);
        for (int j = 1; j < t_; ++j) idx = idx * q + eps.ending[size_t(j)].v;
    }
    return idx;
}

ClassLabel GroupStructure::label_at(std::int64_t index) const {
    if (index < 0 || index >= order_) throw std::invalid_argument("label index out of range");
    const std::int64_t q = field_->q();
    ClassLabel out = identity_label(field_, l_, t_);
    if (t_ > 0) {
        for (int j = t_ - 1; j >= 1; --j) {
            out.ending[size_t(j)] = FieldElement{std::uint32_t(index % q)};
            index /= q;
        }
        out.ending[0] = FieldElement{std::uint32_t(index % (q - 1) + 1)};
        index /= (q - 1);
    }
    for (int j = l_ - 1; j >= 0; --j) {
        out.leading[size_t(j)] = FieldElement{std::uint32_t(index % q)};
        index /= q;
    }
    return out;
}

std::int64_t GroupStructure::exp_index(std::span<const int> exponents) const {
    if (int(exponents.size()) != rank()) throw std::invalid_argument("wrong exponent rank");
    std::int64_t idx = 0;
    for (size_t j = 0; j < exponents.size(); ++j) {
        int e = exponents[j];
        if (e < 0 || e >= orders_[j]) throw std::invalid_argument("exponent out of range");
        idx += e * strides_[j];
    }
    return idx;
}

std::vector<int> GroupStructure::exponents_at(std::int64_t exp_index) const {
    auto out = std::vector<int>(size_t(rank()));
    for (size_t j = 0; j < out.size(); ++j)
        out[j] = int(exp_index / strides_[j] % orders_[j]);
    return out;
}

std::vector<int> GroupStructure::exponent_of(const ClassLabel& eps) const {
    return exponents_at(exp_of_label_[size_t(label_index(eps))]);
}

ClassLabel GroupStructure::element(std::span<const int> exponents) const {
    return label_at(label_of_exp_[size_t(exp_index(exponents))]);
}

std::vector<std::int64_t> GroupStructure::degree_class_exp_indexes(int d) const {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    std::vector<std::int64_t> out;
    if (d >= l_ + t_) {
        out.resize(size_t(order_));
        std::iota(out.begin(), out.end(), 0);
        return out;
    }
    const std::int64_t q = field_->q();
    auto c = std::vector<FieldElement>(size_t(d) + 1, FieldElement{0});
    c[size_t(d)] = field_->one();
    std::int64_t total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    auto seen = std::vector<char>(size_t(order_), 0);
    for (std::int64_t it = 0; it < total; ++it) {
        std::int64_t v = it;
        for (int j = 0; j < d; ++j) {
            c[size_t(j)] = FieldElement{std::uint32_t(v % q)};
            v /= q;
        }
        if (t_ > 0 && c[0].v == 0) continue;
        std::int64_t li = label_index(class_of(Poly(field_, c), l_, t_));
        std::int64_t ei = exp_of_label_[size_t(li)];
        if (!seen[size_t(ei)]) {
            seen[size_t(ei)] = 1;
            out.push_back(ei);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ClassLabel> GroupStructure::classes_of_degree(int d) const {
    std::vector<ClassLabel> out;
    for (std::int64_t ei : degree_class_exp_indexes(d))
        out.push_back(label_at(label_of_exp_[size_t(ei)]));
    return out;
}

namespace {

std::int64_t element_order(const ClassLabel& x) {
    ClassLabel id = identity_label(x.field, x.ell(), x.t());
    std::int64_t o = 1;
    ClassLabel y = x;
    while (!(y == id)) {
        y = class_mul(y, x);
        ++o;
    }
    return o;
}

}  // namespace

GroupPtr decompose(FieldPtr field, int l, int t,
                   const std::optional<std::vector<Poly>>& generator_override) {
    if (l < 0 || t < 0 || l + t < 1) throw std::invalid_argument("need l + t >= 1");
    auto G = std::shared_ptr<GroupStructure>(new GroupStructure());
    G->field_ = field;
    G->l_ = l;
    G->t_ = t;
    G->order_ = group_order(*field, l, t);

    std::vector<ClassLabel> gens;
    std::vector<std::int64_t> orders;

    if (generator_override) {
        for (const Poly& g : *generator_override) {
            gens.push_back(class_of(g, l, t));
            orders.push_back(element_order(gens.back()));
        }
        std::int64_t prod = 1;
        for (std::int64_t r : orders) prod *= r;
        if (prod != G->order_)
            throw std::invalid_argument("override generators do not decompose the group");
    } else {
        // split |E| into char-p part and coprime part, build a greedy basis
        // inside each by repeatedly taking a maximal-order element of the
        // quotient (first in label order among candidates of that order)
        const std::int64_t p = field->p();
        std::int64_t p_part = 1, rest = G->order_;
        while (rest % p == 0) {
            rest /= p;
            p_part *= p;
        }
        for (std::int64_t comp_size : {p_part, rest}) {
            if (comp_size == 1) continue;
            std::int64_t cof = G->order_ / comp_size;
            // project every element into the component and dedupe
            auto in_comp = std::vector<char>(size_t(G->order_), 0);
            std::vector<std::int64_t> comp;
            for (std::int64_t li = 0; li < G->order_; ++li) {
                ClassLabel proj = class_pow(G->label_at(li), cof);
                std::int64_t pi = G->label_index(proj);
                if (!in_comp[size_t(pi)]) {
                    in_comp[size_t(pi)] = 1;
                    comp.push_back(pi);
                }
            }
            std::sort(comp.begin(), comp.end());
            if (std::int64_t(comp.size()) != comp_size)
                throw std::logic_error("component projection size mismatch");

            std::unordered_set<std::int64_t> cur{G->label_index(identity_label(field, l, t))};
            std::vector<std::int64_t> cur_list(cur.begin(), cur.end());
            while (std::int64_t(cur.size()) < comp_size) {
                std::int64_t best_ord = 0;
                ClassLabel best = identity_label(field, l, t);
                for (std::int64_t li : comp) {
                    if (cur.count(li)) continue;
                    ClassLabel x = G->label_at(li);
                    std::int64_t ord = element_order(x);
                    if (ord <= best_ord) continue;
                    // direct factor: no positive power below ord may fall in
                    // the subgroup built so far
                    bool direct = true;
                    ClassLabel y = x;
                    for (std::int64_t k = 1; k < ord; ++k) {
                        if (cur.count(G->label_index(y))) {
                            direct = false;
                            break;
                        }
                        y = class_mul(y, x);
                    }
                    if (direct) {
                        best_ord = ord;
                        best = x;
                    }
                }
                if (best_ord == 0) throw std::logic_error("greedy basis search stalled");
                gens.push_back(best);
                orders.push_back(best_ord);
                std::vector<std::int64_t> extended = cur_list;
                ClassLabel y = best;
                for (std::int64_t k = 1; k < best_ord; ++k) {
                    for (std::int64_t hi : cur_list) {
                        ClassLabel z = class_mul(G->label_at(hi), y);
                        extended.push_back(G->label_index(z));
                    }
                    y = class_mul(y, best);
                }
                cur.clear();
                cur.insert(extended.begin(), extended.end());
                cur_list.assign(cur.begin(), cur.end());
                if (std::int64_t(cur.size()) != std::int64_t(extended.size()))
                    throw std::logic_error("subgroup extension collided");
            }
        }
    }

    G->generators_ = gens;
    G->orders_ = orders;
    G->strides_.assign(orders.size(), 1);
    for (size_t j = orders.size(); j-- > 1;)
        G->strides_[j - 1] = G->strides_[j] * orders[j];

    // materialize the exponent bijection
    G->exp_of_label_.assign(size_t(G->order_), -1);
    G->label_of_exp_.assign(size_t(G->order_), -1);
    std::vector<int> exps(orders.size(), 0);
    ClassLabel acc = identity_label(field, l, t);
    std::int64_t filled = 0;
    std::function<void(size_t, const ClassLabel&)> walk = [&](size_t axis, const ClassLabel& sofar) {
        if (axis == orders.size()) {
            std::int64_t li = G->label_index(sofar);
            std::int64_t ei = 0;
            for (size_t j = 0; j < exps.size(); ++j) ei += exps[j] * G->strides_[j];
            if (G->exp_of_label_[size_t(li)] != -1)
                throw std::invalid_argument("generators are not independent");
            G->exp_of_label_[size_t(li)] = ei;
            G->label_of_exp_[size_t(ei)] = li;
            ++filled;
            return;
        }
        ClassLabel step = sofar;
        for (int e = 0; e < orders[axis]; ++e) {
            exps[axis] = e;
            walk(axis + 1, step);
            step = class_mul(step, gens[axis]);
        }
    };
    walk(0, acc);
    if (filled != G->order_) throw std::invalid_argument("generators fail to generate the group");
    return G;
}

namespace {

// inverse of a mod m, gcd(a, m) == 1
std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = a % m, r = m;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = r;
        r = old_r - q * r;
        old_r = tmp;
        tmp = s;
        s = old_s - q * s;
        old_s = tmp;
    }
    return ((old_s % m) + m) % m;
}

}  // namespace

std::vector<std::int64_t> pow_preimages(const GroupStructure& G, std::int64_t k,
                                        std::span<const int> eps_exponents) {
    if (int(eps_exponents.size()) != G.rank()) throw std::invalid_argument("wrong exponent rank");
    if (k < 0) throw std::invalid_argument("power must be nonnegative");
    std::vector<std::vector<std::int64_t>> axes;
    for (int j = 0; j < G.rank(); ++j) {
        // k*x == e (mod r): gcd(k,r) solutions when gcd(k,r) | e, none otherwise
        std::int64_t r = G.orders()[size_t(j)];
        std::int64_t e = eps_exponents[size_t(j)];
        std::int64_t kr = k % r;
        std::int64_t g = std::gcd(kr, r);  // gcd(0, r) == r
        if (e % g != 0) return {};
        std::int64_t rr = r / g;
        std::int64_t x0 = rr > 1 ? (e / g) % rr * mod_inverse((kr / g) % rr, rr) % rr : 0;
        std::vector<std::int64_t> sols;
        sols.reserve(size_t(g));
        for (std::int64_t i = 0; i < g; ++i) sols.push_back(x0 + i * rr);
        axes.push_back(std::move(sols));
    }
    std::vector<std::int64_t> out{0};
    for (int j = 0; j < G.rank(); ++j) {
        std::vector<std::int64_t> next;
        next.reserve(out.size() * axes[size_t(j)].size());
        for (std::int64_t base : out)
            for (std::int64_t x : axes[size_t(j)]) next.push_back(base + x * G.stride(j));
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::int64_t> pow_preimages_scan(const GroupStructure& G, std::int64_t k,
                                             const ClassLabel& eps) {
    std::vector<std::int64_t> out;
    for (std::int64_t li = 0; li < G.order(); ++li) {
        ClassLabel d = G.label_at(li);
        if (class_pow(d, k) == eps) out.push_back(G.exp_index_of_label_index(li));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace palcount
