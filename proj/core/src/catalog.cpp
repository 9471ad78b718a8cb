#include "qh/catalog.hpp"

#include <algorithm>
#include <map>

namespace qh {

namespace {

SparseVec term(int idx, Laurent c = Laurent::one()) { return SparseVec{{idx, std::move(c)}}; }

} // namespace

RingPtr cp_ambient(int n, int maslov) {
    if (n < 1) throw bad_parameters("cp_ambient needs n >= 1");
    if (maslov < 2 || (2 * n + 2) % maslov != 0)
        throw bad_parameters("cp_ambient needs N_L >= 2 dividing 2n+2");
    RingSpecBuilder builder;
    builder.name = "cp" + std::to_string(n);
    builder.kind = RingKind::Ambient;
    builder.dim = n;
    builder.context = MonotoneContext(maslov, n + 1, Rational(1, 2));
    for (int j = 0; j <= n; ++j) builder.add_basis("h" + std::to_string(j), 2 * n - 2 * j);
    builder.unit_id = "h0";
    const int wrap = (2 * n + 2) / maslov;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            if (i + j <= n)
                builder.set_product(i, j, term(i + j));
            else
                builder.set_product(i, j, term(i + j - n - 1, Laurent::monomial(wrap)));
        }
    return builder.build();
}

RingPtr cp_gamma(int n) {
    if (n < 1) throw bad_parameters("cp_gamma needs n >= 1");
    RingSpecBuilder builder;
    builder.name = "cp" + std::to_string(n) + "_gamma";
    builder.kind = RingKind::Ambient;
    builder.dim = n;
    builder.variable = CoeffVariable::S;
    builder.context = MonotoneContext(2 * n + 2, n + 1, Rational(1, 2));
    for (int j = 0; j <= n; ++j) builder.add_basis("h" + std::to_string(j), 2 * n - 2 * j);
    builder.unit_id = "h0";
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            if (i + j <= n)
                builder.set_product(i, j, term(i + j));
            else
                builder.set_product(i, j, term(i + j - n - 1, Laurent::monomial(1)));
        }
    return builder.build();
}

RingPtr quadric_ambient(int k, Parity parity) {
    if (k < 1) throw bad_parameters("quadric_ambient needs k >= 1");
    if ((k % 2 == 1) != (parity == Parity::Odd))
        throw bad_parameters("parity flag disagrees with k");
    const int n = 2 * k;
    RingSpecBuilder builder;
    builder.name = "quadric" + std::to_string(n);
    builder.kind = RingKind::Ambient;
    builder.dim = n;
    builder.context = MonotoneContext(2 * n, n, Rational(1, 2));

    // Basis by descending degree: u, x_1..x_{k-1}, a, b, y_{k+1}..y_{2k-1}, p.
    builder.add_basis("u", 2 * n);
    for (int i = 1; i <= k - 1; ++i) builder.add_basis("x" + std::to_string(i), 2 * n - 2 * i);
    builder.add_basis("a", n);
    builder.add_basis("b", n);
    for (int j = k + 1; j <= 2 * k - 1; ++j) builder.add_basis("y" + std::to_string(j), 2 * n - 2 * j);
    builder.add_basis("p", 0);

    const auto X = [&](int i) { return i; };
    const int A = k, B = k + 1;
    const auto Y = [&](int j) { return j + 1; };
    const int P = 2 * k + 1;
    const Laurent t1 = Laurent::monomial(1);
    const bool odd = k % 2 == 1;

    builder.unit_id = "u";
    for (int i = 1; i <= k - 1; ++i)
        for (int j = i; j <= k - 1; ++j) {
            if (i + j <= k - 1)
                builder.set_product(X(i), X(j), term(X(i + j)));
            else if (i + j == k)
                builder.set_product(X(i), X(j), {{A, Laurent::one()}, {B, Laurent::one()}});
            else
                builder.set_product(X(i), X(j), {});
        }
    for (int i = 1; i <= k - 1; ++i) {
        builder.set_product(X(i), A, term(Y(k + i)));
        builder.set_product(X(i), B, term(Y(k + i)));
        for (int j = k + 1; j <= 2 * k - 1; ++j) {
            const int s = i + j;
            if (s <= 2 * k - 1)
                builder.set_product(X(i), Y(j), term(Y(s)));
            else if (s == 2 * k)
                builder.set_product(X(i), Y(j), {{0, t1}, {P, Laurent::one()}});
            else
                builder.set_product(X(i), Y(j), {});
        }
        builder.set_product(X(i), P, term(X(i), t1));
    }
    builder.set_product(A, A, odd ? term(0, t1) : term(P));
    builder.set_product(B, B, odd ? term(0, t1) : term(P));
    builder.set_product(A, B, odd ? term(P) : term(0, t1));
    for (int j = k + 1; j <= 2 * k - 1; ++j) {
        builder.set_product(A, Y(j), term(X(j - k), t1));
        builder.set_product(B, Y(j), term(X(j - k), t1));
    }
    builder.set_product(A, P, term(B, t1));
    builder.set_product(B, P, term(A, t1));
    for (int i = k + 1; i <= 2 * k - 1; ++i)
        for (int j = i; j <= 2 * k - 1; ++j) {
            const int sigma = i + j - 2 * k;
            if (sigma <= k - 1)
                builder.set_product(Y(i), Y(j), term(X(sigma), t1));
            else if (sigma == k)
                builder.set_product(Y(i), Y(j), {{A, t1}, {B, t1}});
            else
                builder.set_product(Y(i), Y(j), {});
        }
    for (int j = k + 1; j <= 2 * k - 1; ++j) builder.set_product(Y(j), P, term(Y(j), t1));
    builder.set_product(P, P, term(0, Laurent::monomial(2)));
    return builder.build();
}

namespace {

// Clifford-algebra normal form for torus generators: words in t_1..t_n reduce
// by t_i t_i -> t and t_j t_i -> t_i t_j + t (i < j). Monomials are subsets;
// each reduction drops a pair of letters and raises the t-exponent.
struct CliffordWords {
    int n;
    // (subset, t-exponent) pairs with Z2 multiplicity.
    using Terms = std::vector<std::pair<unsigned, int>>;
    std::map<std::pair<unsigned, int>, Terms> memo;

    Terms mul_gen(unsigned mask, int gen) {
        const auto key = std::make_pair(mask, gen);
        auto found = memo.find(key);
        if (found != memo.end()) return found->second;
        Terms out;
        if (mask == 0 || gen > top_bit(mask)) {
            out.push_back({mask | (1u << gen), 0});
        } else {
            const int m = top_bit(mask);
            const unsigned rest = mask & ~(1u << m);
            if (gen == m) {
                out.push_back({rest, 1});
            } else {
                for (auto [sub, e] : mul_gen(rest, gen)) out.push_back({sub | (1u << m), e});
                out.push_back({rest, 1});
            }
        }
        memo[key] = out;
        return out;
    }

    Terms mul(unsigned lhs, unsigned rhs) {
        Terms acc{{lhs, 0}};
        for (int g = 0; g < n; ++g) {
            if (!(rhs & (1u << g))) continue;
            std::map<std::pair<unsigned, int>, int> next;
            for (auto [sub, e] : acc)
                for (auto [sub2, e2] : mul_gen(sub, g)) next[{sub2, e + e2}] ^= 1;
            acc.clear();
            for (auto& [key, parity] : next)
                if (parity) acc.push_back(key);
        }
        return acc;
    }

    static int top_bit(unsigned mask) {
        int b = -1;
        while (mask) {
            ++b;
            mask >>= 1;
        }
        return b;
    }
};

std::string torus_class_id(unsigned mask) {
    if (mask == 0) return "T";
    std::string id = "t";
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i)) id += std::to_string(i + 1);
    return id;
}

} // namespace

RingPtr clifford_lqh(int n) {
    if (n < 1 || n > 9) throw bad_parameters("clifford_lqh supports 1 <= n <= 9");
    RingSpecBuilder builder;
    builder.name = n == 1 ? "equator" : "clifford" + std::to_string(n);
    builder.kind = RingKind::Lagrangian;
    builder.dim = n;
    builder.context = MonotoneContext(2, n + 1, Rational(1, 2));
    builder.commutative = n == 1;
    const unsigned count = 1u << n;
    for (unsigned mask = 0; mask < count; ++mask)
        builder.add_basis(torus_class_id(mask), n - __builtin_popcount(mask));
    builder.unit_id = "T";

    CliffordWords words{n, {}};
    for (unsigned lhs = 0; lhs < count; ++lhs)
        for (unsigned rhs = 0; rhs < count; ++rhs) {
            if (lhs == 0 || rhs == 0) continue;
            SparseVec value;
            for (auto [mask, e] : words.mul(lhs, rhs))
                value.emplace_back(static_cast<int>(mask), Laurent::monomial(e));
            builder.set_product(static_cast<int>(lhs), static_cast<int>(rhs), std::move(value));
        }
    return builder.build();
}

RingPtr rp_lqh(int n) {
    if (n < 1) throw bad_parameters("rp_lqh needs n >= 1");
    RingSpecBuilder builder;
    builder.name = "rp" + std::to_string(n);
    builder.kind = RingKind::Lagrangian;
    builder.dim = n;
    builder.context = MonotoneContext(n + 1, n + 1, Rational(1, 2));
    builder.add_basis("L", n);
    for (int j = 1; j <= n; ++j) builder.add_basis("x" + std::to_string(j), n - j);
    builder.unit_id = "L";
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            if (i + j <= n)
                builder.set_product(i, j, term(i + j));
            else
                builder.set_product(i, j, term(i + j - n - 1, Laurent::monomial(1)));
        }
    return builder.build();
}

RingPtr singular_ring(SingularSpace space, int n) {
    if (n < 1) throw bad_parameters("singular_ring needs n >= 1");
    RingSpecBuilder builder;
    builder.kind = RingKind::Lagrangian;
    builder.dim = n;
    builder.context = MonotoneContext(kInfiniteMaslov, 1, Rational(1));
    switch (space) {
        case SingularSpace::RPn: {
            builder.name = "rp" + std::to_string(n) + "_classical";
            builder.add_basis("L", n);
            for (int j = 1; j <= n; ++j) builder.add_basis("x" + std::to_string(j), n - j);
            builder.unit_id = "L";
            for (int i = 1; i <= n; ++i)
                for (int j = i; j <= n; ++j)
                    builder.set_product(i, j, i + j <= n ? term(i + j) : SparseVec{});
            break;
        }
        case SingularSpace::Torus: {
            if (n > 9) throw bad_parameters("torus ring supports n <= 9");
            builder.name = "torus" + std::to_string(n);
            const unsigned count = 1u << n;
            for (unsigned mask = 0; mask < count; ++mask)
                builder.add_basis(torus_class_id(mask), n - __builtin_popcount(mask));
            builder.unit_id = "T";
            for (unsigned lhs = 1; lhs < count; ++lhs)
                for (unsigned rhs = lhs; rhs < count; ++rhs) {
                    SparseVec value;
                    if ((lhs & rhs) == 0) value = term(static_cast<int>(lhs | rhs));
                    builder.set_product(static_cast<int>(lhs), static_cast<int>(rhs),
                                        std::move(value));
                }
            break;
        }
        case SingularSpace::Sphere: {
            builder.name = "sphere" + std::to_string(n);
            builder.add_basis("S", n);
            builder.add_basis("pt", 0);
            builder.unit_id = "S";
            builder.set_product(1, 1, {});
            break;
        }
    }
    return builder.build();
}

RingPtr point_ring() {
    RingSpecBuilder builder;
    builder.name = "point";
    builder.kind = RingKind::Ambient;
    builder.dim = 0;
    builder.context = MonotoneContext(kInfiniteMaslov, 1, Rational(1));
    builder.add_basis("P", 0);
    builder.unit_id = "P";
    return builder.build();
}

RingPtr product_with_aspherical(const RingPtr& m, const RingPtr& p) {
    if (!m || m->kind != RingKind::Ambient)
        throw bad_parameters("product_with_aspherical needs an ambient first factor");
    if (!p) throw bad_parameters("missing aspherical factor");
    if (p->top_degree() % 2 != 0)
        throw bad_parameters("aspherical factor must have even top degree");
    const int pb = static_cast<int>(p->basis_size());
    for (int i = 0; i < pb; ++i)
        for (int j = 0; j < pb; ++j)
            for (const auto& [idx, c] : p->constant(i, j)) {
                (void)idx;
                if (!(c == Laurent::one()))
                    throw bad_parameters("aspherical factor carries quantum terms");
            }

    RingSpecBuilder builder;
    builder.name = m->name + "_x_" + p->name;
    builder.kind = RingKind::Ambient;
    builder.dim = m->dim + p->top_degree() / 2;
    builder.context = m->context;
    builder.variable = m->variable;
    builder.commutative = m->commutative && p->commutative;
    const int mb = static_cast<int>(m->basis_size());
    for (int i = 0; i < mb; ++i)
        for (int x = 0; x < pb; ++x)
            builder.add_basis(m->basis[i].id + "|" + p->basis[x].id,
                              m->basis[i].degree + p->basis[x].degree);
    builder.unit_id = m->basis[m->unit].id + "|" + p->basis[p->unit].id;
    const auto at = [&](int i, int x) { return i * pb + x; };
    for (int i = 0; i < mb; ++i)
        for (int x = 0; x < pb; ++x)
            for (int j = 0; j < mb; ++j)
                for (int y = 0; y < pb; ++y) {
                    SparseVec value;
                    const SparseVec& factor = p->constant(x, y);
                    for (const auto& [bm, cm] : m->constant(i, j))
                        for (const auto& [bp, cp] : factor) {
                            (void)cp;
                            value.emplace_back(at(bm, bp), cm);
                        }
                    builder.set_product(at(i, x), at(j, y), std::move(value));
                }
    return builder.build();
}

std::vector<CatalogEntry> catalog_entries() {
    return {
        {"cp", "<n> [--maslov N]", "QH(CP^n, Lambda); N_L defaults to n+1"},
        {"cp_gamma", "<n>", "QH(CP^n) over Gamma, s-wrap at h^{n+1}"},
        {"quadric", "<k>", "QH(Q^{2k}, Lambda), middle classes a, b"},
        {"clifford", "<n>", "Lagrangian QH of the Clifford torus in CP^n"},
        {"equator", "", "clifford with n = 1 (equator in S^2)"},
        {"rp", "<n>", "Lagrangian QH of RP^n in CP^n"},
        {"rp_classical", "<n>", "classical Z2 intersection ring of RP^n"},
        {"torus", "<n>", "classical Z2 intersection ring of T^n"},
        {"sphere", "<n>", "classical Z2 intersection ring of S^n"},
        {"point", "", "one-point classical ring"},
    };
}

RingPtr catalog_build(const std::string& key, int n, std::optional<int> maslov) {
    if (key == "cp") return cp_ambient(n, maslov.value_or(n + 1));
    if (key == "cp_gamma") return cp_gamma(n);
    if (key == "quadric") return quadric_ambient(n, n % 2 == 1 ? Parity::Odd : Parity::Even);
    if (key == "clifford") return clifford_lqh(n);
    if (key == "equator") return clifford_lqh(1);
    if (key == "rp") return rp_lqh(n);
    if (key == "rp_classical") return singular_ring(SingularSpace::RPn, n);
    if (key == "torus") return singular_ring(SingularSpace::Torus, n);
    if (key == "sphere") return singular_ring(SingularSpace::Sphere, n);
    if (key == "point") return point_ring();
    throw bad_parameters("unknown catalog key '" + key + "'");
}

} // namespace qh
