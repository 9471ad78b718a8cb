#include "qh/factorization.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qh {

std::vector<std::string> FqfCertificate::factor_ids() const {
    std::vector<std::string> ids;
    ids.reserve(factors.size());
    for (int f : factors) ids.push_back(ring->basis[f].id);
    return ids;
}

bool fqf_factor_allowed(const RingSpec& ring, int basis_idx) {
    const int deg = ring.basis[basis_idx].degree;
    if (ring.kind == RingKind::Ambient) return deg < ring.top_degree();
    if (!ring.context.maslov_finite()) return deg < ring.dim;
    return deg > ring.dim - ring.context.maslov_min && deg < ring.dim;
}

int default_max_length(const RingSpec& ring) { return 2 * static_cast<int>(ring.basis_size()); }

namespace {

// A product equals unit * var^r exactly when it has a single unit component
// with a monomial coefficient.
std::optional<int> read_order(const RingSpec& ring, const ClassVector& value) {
    const auto& comps = value.components();
    if (comps.size() != 1 || comps[0].first != ring.unit) return std::nullopt;
    if (!comps[0].second.is_monomial()) return std::nullopt;
    const int r = comps[0].second.monomial_exponent();
    if (r < 1) return std::nullopt;
    return r;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

struct SearchState {
    const RingSpec& ring;
    int max_length;
    std::vector<int> candidates;  // admissible factor indices, ascending
    int min_codegree = 1;
    int var_step = 1;

    std::optional<FqfCertificate> best;
    std::vector<int> stack;
    std::map<SparseVec, int> interned;
    std::set<std::pair<int, int>> visited;  // (product id, depth)

    bool better_than_best(int score, int length, const std::vector<int>& factors) const {
        if (!best) return true;
        if (score != best->score) return score > best->score;
        if (length != best->length) return length < best->length;
        return factors < best->factors;
    }

    // Admissible bound on the score of any strict completion from a partial
    // product with the given length and spent codegree. Sum of factor
    // codegrees equals order * var_step for any finished factorization, so
    // the order of a completion with `extra` more factors is at least
    // ceil((spent + extra * min_codegree) / var_step).
    int score_bound(int length, int spent_codegree) const {
        int bound = 0;
        for (int extra = 1; length + extra <= max_length; ++extra) {
            const int total = spent_codegree + extra * min_codegree;
            const int order = std::max(1, ceil_div(total, var_step));
            bound = std::max(bound, ceil_div(length + extra, order));
        }
        return bound;
    }

    void dfs(const ClassVector& partial, int spent_codegree) {
        const int length = static_cast<int>(stack.size());
        if (length > 0) {
            if (const auto order = read_order(ring, partial)) {
                const int score = ceil_div(length, *order);
                if (better_than_best(score, length, stack)) {
                    best = FqfCertificate{nullptr, stack, *order, length, score};
                }
            }
        }
        if (length == max_length) return;

        const int optimistic = score_bound(length, spent_codegree);
        if (best) {
            if (optimistic < best->score) return;
            // Same-score completions are at least one factor longer; equal
            // lengths lose the lexicographic tie to the incumbent.
            if (optimistic == best->score && length + 1 >= best->length) return;
        }

        const auto interned_id = [&]() {
            auto [it, inserted] =
                interned.emplace(partial.components(), static_cast<int>(interned.size()));
            (void)inserted;
            return it->second;
        }();
        if (!visited.insert({interned_id, length}).second) return;

        const int lower = ring.commutative && !stack.empty() ? stack.back() : candidates.front();
        for (int f : candidates) {
            if (f < lower) continue;
            const ClassVector next = product(partial, ClassVector::basis_element(ring, f));
            if (next.is_zero()) continue;
            stack.push_back(f);
            dfs(next, spent_codegree + (ring.top_degree() - ring.basis[f].degree));
            stack.pop_back();
        }
    }
};

} // namespace

std::optional<FqfCertificate> find_best_fqf(const RingPtr& ring, int max_length) {
    if (!ring) throw bad_parameters("find_best_fqf needs a ring");
    if (max_length < 1) throw bad_parameters("max_length must be >= 1");

    SearchState state{*ring, max_length, {}, 1, 1, std::nullopt, {}, {}, {}};
    for (int i = 0; i < static_cast<int>(ring->basis_size()); ++i)
        if (fqf_factor_allowed(*ring, i)) state.candidates.push_back(i);
    if (state.candidates.empty()) return std::nullopt;
    // Factorizations need the coefficient variable, hence a finite grading
    // step for it.
    if (ring->variable == CoeffVariable::T && !ring->context.maslov_finite()) return std::nullopt;

    state.var_step = ring->variable_degree_step();
    state.min_codegree = ring->top_degree();
    for (int f : state.candidates)
        state.min_codegree = std::min(state.min_codegree, ring->top_degree() - ring->basis[f].degree);

    state.dfs(ClassVector::unit(*ring), 0);
    if (!state.best) return std::nullopt;
    state.best->ring = ring;
    return state.best;
}

bool verify_fqf(const FqfCertificate& cert) {
    if (!cert.ring || cert.factors.empty()) return false;
    if (cert.length != static_cast<int>(cert.factors.size())) return false;
    if (cert.order < 1) return false;
    const RingSpec& ring = *cert.ring;
    ClassVector acc = ClassVector::unit(ring);
    for (int f : cert.factors) {
        if (f < 0 || f >= static_cast<int>(ring.basis_size())) return false;
        if (!fqf_factor_allowed(ring, f)) return false;
        acc = product(acc, ClassVector::basis_element(ring, f));
    }
    const auto order = read_order(ring, acc);
    if (!order || *order != cert.order) return false;
    return cert.score == ceil_div(cert.length, cert.order);
}

int count_residue_classes(const ActionMultiset& m) {
    if (m.period <= Rational(0)) throw bad_parameters("period must be positive");
    for (std::size_t i = 1; i < m.values.size(); ++i)
        if (!(m.values[i - 1] < m.values[i]))
            throw bad_parameters("action values must be strictly increasing");
    std::set<Rational> residues;
    for (const auto& v : m.values) residues.insert(rational_mod(v, m.period));
    return static_cast<int>(residues.size());
}

int counting_lower_bound(int length_k, int order_tau) {
    if (length_k < 1 || order_tau < 1) throw bad_parameters("need k >= 1 and tau >= 1");
    return ceil_div(length_k, order_tau);
}

} // namespace qh
