#include "qh/bounds.hpp"

#include <algorithm>
#include <map>

#include "qh/z2linalg.hpp"

namespace qh {

bool BoundReport::hypotheses_ok() const {
    for (const auto& h : hypotheses)
        if (h.status == HypothesisStatus::CheckedFail || h.status == HypothesisStatus::NotAsserted)
            return false;
    return true;
}

namespace {

Hypothesis asserted(const std::string& name, bool is_asserted) {
    return {name, is_asserted ? HypothesisStatus::Asserted : HypothesisStatus::NotAsserted,
            is_asserted ? "accepted from caller" : "required but not asserted"};
}

// Classical (variable-exponent-zero) structure constants as dense Z2 masks.
struct ClassicalTable {
    explicit ClassicalTable(const RingSpec& ring) : ring(ring), size(ring.basis_size()) {
        table.resize(size * size);
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = 0; j < size; ++j) {
                BitVector mask(size);
                for (const auto& [b, c] : ring.constant(static_cast<int>(i), static_cast<int>(j)))
                    if (std::binary_search(c.support().begin(), c.support().end(), 0))
                        mask.set(static_cast<std::size_t>(b));
                table[i * size + j] = std::move(mask);
            }
    }

    BitVector multiply(const BitVector& x, const BitVector& y) const {
        BitVector out(size);
        for (std::size_t i : x.bits())
            for (std::size_t j : y.bits()) out ^= table[i * size + j];
        return out;
    }

    const RingSpec& ring;
    std::size_t size;
    std::vector<BitVector> table;
};

struct CupSearch {
    const ClassicalTable& classical;
    std::vector<int> candidates;
    // Longest admissible extension from a given partial product, plus the
    // first factor realizing it.
    std::map<BitVector, std::pair<int, int>> memo;

    std::pair<int, int> best_from(const BitVector& partial) {
        auto found = memo.find(partial);
        if (found != memo.end()) return found->second;
        std::pair<int, int> best{0, -1};
        for (int f : candidates) {
            BitVector single(classical.size);
            single.set(static_cast<std::size_t>(f));
            BitVector next = classical.multiply(partial, single);
            if (!next.any()) continue;
            const int extended = 1 + best_from(next).first;
            if (extended > best.first) best = {extended, f};
        }
        memo.emplace(partial, best);
        return best;
    }
};

} // namespace

BoundReport cuplength(const RingPtr& ring) {
    if (!ring) throw bad_parameters("cuplength needs a ring");
    BoundReport report;
    report.theorem = TheoremTag::Cuplength;

    ClassicalTable classical(*ring);
    CupSearch search{classical, {}, {}};
    const int top = ring->top_degree();
    for (int i = 0; i < static_cast<int>(ring->basis_size()); ++i) {
        const int deg = ring->basis[i].degree;
        if (deg >= top) continue;
        if (deg == 0 && top > 1) continue;  // degree-0 factors only on circles
        search.candidates.push_back(i);
    }

    BitVector unit_mask(ring->basis_size());
    unit_mask.set(static_cast<std::size_t>(ring->unit));
    search.best_from(unit_mask);

    BitVector current = unit_mask;
    int factors = 0;
    while (true) {
        const auto [extend, choice] = search.memo.at(current);
        if (extend == 0) break;
        report.witness.push_back(ring->basis[choice].id);
        BitVector single(ring->basis_size());
        single.set(static_cast<std::size_t>(choice));
        current = classical.multiply(current, single);
        ++factors;
    }
    report.value = factors + 1;
    report.hypotheses.push_back(
        {"classical product available", HypothesisStatus::CheckedPass, "structure constants present"});
    return report;
}

namespace {

BoundReport factorization_bound(TheoremTag tag, const RingPtr& ring, int max_length,
                                std::vector<Hypothesis> hypotheses) {
    const auto cert = find_best_fqf(ring, max_length);
    if (!cert) throw no_factorization("no fundamental quantum factorization of length <= " +
                                      std::to_string(max_length) + " in ring " + ring->name);
    if (!verify_fqf(*cert)) throw error("internal: certificate failed replay");
    BoundReport report;
    report.theorem = tag;
    report.certificate = cert;
    report.value = counting_lower_bound(cert->length, cert->order);
    if (*report.value != cert->score) throw error("internal: score disagrees with counting bound");
    report.hypotheses = std::move(hypotheses);
    return report;
}

} // namespace

BoundReport bound_fqf(const RingPtr& ring, int max_length, bool assert_nonnarrow,
                      bool assert_isolated) {
    if (!ring || ring->kind != RingKind::Ambient)
        throw bad_parameters("bound_fqf needs an ambient ring");
    if (ring->variable != CoeffVariable::T || !ring->context.maslov_finite())
        throw bad_parameters("bound_fqf needs a Lambda coefficient ring with finite N_L >= 2");
    return factorization_bound(TheoremTag::Fqf, ring, max_length,
                               {asserted("L non-narrow", assert_nonnarrow),
                                asserted("intersections isolated", assert_isolated)});
}

BoundReport bound_lfqf(const RingPtr& ring, int max_length, bool assert_wide) {
    if (!ring || ring->kind != RingKind::Lagrangian)
        throw bad_parameters("bound_lfqf needs a Lagrangian ring");
    if (!ring->context.maslov_finite())
        throw bad_parameters("bound_lfqf needs finite N_L >= 2");
    return factorization_bound(TheoremTag::Lfqf, ring, max_length,
                               {asserted("L wide", assert_wide)});
}

BoundReport bound_fixed_points(const RingPtr& ring, int max_length, bool assert_isolated) {
    if (!ring || ring->kind != RingKind::Ambient)
        throw bad_parameters("bound_fixed_points needs an ambient ring");
    if (ring->variable != CoeffVariable::S)
        throw bad_parameters("bound_fixed_points reads the order in s; use a Gamma ring");
    return factorization_bound(TheoremTag::FixedPoints, ring, max_length,
                               {asserted("fixed points isolated", assert_isolated)});
}

bool generated_by_check(const RingPtr& ring, int threshold_degree) {
    if (!ring || ring->kind != RingKind::Lagrangian)
        throw bad_parameters("generated_by_check needs a Lagrangian ring");
    ClassicalTable classical(*ring);
    const std::size_t b = ring->basis_size();

    GaussianBasis span;
    std::vector<BitVector> worklist;
    for (std::size_t i = 0; i < b; ++i) {
        if (ring->basis[i].degree < threshold_degree) continue;
        BitVector v(b);
        v.set(i);
        if (span.insert(v)) worklist.push_back(v);
    }
    // Close the span under the classical product; products of spanning
    // vectors span all products by bilinearity.
    while (!worklist.empty()) {
        std::vector<BitVector> fresh;
        for (const auto& u : worklist)
            for (const auto& [pivot, v] : span.rows()) {
                (void)pivot;
                BitVector w = classical.multiply(u, v);
                if (w.any() && span.insert(w)) fresh.push_back(w);
                BitVector w2 = classical.multiply(v, u);
                if (w2.any() && span.insert(w2)) fresh.push_back(w2);
            }
        worklist = std::move(fresh);
    }
    return span.rank() == b;
}

BoundReport bound_chekanov(const RingPtr& ring, const Rational& gamma_value, bool assert_wide) {
    if (!ring || ring->kind != RingKind::Lagrangian)
        throw bad_parameters("bound_chekanov needs a Lagrangian ring");
    if (!ring->context.maslov_finite() || ring->context.maslov_min < 2)
        throw bad_parameters("bound_chekanov needs finite N_L >= 2");

    BoundReport report;
    report.theorem = TheoremTag::Chekanov;

    const Rational area = ring->context.area();
    const bool gamma_ok = gamma_value < area;
    report.hypotheses.push_back({"gamma(L, phi(L)) < A_L",
                                 gamma_ok ? HypothesisStatus::CheckedPass
                                          : HypothesisStatus::CheckedFail,
                                 "gamma = " + format_rational(gamma_value) +
                                     ", A_L = " + format_rational(area)});

    const int threshold = ring->dim + 1 - ring->context.maslov_min;
    const bool generated = generated_by_check(ring, threshold);
    report.hypotheses.push_back({"H(L) generated by degrees >= " + std::to_string(threshold),
                                 generated ? HypothesisStatus::CheckedPass
                                           : HypothesisStatus::CheckedFail,
                                 "classical subring closure"});

    report.hypotheses.push_back(asserted("L wide", assert_wide));

    if (!report.hypotheses_ok()) return report;
    BoundReport cl = cuplength(ring);
    report.value = cl.value;
    report.witness = std::move(cl.witness);
    return report;
}

} // namespace qh
