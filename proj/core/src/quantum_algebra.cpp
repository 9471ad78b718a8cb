#include "qh/quantum_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace qh {

int RingSpec::variable_degree_step() const {
    if (variable == CoeffVariable::S) return 2 * context.chern_min;
    if (!context.maslov_finite()) return 0;
    return context.maslov_min;
}

int RingSpec::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].id == id) return static_cast<int>(i);
    return -1;
}

int RingSpec::require_index(const std::string& id) const {
    const int idx = index_of(id);
    if (idx < 0) throw bad_parameters("no basis element '" + id + "' in ring " + name);
    return idx;
}

const SparseVec& RingSpec::module_constant(int ambient_idx, int j) const {
    if (module_.empty()) throw no_module_structure("ring " + name + " carries no module constants");
    return module_[static_cast<std::size_t>(ambient_idx) * basis.size() + j];
}

int RingSpec::term_degree(int basis_idx, int exponent) const {
    if (exponent != 0 && variable == CoeffVariable::T && !context.maslov_finite())
        throw context_mismatch("t is forbidden in the weakly exact case");
    return basis[basis_idx].degree - exponent * variable_degree_step();
}

int RingSpecBuilder::add_basis(const std::string& id, int degree) {
    basis.push_back({id, degree});
    return static_cast<int>(basis.size()) - 1;
}

void RingSpecBuilder::set_product(int i, int j, SparseVec value) {
    products_[{i, j}] = std::move(value);
}

void RingSpecBuilder::set_module(int ambient_idx, int j, SparseVec value) {
    module_[{ambient_idx, j}] = std::move(value);
}

namespace {

void normalize(SparseVec& v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    for (std::size_t i = 0; i < v.size();) {
        Laurent sum = v[i].second;
        std::size_t j = i + 1;
        while (j < v.size() && v[j].first == v[i].first) sum = sum + v[j++].second;
        if (!sum.is_zero()) out.emplace_back(v[i].first, std::move(sum));
        i = j;
    }
    v = std::move(out);
}

} // namespace

RingPtr RingSpecBuilder::build() {
    auto ring = std::make_shared<RingSpec>();
    ring->name = name;
    ring->kind = kind;
    ring->dim = dim;
    ring->context = context;
    ring->variable = variable;
    ring->commutative = commutative;
    ring->basis = basis;
    ring->ambient = ambient;
    if (dim < 1) throw bad_parameters("ring dimension must be positive");
    if (basis.empty()) throw bad_parameters("ring needs a basis");
    ring->unit = ring->index_of(unit_id);
    if (ring->unit < 0) throw bad_parameters("unit '" + unit_id + "' is not a basis element");
    if (!module_.empty() && !ambient)
        throw bad_parameters("module constants require an ambient ring");

    const std::size_t b = basis.size();
    ring->products_.assign(b * b, SparseVec{});
    std::vector<bool> given(b * b, false);
    auto put = [&](int i, int j, SparseVec v) {
        normalize(v);
        const std::size_t at = static_cast<std::size_t>(i) * b + j;
        if (given[at] && !(ring->products_[at] == v))
            throw bad_parameters("conflicting product constants for (" + basis[i].id + ", " +
                                 basis[j].id + ")");
        given[at] = true;
        ring->products_[at] = std::move(v);
    };
    for (auto& [key, value] : products_) {
        put(key.first, key.second, value);
        if (commutative && key.first != key.second) put(key.second, key.first, value);
    }
    // Unit law fills the gaps the presentation leaves implicit.
    for (std::size_t j = 0; j < b; ++j) {
        const std::size_t uj = static_cast<std::size_t>(ring->unit) * b + j;
        const std::size_t ju = j * b + static_cast<std::size_t>(ring->unit);
        SparseVec idvec{{static_cast<int>(j), Laurent::one()}};
        if (!given[uj]) ring->products_[uj] = idvec;
        if (!given[ju]) ring->products_[ju] = idvec;
    }

    if (!module_.empty()) {
        const std::size_t ab = ambient->basis.size();
        ring->module_.assign(ab * b, SparseVec{});
        std::vector<bool> mgiven(ab * b, false);
        for (auto& [key, value] : module_) {
            SparseVec v = value;
            normalize(v);
            ring->module_[static_cast<std::size_t>(key.first) * b + key.second] = std::move(v);
            mgiven[static_cast<std::size_t>(key.first) * b + key.second] = true;
        }
        // Unit action defaults to the identity.
        for (std::size_t j = 0; j < b; ++j) {
            const std::size_t at = static_cast<std::size_t>(ambient->unit) * b + j;
            if (!mgiven[at]) ring->module_[at] = {{static_cast<int>(j), Laurent::one()}};
        }
    }
    return ring;
}

ClassVector::ClassVector(const RingSpec* ring, SparseVec components)
    : ring_(ring), comps_(std::move(components)) {
    normalize(comps_);
}

ClassVector ClassVector::basis_element(const RingSpec& ring, int idx) {
    if (idx < 0 || idx >= static_cast<int>(ring.basis_size()))
        throw bad_parameters("basis index out of range");
    return ClassVector(&ring, {{idx, Laurent::one()}});
}

ClassVector ClassVector::basis_element(const RingSpec& ring, const std::string& id) {
    return basis_element(ring, ring.require_index(id));
}

ClassVector ClassVector::unit(const RingSpec& ring) { return basis_element(ring, ring.unit); }

ClassVector ClassVector::operator+(const ClassVector& other) const {
    if (ring_ != other.ring_) throw ring_mismatch("adding classes of different rings");
    SparseVec merged = comps_;
    merged.insert(merged.end(), other.comps_.begin(), other.comps_.end());
    return ClassVector(ring_, std::move(merged));
}

ClassVector ClassVector::scaled(const Laurent& coefficient) const {
    if (coefficient.is_zero()) return ClassVector(ring_);
    SparseVec out;
    out.reserve(comps_.size());
    for (const auto& [i, c] : comps_) out.emplace_back(i, c * coefficient);
    return ClassVector(ring_, std::move(out));
}

bool ClassVector::operator==(const ClassVector& other) const {
    return ring_ == other.ring_ && comps_ == other.comps_;
}

bool ClassVector::operator<(const ClassVector& other) const { return comps_ < other.comps_; }

bool ClassVector::is_homogeneous() const {
    std::optional<int> deg;
    for (const auto& [i, c] : comps_)
        for (int k : c.support()) {
            const int d = ring_->term_degree(i, k);
            if (!deg) deg = d;
            if (*deg != d) return false;
        }
    return true;
}

std::optional<int> ClassVector::degree() const {
    if (comps_.empty() || !is_homogeneous()) return std::nullopt;
    const auto& [i, c] = comps_.front();
    return ring_->term_degree(i, c.support().front());
}

std::optional<long long> ClassVector::max_component_valuation() const {
    std::optional<long long> best;
    for (const auto& [i, c] : comps_) {
        (void)i;
        const auto v = c.valuation();
        if (v && (!best || *v > *best)) best = v;
    }
    return best;
}

std::string ClassVector::to_string() const {
    if (comps_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    const char var = ring_->variable_char();
    for (const auto& [i, c] : comps_) {
        for (int k : c.support()) {
            if (!first) os << " + ";
            first = false;
            os << ring_->basis[i].id;
            if (k == 1)
                os << "*" << var;
            else if (k != 0)
                os << "*" << var << "^" << k;
        }
    }
    return os.str();
}

ClassVector ClassVector::parse(const RingSpec& ring, const std::string& text) {
    SparseVec comps;
    std::size_t pos = 0;
    const std::string trimmed = text;
    while (pos <= trimmed.size()) {
        std::size_t next = trimmed.find('+', pos);
        std::string term = trimmed.substr(pos, next == std::string::npos ? next : next - pos);
        pos = next == std::string::npos ? trimmed.size() + 1 : next + 1;
        // strip blanks
        while (!term.empty() && (term.front() == ' ' || term.front() == '\t')) term.erase(term.begin());
        while (!term.empty() && (term.back() == ' ' || term.back() == '\t')) term.pop_back();
        if (term.empty()) continue;
        if (term == "0") continue;
        const std::size_t star = term.find('*');
        const std::string id = term.substr(0, star);
        Laurent coeff = Laurent::one();
        if (star != std::string::npos)
            coeff = Laurent::parse(term.substr(star + 1), ring.variable_char());
        comps.emplace_back(ring.require_index(id), coeff);
    }
    return ClassVector(&ring, std::move(comps));
}

namespace {

// Accumulator reused across bilinear expansions; dense over the basis.
struct Accumulator {
    explicit Accumulator(const RingSpec& ring) : slots(ring.basis_size()) {}
    std::vector<Laurent> slots;
    std::vector<int> touched;

    void add(int idx, const Laurent& value) {
        if (value.is_zero()) return;
        if (slots[idx].is_zero()) touched.push_back(idx);
        slots[idx] = slots[idx] + value;
    }
    SparseVec take() {
        std::sort(touched.begin(), touched.end());
        SparseVec out;
        for (int idx : touched) {
            if (!slots[idx].is_zero()) out.emplace_back(idx, std::move(slots[idx]));
            slots[idx] = Laurent::zero();
        }
        touched.clear();
        return out;
    }
};

} // namespace

ClassVector product(const ClassVector& x, const ClassVector& y) {
    if (x.ring() == nullptr || x.ring() != y.ring())
        throw ring_mismatch("product of classes from different rings");
    const RingSpec& ring = *x.ring();
    Accumulator acc(ring);
    for (const auto& [i, ci] : x.components())
        for (const auto& [j, cj] : y.components()) {
            const Laurent scale = ci * cj;
            for (const auto& [b, cb] : ring.constant(i, j)) acc.add(b, cb * scale);
        }
    return ClassVector(&ring, acc.take());
}

ClassVector module_act(const ClassVector& a, const ClassVector& alpha) {
    if (alpha.ring() == nullptr || !alpha.ring()->has_module_constants())
        throw no_module_structure("ring has no module constants");
    const RingSpec& ring = *alpha.ring();
    if (a.ring() != ring.ambient.get())
        throw ring_mismatch("module action expects a class on the ambient ring");
    Accumulator acc(ring);
    for (const auto& [i, ci] : a.components())
        for (const auto& [j, cj] : alpha.components()) {
            const Laurent scale = ci * cj;
            for (const auto& [b, cb] : ring.module_constant(i, j)) acc.add(b, cb * scale);
        }
    return ClassVector(&ring, acc.take());
}

Level valuation_ambient(const ClassVector& a) {
    if (a.ring() == nullptr || a.ring()->kind != RingKind::Ambient)
        throw ring_mismatch("I_omega is defined on ambient rings");
    const auto v = a.max_component_valuation();
    if (!v) return std::nullopt;
    return a.ring()->context.area() * Rational(*v);
}

Level valuation_lagrangian(const ClassVector& alpha) {
    if (alpha.ring() == nullptr || alpha.ring()->kind != RingKind::Lagrangian)
        throw ring_mismatch("nu is defined on Lagrangian rings");
    const auto v = alpha.max_component_valuation();
    if (!v) return std::nullopt;
    return Rational(*v);
}

ClassVector classical_part(const ClassVector& x) {
    if (x.ring() == nullptr) return x;
    SparseVec out;
    for (const auto& [i, c] : x.components())
        if (std::binary_search(c.support().begin(), c.support().end(), 0))
            out.emplace_back(i, Laurent::one());
    return ClassVector(x.ring(), std::move(out));
}

void ValidationReport::fail(const std::string& what) {
    pass = false;
    ++failure_count;
    if (failures.size() < 32) failures.push_back(what);
}

namespace {

bool term_degrees_match(const RingSpec& ring, const SparseVec& value, int expected,
                        std::string* detail) {
    for (const auto& [b, c] : value)
        for (int k : c.support()) {
            if (k != 0 && ring.variable == CoeffVariable::T && !ring.context.maslov_finite()) {
                if (detail) *detail = "coefficient variable forbidden with infinite N_L";
                return false;
            }
            if (ring.term_degree(b, k) != expected) {
                if (detail)
                    *detail = ring.basis[b].id + "*" + ring.variable_char() +
                              "^" + std::to_string(k) + " has degree " +
                              std::to_string(ring.term_degree(b, k)) + ", expected " +
                              std::to_string(expected);
                return false;
            }
        }
    return true;
}

} // namespace

ValidationReport validate(const RingSpec& ring) {
    ValidationReport report;
    const int b = static_cast<int>(ring.basis_size());
    const int top = ring.top_degree();

    for (const auto& e : ring.basis)
        if (e.degree < 0 || e.degree > top)
            report.fail("basis degree out of range: " + e.id);
    if (ring.basis[ring.unit].degree != top)
        report.fail("unit must sit in the top degree");

    // Degree law on every stored constant.
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j) {
            const int expected = ring.basis[i].degree + ring.basis[j].degree - ring.product_shift();
            std::string detail;
            if (!term_degrees_match(ring, ring.constant(i, j), expected, &detail))
                report.fail("degree law fails at (" + ring.basis[i].id + ", " + ring.basis[j].id +
                            "): " + detail);
        }

    // Unit law on the stored table.
    for (int j = 0; j < b; ++j) {
        const SparseVec expected{{j, Laurent::one()}};
        if (!(ring.constant(ring.unit, j) == expected))
            report.fail("unit law fails at " + ring.basis[j].id);
        if (!(ring.constant(j, ring.unit) == expected))
            report.fail("unit law (right) fails at " + ring.basis[j].id);
    }

    if (ring.commutative) {
        for (int i = 0; i < b; ++i)
            for (int j = i + 1; j < b; ++j)
                if (!(ring.constant(i, j) == ring.constant(j, i)))
                    report.fail("commutativity fails at (" + ring.basis[i].id + ", " +
                                ring.basis[j].id + ")");
    }

    // Associativity on all basis triples.
    for (int i = 0; i < b && report.failure_count < 1000; ++i) {
        const ClassVector ei = ClassVector::basis_element(ring, i);
        for (int j = 0; j < b; ++j) {
            const ClassVector eij = ClassVector(&ring, SparseVec(ring.constant(i, j)));
            for (int k = 0; k < b; ++k) {
                const ClassVector ek = ClassVector::basis_element(ring, k);
                const ClassVector ejk = ClassVector(&ring, SparseVec(ring.constant(j, k)));
                ++report.associativity_triples;
                if (!(product(eij, ek) == product(ei, ejk)))
                    report.fail("associativity fails at (" + ring.basis[i].id + ", " +
                                ring.basis[j].id + ", " + ring.basis[k].id + ")");
            }
        }
    }

    if (ring.has_module_constants()) {
        const RingSpec& amb = *ring.ambient;
        const int ab = static_cast<int>(amb.basis_size());
        for (int i = 0; i < ab; ++i)
            for (int j = 0; j < b; ++j) {
                const int expected =
                    amb.basis[i].degree + ring.basis[j].degree - 2 * amb.dim;
                std::string detail;
                if (!term_degrees_match(ring, ring.module_constant(i, j), expected, &detail))
                    report.fail("module degree law fails at (" + amb.basis[i].id + ", " +
                                ring.basis[j].id + "): " + detail);
            }
        for (int j = 0; j < b; ++j) {
            const SparseVec expected{{j, Laurent::one()}};
            if (!(ring.module_constant(amb.unit, j) == expected))
                report.fail("module unit law fails at " + ring.basis[j].id);
        }
        // Two-sided algebra law on all mixed triples.
        for (int i = 0; i < ab; ++i) {
            const ClassVector a = ClassVector::basis_element(amb, i);
            for (int j = 0; j < b; ++j) {
                const ClassVector alpha = ClassVector::basis_element(ring, j);
                const ClassVector a_alpha = module_act(a, alpha);
                for (int k = 0; k < b; ++k) {
                    const ClassVector beta = ClassVector::basis_element(ring, k);
                    const ClassVector lhs = module_act(a, product(alpha, beta));
                    const ClassVector mid = product(a_alpha, beta);
                    const ClassVector rhs = product(alpha, module_act(a, beta));
                    if (!(lhs == mid) || !(lhs == rhs))
                        report.fail("two-sided algebra law fails at (" + amb.basis[i].id + ", " +
                                    ring.basis[j].id + ", " + ring.basis[k].id + ")");
                }
            }
        }
    }
    return report;
}

} // namespace qh
