#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qh/novikov.hpp"

namespace qh {

/*
  Graded Z2-algebras over Lambda (or Gamma) presented by basis, degrees and
  structure constants. A RingSpec can host

    - the ambient quantum homology QH(M, Lambda) with the quantum product *
      (degree shift -2n),
    - a Lagrangian quantum homology QH(L) with the product o (degree shift -n)
      and, optionally, the QH(M, Lambda)-module action.

  RingSpecs are immutable after construction and shared via shared_ptr; all
  operations are pure.
*/

enum class RingKind { Ambient, Lagrangian };
enum class CoeffVariable { T, S };

struct BasisElement {
    std::string id;
    int degree = 0;
};

// Sparse Z2-linear combination of basis elements with Laurent coefficients,
// sorted by basis index, zero coefficients never stored.
using SparseVec = std::vector<std::pair<int, Laurent>>;

class RingSpec;
using RingPtr = std::shared_ptr<const RingSpec>;

class RingSpec {
public:
    std::string name;
    RingKind kind = RingKind::Lagrangian;
    int dim = 1;  // n
    MonotoneContext context;
    CoeffVariable variable = CoeffVariable::T;
    bool commutative = true;
    std::vector<BasisElement> basis;
    int unit = 0;
    RingPtr ambient;  // set when module constants are present

    int top_degree() const { return kind == RingKind::Ambient ? 2 * dim : dim; }
    int product_shift() const { return top_degree(); }
    char variable_char() const { return variable == CoeffVariable::T ? 't' : 's'; }
    // deg t = -N_L, deg s = -2 C_M.
    int variable_degree_step() const;

    std::size_t basis_size() const { return basis.size(); }
    int index_of(const std::string& id) const;            // -1 when absent
    int require_index(const std::string& id) const;       // throws
    const SparseVec& constant(int i, int j) const { return products_[i * basis.size() + j]; }
    bool has_module_constants() const { return !module_.empty(); }
    const SparseVec& module_constant(int ambient_idx, int j) const;

    // Degree of the term b ⊗ var^k, accounting for the grading of the
    // coefficient variable. Throws for k != 0 in the weakly exact case.
    int term_degree(int basis_idx, int exponent) const;

private:
    std::vector<SparseVec> products_;  // dense table, row-major over ordered pairs
    std::vector<SparseVec> module_;    // ambient_basis x basis when present
    friend class RingSpecBuilder;
};

class RingSpecBuilder {
public:
    std::string name;
    RingKind kind = RingKind::Lagrangian;
    int dim = 1;
    MonotoneContext context;
    CoeffVariable variable = CoeffVariable::T;
    bool commutative = true;
    std::vector<BasisElement> basis;
    std::string unit_id;
    RingPtr ambient;

    int add_basis(const std::string& id, int degree);
    // Records e_i * e_j = value; mirrors to (j, i) for commutative rings.
    void set_product(int i, int j, SparseVec value);
    void set_module(int ambient_idx, int j, SparseVec value);

    // Assembles the immutable ring. Unit products left unspecified default to
    // the unit law; all other unspecified pairs default to zero.
    RingPtr build();

private:
    std::map<std::pair<int, int>, SparseVec> products_;
    std::map<std::pair<int, int>, SparseVec> module_;
};

// Element of a specific ring.
class ClassVector {
public:
    ClassVector() = default;
    explicit ClassVector(const RingSpec* ring) : ring_(ring) {}
    ClassVector(const RingSpec* ring, SparseVec components);
    static ClassVector basis_element(const RingSpec& ring, int idx);
    static ClassVector basis_element(const RingSpec& ring, const std::string& id);
    static ClassVector unit(const RingSpec& ring);
    static ClassVector zero(const RingSpec& ring) { return ClassVector(&ring); }

    const RingSpec* ring() const { return ring_; }
    const SparseVec& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    ClassVector operator+(const ClassVector& other) const;
    ClassVector scaled(const Laurent& coefficient) const;
    bool operator==(const ClassVector& other) const;
    bool operator<(const ClassVector& other) const;  // structural; for memo keys

    bool is_homogeneous() const;
    // Degree when homogeneous and nonzero.
    std::optional<int> degree() const;

    // max over components of the coefficient valuation; -infinity for 0.
    std::optional<long long> max_component_valuation() const;

    std::string to_string() const;
    static ClassVector parse(const RingSpec& ring, const std::string& text);

private:
    const RingSpec* ring_ = nullptr;
    SparseVec comps_;
};

// Bilinear extension of the structure constants over the coefficient ring.
ClassVector product(const ClassVector& x, const ClassVector& y);

// Module action of the ambient ring; requires module constants.
ClassVector module_act(const ClassVector& a, const ClassVector& alpha);

// I_omega = A_L * max component valuation; -infinity for 0. Ambient rings only.
Level valuation_ambient(const ClassVector& a);

// Component-wise valuation maximum on the canonical basis expansion,
// dimensionless. Lagrangian rings only.
Level valuation_lagrangian(const ClassVector& alpha);

// Projection onto the variable-exponent-zero part.
ClassVector classical_part(const ClassVector& x);

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> failures;  // capped; see failure_count
    std::size_t failure_count = 0;
    std::size_t associativity_triples = 0;

    void fail(const std::string& what);
};

// Checks every structural invariant: degree law on all constants, unit law,
// commutativity (when declared), collapse of the coefficient ring in the
// weakly exact case, associativity on all basis triples and, when module
// constants exist, the unit action and the two-sided algebra law on all
// mixed triples. Failures are reported, never thrown.
ValidationReport validate(const RingSpec& ring);

} // namespace qh
