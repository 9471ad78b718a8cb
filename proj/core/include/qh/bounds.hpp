#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qh/factorization.hpp"
#include "qh/quantum_algebra.hpp"

namespace qh {

/*
  Intersection and fixed-point lower bounds. Each calculator returns a
  BoundReport carrying the numeric bound, the certificate or witness behind
  it, and an explicit ledger of hypotheses: algebraic conditions are checked
  from the ring data, geometric ones (wideness, non-narrowness, isolated
  intersections, the value of the spectral norm gamma) can only be asserted
  by the caller and are reported as such.
*/

enum class TheoremTag { Fqf, Lfqf, FixedPoints, Chekanov, Cuplength };

enum class HypothesisStatus { CheckedPass, CheckedFail, Asserted, NotAsserted };

struct Hypothesis {
    std::string name;
    HypothesisStatus status = HypothesisStatus::NotAsserted;
    std::string detail;
};

struct BoundReport {
    TheoremTag theorem = TheoremTag::Cuplength;
    std::optional<int> value;
    std::optional<FqfCertificate> certificate;
    std::vector<std::string> witness;  // cup-length factor ids
    std::vector<Hypothesis> hypotheses;

    bool hypotheses_ok() const;
};

// Z2 cup-length of the classical part of the ring: 1 + the longest sequence
// of admissible basis classes with nonzero iterated classical product.
// Admissible factors have degree < top and positive degree; in rings with
// top degree 1 the degree-0 classes are admitted (every proper class of a
// circle has degree 0, and its cup-length is classically 2). Returns the
// witness sequence.
BoundReport cuplength(const RingPtr& ring);

// FQF bound for an ambient ring over Lambda: ceil(k / tau) intersection
// points of L with its image, given non-narrowness and isolated
// intersections (both caller-asserted).
BoundReport bound_fqf(const RingPtr& ring, int max_length, bool assert_nonnarrow,
                      bool assert_isolated);

// LFQF bound for a Lagrangian ring: ceil(l / nu), given wideness.
BoundReport bound_lfqf(const RingPtr& ring, int max_length, bool assert_wide);

// Fixed-point bound for an ambient ring over Gamma: ceil(l / kappa), given
// isolated fixed points.
BoundReport bound_fixed_points(const RingPtr& ring, int max_length, bool assert_isolated);

// Whether the classical ring is generated, as a ring, by the basis classes
// of degree >= threshold_degree.
bool generated_by_check(const RingPtr& ring, int threshold_degree);

// Chekanov-type bound: when gamma(L, phi(L)) < A_L, the ring is generated by
// degrees >= n+1-N_L and L is wide (asserted), the intersection count is at
// least the cup-length. On hypothesis failure the report carries no value.
BoundReport bound_chekanov(const RingPtr& ring, const Rational& gamma_value, bool assert_wide);

} // namespace qh
