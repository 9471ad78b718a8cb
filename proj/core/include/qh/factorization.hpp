#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qh/quantum_algebra.hpp"

namespace qh {

/*
  Fundamental quantum factorizations: presentations of var^order * [unit] as
  a product of lower-degree basis classes. For an ambient ring the factors
  range over degrees < 2n; for a Lagrangian ring over n - N_L < deg < n.
  The score ceil(length / order) is the intersection lower bound the
  certificate supports.
*/

struct FqfCertificate {
    RingPtr ring;
    std::vector<int> factors;  // basis indices, in multiplication order
    int order = 0;             // exponent of the coefficient variable
    int length = 0;
    int score = 0;

    std::vector<std::string> factor_ids() const;
};

// Replays the certificate: degree windows, the product identity
// var^order * [unit], order >= 1 and the score arithmetic.
bool verify_fqf(const FqfCertificate& cert);

// Admissible factor degrees for FQF search on this ring.
bool fqf_factor_allowed(const RingSpec& ring, int basis_idx);

int default_max_length(const RingSpec& ring);  // 2 * basis size

// Depth-first search over factor sequences, maximizing the score with ties
// broken by smaller length and then lexicographically smaller factor index
// sequences. Deterministic. Returns nullopt when no factorization of length
// <= max_length exists.
std::optional<FqfCertificate> find_best_fqf(const RingPtr& ring, int max_length);

struct ActionMultiset {
    std::vector<Rational> values;  // strictly increasing
    Rational period;               // > 0
};

// Number of classes of values modulo the period; exact arithmetic.
int count_residue_classes(const ActionMultiset& m);

// ceil(k / tau), the bound extracted from a length-k, order-tau certificate.
int counting_lower_bound(int length_k, int order_tau);

} // namespace qh
