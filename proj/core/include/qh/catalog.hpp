#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qh/quantum_algebra.hpp"

namespace qh {

/*
  Built-in ring constructors for the worked examples: complex projective
  spaces (over Lambda and over Gamma), even quadrics, Clifford tori, the
  monotone RP^n in CP^n, and the classical intersection rings of RP^n, T^n
  and S^n. All constructors are pure and the results pass validate().

  Normalization: quantum contexts use kappa = 1/2, so A_L = N_L / 2.
*/

enum class Parity { Odd, Even };
enum class SingularSpace { RPn, Torus, Sphere };

// QH(CP^n, Lambda) for a Lagrangian with minimal Maslov number `maslov`:
// basis h0 = [CP^n], ..., hn = [pt], deg h^j = 2n - 2j, and
// h^i * h^j = h^{i+j} for i+j <= n, h^{i+j-n-1} t^{(2n+2)/maslov} above.
RingPtr cp_ambient(int n, int maslov);

// Same ring presented over Gamma: h^{n+1} = [CP^n] s with deg s = -(2n+2).
RingPtr cp_gamma(int n);

// QH(Q^{2k}, Lambda) of the even-dimensional quadric with the middle classes
// a, b; the parity argument must match the parity of k. Context N_L = 4k
// (the Lagrangian-sphere case), so one t carries degree -4k.
RingPtr quadric_ambient(int k, Parity parity);

// Lagrangian quantum homology of the Clifford torus in CP^n: generators
// t_1..t_n in degree n-1 with t_i o t_i = [T] t and
// t_i o t_j + t_j o t_i = [T] t. Non-commutative for n >= 2.
RingPtr clifford_lqh(int n);

// Lagrangian quantum homology of RP^n in CP^n (N_L = n+1): truncated
// polynomial ring with the quantum wrap x^{n+1} = [L] t.
RingPtr rp_lqh(int n);

// Classical Z2 intersection rings with A_L = 0 (weakly exact bookkeeping).
RingPtr singular_ring(SingularSpace space, int n);

// One-point classical ring; the trivial aspherical factor.
RingPtr point_ring();

// Kuenneth tensor product of an ambient ring with a classical factor whose
// constants carry no quantum terms. Quantum corrections come only from m.
RingPtr product_with_aspherical(const RingPtr& m, const RingPtr& p);

struct CatalogEntry {
    std::string key;
    std::string params;
    std::string summary;
};

std::vector<CatalogEntry> catalog_entries();

// Builds a catalog ring from its CLI key. `maslov` only applies to "cp"
// (default n+1).
RingPtr catalog_build(const std::string& key, int n, std::optional<int> maslov = std::nullopt);

} // namespace qh
