#pragma once

// Test-only brute-force oracles. Each one answers a question the library
// answers by column reduction, but via per-level membership linear algebra,
// so the two routes share no code path beyond the raw data.

#include <random>
#include <vector>

#include "qh/filtered_complex.hpp"
#include "qh/grid_complex.hpp"
#include "qh/rational.hpp"

namespace qh_test {

// A plain Z2 chain complex with a filtration level per cell.
struct SmallComplex {
    std::vector<int> dim;
    std::vector<std::vector<int>> boundary;  // face ids, one dimension down
    std::vector<qh::Rational> level;
};

// Minimum level v such that the cycle is homologous in the full complex to a
// cycle supported on cells of level <= v; nullopt when the cycle bounds.
// Scans candidate levels and decides membership by Gaussian elimination.
qh::Level oracle_min_level(const SmallComplex& complex, const std::vector<int>& cycle);

// Materializes a Lambda filtered complex as a windowed Z2 complex: one cell
// per (generator, shift) pair whose level falls inside the window spanned by
// the action spread plus the degree spread, wide enough to contain every
// degree slice. Returns the complex and the cell ids of the given cycle.
struct Materialized {
    SmallComplex complex;
    std::vector<int> cycle_cells;
};
Materialized materialize_with_shifts(const qh::FilteredComplex& complex,
                                     const qh::ChainVec& cycle);

// Grid version: cells and lower-star levels from a GridComplex.
SmallComplex small_complex_from_grid(const qh::GridComplex& grid);

// Deterministic generator of valid filtered complexes: random actions,
// degrees and a square-zero, filtration-decreasing differential built from
// birth pairs and filtered column operations.
qh::FilteredComplex random_filtered_complex(std::mt19937_64& rng, int generators, int maslov,
                                            bool quantum_terms);

// A nonzero-looking random cycle of the complex (may still be a boundary).
qh::ChainVec random_cycle(std::mt19937_64& rng, const qh::FilteredComplex& complex);

} // namespace qh_test
