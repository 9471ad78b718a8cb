#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qh/novikov.hpp"

namespace qh {

/*
  Action-filtered chain complexes over Lambda: finitely many generators with
  exact rational actions and integer degrees, and a differential with Laurent
  coefficients that strictly decreases the filtration

      filt(sum lambda_k x_k) = max_k { action(x_k) + A_L * nu(lambda_k) }

  and shifts degree by -1 (deg t = -N_L accounted). Spectral invariants are
  computed degree by degree: in a fixed degree D the shifted generators
  x (x) t^j with deg x - j N_L = D form a finite Z2 vector space, so the
  minimum filtration level over all representatives of a class is exact
  column reduction, no truncation window involved.
*/

struct FilteredGenerator {
    std::string id;
    Rational action;
    int degree = 0;
};

// Z2-combination of generators with Laurent coefficients, sorted by
// generator index.
using ChainVec = std::vector<std::pair<int, Laurent>>;

class FilteredComplex {
public:
    FilteredComplex(MonotoneContext ctx, std::vector<FilteredGenerator> generators,
                    std::vector<ChainVec> differential);

    const MonotoneContext& context() const { return ctx_; }
    const std::vector<FilteredGenerator>& generators() const { return gens_; }
    const ChainVec& differential(int i) const { return diff_[i]; }
    int index_of(const std::string& id) const;  // -1 when absent

    ChainVec boundary(const ChainVec& chain) const;
    bool is_cycle(const ChainVec& chain) const { return boundary(chain).empty(); }

    // Filtration level of a chain; -infinity for 0.
    Level filtration(const ChainVec& chain) const;

    std::string chain_to_string(const ChainVec& chain) const;
    ChainVec parse_chain(const std::string& text) const;

    std::string to_text() const;
    static FilteredComplex from_text(const std::string& text);
    static FilteredComplex load_file(const std::string& path);

private:
    MonotoneContext ctx_;
    std::vector<FilteredGenerator> gens_;
    std::vector<ChainVec> diff_;
};

// Minimal filtration level over all representatives of the class of the
// given cycle (the cycle plus arbitrary Lambda-boundaries). -infinity for
// the zero class; throws not_a_cycle when the chain is not closed.
Level spectral_invariant(const FilteredComplex& complex, const ChainVec& cycle);

// Mock Morse package: builds the filtered complex with action = critical
// value and degree = Morse index. The differential must drop the index by
// one, strictly decrease f, and square to zero.
FilteredComplex morse_to_filtered(
    const std::vector<std::string>& ids, const std::map<std::string, Rational>& values,
    const std::map<std::string, int>& indices,
    const std::map<std::string, std::vector<std::string>>& differential,
    const MonotoneContext& ctx = MonotoneContext(2, 1, Rational(1, 2)));

} // namespace qh
