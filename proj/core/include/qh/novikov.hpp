#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qh/errors.hpp"
#include "qh/rational.hpp"

namespace qh {

/*
  Arithmetic in the Novikov-type coefficient rings

      Lambda = Z2[t^-1, t]    graded by deg t = -N_L,
      Gamma  = Z2[s^-1, s]    graded by deg s = -2 C_M,

  together with the monotonicity data (N_L, C_M, kappa, A_L) that ties the
  formal variable to actions. Every element in scope is a finite Z2-Laurent
  polynomial, so an element is just its support: the sorted set of exponents
  with coefficient 1.
*/

constexpr int kInfiniteMaslov = -1;

struct MonotoneContext {
    // Minimal Maslov number N_L; kInfiniteMaslov encodes the weakly exact
    // case, where A_L = 0 and the coefficient ring collapses to Z2.
    int maslov_min = 2;
    int chern_min = 1;  // C_M
    Rational kappa{1, 2};

    MonotoneContext() = default;
    MonotoneContext(int maslov, int chern, Rational kappa_value);

    bool maslov_finite() const { return maslov_min != kInfiniteMaslov; }
    // A_L = kappa * N_L, the minimal positive disk area; 0 in the weakly
    // exact case.
    Rational area() const;
    // Exponent of t realizing the embedding s -> t^(2 C_M / N_L).
    int gamma_embedding_exponent() const;

    bool operator==(const MonotoneContext& o) const {
        return maslov_min == o.maslov_min && chern_min == o.chern_min && kappa == o.kappa;
    }

    std::string to_string() const;
    static MonotoneContext from_string(const std::string& text);
};

// Finite-support Laurent polynomial over Z2. The support vector is kept
// sorted ascending; an exponent present means coefficient 1.
class Laurent {
public:
    Laurent() = default;
    static Laurent zero() { return Laurent(); }
    static Laurent one() { return monomial(0); }
    static Laurent monomial(int exponent);
    static Laurent from_exponents(std::vector<int> exponents);

    bool is_zero() const { return support_.empty(); }
    bool is_one() const { return support_.size() == 1 && support_[0] == 0; }
    bool is_monomial() const { return support_.size() == 1; }
    int monomial_exponent() const;
    const std::vector<int>& support() const { return support_; }

    // Coefficient-wise XOR.
    Laurent operator+(const Laurent& other) const;
    // Convolution product; exponents add, coefficients multiply in Z2.
    Laurent operator*(const Laurent& other) const;
    bool operator==(const Laurent& other) const { return support_ == other.support_; }
    bool operator!=(const Laurent& other) const { return support_ != other.support_; }
    bool operator<(const Laurent& other) const { return support_ < other.support_; }

    // max{-k : coefficient of t^k nonzero}; nullopt (-infinity) for 0.
    std::optional<long long> valuation() const;

    // Rendering as a sorted monomial list, e.g. "t^-1 + 1 + t^2".
    std::string to_string(char variable = 't') const;
    static Laurent parse(const std::string& text, char variable = 't');

private:
    std::vector<int> support_;
};

// Element of Gamma = Z2[s^-1, s]. The exponents refer to s.
struct GammaElement {
    Laurent poly;

    bool operator==(const GammaElement& o) const { return poly == o.poly; }
    std::string to_string() const { return poly.to_string('s'); }
    static GammaElement parse(const std::string& text) { return GammaElement{Laurent::parse(text, 's')}; }
};

// Ring embedding Gamma -> Lambda, s -> t^(2 C_M / N_L). Degree preserving.
// Throws context_mismatch when N_L is infinite or does not divide 2 C_M.
Laurent embed_gamma(const GammaElement& g, const MonotoneContext& ctx);

} // namespace qh
