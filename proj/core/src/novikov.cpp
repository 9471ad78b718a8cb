#include "qh/novikov.hpp"

#include <algorithm>
#include <sstream>

namespace qh {

MonotoneContext::MonotoneContext(int maslov, int chern, Rational kappa_value)
    : maslov_min(maslov), chern_min(chern), kappa(kappa_value) {
    if (maslov_min != kInfiniteMaslov && maslov_min < 2)
        throw bad_parameters("minimal Maslov number must be >= 2 or infinite");
    if (chern_min < 1) throw bad_parameters("minimal Chern number must be positive");
    if (kappa <= Rational(0)) throw bad_parameters("kappa must be positive");
    if (maslov_finite() && (2 * chern_min) % maslov_min != 0)
        throw bad_parameters("N_L must divide 2*C_M");
}

Rational MonotoneContext::area() const {
    if (!maslov_finite()) return Rational(0);
    return kappa * Rational(maslov_min);
}

int MonotoneContext::gamma_embedding_exponent() const {
    if (!maslov_finite()) throw context_mismatch("no Gamma embedding in the weakly exact case");
    if ((2 * chern_min) % maslov_min != 0)
        throw context_mismatch("N_L does not divide 2*C_M");
    return 2 * chern_min / maslov_min;
}

std::string MonotoneContext::to_string() const {
    std::ostringstream os;
    os << (maslov_finite() ? std::to_string(maslov_min) : std::string("inf")) << " " << chern_min
       << " " << format_rational(kappa) << " " << format_rational(area());
    return os.str();
}

MonotoneContext MonotoneContext::from_string(const std::string& text) {
    std::istringstream is(text);
    std::string maslov, chern, kappa, area;
    if (!(is >> maslov >> chern >> kappa >> area))
        throw parse_error("context needs four fields: N_L C_M kappa A_L");
    MonotoneContext ctx(maslov == "inf" ? kInfiniteMaslov : static_cast<int>(std::stoll(maslov)),
                        static_cast<int>(std::stoll(chern)), parse_rational(kappa));
    if (parse_rational(area) != ctx.area())
        throw parse_error("serialized area disagrees with kappa * N_L");
    return ctx;
}

Laurent Laurent::monomial(int exponent) {
    Laurent x;
    x.support_.push_back(exponent);
    return x;
}

Laurent Laurent::from_exponents(std::vector<int> exponents) {
    std::sort(exponents.begin(), exponents.end());
    Laurent x;
    // Pairs cancel in characteristic 2.
    for (std::size_t i = 0; i < exponents.size();) {
        std::size_t j = i;
        while (j < exponents.size() && exponents[j] == exponents[i]) ++j;
        if ((j - i) % 2 == 1) x.support_.push_back(exponents[i]);
        i = j;
    }
    return x;
}

int Laurent::monomial_exponent() const {
    if (!is_monomial()) throw error("not a monomial");
    return support_[0];
}

Laurent Laurent::operator+(const Laurent& other) const {
    Laurent out;
    out.support_.reserve(support_.size() + other.support_.size());
    std::size_t i = 0, j = 0;
    while (i < support_.size() && j < other.support_.size()) {
        if (support_[i] < other.support_[j]) {
            out.support_.push_back(support_[i++]);
        } else if (support_[i] > other.support_[j]) {
            out.support_.push_back(other.support_[j++]);
        } else {
            ++i;
            ++j;  // 1 + 1 = 0
        }
    }
    out.support_.insert(out.support_.end(), support_.begin() + i, support_.end());
    out.support_.insert(out.support_.end(), other.support_.begin() + j, other.support_.end());
    return out;
}

Laurent Laurent::operator*(const Laurent& other) const {
    std::vector<int> sums;
    sums.reserve(support_.size() * other.support_.size());
    for (int a : support_)
        for (int b : other.support_) sums.push_back(a + b);
    return from_exponents(std::move(sums));
}

std::optional<long long> Laurent::valuation() const {
    if (support_.empty()) return std::nullopt;
    return -static_cast<long long>(support_.front());
}

std::string Laurent::to_string(char variable) const {
    if (support_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k : support_) {
        if (!first) os << " + ";
        first = false;
        if (k == 0)
            os << "1";
        else if (k == 1)
            os << variable;
        else
            os << variable << "^" << k;
    }
    return os.str();
}

namespace {

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

} // namespace

Laurent Laurent::parse(const std::string& text, char variable) {
    std::vector<int> exponents;
    std::size_t pos = 0;
    bool any = false;
    while (pos <= text.size()) {
        std::size_t next = text.find('+', pos);
        std::string term = strip(text.substr(pos, next == std::string::npos ? next : next - pos));
        pos = next == std::string::npos ? text.size() + 1 : next + 1;
        if (term.empty()) {
            if (!any && pos > text.size()) break;
            throw parse_error("empty term in '" + text + "'");
        }
        any = true;
        if (term == "0") continue;
        if (term == "1") {
            exponents.push_back(0);
        } else if (term[0] == variable) {
            if (term.size() == 1) {
                exponents.push_back(1);
            } else if (term[1] == '^') {
                try {
                    exponents.push_back(static_cast<int>(std::stoll(term.substr(2))));
                } catch (const std::exception&) {
                    throw parse_error("bad exponent in '" + term + "'");
                }
            } else {
                throw parse_error("bad monomial '" + term + "'");
            }
        } else {
            throw parse_error("bad monomial '" + term + "'");
        }
    }
    if (!any) throw parse_error("empty Laurent literal");
    return from_exponents(std::move(exponents));
}

Laurent embed_gamma(const GammaElement& g, const MonotoneContext& ctx) {
    const int step = ctx.gamma_embedding_exponent();
    std::vector<int> exponents;
    exponents.reserve(g.poly.support().size());
    for (int j : g.poly.support()) exponents.push_back(j * step);
    return Laurent::from_exponents(std::move(exponents));
}

} // namespace qh
