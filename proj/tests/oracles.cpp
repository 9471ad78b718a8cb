#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qh/z2linalg.hpp"

namespace qh_test {

using qh::BitVector;
using qh::ChainVec;
using qh::FilteredComplex;
using qh::GaussianBasis;
using qh::Laurent;
using qh::Level;
using qh::Rational;

qh::Level oracle_min_level(const SmallComplex& complex, const std::vector<int>& cycle) {
    const std::size_t cells = complex.dim.size();
    BitVector target(cells);
    for (int c : cycle) target.flip(static_cast<std::size_t>(c));
    if (!target.any()) return std::nullopt;

    GaussianBasis boundaries;
    for (std::size_t c = 0; c < cells; ++c) {
        if (complex.boundary[c].empty()) continue;
        BitVector column(cells);
        for (int face : complex.boundary[c]) column.flip(static_cast<std::size_t>(face));
        boundaries.insert(std::move(column));
    }
    if (boundaries.contains(target)) return std::nullopt;

    std::set<Rational> events;
    for (const auto& v : complex.level) events.insert(v);
    for (const auto& v : events) {
        GaussianBasis span = boundaries;
        for (std::size_t c = 0; c < cells; ++c)
            if (complex.level[c] <= v) {
                BitVector unit(cells);
                unit.set(c);
                span.insert(std::move(unit));
            }
        if (span.contains(target)) return v;
    }
    return std::nullopt;  // unreachable for a non-bounding cycle
}

Materialized materialize_with_shifts(const qh::FilteredComplex& complex, const ChainVec& cycle) {
    const auto& ctx = complex.context();
    const int step = ctx.maslov_finite() ? ctx.maslov_min : 0;
    const Rational area = ctx.area();

    std::set<int> degrees;
    for (const auto& [i, coeff] : cycle)
        for (int r : coeff.support())
            degrees.insert(complex.generators()[i].degree - r * step);

    // One cell per (generator, shift) pair in any slice of a needed degree or
    // of the degree one above (the boundary sources).
    std::map<std::pair<int, int>, int> cell_of;
    Materialized out;
    const auto add_cell = [&](int gen, int shift, int dim) {
        const auto key = std::make_pair(gen, shift);
        auto found = cell_of.find(key);
        if (found != cell_of.end()) return found->second;
        const int id = static_cast<int>(out.complex.dim.size());
        cell_of[key] = id;
        out.complex.dim.push_back(dim);
        out.complex.boundary.push_back({});
        out.complex.level.push_back(complex.generators()[gen].action - area * Rational(shift));
        return id;
    };

    const auto slice_members = [&](int degree) {
        std::vector<std::pair<int, int>> members;
        for (std::size_t i = 0; i < complex.generators().size(); ++i) {
            const int gdeg = complex.generators()[i].degree;
            if (step == 0) {
                if (gdeg == degree) members.push_back({static_cast<int>(i), 0});
            } else if ((gdeg - degree) % step == 0) {
                members.push_back({static_cast<int>(i), (gdeg - degree) / step});
            }
        }
        return members;
    };

    for (int degree : degrees) {
        for (const auto& [gen, shift] : slice_members(degree)) add_cell(gen, shift, 0);
        for (const auto& [gen, shift] : slice_members(degree + 1)) {
            const int source = add_cell(gen, shift, 1);
            for (const auto& [y, coeff] : complex.differential(gen))
                for (int r : coeff.support())
                    out.complex.boundary[static_cast<std::size_t>(source)].push_back(
                        add_cell(y, shift + r, 0));
        }
    }
    for (const auto& [i, coeff] : cycle)
        for (int r : coeff.support()) out.cycle_cells.push_back(cell_of.at({i, r}));
    return out;
}

SmallComplex small_complex_from_grid(const qh::GridComplex& grid) {
    SmallComplex out;
    const auto& cells = grid.cells().cells;
    out.dim.reserve(cells.size());
    out.boundary.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        out.dim.push_back(cells[c].dim);
        out.boundary.push_back(cells[c].boundary);
        out.level.push_back(grid.cell_value(static_cast<int>(c)));
    }
    return out;
}

qh::FilteredComplex random_filtered_complex(std::mt19937_64& rng, int generators, int maslov,
                                            bool quantum_terms) {
    const int chern = maslov == 3 ? 3 : 1 + static_cast<int>(rng() % 3);
    const Rational kappa(1 + static_cast<long long>(rng() % 3), 2);
    const qh::MonotoneContext ctx(maslov, chern, kappa);
    const Rational area = ctx.area();

    std::vector<qh::FilteredGenerator> gens;
    for (int i = 0; i < generators; ++i) {
        qh::FilteredGenerator g;
        g.id = "g" + std::to_string(i + 1);
        g.degree = static_cast<int>(rng() % 6);
        g.action = Rational(static_cast<long long>(rng() % 64), 8);
        gens.push_back(std::move(g));
    }

    std::vector<ChainVec> diff(gens.size());
    // Birth pairs: d(x) = y * t^r with the degree and filtration constraints.
    std::vector<int> order(gens.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<bool> used(gens.size(), false);
    for (std::size_t a = 0; a < order.size(); ++a) {
        if (used[static_cast<std::size_t>(order[a])]) continue;
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            const int x = order[a], y = order[b];
            if (used[static_cast<std::size_t>(y)]) continue;
            const int numerator = gens[static_cast<std::size_t>(y)].degree -
                                  gens[static_cast<std::size_t>(x)].degree + 1;
            if (numerator % maslov != 0) continue;
            const int r = numerator / maslov;
            if (!quantum_terms && r != 0) continue;
            if (std::abs(r) > 2) continue;
            if (!(gens[static_cast<std::size_t>(y)].action - area * Rational(r) <
                  gens[static_cast<std::size_t>(x)].action))
                continue;
            diff[static_cast<std::size_t>(x)].emplace_back(y, Laurent::monomial(r));
            used[static_cast<std::size_t>(x)] = used[static_cast<std::size_t>(y)] = true;
            break;
        }
    }

    // Filtered base changes x -> x + y t^r keep d^2 = 0 and the strict
    // filtration drop; they thicken the matrix.
    const int ops = 3 * generators;
    for (int op = 0; op < ops; ++op) {
        const int x = static_cast<int>(rng() % gens.size());
        const int y = static_cast<int>(rng() % gens.size());
        if (x == y) continue;
        const int numerator = gens[static_cast<std::size_t>(y)].degree -
                              gens[static_cast<std::size_t>(x)].degree;
        if (numerator % maslov != 0) continue;
        const int r = numerator / maslov;
        if (!quantum_terms && r != 0) continue;
        if (std::abs(r) > 2) continue;
        if (!(gens[static_cast<std::size_t>(y)].action - area * Rational(r) <
              gens[static_cast<std::size_t>(x)].action))
            continue;
        const Laurent tr = Laurent::monomial(r);
        // Column: d(x) += t^r d(y).
        for (const auto& [target, coeff] : diff[static_cast<std::size_t>(y)])
            diff[static_cast<std::size_t>(x)].emplace_back(target, coeff * tr);
        // Rows: every d(z) with an x-component picks up the y-substitute.
        for (std::size_t z = 0; z < gens.size(); ++z) {
            ChainVec extra;
            for (const auto& [target, coeff] : diff[z])
                if (target == x) extra.emplace_back(y, coeff * tr);
            diff[z].insert(diff[z].end(), extra.begin(), extra.end());
        }
    }
    return qh::FilteredComplex(ctx, std::move(gens), std::move(diff));
}

qh::ChainVec random_cycle(std::mt19937_64& rng, const qh::FilteredComplex& complex) {
    const auto& ctx = complex.context();
    const int step = ctx.maslov_finite() ? ctx.maslov_min : 0;

    for (int attempt = 0; attempt < 40; ++attempt) {
        const std::size_t pick = rng() % complex.generators().size();
        const int degree = complex.generators()[pick].degree;

        // Slice cells of this degree and their boundaries one degree down.
        std::vector<std::pair<int, int>> members;
        for (std::size_t i = 0; i < complex.generators().size(); ++i) {
            const int gdeg = complex.generators()[i].degree;
            if (step == 0) {
                if (gdeg == degree) members.push_back({static_cast<int>(i), 0});
            } else if ((gdeg - degree) % step == 0 &&
                       std::abs((gdeg - degree) / step) <= 3) {
                members.push_back({static_cast<int>(i), (gdeg - degree) / step});
            }
        }
        if (members.empty()) continue;

        std::map<std::pair<int, int>, int> row;  // (gen, shift) in degree-1
        const auto row_of = [&](int gen, int shift) {
            const auto key = std::make_pair(gen, shift);
            auto found = row.find(key);
            if (found == row.end()) found = row.emplace(key, static_cast<int>(row.size())).first;
            return found->second;
        };
        for (const auto& [gen, shift] : members)
            for (const auto& [y, coeff] : complex.differential(gen))
                for (int r : coeff.support()) row_of(y, shift + r);
        const std::size_t rows_n = std::max<std::size_t>(1, row.size());

        // Kernel of the slice boundary via companion columns.
        std::map<std::size_t, BitVector> echelon, companions;
        std::vector<BitVector> kernel;
        const std::size_t width = members.size();
        for (std::size_t m = 0; m < width; ++m) {
            const auto [gen, shift] = members[m];
            BitVector column(rows_n);
            for (const auto& [y, coeff] : complex.differential(gen))
                for (int r : coeff.support())
                    column.flip(static_cast<std::size_t>(row_of(y, shift + r)));
            BitVector combo(width);
            combo.set(m);
            while (true) {
                const auto top = column.highest_bit();
                if (!top) break;
                const auto hit = echelon.find(*top);
                if (hit == echelon.end()) break;
                column ^= hit->second;
                combo ^= companions.at(*top);
            }
            if (const auto top = column.highest_bit()) {
                echelon.emplace(*top, std::move(column));
                companions.emplace(*top, std::move(combo));
            } else {
                kernel.push_back(std::move(combo));
            }
        }
        if (kernel.empty()) continue;

        BitVector chosen(width);
        for (const auto& basis_vec : kernel)
            if (rng() & 1) chosen ^= basis_vec;
        if (!chosen.any()) chosen = kernel.front();

        ChainVec cycle;
        for (std::size_t m : chosen.bits()) {
            const auto [gen, shift] = members[m];
            cycle.emplace_back(gen, Laurent::monomial(shift));
        }
        return cycle;
    }
    return {};
}

} // namespace qh_test
