#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qh/rational.hpp"

namespace qh {

/*
  Classical minimax selectors on sampled functions. The built-in closed
  complexes are cubical: periodic grids for d-tori and the unit-square
  surface of a cube for the 2-sphere. A function is sampled on vertices;
  cells filter by the maximum of their vertex values (lower-star), and

      c_LS(a, f) = min over cycles z representing a of max cell value in z,

  computed by exact Z2 column reduction of the boundary operator in the
  filtration order. The same reduction answers criticality and level-band
  queries.
*/

enum class GridKind { Torus, Sphere2 };

struct GridFunction {
    GridKind kind = GridKind::Torus;
    std::vector<int> resolution;    // per axis for tori; single entry for the sphere
    std::vector<Rational> values;   // vertex values, row-major (lexicographic for the sphere)

    std::string to_text() const;
    static GridFunction from_text(const std::string& text);
    static GridFunction load_file(const std::string& path);
};

struct GridClass {
    enum class Kind { Point, Loop, Fundamental, Explicit };
    Kind kind = Kind::Point;
    int axis = 0;             // Loop: coordinate direction
    std::vector<int> cells;   // Explicit: cell ids of a Z2 chain

    static GridClass point() { return {Kind::Point, 0, {}}; }
    static GridClass loop(int axis) { return {Kind::Loop, axis, {}}; }
    static GridClass fundamental() { return {Kind::Fundamental, 0, {}}; }
    static GridClass explicit_cycle(std::vector<int> cells) {
        return {Kind::Explicit, 0, std::move(cells)};
    }
    static GridClass parse(const std::string& text);  // point | loop:i | fundamental
};

struct Cell {
    int dim = 0;
    std::vector<int> boundary;  // cell ids one dimension down
    std::vector<int> vertices;  // vertex ranks in grid order
};

struct CellComplex {
    int top_dim = 0;
    std::size_t vertex_count = 0;
    std::vector<Cell> cells;
    std::vector<std::vector<int>> by_dim;  // cell ids per dimension
};

// Cells are shared per (kind, resolution); only the values vary.
std::shared_ptr<const CellComplex> grid_cells(GridKind kind, const std::vector<int>& resolution);

struct LevelBandReport {
    std::vector<bool> nontrivial_by_degree;
    // Headline convention: a band is counted as homologically nontrivial
    // when the inclusion hits H_k(X) for some k >= 1. Degree 0 is reported
    // but excluded from the headline (any nonempty band includes points).
    bool nontrivial() const {
        for (std::size_t k = 1; k < nontrivial_by_degree.size(); ++k)
            if (nontrivial_by_degree[k]) return true;
        return false;
    }
};

class GridComplex {
public:
    explicit GridComplex(GridFunction f);

    const GridFunction& function() const { return f_; }
    const CellComplex& cells() const { return *cells_; }
    Rational cell_value(int cell) const;

    // Resolves a class selector to its chain; throws class_not_found for
    // selectors the complex does not carry (loops on the sphere, chains
    // that are not cycles).
    std::vector<int> class_cycle(const GridClass& cls) const;

    // Least sublevel value at which the class appears in the image of
    // H(X^v) -> H(X).
    Rational ls_selector(const GridClass& cls) const;

    // Whether the value belongs to the filtration's event set: some vertex
    // attains it and its lower star changes the sublevel homology.
    bool selector_value_is_critical(const Rational& value) const;

    // Inclusion of the subcomplex spanned by cells with all vertex values in
    // [value - delta, value + delta], degree by degree.
    LevelBandReport level_set_nontrivial(const Rational& value, const Rational& delta) const;

private:
    GridFunction f_;
    std::shared_ptr<const CellComplex> cells_;
    std::vector<Rational> cell_values_;

    struct DegreeReduction;
    mutable std::map<int, std::shared_ptr<const DegreeReduction>> reductions_;
    const DegreeReduction& reduction_for(int degree) const;

    std::vector<int> sublevel_betti(const Rational& cutoff) const;
};

} // namespace qh
