#include "qh/grid_complex.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <mutex>
#include <sstream>
#include <tuple>

#include "qh/errors.hpp"
#include "qh/z2linalg.hpp"

namespace qh {

std::string GridFunction::to_text() const {
    std::ostringstream os;
    if (kind == GridKind::Torus) {
        os << "grid torus " << resolution.size();
        for (int r : resolution) os << " " << r;
    } else {
        os << "grid sphere2 " << resolution.at(0);
    }
    os << "\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        os << format_rational(values[i]) << ((i + 1) % 16 == 0 ? "\n" : " ");
    os << "\n";
    return os.str();
}

GridFunction GridFunction::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string word;
    if (!(is >> word) || word != "grid") throw parse_error("grid file must start with 'grid'");
    GridFunction f;
    std::string kind;
    is >> kind;
    if (kind == "torus") {
        f.kind = GridKind::Torus;
        int axes = 0;
        if (!(is >> axes) || axes < 1 || axes > 6) throw parse_error("torus needs 1..6 axes");
        for (int a = 0; a < axes; ++a) {
            int r = 0;
            if (!(is >> r) || r < 3) throw parse_error("torus resolution must be >= 3 per axis");
            f.resolution.push_back(r);
        }
    } else if (kind == "sphere2") {
        f.kind = GridKind::Sphere2;
        int r = 0;
        if (!(is >> r) || r < 1) throw parse_error("sphere resolution must be >= 1");
        f.resolution.push_back(r);
    } else {
        throw parse_error("unknown grid kind '" + kind + "'");
    }
    std::string token;
    while (is >> token) f.values.push_back(parse_rational(token));

    std::size_t expected = 1;
    if (f.kind == GridKind::Torus) {
        for (int r : f.resolution) expected *= static_cast<std::size_t>(r);
    } else {
        const std::size_t r = static_cast<std::size_t>(f.resolution[0]);
        expected = 6 * r * r + 2;
    }
    if (f.values.size() != expected)
        throw parse_error("expected " + std::to_string(expected) + " vertex values, got " +
                          std::to_string(f.values.size()));
    return f;
}

GridFunction GridFunction::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open grid file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_text(buffer.str());
}

GridClass GridClass::parse(const std::string& text) {
    if (text == "point") return point();
    if (text == "fundamental") return fundamental();
    if (text.rfind("loop:", 0) == 0) {
        try {
            return loop(std::stoi(text.substr(5)) - 1);
        } catch (const std::exception&) {
            throw parse_error("bad loop selector '" + text + "'");
        }
    }
    throw parse_error("unknown class selector '" + text + "' (point | loop:i | fundamental)");
}

namespace {

// d-torus: cells are coordinate tuples c in prod [0, 2 R_a); axis a is
// "extended" in the cell when c_a is odd. Cell ids are mixed-radix ranks.
CellComplex build_torus(const std::vector<int>& resolution) {
    CellComplex complex;
    const int d = static_cast<int>(resolution.size());
    complex.top_dim = d;
    std::vector<int> radix(d);
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) {
        radix[a] = 2 * resolution[a];
        total *= static_cast<std::size_t>(radix[a]);
    }
    complex.cells.resize(total);
    complex.by_dim.assign(d + 1, {});

    std::vector<int> coords(d, 0);
    for (std::size_t id = 0; id < total; ++id) {
        Cell& cell = complex.cells[id];
        cell.dim = 0;
        for (int a = 0; a < d; ++a) cell.dim += coords[a] & 1;

        // Faces: close an odd axis either way (periodic).
        for (int a = 0; a < d; ++a) {
            if (!(coords[a] & 1)) continue;
            for (int dir : {-1, +1}) {
                std::size_t neighbor = 0;
                for (int b = d - 1; b >= 0; --b) {
                    int c = coords[b];
                    if (b == a) c = (c + dir + radix[b]) % radix[b];
                    neighbor = neighbor * static_cast<std::size_t>(radix[b]) +
                               static_cast<std::size_t>(c);
                }
                cell.boundary.push_back(static_cast<int>(neighbor));
            }
        }
        std::sort(cell.boundary.begin(), cell.boundary.end());

        // Vertex ranks in row-major grid order.
        std::vector<int> ranks{0};
        for (int b = d - 1; b >= 0; --b) {
            std::vector<int> next;
            const int base = coords[b] / 2;
            const bool odd = coords[b] & 1;
            for (int r : ranks) {
                next.push_back(r * resolution[b] + base);
                if (odd) next.push_back(r * resolution[b] + (base + 1) % resolution[b]);
            }
            ranks = std::move(next);
        }
        std::sort(ranks.begin(), ranks.end());
        ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
        cell.vertices = std::move(ranks);
        complex.by_dim[cell.dim].push_back(static_cast<int>(id));

        for (int b = d - 1; b >= 0; --b) {
            if (++coords[b] < radix[b]) break;
            coords[b] = 0;
        }
    }
    complex.vertex_count = complex.by_dim[0].size();
    return complex;
}

// 2-sphere as the surface of the cube [0, R]^3, subdivided into unit squares.
CellComplex build_sphere(int resolution) {
    const int R = resolution;
    const auto on_surface = [R](int x, int y, int z) {
        return x == 0 || x == R || y == 0 || y == R || z == 0 || z == R;
    };

    CellComplex complex;
    complex.top_dim = 2;
    complex.by_dim.assign(3, {});

    std::map<std::array<int, 3>, int> vertex_id;
    for (int x = 0; x <= R; ++x)
        for (int y = 0; y <= R; ++y)
            for (int z = 0; z <= R; ++z)
                if (on_surface(x, y, z)) {
                    const int rank = static_cast<int>(vertex_id.size());
                    vertex_id[{x, y, z}] = rank;
                    Cell v;
                    v.dim = 0;
                    v.vertices = {rank};
                    complex.by_dim[0].push_back(static_cast<int>(complex.cells.size()));
                    complex.cells.push_back(std::move(v));
                }
    complex.vertex_count = vertex_id.size();

    std::map<std::pair<int, int>, int> edge_id;
    const auto add_edge = [&](int u, int v) {
        const auto key = std::minmax(u, v);
        auto found = edge_id.find(key);
        if (found != edge_id.end()) return found->second;
        Cell e;
        e.dim = 1;
        e.boundary = {std::min(u, v), std::max(u, v)};  // vertex cell id == rank
        e.vertices = {std::min(u, v), std::max(u, v)};
        const int id = static_cast<int>(complex.cells.size());
        edge_id[key] = id;
        complex.by_dim[1].push_back(id);
        complex.cells.push_back(std::move(e));
        return id;
    };

    for (const auto& [coords, u] : vertex_id) {
        for (int a = 0; a < 3; ++a) {
            std::array<int, 3> next = coords;
            ++next[a];
            const auto found = vertex_id.find(next);
            if (found != vertex_id.end()) add_edge(u, found->second);
        }
    }

    // Unit squares per face of the cube.
    const auto add_square = [&](std::array<int, 3> v00, int axis_u, int axis_v) {
        std::array<int, 3> v10 = v00, v01 = v00, v11 = v00;
        ++v10[axis_u];
        ++v01[axis_v];
        ++v11[axis_u];
        ++v11[axis_v];
        const int a = vertex_id.at(v00), b = vertex_id.at(v10), c = vertex_id.at(v01),
                  e = vertex_id.at(v11);
        Cell sq;
        sq.dim = 2;
        sq.boundary = {add_edge(a, b), add_edge(a, c), add_edge(b, e), add_edge(c, e)};
        std::sort(sq.boundary.begin(), sq.boundary.end());
        sq.vertices = {a, b, c, e};
        std::sort(sq.vertices.begin(), sq.vertices.end());
        complex.by_dim[2].push_back(static_cast<int>(complex.cells.size()));
        complex.cells.push_back(std::move(sq));
    };
    for (int fixed_axis = 0; fixed_axis < 3; ++fixed_axis)
        for (int side : {0, R}) {
            const int axis_u = fixed_axis == 0 ? 1 : 0;
            const int axis_v = fixed_axis == 2 ? 1 : 2;
            for (int u = 0; u < R; ++u)
                for (int v = 0; v < R; ++v) {
                    std::array<int, 3> base{};
                    base[fixed_axis] = side;
                    base[axis_u] = u;
                    base[axis_v] = v;
                    add_square(base, axis_u, axis_v);
                }
        }
    return complex;
}

} // namespace

std::shared_ptr<const CellComplex> grid_cells(GridKind kind, const std::vector<int>& resolution) {
    static std::mutex mutex;
    static std::map<std::pair<GridKind, std::vector<int>>, std::shared_ptr<const CellComplex>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{kind, resolution}];
    if (!slot)
        slot = std::make_shared<const CellComplex>(kind == GridKind::Torus
                                                       ? build_torus(resolution)
                                                       : build_sphere(resolution.at(0)));
    return slot;
}

GridComplex::GridComplex(GridFunction f) : f_(std::move(f)) {
    cells_ = grid_cells(f_.kind, f_.resolution);
    cell_values_.reserve(cells_->cells.size());
    for (const auto& cell : cells_->cells) {
        Rational value = f_.values.at(static_cast<std::size_t>(cell.vertices.front()));
        for (int v : cell.vertices) value = std::max(value, f_.values.at(static_cast<std::size_t>(v)));
        cell_values_.push_back(value);
    }
}

Rational GridComplex::cell_value(int cell) const {
    return cell_values_.at(static_cast<std::size_t>(cell));
}

std::vector<int> GridComplex::class_cycle(const GridClass& cls) const {
    switch (cls.kind) {
        case GridClass::Kind::Point:
            return {cells_->by_dim[0].front()};
        case GridClass::Kind::Fundamental:
            return cells_->by_dim[cells_->top_dim];
        case GridClass::Kind::Loop: {
            if (f_.kind != GridKind::Torus)
                throw class_not_found("loop classes exist on tori only");
            const int d = static_cast<int>(f_.resolution.size());
            if (cls.axis < 0 || cls.axis >= d) throw class_not_found("loop axis out of range");
            // Edges along the axis at base position 0 elsewhere: ids are
            // mixed-radix ranks of coordinate tuples.
            std::vector<int> cycle;
            for (int step = 0; step < f_.resolution[cls.axis]; ++step) {
                std::size_t id = 0;
                for (int b = d - 1; b >= 0; --b) {
                    const int c = b == cls.axis ? 2 * step + 1 : 0;
                    id = id * static_cast<std::size_t>(2 * f_.resolution[b]) +
                         static_cast<std::size_t>(c);
                }
                cycle.push_back(static_cast<int>(id));
            }
            std::sort(cycle.begin(), cycle.end());
            return cycle;
        }
        case GridClass::Kind::Explicit: {
            std::vector<int> cycle = cls.cells;
            std::sort(cycle.begin(), cycle.end());
            cycle.erase(std::unique(cycle.begin(), cycle.end()), cycle.end());
            if (cycle.empty()) throw class_not_found("empty chain");
            const int dim = cells_->cells.at(static_cast<std::size_t>(cycle.front())).dim;
            std::vector<int> boundary;
            for (int c : cycle) {
                if (cells_->cells.at(static_cast<std::size_t>(c)).dim != dim)
                    throw class_not_found("chain mixes dimensions");
                boundary = sparse_xor(boundary, cells_->cells[static_cast<std::size_t>(c)].boundary);
            }
            if (!boundary.empty()) throw class_not_found("chain is not a cycle");
            return cycle;
        }
    }
    throw class_not_found("unhandled class selector");
}

// Columns of the degree+1 boundary operator reduced in the filtration order
// of this function's lower-star levels.
struct GridComplex::DegreeReduction {
    std::vector<int> order;          // row position -> cell id, ascending level
    std::vector<int> position;      // cell id -> row position (or -1)
    SparseReducer reducer;
};

const GridComplex::DegreeReduction& GridComplex::reduction_for(int degree) const {
    auto found = reductions_.find(degree);
    if (found != reductions_.end()) return *found->second;

    auto reduction = std::make_shared<DegreeReduction>();
    reduction->order = cells_->by_dim.at(static_cast<std::size_t>(degree));
    std::stable_sort(reduction->order.begin(), reduction->order.end(), [&](int a, int b) {
        const Rational& va = cell_values_[static_cast<std::size_t>(a)];
        const Rational& vb = cell_values_[static_cast<std::size_t>(b)];
        return va != vb ? va < vb : a < b;
    });
    reduction->position.assign(cells_->cells.size(), -1);
    for (std::size_t p = 0; p < reduction->order.size(); ++p)
        reduction->position[static_cast<std::size_t>(reduction->order[p])] = static_cast<int>(p);

    if (degree + 1 <= cells_->top_dim) {
        // Insert columns in ascending filtration order of their cofaces;
        // the reducer outcome is order-independent, this keeps fill-in low.
        std::vector<int> sources = cells_->by_dim[static_cast<std::size_t>(degree + 1)];
        std::stable_sort(sources.begin(), sources.end(), [&](int a, int b) {
            const Rational& va = cell_values_[static_cast<std::size_t>(a)];
            const Rational& vb = cell_values_[static_cast<std::size_t>(b)];
            return va != vb ? va < vb : a < b;
        });
        for (int source : sources) {
            std::vector<int> column;
            for (int face : cells_->cells[static_cast<std::size_t>(source)].boundary)
                column.push_back(reduction->position[static_cast<std::size_t>(face)]);
            std::sort(column.begin(), column.end());
            reduction->reducer.add_column(std::move(column));
        }
    }
    reductions_.emplace(degree, reduction);
    return *reduction;
}

Rational GridComplex::ls_selector(const GridClass& cls) const {
    const std::vector<int> cycle = class_cycle(cls);
    const int degree = cells_->cells.at(static_cast<std::size_t>(cycle.front())).dim;
    const DegreeReduction& reduction = reduction_for(degree);

    std::vector<int> v;
    v.reserve(cycle.size());
    for (int c : cycle) v.push_back(reduction.position[static_cast<std::size_t>(c)]);
    std::sort(v.begin(), v.end());

    const std::vector<int> minimized = reduction.reducer.minimize_top(v);
    if (minimized.empty()) throw class_not_found("class vanishes in the full complex");
    return cell_values_[static_cast<std::size_t>(reduction.order[static_cast<std::size_t>(
        minimized.back())])];
}

std::vector<int> GridComplex::sublevel_betti(const Rational& cutoff) const {
    std::vector<int> betti(static_cast<std::size_t>(cells_->top_dim) + 1, 0);
    std::vector<int> chains(betti.size(), 0);
    std::vector<int> ranks(betti.size() + 1, 0);
    std::vector<int> position(cells_->cells.size(), -1);
    for (int dim = 0; dim <= cells_->top_dim; ++dim) {
        int count = 0;
        for (int id : cells_->by_dim[static_cast<std::size_t>(dim)])
            if (cell_values_[static_cast<std::size_t>(id)] <= cutoff) position[static_cast<std::size_t>(id)] = count++;
        chains[static_cast<std::size_t>(dim)] = count;
    }
    for (int dim = 1; dim <= cells_->top_dim; ++dim) {
        SparseReducer reducer;
        for (int id : cells_->by_dim[static_cast<std::size_t>(dim)]) {
            if (position[static_cast<std::size_t>(id)] < 0) continue;
            std::vector<int> column;
            for (int face : cells_->cells[static_cast<std::size_t>(id)].boundary)
                column.push_back(position[static_cast<std::size_t>(face)]);
            std::sort(column.begin(), column.end());
            reducer.add_column(std::move(column));
        }
        ranks[static_cast<std::size_t>(dim)] = static_cast<int>(reducer.rank());
    }
    for (int dim = 0; dim <= cells_->top_dim; ++dim)
        betti[static_cast<std::size_t>(dim)] = chains[static_cast<std::size_t>(dim)] -
                                               ranks[static_cast<std::size_t>(dim)] -
                                               ranks[static_cast<std::size_t>(dim) + 1];
    return betti;
}

bool GridComplex::selector_value_is_critical(const Rational& value) const {
    Rational previous;
    bool attained = false, has_previous = false;
    for (const auto& v : f_.values) {
        if (v == value) attained = true;
        if (v < value && (!has_previous || v > previous)) {
            previous = v;
            has_previous = true;
        }
    }
    if (!attained) return false;
    const std::vector<int> after = sublevel_betti(value);
    if (!has_previous) {
        for (int b : after)
            if (b != 0) return true;
        return false;
    }
    return after != sublevel_betti(previous);
}

LevelBandReport GridComplex::level_set_nontrivial(const Rational& value,
                                                  const Rational& delta) const {
    if (delta <= Rational(0)) throw bad_parameters("delta must be positive");
    const Rational lo = value - delta, hi = value + delta;

    std::vector<char> in_band(cells_->cells.size(), 0);
    for (std::size_t id = 0; id < cells_->cells.size(); ++id) {
        bool inside = true;
        for (int v : cells_->cells[id].vertices) {
            const Rational& fv = f_.values[static_cast<std::size_t>(v)];
            if (fv < lo || fv > hi) {
                inside = false;
                break;
            }
        }
        in_band[id] = inside;
    }

    LevelBandReport report;
    report.nontrivial_by_degree.assign(static_cast<std::size_t>(cells_->top_dim) + 1, false);
    for (int dim = 0; dim <= cells_->top_dim; ++dim) {
        const auto& level_cells = cells_->by_dim[static_cast<std::size_t>(dim)];
        std::vector<int> dense(cells_->cells.size(), -1);
        for (std::size_t p = 0; p < level_cells.size(); ++p)
            dense[static_cast<std::size_t>(level_cells[p])] = static_cast<int>(p);

        // Boundaries of the full complex in this degree.
        GaussianBasis boundaries;
        if (dim + 1 <= cells_->top_dim)
            for (int id : cells_->by_dim[static_cast<std::size_t>(dim + 1)]) {
                BitVector column(level_cells.size());
                for (int face : cells_->cells[static_cast<std::size_t>(id)].boundary)
                    column.flip(static_cast<std::size_t>(dense[static_cast<std::size_t>(face)]));
                boundaries.insert(std::move(column));
            }

        // Kernel of the band's boundary operator via companion tracking.
        std::vector<int> band_cells;
        for (int id : level_cells)
            if (in_band[static_cast<std::size_t>(id)]) band_cells.push_back(id);

        bool hit = false;
        if (dim == 0) {
            hit = !band_cells.empty();  // points never bound in a closed complex
        } else {
            const auto& faces = cells_->by_dim[static_cast<std::size_t>(dim - 1)];
            std::vector<int> face_dense(cells_->cells.size(), -1);
            for (std::size_t p = 0; p < faces.size(); ++p)
                face_dense[static_cast<std::size_t>(faces[p])] = static_cast<int>(p);

            std::map<std::size_t, BitVector> echelon;     // pivot -> reduced column
            std::map<std::size_t, BitVector> companions;  // pivot -> column combination
            for (std::size_t i = 0; i < band_cells.size() && !hit; ++i) {
                BitVector column(faces.size());
                for (int face : cells_->cells[static_cast<std::size_t>(band_cells[i])].boundary)
                    column.flip(static_cast<std::size_t>(face_dense[static_cast<std::size_t>(face)]));
                BitVector combo(level_cells.size());
                combo.set(static_cast<std::size_t>(dense[static_cast<std::size_t>(band_cells[i])]));
                // Reduce by hand to carry the companion along.
                while (true) {
                    const auto top = column.highest_bit();
                    if (!top) break;
                    const auto row = echelon.find(*top);
                    if (row == echelon.end()) break;
                    column ^= row->second;
                    combo ^= companions.at(*top);
                }
                if (const auto top = column.highest_bit()) {
                    echelon.emplace(*top, std::move(column));
                    companions.emplace(*top, std::move(combo));
                } else {
                    // combo is a cycle supported in the band.
                    if (!boundaries.contains(combo)) hit = true;
                }
            }
        }
        report.nontrivial_by_degree[static_cast<std::size_t>(dim)] = hit;
    }
    return report;
}

} // namespace qh
