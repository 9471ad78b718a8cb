#include "qh/filtered_complex.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include "qh/z2linalg.hpp"

namespace qh {

namespace {

void normalize_chain(ChainVec& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ChainVec out;
    for (std::size_t i = 0; i < v.size();) {
        Laurent sum = v[i].second;
        std::size_t j = i + 1;
        while (j < v.size() && v[j].first == v[i].first) sum = sum + v[j++].second;
        if (!sum.is_zero()) out.emplace_back(v[i].first, std::move(sum));
        i = j;
    }
    v = std::move(out);
}

} // namespace

FilteredComplex::FilteredComplex(MonotoneContext ctx, std::vector<FilteredGenerator> generators,
                                 std::vector<ChainVec> differential)
    : ctx_(ctx), gens_(std::move(generators)), diff_(std::move(differential)) {
    if (diff_.size() != gens_.size())
        throw bad_parameters("differential must have one row per generator");
    for (auto& row : diff_) normalize_chain(row);

    for (std::size_t x = 0; x < gens_.size(); ++x) {
        for (const auto& [y, coeff] : diff_[x]) {
            if (y < 0 || y >= static_cast<int>(gens_.size()))
                throw bad_parameters("differential hits an unknown generator");
            for (int r : coeff.support()) {
                if (r != 0 && !ctx_.maslov_finite())
                    throw bad_parameters("t is forbidden in the weakly exact case");
                const int term_degree =
                    gens_[y].degree - r * (ctx_.maslov_finite() ? ctx_.maslov_min : 0);
                if (term_degree != gens_[x].degree - 1)
                    throw bad_parameters("differential must shift degree by -1 (generator " +
                                         gens_[x].id + ")");
            }
        }
        const Level df = filtration(diff_[x]);
        if (df && !(*df < gens_[x].action))
            throw bad_parameters("differential must strictly decrease the filtration (generator " +
                                 gens_[x].id + ")");
    }
    for (std::size_t x = 0; x < gens_.size(); ++x)
        if (!boundary(diff_[x]).empty())
            throw bad_parameters("differential does not square to zero (generator " + gens_[x].id +
                                 ")");
}

int FilteredComplex::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].id == id) return static_cast<int>(i);
    return -1;
}

ChainVec FilteredComplex::boundary(const ChainVec& chain) const {
    ChainVec out;
    for (const auto& [x, coeff] : chain)
        for (const auto& [y, dcoeff] : diff_[x]) out.emplace_back(y, coeff * dcoeff);
    normalize_chain(out);
    return out;
}

Level FilteredComplex::filtration(const ChainVec& chain) const {
    Level best;
    const Rational area = ctx_.area();
    for (const auto& [x, coeff] : chain) {
        const auto nu = coeff.valuation();
        if (!nu) continue;
        const Rational level = gens_[x].action + area * Rational(*nu);
        if (!best || level > *best) best = level;
    }
    return best;
}

std::string FilteredComplex::chain_to_string(const ChainVec& chain) const {
    if (chain.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [x, coeff] : chain)
        for (int r : coeff.support()) {
            if (!first) os << " + ";
            first = false;
            os << gens_[x].id;
            if (r == 1)
                os << "*t";
            else if (r != 0)
                os << "*t^" << r;
        }
    return os.str();
}

ChainVec FilteredComplex::parse_chain(const std::string& text) const {
    ChainVec out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find('+', pos);
        std::string term = text.substr(pos, next == std::string::npos ? next : next - pos);
        pos = next == std::string::npos ? text.size() + 1 : next + 1;
        while (!term.empty() && (term.front() == ' ' || term.front() == '\t')) term.erase(term.begin());
        while (!term.empty() && (term.back() == ' ' || term.back() == '\t')) term.pop_back();
        if (term.empty() || term == "0") continue;
        const std::size_t star = term.find('*');
        const std::string id = term.substr(0, star);
        Laurent coeff = Laurent::one();
        if (star != std::string::npos) coeff = Laurent::parse(term.substr(star + 1));
        const int idx = index_of(id);
        if (idx < 0) throw parse_error("unknown generator '" + id + "'");
        out.emplace_back(idx, coeff);
    }
    normalize_chain(out);
    return out;
}

std::string FilteredComplex::to_text() const {
    std::ostringstream os;
    os << "complex\n";
    os << "context " << ctx_.to_string() << "\n";
    for (const auto& g : gens_)
        os << "gen " << g.id << " " << format_rational(g.action) << " " << g.degree << "\n";
    for (std::size_t x = 0; x < gens_.size(); ++x)
        for (const auto& [y, coeff] : diff_[x])
            os << "d " << gens_[x].id << " " << gens_[y].id << " " << coeff.to_string() << "\n";
    return os.str();
}

FilteredComplex FilteredComplex::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    bool header = false;
    std::optional<MonotoneContext> ctx;
    std::vector<FilteredGenerator> gens;
    std::vector<std::tuple<std::string, std::string, std::string>> diff_lines;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "complex") {
            header = true;
        } else if (word == "context") {
            std::string rest;
            std::getline(ls, rest);
            ctx = MonotoneContext::from_string(rest);
        } else if (word == "gen") {
            FilteredGenerator g;
            std::string action;
            if (!(ls >> g.id >> action >> g.degree)) throw parse_error("bad gen line: " + line);
            g.action = parse_rational(action);
            gens.push_back(std::move(g));
        } else if (word == "d") {
            std::string src, dst, coeff;
            if (!(ls >> src >> dst)) throw parse_error("bad d line: " + line);
            std::getline(ls, coeff);
            if (coeff.find_first_not_of(" \t") == std::string::npos) coeff = "1";
            diff_lines.emplace_back(src, dst, coeff);
        } else {
            throw parse_error("unknown directive '" + word + "' in complex file");
        }
    }
    if (!header || !ctx) throw parse_error("complex file needs a 'complex' header and a context");

    const auto find = [&](const std::string& id) {
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i].id == id) return static_cast<int>(i);
        throw parse_error("unknown generator '" + id + "'");
    };
    std::vector<ChainVec> diff(gens.size());
    for (const auto& [src, dst, coeff] : diff_lines)
        diff[find(src)].emplace_back(find(dst), Laurent::parse(coeff));
    return FilteredComplex(*ctx, std::move(gens), std::move(diff));
}

FilteredComplex FilteredComplex::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open complex file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_text(buffer.str());
}

namespace {

// One fixed-degree Z2 slice of the Lambda-complex: every shifted generator
// x (x) t^j in this degree, ordered by filtration level.
struct DegreeSlice {
    std::vector<std::tuple<Rational, int, int>> rows;  // (level, gen, shift), ascending
    std::map<std::pair<int, int>, int> position;       // (gen, shift) -> row

    static DegreeSlice build(const FilteredComplex& complex, int degree) {
        DegreeSlice slice;
        const auto& ctx = complex.context();
        const Rational area = ctx.area();
        for (std::size_t i = 0; i < complex.generators().size(); ++i) {
            const auto& g = complex.generators()[i];
            int shift = 0;
            if (ctx.maslov_finite()) {
                if ((g.degree - degree) % ctx.maslov_min != 0) continue;
                shift = (g.degree - degree) / ctx.maslov_min;
            } else if (g.degree != degree) {
                continue;
            }
            slice.rows.emplace_back(g.action - area * Rational(shift), static_cast<int>(i), shift);
        }
        std::sort(slice.rows.begin(), slice.rows.end());
        for (std::size_t p = 0; p < slice.rows.size(); ++p)
            slice.position[{std::get<1>(slice.rows[p]), std::get<2>(slice.rows[p])}] =
                static_cast<int>(p);
        return slice;
    }
};

} // namespace

Level spectral_invariant(const FilteredComplex& complex, const ChainVec& cycle) {
    ChainVec z = cycle;
    normalize_chain(z);
    if (z.empty()) return std::nullopt;
    if (!complex.is_cycle(z)) throw not_a_cycle("spectral_invariant expects a cycle");

    const auto& ctx = complex.context();
    const int step = ctx.maslov_finite() ? ctx.maslov_min : 0;

    // Group the cycle's monomial terms by their total degree.
    std::map<int, std::vector<std::pair<int, int>>> by_degree;  // degree -> (gen, shift)
    for (const auto& [i, coeff] : z)
        for (int r : coeff.support())
            by_degree[complex.generators()[i].degree - r * step].push_back({i, r});

    Level best;
    for (const auto& [degree, terms] : by_degree) {
        const DegreeSlice slice = DegreeSlice::build(complex, degree);
        const DegreeSlice sources = DegreeSlice::build(complex, degree + 1);

        SparseReducer reducer;
        for (const auto& [level, gen, shift] : sources.rows) {
            (void)level;
            std::vector<int> column;
            for (const auto& [y, coeff] : complex.differential(gen))
                for (int r : coeff.support())
                    column.push_back(slice.position.at({y, shift + r}));
            std::sort(column.begin(), column.end());
            reducer.add_column(std::move(column));
        }

        std::vector<int> component;
        for (const auto& [gen, shift] : terms) component.push_back(slice.position.at({gen, shift}));
        std::sort(component.begin(), component.end());

        const std::vector<int> reduced = reducer.minimize_top(component);
        if (reduced.empty()) continue;  // this component bounds
        const Rational level = std::get<0>(slice.rows[reduced.back()]);
        if (!best || level > *best) best = level;
    }
    return best;
}

FilteredComplex morse_to_filtered(const std::vector<std::string>& ids,
                                  const std::map<std::string, Rational>& values,
                                  const std::map<std::string, int>& indices,
                                  const std::map<std::string, std::vector<std::string>>& differential,
                                  const MonotoneContext& ctx) {
    std::vector<FilteredGenerator> gens;
    std::map<std::string, int> at;
    for (const auto& id : ids) {
        const auto value = values.find(id);
        const auto index = indices.find(id);
        if (value == values.end() || index == indices.end())
            throw invalid_morse_data("critical point '" + id + "' misses a value or an index");
        at[id] = static_cast<int>(gens.size());
        gens.push_back({id, value->second, index->second});
    }
    std::vector<ChainVec> diff(gens.size());
    for (const auto& [src, targets] : differential) {
        const auto found = at.find(src);
        if (found == at.end()) throw invalid_morse_data("unknown critical point '" + src + "'");
        for (const auto& dst : targets) {
            const auto target = at.find(dst);
            if (target == at.end()) throw invalid_morse_data("unknown critical point '" + dst + "'");
            if (gens[target->second].degree != gens[found->second].degree - 1)
                throw invalid_morse_data("Morse differential must drop the index by one");
            if (!(gens[target->second].action < gens[found->second].action))
                throw invalid_morse_data("Morse differential must strictly decrease f");
            diff[found->second].emplace_back(target->second, Laurent::one());
        }
    }
    try {
        return FilteredComplex(ctx, std::move(gens), std::move(diff));
    } catch (const bad_parameters& e) {
        throw invalid_morse_data(e.what());
    }
}

} // namespace qh
