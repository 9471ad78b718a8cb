#include "qh/ring_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qh {

namespace {

using nlohmann::json;

json context_to_json(const MonotoneContext& ctx) {
    json j;
    if (ctx.maslov_finite())
        j["N_L"] = ctx.maslov_min;
    else
        j["N_L"] = "inf";
    j["C_M"] = ctx.chern_min;
    j["kappa"] = format_rational(ctx.kappa);
    return j;
}

MonotoneContext context_from_json(const json& j) {
    int maslov = kInfiniteMaslov;
    if (j.at("N_L").is_number_integer())
        maslov = j.at("N_L").get<int>();
    else if (j.at("N_L").get<std::string>() != "inf")
        throw parse_error("N_L must be an integer or \"inf\"");
    return MonotoneContext(maslov, j.at("C_M").get<int>(),
                           parse_rational(j.at("kappa").get<std::string>()));
}

json ring_to_json_object(const RingSpec& ring) {
    json j;
    j["name"] = ring.name;
    j["kind"] = ring.kind == RingKind::Ambient ? "ambient" : "lagrangian";
    j["dim"] = ring.dim;
    j["variable"] = std::string(1, ring.variable_char());
    j["commutative"] = ring.commutative;
    j["context"] = context_to_json(ring.context);
    j["basis"] = json::array();
    for (const auto& e : ring.basis) j["basis"].push_back({{"id", e.id}, {"degree", e.degree}});
    j["unit"] = ring.basis[ring.unit].id;
    j["products"] = json::array();
    const int b = static_cast<int>(ring.basis_size());
    for (int i = 0; i < b; ++i)
        for (int j2 = (ring.commutative ? i : 0); j2 < b; ++j2) {
            if (i == ring.unit || j2 == ring.unit) continue;
            const SparseVec& v = ring.constant(i, j2);
            if (v.empty()) continue;
            j["products"].push_back({{"lhs", ring.basis[i].id},
                                     {"rhs", ring.basis[j2].id},
                                     {"value", ClassVector(&ring, SparseVec(v)).to_string()}});
        }
    if (ring.has_module_constants()) {
        j["ambient"] = ring_to_json_object(*ring.ambient);
        j["modules"] = json::array();
        const int ab = static_cast<int>(ring.ambient->basis_size());
        for (int i = 0; i < ab; ++i) {
            if (i == ring.ambient->unit) continue;
            for (int j2 = 0; j2 < b; ++j2) {
                const SparseVec& v = ring.module_constant(i, j2);
                if (v.empty()) continue;
                j["modules"].push_back({{"lhs", ring.ambient->basis[i].id},
                                        {"rhs", ring.basis[j2].id},
                                        {"value", ClassVector(&ring, SparseVec(v)).to_string()}});
            }
        }
    }
    return j;
}

SparseVec parse_value(const RingSpec& ring, const std::string& text) {
    return SparseVec(ClassVector::parse(ring, text).components());
}

RingPtr ring_from_json_object(const json& j) {
    RingSpecBuilder builder;
    builder.name = j.at("name").get<std::string>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ambient")
        builder.kind = RingKind::Ambient;
    else if (kind == "lagrangian")
        builder.kind = RingKind::Lagrangian;
    else
        throw parse_error("kind must be ambient or lagrangian");
    builder.dim = j.at("dim").get<int>();
    builder.context = context_from_json(j.at("context"));
    if (j.contains("variable")) {
        const std::string var = j.at("variable").get<std::string>();
        if (var == "t")
            builder.variable = CoeffVariable::T;
        else if (var == "s")
            builder.variable = CoeffVariable::S;
        else
            throw parse_error("variable must be t or s");
    }
    builder.commutative = j.value("commutative", true);
    for (const auto& e : j.at("basis"))
        builder.add_basis(e.at("id").get<std::string>(), e.at("degree").get<int>());
    builder.unit_id = j.at("unit").get<std::string>();
    if (j.contains("ambient")) builder.ambient = ring_from_json_object(j.at("ambient"));

    // Constants refer to basis ids; materialize a throwaway ring with the
    // final shape to reuse the ClassVector parser.
    RingSpecBuilder probe = builder;
    RingPtr skeleton = probe.build();
    if (j.contains("products"))
        for (const auto& p : j.at("products"))
            builder.set_product(skeleton->require_index(p.at("lhs").get<std::string>()),
                                skeleton->require_index(p.at("rhs").get<std::string>()),
                                parse_value(*skeleton, p.at("value").get<std::string>()));
    if (j.contains("modules")) {
        if (!builder.ambient) throw parse_error("modules require an ambient ring");
        for (const auto& p : j.at("modules"))
            builder.set_module(builder.ambient->require_index(p.at("lhs").get<std::string>()),
                               skeleton->require_index(p.at("rhs").get<std::string>()),
                               parse_value(*skeleton, p.at("value").get<std::string>()));
    }
    return builder.build();
}

} // namespace

std::string ring_to_json(const RingSpec& ring) { return ring_to_json_object(ring).dump(2) + "\n"; }

RingPtr ring_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad ring file: ") + e.what());
    }
    RingPtr ring;
    try {
        ring = ring_from_json_object(j);
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad ring file: ") + e.what());
    }
    const ValidationReport report = validate(*ring);
    if (!report.pass) {
        std::ostringstream os;
        os << "ring '" << ring->name << "' fails validation:";
        for (const auto& f : report.failures) os << "\n  " << f;
        throw parse_error(os.str());
    }
    return ring;
}

RingPtr load_ring_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open ring file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return ring_from_json(buffer.str());
}

void save_ring_file(const RingSpec& ring, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw error("cannot write ring file '" + path + "'");
    out << ring_to_json(ring);
}

} // namespace qh
