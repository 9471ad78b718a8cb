#include "cli_app.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qh/bounds.hpp"
#include "qh/catalog.hpp"
#include "qh/filtered_complex.hpp"
#include "qh/grid_complex.hpp"
#include "qh/ring_io.hpp"

namespace qh_cli {

namespace {

using nlohmann::json;
using namespace qh;

bool file_exists(const std::string& path) {
    std::ifstream probe(path);
    return probe.good();
}

// Rings are named either by a catalog key (plus its parameter) or by a path
// to a ring specification file.
RingPtr resolve_ring(const std::vector<std::string>& spec, std::optional<int> maslov) {
    if (spec.empty()) throw bad_parameters("missing ring argument");
    if (file_exists(spec[0]) || spec[0].find(".json") != std::string::npos) {
        if (spec.size() != 1) throw bad_parameters("a ring file takes no further arguments");
        return load_ring_file(spec[0]);
    }
    const std::string& key = spec[0];
    if (key == "equator" || key == "point") {
        if (spec.size() != 1) throw bad_parameters("'" + key + "' takes no parameter");
        return catalog_build(key, 1, maslov);
    }
    if (spec.size() != 2) throw bad_parameters("catalog ring '" + key + "' needs its n parameter");
    int n = 0;
    try {
        n = std::stoi(spec[1]);
    } catch (const std::exception&) {
        throw bad_parameters("bad ring parameter '" + spec[1] + "'");
    }
    return catalog_build(key, n, maslov);
}

std::string theorem_name(TheoremTag tag) {
    switch (tag) {
        case TheoremTag::Fqf: return "fqf";
        case TheoremTag::Lfqf: return "lfqf";
        case TheoremTag::FixedPoints: return "fixed-points";
        case TheoremTag::Chekanov: return "chekanov";
        case TheoremTag::Cuplength: return "cuplength";
    }
    return "?";
}

std::string status_label(HypothesisStatus status) {
    switch (status) {
        case HypothesisStatus::CheckedPass: return "pass";
        case HypothesisStatus::CheckedFail: return "FAIL";
        case HypothesisStatus::Asserted: return "asserted";
        case HypothesisStatus::NotAsserted: return "MISSING";
    }
    return "?";
}

json certificate_json(const FqfCertificate& cert) {
    json j;
    j["ring"] = json::parse(ring_to_json(*cert.ring));
    j["factors"] = cert.factor_ids();
    j["order"] = cert.order;
    j["length"] = cert.length;
    j["score"] = cert.score;
    return j;
}

FqfCertificate certificate_from_json(const json& j) {
    FqfCertificate cert;
    cert.ring = ring_from_json(j.at("ring").dump());
    for (const auto& id : j.at("factors"))
        cert.factors.push_back(cert.ring->require_index(id.get<std::string>()));
    cert.order = j.at("order").get<int>();
    cert.length = j.at("length").get<int>();
    cert.score = j.at("score").get<int>();
    return cert;
}

void print_certificate(std::ostream& out, const FqfCertificate& cert) {
    out << "certificate: ";
    for (const auto& id : cert.factor_ids()) out << id << " ";
    out << "-> " << cert.ring->basis[cert.ring->unit].id << "*"
        << Laurent::monomial(cert.order).to_string(cert.ring->variable_char()) << "  (length "
        << cert.length << ", order " << cert.order << ")\n";
}

json report_json(const BoundReport& report) {
    json j;
    j["theorem"] = theorem_name(report.theorem);
    if (report.value) j["bound"] = *report.value;
    if (report.certificate) j["certificate"] = certificate_json(*report.certificate);
    if (!report.witness.empty()) j["witness"] = report.witness;
    j["hypotheses"] = json::array();
    for (const auto& h : report.hypotheses)
        j["hypotheses"].push_back(
            {{"name", h.name}, {"status", status_label(h.status)}, {"detail", h.detail}});
    j["hypotheses_ok"] = report.hypotheses_ok();
    return j;
}

int print_report(std::ostream& out, const RingSpec& ring, const BoundReport& report,
                 bool structured) {
    if (structured) {
        json j = report_json(report);
        j["ring"] = ring.name;
        out << j.dump(2) << "\n";
    } else {
        out << "theorem: " << theorem_name(report.theorem) << "\n";
        out << "ring: " << ring.name << "\n";
        if (report.certificate) print_certificate(out, *report.certificate);
        if (!report.witness.empty()) {
            out << "witness:";
            for (const auto& id : report.witness) out << " " << id;
            out << "\n";
        }
        out << "hypotheses:\n";
        for (const auto& h : report.hypotheses)
            out << "  [" << status_label(h.status) << "] " << h.name
                << (h.detail.empty() ? "" : " (" + h.detail + ")") << "\n";
        if (report.value)
            out << "bound: " << *report.value << "\n";
        else
            out << "bound: none (hypotheses failed)\n";
    }
    return report.hypotheses_ok() && report.value ? 0 : 1;
}

struct ReproduceRow {
    std::string space;
    std::string theorem;
    int bound;
};

std::vector<ReproduceRow> reproduce_rows() {
    std::vector<ReproduceRow> rows;
    for (int n = 1; n <= 8; ++n) {
        const std::string N = std::to_string(n);
        {
            auto ring = cp_ambient(n, n + 1);
            auto report = bound_fqf(ring, default_max_length(*ring), true, true);
            rows.push_back({"CP^" + N + " (N_L=" + std::to_string(n + 1) + ")", "fqf",
                            *report.value});
        }
        {
            auto ring = quadric_ambient(n, n % 2 == 1 ? Parity::Odd : Parity::Even);
            auto report = bound_fqf(ring, default_max_length(*ring), true, true);
            rows.push_back({"Q^" + std::to_string(2 * n), "fqf", *report.value});
        }
        {
            auto ring = clifford_lqh(n);
            auto report = bound_lfqf(ring, default_max_length(*ring), true);
            rows.push_back({"T^" + N + "_clif", "lfqf", *report.value});
            if (n == 1) rows.push_back({"equator", "lfqf", *report.value});
        }
        {
            auto ring = cp_gamma(n);
            auto report = bound_fixed_points(ring, default_max_length(*ring), true);
            rows.push_back({"CP^" + N, "fixed-points", *report.value});
        }
        {
            auto ring = rp_lqh(n);
            // gamma < A_L is part of the scenario; half the area keeps it exact.
            auto report = bound_chekanov(ring, ring->context.area() / 2, true);
            rows.push_back({"RP^" + N + " (gamma<A_L)", "chekanov", *report.value});
        }
    }
    return rows;
}

} // namespace

void print_reproduce_table(std::ostream& out) {
    out << std::left << std::setw(22) << "space" << std::setw(16) << "theorem"
        << "bound\n";
    out << std::string(44, '-') << "\n";
    for (const auto& row : reproduce_rows())
        out << std::left << std::setw(22) << row.space << std::setw(16) << row.theorem
            << row.bound << "\n";
}

namespace {

int run_checked(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run_checked(args, out, err);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const bad_parameters& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const no_factorization& e) {
        err << "no factorization: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

namespace {

int run_checked(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quantum homology bound calculator"};
    app.require_subcommand(1);
    std::uint64_t seed = 0x51ab5eedULL;
    std::string format = "text";
    app.add_option("--seed", seed, "seed for randomized subroutines (all are deterministic)");
    app.add_option("--format", format, "text|structured")
        ->check(CLI::IsMember({"text", "structured"}));

    // catalog
    auto* catalog_cmd = app.add_subcommand("catalog", "list or export built-in rings");
    auto* catalog_list = catalog_cmd->add_subcommand("list", "list catalog keys");
    auto* catalog_export = catalog_cmd->add_subcommand("export", "emit a ring file");
    std::vector<std::string> export_ring;
    std::string export_out;
    std::optional<int> export_maslov;
    int export_maslov_raw = 0;
    catalog_export->add_option("ring", export_ring, "catalog key and parameter")->expected(1, 2);
    catalog_export->add_option("--out", export_out, "output path (default stdout)");
    auto* export_maslov_opt =
        catalog_export->add_option("--maslov", export_maslov_raw, "minimal Maslov number for cp");

    // ring
    auto* ring_cmd = app.add_subcommand("ring", "inspect ring specification files");
    auto* ring_validate = ring_cmd->add_subcommand("validate", "load and validate a ring file");
    auto* ring_show = ring_cmd->add_subcommand("show", "print a summary of a ring file");
    std::string ring_path_validate, ring_path_show;
    ring_validate->add_option("file", ring_path_validate, "ring file")->required();
    ring_show->add_option("file", ring_path_show, "ring file")->required();

    // cuplength
    auto* cup_cmd = app.add_subcommand("cuplength", "Z2 cup-length of the classical part");
    std::vector<std::string> cup_ring;
    cup_cmd->add_option("ring", cup_ring, "catalog key and parameter, or ring file")
        ->expected(1, 2);

    // fqf
    auto* fqf_cmd = app.add_subcommand("fqf", "fundamental quantum factorizations");
    auto* fqf_search = fqf_cmd->add_subcommand("search", "search for the best certificate");
    std::vector<std::string> fqf_ring;
    int fqf_max_length = 0;
    bool fqf_lagrangian = false;
    std::string fqf_emit;
    fqf_search->add_option("ring", fqf_ring, "catalog key and parameter, or ring file")
        ->expected(1, 2);
    fqf_search->add_option("--max-length", fqf_max_length, "search window (default 2x basis)");
    fqf_search->add_flag("--lagrangian", fqf_lagrangian,
                         "require the ring to carry the Lagrangian product");
    fqf_search->add_option("--emit", fqf_emit, "write a replayable certificate file");
    auto* fqf_verify = fqf_cmd->add_subcommand("verify", "replay a certificate file");
    std::string fqf_cert_path;
    fqf_verify->add_option("file", fqf_cert_path, "certificate file")->required();

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "theorem bound calculators");
    std::string bound_kind;
    std::vector<std::string> bound_ring;
    int bound_max_length = 0;
    bool assert_wide = false, assert_nonnarrow = false, assert_isolated = false;
    std::string gamma_text;
    bound_cmd->add_option("kind", bound_kind, "fqf|lfqf|fixed|chekanov")
        ->required()
        ->check(CLI::IsMember({"fqf", "lfqf", "fixed", "chekanov"}));
    bound_cmd->add_option("ring", bound_ring, "catalog key and parameter, or ring file")
        ->expected(1, 2);
    bound_cmd->add_option("--max-length", bound_max_length, "search window (default 2x basis)");
    bound_cmd->add_flag("--assert-wide", assert_wide, "assert L is wide");
    bound_cmd->add_flag("--assert-nonnarrow", assert_nonnarrow, "assert L is non-narrow");
    bound_cmd->add_flag("--assert-isolated", assert_isolated,
                        "assert isolated intersections / fixed points");
    bound_cmd->add_option("--gamma", gamma_text, "spectral pseudo-norm value (chekanov)");

    // spectral
    auto* spectral_cmd = app.add_subcommand("spectral", "spectral invariant of a filtered complex");
    std::string spectral_path, spectral_class;
    spectral_cmd->add_option("file", spectral_path, "complex file")->required();
    spectral_cmd->add_option("--class", spectral_class, "cycle, e.g. \"g1 + g2*t\"")->required();

    // ls-selector
    auto* ls_cmd = app.add_subcommand("ls-selector", "minimax selector on a sampled function");
    std::string ls_path, ls_class, ls_critical, ls_band_value, ls_band_delta;
    ls_cmd->add_option("file", ls_path, "grid file")->required();
    ls_cmd->add_option("--class", ls_class, "point | loop:i | fundamental");
    ls_cmd->add_option("--critical", ls_critical, "test whether a value is critical");
    ls_cmd->add_option("--band-value", ls_band_value, "level band center");
    ls_cmd->add_option("--band-delta", ls_band_delta, "level band half-width");

    // reproduce
    app.add_subcommand("reproduce", "bound table over the built-in catalog, n = 1..8");

    std::vector<std::string> mutable_args = args;
    std::reverse(mutable_args.begin(), mutable_args.end());
    try {
        app.parse(mutable_args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    const bool structured = format == "structured";
    if (export_maslov_opt->count() > 0) export_maslov = export_maslov_raw;

    if (catalog_list->parsed()) {
        for (const auto& entry : catalog_entries())
            out << std::left << std::setw(14) << entry.key << std::setw(18) << entry.params
                << entry.summary << "\n";
        return 0;
    }
    if (catalog_export->parsed()) {
        RingPtr ring = resolve_ring(export_ring, export_maslov);
        if (export_out.empty())
            out << ring_to_json(*ring);
        else
            save_ring_file(*ring, export_out);
        return 0;
    }
    if (ring_validate->parsed()) {
        RingPtr ring = load_ring_file(ring_path_validate);  // throws if invalid
        const ValidationReport report = validate(*ring);
        out << "ring " << ring->name << ": valid (" << ring->basis_size() << " basis elements, "
            << report.associativity_triples << " associativity triples)\n";
        return 0;
    }
    if (ring_show->parsed()) {
        RingPtr ring = load_ring_file(ring_path_show);
        out << "name: " << ring->name << "\n";
        out << "kind: " << (ring->kind == RingKind::Ambient ? "ambient" : "lagrangian") << "\n";
        out << "dim: " << ring->dim << "\n";
        out << "variable: " << ring->variable_char() << "\n";
        out << "context: N_L="
            << (ring->context.maslov_finite() ? std::to_string(ring->context.maslov_min) : "inf")
            << " C_M=" << ring->context.chern_min
            << " kappa=" << format_rational(ring->context.kappa)
            << " A_L=" << format_rational(ring->context.area()) << "\n";
        out << "basis:";
        for (const auto& e : ring->basis) out << " " << e.id << "(" << e.degree << ")";
        out << "\n";
        return 0;
    }
    if (cup_cmd->parsed()) {
        RingPtr ring = resolve_ring(cup_ring, std::nullopt);
        const BoundReport report = cuplength(ring);
        if (structured) return print_report(out, *ring, report, true);
        out << "cuplength(" << ring->name << ") = " << *report.value << "\n";
        if (!report.witness.empty()) {
            out << "witness:";
            for (const auto& id : report.witness) out << " " << id;
            out << "\n";
        }
        return 0;
    }
    if (fqf_search->parsed()) {
        RingPtr ring = resolve_ring(fqf_ring, std::nullopt);
        if (fqf_lagrangian && ring->kind != RingKind::Lagrangian)
            throw bad_parameters("--lagrangian requires a Lagrangian ring");
        const int window = fqf_max_length > 0 ? fqf_max_length : default_max_length(*ring);
        const auto cert = find_best_fqf(ring, window);
        if (!cert) {
            err << "no factorization of length <= " << window << " in " << ring->name << "\n";
            return 1;
        }
        if (structured) {
            out << certificate_json(*cert).dump(2) << "\n";
        } else {
            out << "ring: " << ring->name << "\n";
            print_certificate(out, *cert);
            out << "score: " << cert->score << "\n";
        }
        if (!fqf_emit.empty()) {
            std::ofstream file(fqf_emit);
            if (!file) throw error("cannot write '" + fqf_emit + "'");
            file << certificate_json(*cert).dump(2) << "\n";
        }
        return 0;
    }
    if (fqf_verify->parsed()) {
        std::ifstream file(fqf_cert_path);
        if (!file) throw parse_error("cannot open certificate '" + fqf_cert_path + "'");
        json j;
        try {
            file >> j;
        } catch (const json::exception& e) {
            throw parse_error(std::string("bad certificate: ") + e.what());
        }
        FqfCertificate cert;
        try {
            cert = certificate_from_json(j);
        } catch (const json::exception& e) {
            throw parse_error(std::string("bad certificate: ") + e.what());
        }
        const bool ok = verify_fqf(cert);
        out << (ok ? "certificate verifies" : "certificate REJECTED") << "\n";
        return ok ? 0 : 1;
    }
    if (bound_cmd->parsed()) {
        RingPtr ring = resolve_ring(bound_ring, std::nullopt);
        const int window = bound_max_length > 0 ? bound_max_length : default_max_length(*ring);
        BoundReport report;
        if (bound_kind == "fqf") {
            report = bound_fqf(ring, window, assert_nonnarrow, assert_isolated);
        } else if (bound_kind == "lfqf") {
            report = bound_lfqf(ring, window, assert_wide);
        } else if (bound_kind == "fixed") {
            report = bound_fixed_points(ring, window, assert_isolated);
        } else {
            if (gamma_text.empty()) throw bad_parameters("chekanov needs --gamma <rational>");
            report = bound_chekanov(ring, parse_rational(gamma_text), assert_wide);
        }
        return print_report(out, *ring, report, structured);
    }
    if (spectral_cmd->parsed()) {
        const FilteredComplex complex = FilteredComplex::load_file(spectral_path);
        const ChainVec cycle = complex.parse_chain(spectral_class);
        Level level;
        try {
            level = spectral_invariant(complex, cycle);
        } catch (const not_a_cycle& e) {
            err << "error: " << e.what() << "\n";
            return 2;
        }
        if (structured) {
            json j;
            j["class"] = complex.chain_to_string(cycle);
            j["spectral_invariant"] = format_level(level);
            out << j.dump(2) << "\n";
        } else {
            out << "spectral invariant: " << format_level(level) << "\n";
        }
        return 0;
    }
    if (ls_cmd->parsed()) {
        const GridComplex grid(GridFunction::load_file(ls_path));
        const int modes = (!ls_class.empty() ? 1 : 0) + (!ls_critical.empty() ? 1 : 0) +
                          (!ls_band_value.empty() ? 1 : 0);
        if (modes != 1)
            throw bad_parameters("pick exactly one of --class, --critical, --band-value");
        if (!ls_class.empty()) {
            const Rational value = grid.ls_selector(GridClass::parse(ls_class));
            if (structured) {
                json j;
                j["class"] = ls_class;
                j["selector"] = format_rational(value);
                out << j.dump(2) << "\n";
            } else {
                out << "c_LS(" << ls_class << ") = " << format_rational(value) << "\n";
            }
            return 0;
        }
        if (!ls_critical.empty()) {
            const bool critical = grid.selector_value_is_critical(parse_rational(ls_critical));
            out << (critical ? "critical" : "not critical") << "\n";
            return 0;
        }
        if (ls_band_delta.empty()) throw bad_parameters("--band-value needs --band-delta");
        const LevelBandReport band =
            grid.level_set_nontrivial(parse_rational(ls_band_value), parse_rational(ls_band_delta));
        out << "nontrivial degrees:";
        bool any = false;
        for (std::size_t k = 0; k < band.nontrivial_by_degree.size(); ++k)
            if (band.nontrivial_by_degree[k]) {
                out << " " << k;
                any = true;
            }
        if (!any) out << " none";
        out << "\n";
        out << "homologically nontrivial (degree >= 1): " << (band.nontrivial() ? "yes" : "no")
            << "\n";
        return 0;
    }
    // reproduce
    print_reproduce_table(out);
    return 0;
}

} // namespace

} // namespace qh_cli
