#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qbg/chains.hpp"
#include "qbg/ktheory.hpp"
#include "qbg/verify.hpp"

// Command-line front end. Exit codes: 0 pass, 1 disagreement (or internal
// failure), 2 usage error, 3 regularity refusal.

namespace {

using namespace qbg;

// One root datum with its groups and graph; constructed in place and never
// moved, since the group holds a reference to the root system.
struct Session {
    RootSystem rs;
    WeylGroup W;
    AffineWeyl aff;
    QBGraph g;

    Session(RootSystem r, Convention conv)
        : rs(std::move(r)), W(rs), aff(W, conv), g(W, conv) {}
};

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<int> one_based(const WeylGroup& W, WeylElement w) {
    std::vector<int> out;
    for (int i : lex_word(W, w)) out.push_back(i + 1);
    return out;
}

nlohmann::json path_to_json(const Session& s, const QBGPath& p) {
    nlohmann::json verts = nlohmann::json::array();
    for (WeylElement v : p.vertices) verts.push_back(one_based(s.W, v));
    nlohmann::json edges = nlohmann::json::array();
    for (const QBGEdge& e : p.edges)
        edges.push_back({{"source", one_based(s.W, e.source)},
                         {"target", one_based(s.W, e.target)},
                         {"kind", edge_kind_name(e.kind)},
                         {"root", s.rs.positive_root(e.root_p).c},
                         {"weight", e.weight}});
    return nlohmann::json{{"vertices", verts},
                          {"edges", edges},
                          {"weight", s.g.path_weight(p)}};
}

struct CommonFlags {
    std::string type;
    std::string convention = "untwisted";
    std::string profile = "milicevic";

    void attach(CLI::App* cmd, bool need_type = true) {
        CLI::Option* t = cmd->add_option("--type", type, "root system type, e.g. A2");
        if (need_type) t->required();
        cmd->add_option("--convention", convention, "untwisted or dual")
            ->capture_default_str();
        cmd->add_option("--regularity-profile", profile,
                        "conservative, milicevic, or welch")
            ->capture_default_str();
    }
};

int run_export(const CommonFlags& c, const std::string& cartan_file,
               const std::string& format) {
    check_input(format == "dot" || format == "json", "format must be dot or json");
    check_input(!c.type.empty() || !cartan_file.empty(),
                "export needs --type or --cartan-file");
    RootSystem rs = cartan_file.empty() ? RootSystem::named(c.type)
                                        : root_system_from_json_file(cartan_file);
    Session s(std::move(rs), convention_from_string(c.convention));
    if (format == "dot")
        std::cout << export_qbg_dot(s.g);
    else
        print_json(export_qbg_json(s.g));
    return 0;
}

int run_mobius(const CommonFlags& c, const std::string& xs, const std::string& ys,
               const std::string& method) {
    check_input(method == "oracle" || method == "deodhar" || method == "superregular" ||
                    method == "all",
                "method must be oracle, deodhar, superregular, or all");
    Session s(RootSystem::named(c.type), convention_from_string(c.convention));
    RegularityProfile prof = profile_from_string(c.profile);
    MobiusContext ctx(s.aff, s.g, make_regularity_config(s.W, prof));
    AffineElement x = parse_element(s.aff, xs);
    AffineElement y = parse_element(s.aff, ys);
    nlohmann::json out{{"version", kToolVersion},
                       {"type", s.rs.label()},
                       {"convention", convention_name(s.aff.convention())},
                       {"profile", profile_name(prof)},
                       {"x", format_element(s.aff, x)},
                       {"y", format_element(s.aff, y)}};
    if (method == "all") {
        int o = ctx.mobius_oracle(x, y);
        MobiusResult d = ctx.mobius_deodhar(x, y);
        MobiusResult sr = ctx.mobius_superregular(x, y);
        out["oracle"] = o;
        out["deodhar"] = d.value;
        out["superregular"] = sr.value;
        bool agree = o == d.value && d.value == sr.value;
        out["agree"] = agree;
        print_json(out);
        return agree ? 0 : 1;
    }
    out["method"] = method;
    if (method == "oracle") {
        out["value"] = ctx.mobius_oracle(x, y);
    } else {
        MobiusResult r = method == "deodhar" ? ctx.mobius_deodhar(x, y)
                                             : ctx.mobius_superregular(x, y);
        out["value"] = r.value;
        if (r.witness) {
            out["witness"] = format_element(s.aff, *r.witness);
            out["witness_node"] = r.witness_node;
        }
    }
    print_json(out);
    return 0;
}

int run_chain_decompose(const CommonFlags& c, const std::string& chain_file) {
    Session s(RootSystem::named(c.type), convention_from_string(c.convention));
    RegularityProfile prof = profile_from_string(c.profile);
    ChainContext ctx(s.aff, s.g, make_regularity_config(s.W, prof));

    std::ifstream in(chain_file);
    if (!in) throw InvalidInputError("cannot open chain file: " + chain_file);
    nlohmann::json jc;
    try {
        jc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(std::string("cannot parse ") + chain_file + ": " +
                                e.what());
    }
    check_input(jc.is_array() && !jc.empty(),
                "chain file must hold a nonempty JSON list of elements");
    std::vector<AffineElement> chain;
    for (const auto& item : jc)
        chain.push_back(item.is_string() ? parse_element(s.aff, item.get<std::string>())
                                         : element_from_json(s.aff, item));

    ChainDecomposition d = ctx.decompose_chain(chain);
    print_json(nlohmann::json{{"version", kToolVersion},
                              {"type", s.rs.label()},
                              {"convention", convention_name(s.aff.convention())},
                              {"profile", profile_name(prof)},
                              {"top", format_element(s.aff, d.top)},
                              {"bottom", format_element(s.aff, ctx.reconstruct_bottom(d))},
                              {"r_n", one_based(s.W, d.r_n)},
                              {"r_f", one_based(s.W, d.r_f)},
                              {"near_path", path_to_json(s, d.near_path)},
                              {"far_path", path_to_json(s, d.far_path)}});
    return 0;
}

int run_verify_theorem(const CommonFlags& c, const std::string& lo_s,
                       const std::string& hi_s, int window) {
    VerificationReport rep = verify_theorem(
        c.type, parse_int_list(lo_s), parse_int_list(hi_s),
        profile_from_string(c.profile), convention_from_string(c.convention), window);
    print_json(rep.to_json());
    return rep.pass() ? 0 : 1;
}

int run_ktheory_expansion(const CommonFlags& c, const std::string& ys) {
    Session s(RootSystem::named(c.type), convention_from_string(c.convention));
    RegularityProfile prof = profile_from_string(c.profile);
    KTheoryContext ctx(s.aff, s.g, make_regularity_config(s.W, prof));
    AffineElement y = parse_element(s.aff, ys);
    FormalSum sum = ctx.ideal_in_structure(y);
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [el, coeff] : sum.sorted_terms(s.aff))
        terms.push_back({{"coeff", coeff}, {"element", format_element(s.aff, el)}});
    print_json(nlohmann::json{{"version", kToolVersion},
                              {"type", s.rs.label()},
                              {"convention", convention_name(s.aff.convention())},
                              {"profile", profile_name(prof)},
                              {"y", format_element(s.aff, y)},
                              {"basis", basis_tag_name(sum.basis)},
                              {"terms", terms}});
    return 0;
}

int run_regularity_report(const CommonFlags& c, const std::string& cartan_file) {
    check_input(!c.type.empty() || !cartan_file.empty(),
                "regularity report needs --type or --cartan-file");
    RootSystem rs = cartan_file.empty() ? RootSystem::named(c.type)
                                        : root_system_from_json_file(cartan_file);
    WeylGroup W(rs);
    RegularityProfile prof = profile_from_string(c.profile);
    RegularityConfig cfg = make_regularity_config(W, prof);
    nlohmann::json bounds = nlohmann::json::array();
    for (int m = 1; m <= 4; ++m)
        bounds.push_back({{"m", m}, {"bound", chain_bound(cfg, m)}});
    print_json(nlohmann::json{{"version", kToolVersion},
                              {"type", rs.label()},
                              {"profile", profile_name(prof)},
                              {"base_bound", cfg.k},
                              {"pairing_growth", cfg.j},
                              {"w0_length", cfg.w0_length},
                              {"group_order", cfg.group_order},
                              {"theorem_bound", theorem_bound(cfg)},
                              {"chain_bounds", bounds}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum Bruhat graph and affine Grassmannian Mobius toolkit"};
    app.set_version_flag("--version,-V", std::string(kToolVersion));
    app.require_subcommand(0, 1);

    CommonFlags export_flags;
    std::string export_cartan_file;
    std::string export_format = "dot";
    CLI::App* cmd_export = app.add_subcommand("export", "write the graph as DOT or JSON");
    export_flags.attach(cmd_export, /*need_type=*/false);
    cmd_export->add_option("--cartan-file", export_cartan_file,
                           "JSON file with a cartan matrix and label");
    cmd_export->add_option("--format", export_format, "dot or json")
        ->capture_default_str();

    CommonFlags mobius_flags;
    std::string mobius_x, mobius_y;
    std::string mobius_method = "all";
    CLI::App* cmd_mobius =
        app.add_subcommand("mobius", "evaluate the Mobius function on a pair");
    mobius_flags.attach(cmd_mobius);
    cmd_mobius->add_option("--x", mobius_x, "lower element, e.g. \"w=[1] t=[-10,-9]\"")
        ->required();
    cmd_mobius->add_option("--y", mobius_y, "upper element")->required();
    cmd_mobius->add_option("--method", mobius_method,
                           "oracle, deodhar, superregular, or all")
        ->capture_default_str();

    CommonFlags chain_flags;
    std::string chain_file;
    CLI::App* cmd_chain = app.add_subcommand("chain", "chain operations");
    CLI::App* cmd_chain_decompose = cmd_chain->add_subcommand(
        "decompose", "split a saturated chain into near and far paths");
    chain_flags.attach(cmd_chain_decompose);
    cmd_chain_decompose
        ->add_option("--chain-file", chain_file,
                     "JSON list of elements, bottom to top")
        ->required();
    cmd_chain->require_subcommand(1);

    CommonFlags verify_flags;
    std::string verify_lo, verify_hi;
    int verify_window = 4;
    CLI::App* cmd_verify = app.add_subcommand(
        "verify-theorem", "sweep the closed-form support statement over a box");
    verify_flags.attach(cmd_verify);
    cmd_verify->add_option("--lambda-min", verify_lo, "box corner, e.g. \"[-12,-12]\"")
        ->required();
    cmd_verify->add_option("--lambda-max", verify_hi, "box corner, e.g. \"[-8,-8]\"")
        ->required();
    cmd_verify->add_option("--window", verify_window,
                           "coordinate window for lambda' - lambda")
        ->capture_default_str();

    CommonFlags ktheory_flags;
    std::string ktheory_y;
    CLI::App* cmd_ktheory = app.add_subcommand("ktheory", "K-theory basis changes");
    CLI::App* cmd_ktheory_expand = cmd_ktheory->add_subcommand(
        "ideal-expansion", "expand an ideal class in structure classes");
    ktheory_flags.attach(cmd_ktheory_expand);
    cmd_ktheory_expand->add_option("--y", ktheory_y, "Grassmannian element")->required();
    cmd_ktheory->require_subcommand(1);

    CommonFlags regularity_flags;
    std::string regularity_cartan_file;
    CLI::App* cmd_regularity = app.add_subcommand("regularity", "regularity bounds");
    CLI::App* cmd_regularity_report = cmd_regularity->add_subcommand(
        "report", "print the profile's bounds for a root system");
    regularity_flags.attach(cmd_regularity_report, /*need_type=*/false);
    cmd_regularity_report->add_option("--cartan-file", regularity_cartan_file,
                                      "JSON file with a cartan matrix and label");
    cmd_regularity->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_export->parsed())
            return run_export(export_flags, export_cartan_file, export_format);
        if (cmd_mobius->parsed())
            return run_mobius(mobius_flags, mobius_x, mobius_y, mobius_method);
        if (cmd_chain_decompose->parsed())
            return run_chain_decompose(chain_flags, chain_file);
        if (cmd_verify->parsed())
            return run_verify_theorem(verify_flags, verify_lo, verify_hi, verify_window);
        if (cmd_ktheory_expand->parsed())
            return run_ktheory_expansion(ktheory_flags, ktheory_y);
        if (cmd_regularity_report->parsed())
            return run_regularity_report(regularity_flags, regularity_cartan_file);
        std::cerr << app.help();
        return 2;
    } catch (const RegularityError& e) {
        std::cerr << "regularity refusal: " << e.what() << "\n";
        return 3;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
}
