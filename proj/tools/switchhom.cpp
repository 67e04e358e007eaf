// switchhom: command-line front end.
//
// Exit codes: 0 yes/success, 1 no, 2 usage, 3 contract or input error,
// 4 resource limit or timeout.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "switchhom/switchhom.hpp"

namespace sh = switchhom;

namespace {

enum exit_code : int { yes = 0, no = 1, usage = 2, contract = 3, resource = 4 };

struct settings {
    double timeout_secs = 60;
    unsigned jobs = 1;
    bool ac3 = false;
    bool emit_witness = false;
    bool dot = false;
    std::string manifest;
    std::uint64_t seed = 1;
};

std::string sha256_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return "";
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto data = buf.str();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream hex;
    for (unsigned i = 0; i < len; ++i)
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return hex.str();
}

class app_state {
public:
    settings opt;
    std::vector<std::string> inputs;
    std::string outcome = "error";

    sh::search_options search() const
    {
        sh::search_options s;
        s.timeout = std::chrono::milliseconds(static_cast<long long>(opt.timeout_secs * 1000));
        s.jobs = opt.jobs;
        s.arc_consistency = opt.ac3;
        return s;
    }

    sh::nm_graph graph(const std::string &path)
    {
        inputs.push_back(path);
        return sh::io::load_graph(path);
    }

    sh::switch_group group(const std::string &path)
    {
        inputs.push_back(path);
        return sh::io::load_group(path);
    }

    void print_graph(const sh::nm_graph &g) const
    {
        if (opt.dot)
            sh::io::write_dot(std::cout, g);
        else
            sh::io::write_graph(std::cout, g);
    }
};

void print_map(const sh::nm_graph &g, const sh::nm_graph &h, const std::vector<std::size_t> &map,
    const sh::switch_assignment &a)
{
    for (std::size_t x = 0; x < g.order(); ++x)
        std::cout << "  " << g.label(x) << " -> " << h.label(map[x]) << "  switch " << a[x] << '\n';
}

sh::switch_assignment parse_assign(const std::string &spec, const sh::nm_graph &g, const sh::switch_group &group)
{
    auto a = sh::switch_assignment::identity(g.order());
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty())
            continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw sh::validation_error("--assign: expected v=k, got '" + item + "'");
        auto v = g.index_of(item.substr(0, eq));
        std::size_t k = 0;
        try {
            k = std::stoul(item.substr(eq + 1));
        } catch (const std::logic_error &) {
            throw sh::validation_error("--assign: bad element index in '" + item + "'");
        }
        if (k >= group.order())
            throw sh::validation_error("--assign: element index out of range in '" + item + "'");
        a.element[v] = k;
    }
    return a;
}

const char *yes_no(bool b) { return b ? "yes" : "no"; }

}

int main(int argc, char **argv)
{
    const auto started = std::chrono::steady_clock::now();
    app_state st;
    if (const char *env = std::getenv("SWITCHHOM_TIMEOUT_SECS")) {
        try {
            st.opt.timeout_secs = std::stod(env);
        } catch (const std::logic_error &) {
            std::cerr << "switchhom: ignoring malformed SWITCHHOM_TIMEOUT_SECS\n";
        }
    }

    CLI::App app{"Homomorphisms, cores, products and chromatic numbers of switchable (n,m)-graphs"};
    app.set_version_flag("--version", sh::version);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--timeout", st.opt.timeout_secs, "Search budget per decision in seconds")->check(CLI::PositiveNumber);
    app.add_option("--jobs", st.opt.jobs, "Worker threads for the first branching variable")->check(CLI::Range(1u, 256u));
    app.add_flag("--ac3", st.opt.ac3, "Full arc consistency instead of forward checking");
    app.add_flag("--emit-witness", st.opt.emit_witness, "Print a machine-readable witness block");
    app.add_flag("--dot", st.opt.dot, "Print graphs as DOT");
    app.add_option("--manifest", st.opt.manifest, "Write the run manifest to this file instead of stderr");
    app.add_option("--seed", st.opt.seed, "Seed for randomized generators");

    std::string g_path, h_path, group_path, extra_path, assign, order_spec, oracle_kind;
    int n_arg = 0, m_arg = 0;
    std::size_t trials = 100, max_vertices = 10;
    bool via_rho = false, plain = false;

    auto *c_switch = app.add_subcommand("switch", "Apply a switch assignment");
    c_switch->add_option("graph", g_path)->required();
    c_switch->add_option("group", group_path)->required();
    c_switch->add_option("--assign", assign, "Comma-separated v=k (element index)")->required();

    auto *c_rho = app.add_subcommand("rho", "Build the Gamma-switched graph");
    c_rho->add_option("graph", g_path)->required();
    c_rho->add_option("group", group_path)->required();

    auto *c_hom = app.add_subcommand("hom", "Decide G ->_Gamma H");
    c_hom->add_option("G", g_path)->required();
    c_hom->add_option("H", h_path)->required();
    c_hom->add_option("group", group_path)->required();
    c_hom->add_flag("--plain", plain, "Ignore switching (plain homomorphism)");

    auto *c_iso = app.add_subcommand("iso", "Decide Gamma-isomorphism");
    c_iso->add_option("G", g_path)->required();
    c_iso->add_option("H", h_path)->required();
    c_iso->add_option("group", group_path)->required();
    c_iso->add_flag("--via-rho", via_rho, "Decide by plain isomorphism of the switched graphs");

    auto *c_core = app.add_subcommand("core", "Compute a Gamma-core");
    c_core->add_option("graph", g_path)->required();
    c_core->add_option("group", group_path)->required();
    c_core->add_option("--order", order_spec, "Comma-separated deletion order of vertex labels");

    auto *c_product = app.add_subcommand("product", "Categorical product");
    c_product->add_option("G", g_path)->required();
    c_product->add_option("H", h_path)->required();
    c_product->add_option("group", group_path)->required();
    c_product->add_option("--check-universal", extra_path, "Check the universal property against this graph");

    auto *c_coproduct = app.add_subcommand("coproduct", "Coproduct (disjoint union)");
    c_coproduct->add_option("G", g_path)->required();
    c_coproduct->add_option("H", h_path)->required();

    auto *c_chrom = app.add_subcommand("chromatic", "Gamma-chromatic number");
    c_chrom->add_option("graph", g_path)->required();
    c_chrom->add_option("group", group_path)->required();

    auto *c_ftarget = app.add_subcommand("forest-target", "Target graph for forests");
    c_ftarget->add_option("n", n_arg)->required();
    c_ftarget->add_option("m", m_arg)->required();
    c_ftarget->add_option("group", group_path)->required();

    auto *c_fcheck = app.add_subcommand("forest-check", "Random forests against the forest bound");
    c_fcheck->add_option("n", n_arg)->required();
    c_fcheck->add_option("m", m_arg)->required();
    c_fcheck->add_option("group", group_path)->required();
    c_fcheck->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
    c_fcheck->add_option("--max-vertices", max_vertices)->check(CLI::Range(std::size_t{1}, std::size_t{64}));

    auto *c_info = app.add_subcommand("group-info", "Properties of a switch group");
    c_info->add_option("group", group_path)->required();

    auto *c_oracle = app.add_subcommand("oracle", "Compare the engine with exhaustive enumeration");
    c_oracle->add_option("kind", oracle_kind)->required()->check(CLI::IsMember({"hom", "iso"}));
    c_oracle->add_option("G", g_path)->required();
    c_oracle->add_option("H", h_path)->required();
    c_oracle->add_option("group", group_path)->required();

    auto *c_verify = app.add_subcommand("verify", "Check a witness block");
    c_verify->add_option("G", g_path)->required();
    c_verify->add_option("H", h_path)->required();
    c_verify->add_option("group", group_path)->required();
    c_verify->add_option("witness", extra_path)->required();

    int code = contract;
    bool parsed = false;
    try {
        app.parse(argc, argv);
        parsed = true;
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        st.outcome = "usage";
        code = usage;
    }

    auto *cmd = parsed ? app.get_subcommands().front() : nullptr;
    const std::string name = cmd ? cmd->get_name() : "";
    if (cmd) try {
        auto opts = st.search();
        if (cmd == c_switch) {
            auto g = st.graph(g_path);
            auto group = st.group(group_path);
            st.print_graph(sh::apply_assignment(g, parse_assign(assign, g, group), group));
            code = yes;
        } else if (cmd == c_rho) {
            auto g = st.graph(g_path);
            auto group = st.group(group_path);
            st.print_graph(sh::rho(g, group).graph);
            code = yes;
        } else if (cmd == c_hom) {
            auto g = st.graph(g_path);
            auto h = st.graph(h_path);
            auto group = st.group(group_path);
            auto w = plain ? sh::plain_hom(g, h, opts) : sh::gamma_hom(g, h, group, opts);
            if (w) {
                std::cout << "hom: yes\n";
                print_map(g, h, w->vertex_map, w->assignment);
                if (st.opt.emit_witness)
                    sh::io::write_witness(std::cout, "hom", g, h, w->vertex_map, w->assignment);
            } else {
                std::cout << "none\n";
            }
            code = w ? yes : no;
        } else if (cmd == c_iso) {
            auto g = st.graph(g_path);
            auto h = st.graph(h_path);
            auto group = st.group(group_path);
            if (via_rho) {
                bool r = sh::gamma_iso_via_rho(g, h, group, opts);
                std::cout << (r ? "iso: yes\n" : "none\n");
                code = r ? yes : no;
            } else {
                auto w = sh::gamma_iso(g, h, group, opts);
                if (w) {
                    std::cout << "iso: yes\n";
                    print_map(g, h, w->vertex_map, w->assignment);
                    if (st.opt.emit_witness)
                        sh::io::write_witness(std::cout, "iso", g, h, w->vertex_map, w->assignment);
                } else {
                    std::cout << "none\n";
                }
                code = w ? yes : no;
            }
        } else if (cmd == c_core) {
            auto g = st.graph(g_path);
            auto group = st.group(group_path);
            std::vector<std::size_t> order;
            std::stringstream ss(order_spec);
            for (std::string item; std::getline(ss, item, ',');)
                if (!item.empty())
                    order.push_back(g.index_of(item));
            auto c = sh::gamma_core(g, group, order, opts);
            std::cout << "# core on " << c.core.order() << " of " << g.order() << " vertices\n";
            st.print_graph(c.core);
            if (st.opt.emit_witness)
                sh::io::write_witness(std::cout, "hom", g, c.core, c.retraction.vertex_map, c.retraction.assignment);
            code = yes;
        } else if (cmd == c_product) {
            auto g = st.graph(g_path);
            auto h = st.graph(h_path);
            auto group = st.group(group_path);
            auto p = sh::product_gamma(g, h, group);
            if (extra_path.empty()) {
                st.print_graph(p.graph);
                if (st.opt.emit_witness) {
                    sh::io::write_witness(std::cout, "hom", p.graph, g, p.to_g.vertex_map, p.to_g.assignment);
                    sh::io::write_witness(std::cout, "hom", p.graph, h, p.to_h.vertex_map, p.to_h.assignment);
                }
                code = yes;
            } else {
                auto trial = st.graph(extra_path);
                auto r = sh::universal_property_check(p, g, h, trial, group, std::nullopt, std::nullopt, opts);
                std::cout << "product vertices: " << p.graph.order() << '\n'
                          << "projections verify: " << yes_no(r.projections_ok) << '\n'
                          << "mediating map exists: " << yes_no(r.exists) << '\n'
                          << "commutes: " << yes_no(r.commutes) << '\n'
                          << "mediating maps: " << r.mediating_count << '\n'
                          << "unique: " << yes_no(r.unique) << '\n'
                          << "universal property: " << (r.holds() ? "holds" : "fails") << '\n';
                if (st.opt.emit_witness && r.mediating)
                    sh::io::write_witness(std::cout, "hom", trial, p.graph, r.mediating->vertex_map, r.mediating->assignment);
                code = r.holds() ? yes : no;
            }
        } else if (cmd == c_coproduct) {
            auto g = st.graph(g_path);
            auto h = st.graph(h_path);
            st.print_graph(sh::coproduct(g, h).graph);
            code = yes;
        } else if (cmd == c_chrom) {
            auto g = st.graph(g_path);
            auto group = st.group(group_path);
            auto r = sh::gamma_chromatic(g, group, opts);
            std::cout << "chromatic number: " << r.value << '\n';
            st.print_graph(r.witness_target);
            if (st.opt.emit_witness)
                sh::io::write_witness(std::cout, "hom", g, r.witness_target, r.witness_hom.vertex_map, r.witness_hom.assignment);
            code = yes;
        } else if (cmd == c_ftarget || cmd == c_fcheck) {
            auto group = st.group(group_path);
            if (!(group.types() == sh::alphabet(n_arg, m_arg)))
                throw sh::domain_error("group acts on a different alphabet than (" + std::to_string(n_arg) + ","
                    + std::to_string(m_arg) + ")");
            if (cmd == c_ftarget) {
                auto ft = sh::build_forest_target(group);
                std::cout << "# orbits " << ft.orbits.partition.to_string() << " k=" << ft.orbits.k
                          << " k'=" << ft.k_prime << '\n';
                st.print_graph(ft.graph);
                code = yes;
            } else {
                auto r = sh::forest_theorem_check(group, trials, st.opt.seed, max_vertices, opts);
                std::cout << "k: " << r.k << '\n'
                          << "bound: " << r.bound << '\n'
                          << "consistent: " << yes_no(r.consistent) << '\n'
                          << "decomposition valid: " << yes_no(r.decomposition_ok) << '\n'
                          << "orbit coverage: " << yes_no(r.coverage_ok) << '\n'
                          << "forests mapped: " << r.mapped << '/' << r.trials << '\n'
                          << "greedy fallbacks: " << r.greedy_fallbacks << '\n';
                if (r.witness_chromatic)
                    std::cout << "lower-bound witness chromatic number: " << *r.witness_chromatic << '\n';
                std::cout << "upper bound: " << (r.upper_ok() ? "holds" : "fails") << '\n'
                          << "lower bound: " << (r.lower_ok() ? "holds" : "fails") << '\n';
                code = r.upper_ok() && r.lower_ok() ? yes : no;
            }
        } else if (cmd == c_info) {
            auto group = st.group(group_path);
            auto os = sh::orbit_system_of(group);
            std::cout << "alphabet: " << group.types().arc_colors() << ' ' << group.types().edge_colors() << '\n'
                      << "order: " << group.order() << '\n'
                      << "abelian: " << yes_no(group.is_abelian()) << '\n'
                      << "switch-commutative: " << yes_no(group.is_switch_commutative()) << '\n'
                      << "lmw: " << yes_no(sh::is_lmw_style(group)) << '\n'
                      << "orbits: " << os.partition.to_string() << '\n'
                      << "k: " << os.k << '\n'
                      << "consistent: " << yes_no(os.consistent) << '\n'
                      << "elements:\n";
            for (std::size_t i = 0; i < group.order(); ++i)
                std::cout << "  " << i << ' ' << group.element(i).to_string() << '\n';
            code = yes;
        } else if (cmd == c_oracle) {
            auto g = st.graph(g_path);
            auto h = st.graph(h_path);
            auto group = st.group(group_path);
            bool engine = false, brute = false;
            if (oracle_kind == "hom") {
                engine = sh::gamma_hom(g, h, group, opts).has_value();
                brute = sh::oracle::gamma_hom_exists(g, h, group);
            } else {
                engine = sh::gamma_iso(g, h, group, opts).has_value();
                brute = sh::oracle::gamma_iso_exists(g, h, group);
            }
            std::cout << "engine: " << yes_no(engine) << '\n'
                      << "oracle: " << yes_no(brute) << '\n'
                      << "agreement: " << yes_no(engine == brute) << '\n';
            code = engine == brute ? yes : no;
        } else if (cmd == c_verify) {
            auto g = st.graph(g_path);
            auto h = st.graph(h_path);
            auto group = st.group(group_path);
            st.inputs.push_back(extra_path);
            auto w = sh::io::with_file(extra_path, [&](std::istream &in) { return sh::io::read_witness(in, g, h, group); });
            bool ok = w.kind == "hom" ? sh::verify_hom(g, h, group, {w.vertex_map, w.assignment})
                                      : sh::verify_iso(g, h, group, {w.vertex_map, w.assignment});
            std::cout << "witness " << w.kind << ": " << (ok ? "valid" : "invalid") << '\n';
            code = ok ? yes : no;
        }
        st.outcome = code == yes ? "yes" : "no";
    } catch (const sh::search_timeout &e) {
        std::cerr << "switchhom: " << e.what() << '\n';
        st.outcome = "unknown";
        code = resource;
    } catch (const sh::resource_error &e) {
        std::cerr << "switchhom: " << e.what() << '\n';
        st.outcome = "resource";
        code = resource;
    } catch (const sh::error &e) {
        std::cerr << "switchhom: " << e.what() << '\n';
        st.outcome = "error";
        code = contract;
    }

    nlohmann::json manifest;
    std::vector<std::string> args(argv, argv + argc);
    manifest["command"] = name;
    manifest["argv"] = args;
    manifest["version"] = sh::version;
    manifest["seed"] = st.opt.seed;
    manifest["timeout_secs"] = st.opt.timeout_secs;
    manifest["jobs"] = st.opt.jobs;
    for (const auto &path : st.inputs)
        manifest["inputs"].push_back({{"path", path}, {"sha256", sha256_file(path)}});
    manifest["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
    manifest["outcome"] = st.outcome;
    manifest["exit_code"] = code;
    if (st.opt.manifest.empty()) {
        std::cerr << "manifest: " << manifest.dump() << '\n';
    } else {
        std::ofstream out(st.opt.manifest);
        out << manifest.dump(2) << '\n';
        if (!out) {
            std::cerr << "switchhom: cannot write manifest '" << st.opt.manifest << "'\n";
            return resource;
        }
    }
    return code;
}
