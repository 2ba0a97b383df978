#include <CLI11.hpp>

#include <knotpoly/alexander.hpp>
#include <knotpoly/bracket.hpp>
#include <knotpoly/diagram.hpp>
#include <knotpoly/hopf.hpp>
#include <knotpoly/laurent.hpp>
#include <knotpoly/tangle.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw knotpoly::error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

knotpoly::Diagram load_pd(const std::string& path) {
    return knotpoly::parse_pd(read_file(path));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariants of knot and link diagrams and rational-style tangles"};
    app.require_subcommand(1);
    int cap = knotpoly::default_state_sum_cap;
    app.add_option("--cap", cap, "largest crossing count accepted by state sums")
        ->capture_default_str();

    std::string pd_path, tangle_text, t_text, u_text, pair_text;
    bool total = false, oracle = false, want_jones = false, emit = false, verify = false;
    int family_n = 0;

    CLI::App* c_bracket = app.add_subcommand("bracket", "Kauffman bracket of a diagram");
    c_bracket->add_option("--pd", pd_path, "diagram file")->required();

    CLI::App* c_nbracket = app.add_subcommand("nbracket", "writhe-normalised bracket");
    c_nbracket->add_option("--pd", pd_path, "diagram file")->required();

    CLI::App* c_jones = app.add_subcommand("jones", "Jones polynomial in t");
    c_jones->add_option("--pd", pd_path, "diagram file")->required();

    CLI::App* c_alex = app.add_subcommand("alexander", "Alexander polynomial of a knot");
    c_alex->add_option("--pd", pd_path, "diagram file")->required();

    CLI::App* c_lk = app.add_subcommand("lk", "linking numbers");
    c_lk->add_option("--pd", pd_path, "diagram file")->required();
    c_lk->add_option("--pair", pair_text, "two 1-based component indices i,j");
    c_lk->add_flag("--total", total, "sum over all component pairs");

    CLI::App* c_brvec = app.add_subcommand("brvec", "bracket vector of a tangle expression");
    c_brvec->add_option("--tangle", tangle_text, "tangle expression")->required();
    c_brvec->add_flag("--oracle", oracle, "cross-check against the compiled state sum");

    CLI::App* c_hopf = app.add_subcommand("hopf", "clasp construction on two tangles");
    c_hopf->add_option("--t", t_text, "first tangle")->required();
    c_hopf->add_option("--u", u_text, "second tangle")->required();
    c_hopf->add_flag("--jones", want_jones, "also print the Jones polynomial");
    c_hopf->add_flag("--emit-pd", emit, "print the compiled diagram");

    CLI::App* c_family = app.add_subcommand("family", "members of the twisted clasp family");
    c_family->add_option("--n", family_n, "family index")->required();
    c_family->add_flag("--verify", verify, "state-sum oracle on the compiled diagram");
    c_family->add_flag("--emit-pd", emit, "print the compiled diagram");

    CLI::App* c_thistle =
        app.add_subcommand("thistlethwaite", "the fifteen crossing link with unlink Jones");
    c_thistle->add_flag("--emit-pd", emit, "print the compiled diagram");

    for (CLI::App* sub : {c_bracket, c_nbracket, c_jones, c_alex, c_lk, c_brvec, c_hopf,
                          c_family, c_thistle})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_bracket->parsed()) {
            std::cout << knotpoly::kauffman_bracket(load_pd(pd_path), cap).to_string() << "\n";
        } else if (c_nbracket->parsed()) {
            std::cout << knotpoly::normalized_bracket(load_pd(pd_path), cap).to_string() << "\n";
        } else if (c_jones->parsed()) {
            std::cout << knotpoly::jones(load_pd(pd_path), cap).to_string() << "\n";
        } else if (c_alex->parsed()) {
            std::cout << knotpoly::alexander(load_pd(pd_path)).to_string("t") << "\n";
        } else if (c_lk->parsed()) {
            if (total == !pair_text.empty()) {
                std::cerr << "lk: exactly one of --pair or --total is required\n";
                return 2;
            }
            knotpoly::Diagram d = load_pd(pd_path);
            if (total) {
                std::cout << knotpoly::total_linking_number(d) << "\n";
            } else {
                std::size_t comma = pair_text.find(',');
                int i = 0, j = 0;
                try {
                    if (comma == std::string::npos) throw std::invalid_argument("no comma");
                    i = std::stoi(pair_text.substr(0, comma));
                    j = std::stoi(pair_text.substr(comma + 1));
                } catch (const std::exception&) {
                    std::cerr << "lk: --pair expects two comma-separated indices\n";
                    return 2;
                }
                std::cout << knotpoly::linking_number(d, i - 1, j - 1) << "\n";
            }
        } else if (c_brvec->parsed()) {
            knotpoly::TanglePtr t = knotpoly::parse_tangle(tangle_text);
            knotpoly::BracketVector v = knotpoly::bracket_vector(t);
            std::cout << "f: " << v.f.to_string() << "\n";
            std::cout << "g: " << v.g.to_string() << "\n";
            if (oracle) {
                knotpoly::BracketVector s =
                    knotpoly::tangle_bracket_statesum(knotpoly::compile_tangle(t), cap);
                if (!(s == v)) {
                    std::cerr << "oracle mismatch: compiled state sum disagrees with the "
                                 "calculus\n";
                    return 1;
                }
                std::cout << "oracle: ok\n";
            }
        } else if (c_hopf->parsed()) {
            knotpoly::TanglePtr t = knotpoly::parse_tangle(t_text);
            knotpoly::TanglePtr u = knotpoly::parse_tangle(u_text);
            knotpoly::LaurentPoly br = knotpoly::hopf_bracket(t, u);
            std::cout << "bracket: " << br.to_string() << "\n";
            if (want_jones || emit) {
                knotpoly::Diagram d = knotpoly::compile_H(t, u);
                if (want_jones) {
                    int w = knotpoly::writhe(d);
                    std::cout << "jones: "
                              << knotpoly::jones_from_bracket_writhe(br, w).to_string() << "\n";
                }
                if (emit) std::cout << knotpoly::emit_pd(d);
            }
        } else if (c_family->parsed()) {
            knotpoly::SFamilyEntry e = knotpoly::s_family(family_n);
            std::cout << "n: " << e.n << "\n";
            std::cout << "tangle: " << knotpoly::to_string(e.tangle) << "\n";
            std::cout << "bracket: " << e.bracket.to_string() << "\n";
            std::cout << "writhe: " << e.writhe << "\n";
            std::cout << "jones: " << e.jones.to_string() << "\n";
            if (verify) {
                if (!(knotpoly::kauffman_bracket(e.diagram, cap) == e.bracket)) {
                    std::cerr << "oracle mismatch: compiled state sum disagrees with the "
                                 "clasp form\n";
                    return 1;
                }
                std::cout << "oracle: ok\n";
            }
            if (emit) std::cout << knotpoly::emit_pd(e.diagram);
        } else if (c_thistle->parsed()) {
            knotpoly::ThistlethwaiteLink tl = knotpoly::thistlethwaite();
            std::cout << "crossings: " << tl.diagram.crossings.size() << "\n";
            std::cout << "writhe: " << tl.writhe << "\n";
            std::cout << "bracket: " << tl.bracket.to_string() << "\n";
            std::cout << "jones: " << tl.jones.to_string() << "\n";
            if (emit) std::cout << knotpoly::emit_pd(tl.diagram);
        }
    } catch (const knotpoly::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
