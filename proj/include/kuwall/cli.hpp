#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kuwall/config.hpp"
#include "kuwall/euler.hpp"
#include "kuwall/lattice.hpp"
#include "kuwall/mukai.hpp"
#include "kuwall/scenario_io.hpp"
#include "kuwall/stability.hpp"
#include "kuwall/svg.hpp"
#include "kuwall/walls.hpp"

namespace kuwall {

constexpr int json_schema_version = 1;

namespace cli {

inline nlohmann::json components(const Character& v)
{
    nlohmann::json a = nlohmann::json::array({v.rank().str(), v.c1().str(), v.c2().str()});
    if (v.c3()) a.push_back(v.c3()->str());
    return a;
}

inline std::string approx(const Rational& q)
{
    std::ostringstream os;
    os << std::setprecision(6) << q.to_double();
    return os.str();
}

inline std::string approx_sqrt(const Rational& q)
{
    std::ostringstream os;
    os << std::setprecision(6) << std::sqrt(q.to_double());
    return os.str();
}

inline std::string csv_tuple(const Character& v)
{
    return v.rank().str() + "," + v.c1().str() + "," + v.c2().str();
}

inline std::vector<std::string> decomposition_annotations(const Decomposition& d)
{
    std::vector<std::string> out;
    for (const auto& a : annotate(d.sub)) out.push_back("sub=" + a);
    for (const auto& a : annotate(d.quotient)) out.push_back("quotient=" + a);
    return out;
}

inline std::string join(const std::vector<std::string>& xs, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

} // namespace cli

/// Entry point of the command-line tool; returns the exit status.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Walls, slopes and Hom-vanishing for weak stability conditions on (P^3, B0)"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    bool want_json = false, want_csv = false, want_approx = false;
    app.add_option("--config", config_path, "YAML config file")->check(CLI::ExistingFile);
    app.add_flag("--json", want_json, "JSON output");
    app.add_flag("--csv", want_csv, "CSV output");
    app.add_flag("--approx", want_approx, "add decimal renderings (display only)");

    // character
    auto* c_char = app.add_subcommand("character", "normalize and transform a character");
    std::string ch_text, ch_beta = "0", ch_twist, ch_shift;
    bool ch_modify = false, ch_unmodify = false, ch_half = false;
    c_char->add_option("--char", ch_text, "rk,c1,c2[,c3][@beta=q] or a preset")->required();
    c_char->add_option("--beta", ch_beta, "frame to print in");
    c_char->add_flag("--modify", ch_modify, "apply (1 - 11/32 l)");
    c_char->add_flag("--unmodify", ch_unmodify, "undo (1 - 11/32 l)");
    c_char->add_option("--twist", ch_twist, "multiply by e^{-q h}");
    c_char->add_flag("--half-twist", ch_half, "multiply by e^{h/2}");
    c_char->add_option("--shift", ch_shift, "homological shift [n]");

    // slope
    auto* c_slope = app.add_subcommand("slope", "exact slope at (alpha^2, beta)");
    std::string sl_char, sl_alpha, sl_beta;
    c_slope->add_option("--char", sl_char)->required();
    c_slope->add_option("--alpha2", sl_alpha)->required();
    c_slope->add_option("--beta", sl_beta)->required();

    // walls
    auto* c_walls = app.add_subcommand("walls", "enumerate numerical walls of a target");
    std::string w_target, w_beta = "-1", w_min;
    unsigned w_workers = 0;
    c_walls->add_option("--target", w_target)->required();
    c_walls->add_option("--beta", w_beta);
    c_walls->add_option("--alpha2-min", w_min);
    c_walls->add_option("--workers", w_workers, "worker threads (default: KUWALL_WORKERS or 1)");

    // wall-between
    auto* c_wb = app.add_subcommand("wall-between", "alpha^2 where two classes have equal slope");
    std::string wb_v, wb_w, wb_beta = "-1";
    c_wb->add_option("--v", wb_v)->required();
    c_wb->add_option("--w", wb_w)->required();
    c_wb->add_option("--beta", wb_beta);

    // lattice-check
    auto* c_lat = app.add_subcommand("lattice-check", "membership in the character lattice");
    std::string lat_char;
    c_lat->add_option("--char", lat_char)->required();

    // mukai
    auto* c_muk = app.add_subcommand("mukai", "A2 Mukai lattice queries");
    std::string mk_vec;
    bool mk_dim = false, mk_char = false, mk_delta = false;
    c_muk->add_option("--vector", mk_vec, "a,b for a*lambda1 + b*lambda2")->required();
    c_muk->add_flag("--dim", mk_dim);
    c_muk->add_flag("--char", mk_char);
    c_muk->add_flag("--delta", mk_delta);

    // chi
    auto* c_chi = app.add_subcommand("chi", "Euler characteristic on P^3 of an ordinary character");
    std::string chi_char;
    bool chi_chain = false;
    c_chi->add_option("--char", chi_char, "rk,c1,c2,c3 (ordinary, frame 0)")->required();
    c_chi->add_flag("--chain", chi_chain, "also evaluate the chi(B2, -) re-expression");

    // scan
    auto* c_scan = app.add_subcommand("scan", "SVG of the (ch1/rk, ch2/rk) plane with walls");
    std::string sc_target, sc_out, sc_beta = "-1";
    c_scan->add_option("--target", sc_target)->required();
    c_scan->add_option("--out", sc_out)->required();
    c_scan->add_option("--beta", sc_beta);

    // scenario run
    auto* c_scen = app.add_subcommand("scenario", "vanishing scenarios");
    c_scen->require_subcommand(1);
    auto* c_run = c_scen->add_subcommand("run", "propagate a scenario file");
    std::string run_file;
    std::vector<std::string> run_queries;
    c_run->add_option("file", run_file)->required()->check(CLI::ExistingFile);
    c_run->add_option("--query", run_queries, "Hom(A, B[n]) to trace");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        Config cfg = config_path.empty() ? Config{} : load_config(config_path);
        OutputFormat fmt = cfg.output_format;
        if (want_json) fmt = OutputFormat::json;
        if (want_csv) fmt = OutputFormat::csv;
        auto parse_char = [&](const std::string& s) { return parse_character(s, cfg.presets); };

        if (*c_char) {
            Character v = parse_char(ch_text);
            if (ch_modify) v = modify(v);
            if (ch_unmodify) v = unmodify(v);
            if (!ch_twist.empty()) v = twist(v, Rational::parse(ch_twist)).at_frame(0);
            if (ch_half) v = half_twist(v);
            if (!ch_shift.empty()) v = shift(v, detail::parse_long(ch_shift, ch_shift));
            const Character shown = v.at_frame(Rational::parse(ch_beta));
            std::string member;
            try {
                member = lattice_member(v) ? "true" : "false";
            } catch (const NonIntegralCoordinates&) {
                member = "non-integral";
            }
            if (fmt == OutputFormat::json) {
                nlohmann::json j = {{"schema_version", json_schema_version},
                                    {"beta", shown.frame().str()},
                                    {"character", cli::components(shown)},
                                    {"discriminant", discriminant(v).str()},
                                    {"lattice_member", member},
                                    {"annotations", annotate(v)}};
                out << j.dump(2) << "\n";
            } else if (fmt == OutputFormat::csv) {
                out << "beta,rank,c1,c2,discriminant,lattice_member\n"
                    << shown.frame() << "," << cli::csv_tuple(shown) << "," << discriminant(v) << "," << member << "\n";
            } else {
                out << shown.str() << " at beta=" << shown.frame() << "\n"
                    << "discriminant " << discriminant(v) << "\n"
                    << "lattice member " << member << "\n";
                if (auto a = annotate(v); !a.empty()) out << "matches " << cli::join(a, ", ") << "\n";
                if (ch_half && v.c3() && !half_twist_c3_validated()) out << "note: degree-3 half-twist is unvalidated\n";
            }
            return 0;
        }

        if (*c_slope) {
            const Character v = parse_char(sl_char);
            const StabilityParams p(Rational::parse(sl_alpha), Rational::parse(sl_beta));
            const Slope s = slope(v, p);
            if (fmt == OutputFormat::json) {
                nlohmann::json j = {{"schema_version", json_schema_version}, {"slope", s.str()}};
                if (want_approx && !s.is_infinite()) j["slope_approx"] = cli::approx(s.value());
                out << j.dump(2) << "\n";
            } else {
                out << s.str();
                if (want_approx && !s.is_infinite()) out << "  (~" << cli::approx(s.value()) << ", display only)";
                out << "\n";
            }
            return 0;
        }

        if (*c_walls) {
            const Character target = parse_char(w_target);
            const Rational beta = Rational::parse(w_beta);
            WallSearchOptions opt;
            opt.alpha_sq_min = w_min.empty() ? cfg.alpha_sq_min : Rational::parse(w_min);
            opt.search_box_limit = cfg.search_box_limit;
            opt.workers = w_workers;
            const WallSearchResult res = enumerate_walls(target, beta, opt);
            const Character t = target.at_frame(beta);
            if (fmt == OutputFormat::json) {
                nlohmann::json walls = nlohmann::json::array();
                for (const auto& w : res.walls) {
                    nlohmann::json ds = nlohmann::json::array();
                    for (const auto& d : w.decompositions) {
                        ds.push_back({{"sub", cli::components(d.sub)},
                                      {"quotient", cli::components(d.quotient)},
                                      {"annotations", cli::decomposition_annotations(d)}});
                    }
                    nlohmann::json jw = {{"alpha_sq", w.alpha_sq.str()}, {"decompositions", ds}};
                    if (want_approx) jw["alpha_approx"] = cli::approx_sqrt(w.alpha_sq);
                    walls.push_back(jw);
                }
                nlohmann::json prop = nlohmann::json::array();
                for (const auto& d : res.proportional) {
                    prop.push_back({{"sub", cli::components(d.sub)}, {"quotient", cli::components(d.quotient)}});
                }
                nlohmann::json j = {{"schema_version", json_schema_version},
                                    {"target", cli::components(t)},
                                    {"beta", beta.str()},
                                    {"alpha_sq_min", opt.alpha_sq_min.str()},
                                    {"walls", walls},
                                    {"proportional", prop}};
                out << j.dump(2) << "\n";
            } else if (fmt == OutputFormat::csv) {
                out << "alpha_sq,sub_rank,sub_c1,sub_c2,quotient_rank,quotient_c1,quotient_c2,annotations\n";
                for (const auto& w : res.walls) {
                    for (const auto& d : w.decompositions) {
                        out << w.alpha_sq << "," << cli::csv_tuple(d.sub) << "," << cli::csv_tuple(d.quotient) << ","
                            << cli::join(cli::decomposition_annotations(d), ";") << "\n";
                    }
                }
            } else {
                out << "target " << t.str() << " at beta=" << beta << ", alpha^2 >= " << opt.alpha_sq_min << "\n";
                if (res.walls.empty()) out << "no walls\n";
                for (const auto& w : res.walls) {
                    out << "wall alpha^2 = " << w.alpha_sq;
                    if (want_approx) out << "  (alpha ~ " << cli::approx_sqrt(w.alpha_sq) << ", display only)";
                    out << "\n";
                    for (const auto& d : w.decompositions) {
                        out << "  " << d.sub.str() << " + " << d.quotient.str();
                        if (auto a = cli::decomposition_annotations(d); !a.empty()) out << "   " << cli::join(a, ", ");
                        out << "\n";
                    }
                }
                if (!res.proportional.empty()) {
                    out << "proportional sub-classes (equal slope everywhere, not walls)\n";
                    for (const auto& d : res.proportional) out << "  " << d.sub.str() << " + " << d.quotient.str() << "\n";
                }
            }
            return 0;
        }

        if (*c_wb) {
            const WallEquation eq = wall_between(parse_char(wb_v), parse_char(wb_w), Rational::parse(wb_beta));
            const std::string v = eq.kind == WallEquation::Kind::at ? eq.alpha_sq.str()
                                  : eq.kind == WallEquation::Kind::always ? "always"
                                                                          : "none";
            if (fmt == OutputFormat::json) {
                out << nlohmann::json{{"schema_version", json_schema_version}, {"alpha_sq", v}}.dump(2) << "\n";
            } else {
                out << v;
                if (want_approx && eq.has_root()) out << "  (alpha ~ " << cli::approx_sqrt(eq.alpha_sq) << ", display only)";
                out << "\n";
            }
            return 0;
        }

        if (*c_lat) {
            const Character v = parse_char(lat_char);
            const bool member = lattice_member(v);
            if (fmt == OutputFormat::json) {
                out << nlohmann::json{{"schema_version", json_schema_version},
                                      {"lattice_member", member},
                                      {"parity", satisfies_parity(v)}}
                           .dump(2)
                    << "\n";
            } else {
                out << (member ? "true" : "false") << "\n";
            }
            return 0;
        }

        if (*c_muk) {
            const auto parts = detail::split(mk_vec, ',');
            if (parts.size() != 2) throw ParseError("--vector expects a,b");
            const MukaiVector v{detail::parse_long(parts[0], mk_vec), detail::parse_long(parts[1], mk_vec)};
            const bool all = !mk_dim && !mk_char && !mk_delta;
            if (fmt == OutputFormat::json) {
                nlohmann::json j = {{"schema_version", json_schema_version}, {"square", pairing(v, v)}};
                if (all || mk_dim) j["dim"] = moduli_dim(v);
                if (all || mk_char) j["character"] = cli::components(to_character(v).at_frame(-1));
                if (all || mk_delta) j["delta"] = delta_on_lattice(v).str();
                out << j.dump(2) << "\n";
            } else if (!all && mk_dim + mk_char + mk_delta == 1) {
                if (mk_dim) out << moduli_dim(v) << "\n";
                if (mk_char) out << to_character(v).at_frame(-1).str() << "\n";
                if (mk_delta) out << delta_on_lattice(v) << "\n";
            } else {
                out << "v^2 " << pairing(v, v) << "\n";
                if (all || mk_dim) out << "dim " << moduli_dim(v) << "\n";
                if (all || mk_char) out << "character " << to_character(v).at_frame(-1).str() << " at beta=-1\n";
                if (all || mk_delta) out << "delta " << delta_on_lattice(v) << "\n";
            }
            return 0;
        }

        if (*c_chi) {
            const Character v = parse_char(chi_char);
            const Rational x = chi_p3(v);
            if (fmt == OutputFormat::json) {
                nlohmann::json j = {{"schema_version", json_schema_version}, {"chi", x.str()}};
                if (chi_chain) {
                    const Character b = modify(v).at_frame(-1);
                    j["chi_twisted_down"] = chi_twisted_down(v).str();
                    j["chain_13_16"] = chi_b2_chain(b, x).str();
                    j["chain_11_32"] = chi_b2_chain_derived(b, x).str();
                }
                out << j.dump(2) << "\n";
            } else {
                out << x << "\n";
                if (chi_chain) {
                    const Character b = modify(v).at_frame(-1);
                    out << "chi(F(-h))        " << chi_twisted_down(v) << "\n"
                        << "chain with 13/16  " << chi_b2_chain(b, x) << "\n"
                        << "chain with 11/32  " << chi_b2_chain_derived(b, x) << "\n";
                }
            }
            return 0;
        }

        if (*c_scan) {
            const Character target = parse_char(sc_target);
            const Rational beta = Rational::parse(sc_beta);
            WallSearchOptions opt;
            opt.alpha_sq_min = cfg.alpha_sq_min;
            opt.search_box_limit = cfg.search_box_limit;
            ScanPlot plot{target, beta, {}, -3, 3};
            for (const auto& w : enumerate_walls(target, beta, opt).walls) plot.walls.push_back(w.alpha_sq);
            std::ofstream f(sc_out);
            if (!f) throw Error("cannot write '" + sc_out + "'");
            f << render_scan_svg(plot);
            out << "wrote " << sc_out << " (" << plot.walls.size() << " walls)\n";
            return 0;
        }

        if (*c_run) {
            const ScenarioReport rep = run_scenario(load_scenario(run_file));
            print_report(out, rep);
            for (const auto& q : run_queries) {
                const Slot s = parse_slot(q);
                const QueryResult r = query(rep.table, s.source, s.target, s.shift);
                out << "query " << s.str() << " -> " << to_string(r.state) << "\n";
                for (const auto& line : r.trace) out << "  " << line << "\n";
            }
            return rep.passed() ? 0 : 1;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace kuwall
