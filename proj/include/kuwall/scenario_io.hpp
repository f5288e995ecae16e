#pragma once

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "kuwall/vanishing.hpp"

namespace kuwall {

namespace detail {

inline std::string scalar(const YAML::Node& n, const std::string& what)
{
    if (!n || !n.IsScalar()) throw ParseError("scenario: expected a scalar for '" + what + "'");
    return n.as<std::string>();
}

inline HomState parse_state(const std::string& s)
{
    if (s == "zero") return HomState::zero;
    if (s == "nonzero") return HomState::nonzero;
    if (s == "unknown") return HomState::unknown;
    throw ParseError("scenario: unknown hom state '" + s + "'");
}

inline ChiKey parse_chi_key(std::string_view text)
{
    std::string_view s = trim(text);
    if (s.substr(0, 4) != "chi(" || s.back() != ')') throw ParseError("expected chi(A, B) in '" + std::string(text) + "'");
    const auto parts = split(s.substr(4, s.size() - 5), ',');
    if (parts.size() != 2) throw ParseError("expected chi(A, B) in '" + std::string(text) + "'");
    return {std::string(parts[0]), std::string(parts[1])};
}

inline Expectation parse_expectation(const std::string& text)
{
    Expectation e;
    e.text = text;
    std::string_view s = trim(text);
    if (s.substr(0, 3) == "Ku(" && s.back() == ')') {
        e.kind = Expectation::Kind::ku;
        e.object = std::string(trim(s.substr(3, s.size() - 4)));
        return e;
    }
    if (s.substr(0, 4) == "chi(") {
        const auto close = s.find(')');
        e.kind = Expectation::Kind::chi;
        const ChiKey k = parse_chi_key(s.substr(0, close + 1));
        e.source = k.source;
        e.target = k.target;
        e.signs = sign::parse(s.substr(close + 1));
        return e;
    }
    const auto eq = s.rfind('=');
    if (eq == std::string_view::npos) throw ParseError("expectation needs '= state': '" + text + "'");
    e.kind = Expectation::Kind::hom;
    e.slot = parse_slot(s.substr(0, eq));
    e.state = parse_state(std::string(trim(s.substr(eq + 1))));
    return e;
}

} // namespace detail

inline Scenario parse_scenario(const YAML::Node& root)
{
    using detail::scalar;
    Scenario sc;
    if (!root.IsMap()) throw ParseError("scenario: top level must be a mapping");
    if (root["name"]) sc.name = scalar(root["name"], "name");
    if (root["description"]) sc.description = scalar(root["description"], "description");
    if (const auto w = root["window"]) {
        if (!w.IsSequence() || w.size() != 2) throw ParseError("scenario: window must be [lo, hi]");
        sc.window_lo = w[0].as<long>();
        sc.window_hi = w[1].as<long>();
    }
    if (const auto e = root["expect"]) {
        const std::string v = scalar(e, "expect");
        if (v != "contradiction" && v != "consistent") throw ParseError("scenario: expect must be contradiction|consistent");
        sc.expect_contradiction = v == "contradiction";
    }
    for (const auto& p : root["points"]) {
        sc.points.push_back({scalar(p["name"], "points.name"),
                             StabilityParams(Rational::parse(scalar(p["alpha_sq"], "points.alpha_sq")),
                                             Rational::parse(scalar(p["beta"], "points.beta")))});
    }
    for (const auto& o : root["objects"]) {
        ObjectDecl d;
        d.name = scalar(o["name"], "objects.name");
        if (o["char"]) d.character = parse_character(scalar(o["char"], "objects.char"));
        if (o["ku"]) d.in_ku = o["ku"].as<bool>();
        for (const auto& h : o["heart"]) {
            d.hearts.push_back({Rational::parse(scalar(h["beta"], "heart.beta")),
                                h["shift"] ? h["shift"].as<long>() : 0L});
        }
        for (const auto& s : o["semistable"]) d.semistable_at.push_back(s.as<std::string>());
        sc.objects.push_back(std::move(d));
    }
    for (const auto& q : root["sequences"]) {
        sc.sequences.push_back({parse_objref(scalar(q["sub"], "sequences.sub")),
                                parse_objref(scalar(q["object"], "sequences.object")),
                                parse_objref(scalar(q["quotient"], "sequences.quotient")),
                                Rational::parse(scalar(q["beta"], "sequences.beta"))});
    }
    for (const auto& o : root["order"]) sc.order.push_back(parse_order_premise(o.as<std::string>()));
    for (const auto& f : root["facts"]) {
        sc.facts.push_back({parse_slot(scalar(f["hom"], "facts.hom")), detail::parse_state(scalar(f["state"], "facts.state")),
                            f["why"] ? f["why"].as<std::string>() : std::string()});
    }
    for (const auto& c : root["chi"]) {
        const ChiKey k = detail::parse_chi_key(scalar(c["chi"], "chi.chi"));
        sc.chi.push_back({k.source, k.target, sign::parse(scalar(c["sign"], "chi.sign")),
                          c["why"] ? c["why"].as<std::string>() : std::string()});
    }
    for (const auto& e : root["expect_facts"]) sc.expectations.push_back(detail::parse_expectation(e.as<std::string>()));
    return sc;
}

inline Scenario load_scenario(const std::string& path)
{
    YAML::Node root;
    try {
        root = YAML::LoadFile(path);
    } catch (const YAML::Exception& e) {
        throw ParseError("cannot read scenario '" + path + "': " + e.what());
    }
    return parse_scenario(root);
}

struct ExpectationResult {
    std::string text;
    bool ok = false;
    std::string got;
};

struct ScenarioReport {
    Scenario scenario;
    FactTable table;
    bool contradiction = false;
    std::string contradiction_message;
    Derivation first, second;
    std::vector<ExpectationResult> checks;

    /// Outcome and every expected fact as declared.
    bool passed() const
    {
        if (scenario.expect_contradiction && *scenario.expect_contradiction != contradiction) return false;
        if (!scenario.expect_contradiction && contradiction) return false;
        for (const auto& c : checks) {
            if (!c.ok) return false;
        }
        return true;
    }
};

inline ScenarioReport run_scenario(const Scenario& sc)
{
    ScenarioReport rep;
    rep.scenario = sc;
    try {
        rep.table = propagate(sc);
    } catch (const ContradictionDetected& c) {
        rep.contradiction = true;
        rep.contradiction_message = c.what();
        rep.table = c.table;
        rep.first = c.first;
        rep.second = c.second;
    }
    for (const auto& e : sc.expectations) {
        ExpectationResult r{e.text, false, ""};
        switch (e.kind) {
        case Expectation::Kind::hom:
            r.got = to_string(rep.table.state(e.slot));
            r.ok = rep.table.state(e.slot) == e.state;
            break;
        case Expectation::Kind::chi: {
            const unsigned got = rep.table.chi({e.source, e.target});
            r.got = sign::str(got);
            r.ok = got != 0 && (got & ~e.signs) == 0;
            break;
        }
        case Expectation::Kind::ku:
            r.ok = rep.table.ku.count(e.object) > 0;
            r.got = r.ok ? "derived" : "not derived";
            break;
        }
        rep.checks.push_back(r);
    }
    return rep;
}

inline void print_derivation(std::ostream& os, const Derivation& d)
{
    os << "[" << d.rule << "] " << d.note;
    if (!d.premises.empty()) {
        os << " <- ";
        for (std::size_t i = 0; i < d.premises.size(); ++i) os << (i ? ", " : "") << d.premises[i];
    }
}

inline void print_report(std::ostream& os, const ScenarioReport& rep)
{
    os << "scenario: " << rep.scenario.name << "\n";
    if (!rep.scenario.description.empty()) os << "  " << rep.scenario.description << "\n";
    os << "facts:\n";
    for (const auto& [slot, f] : rep.table.homs) {
        if (f.state == HomState::unknown) continue;
        os << "  " << slot.str() << " = " << to_string(f.state) << "  ";
        print_derivation(os, f.why);
        os << "\n";
    }
    os << "euler:\n";
    for (const auto& [key, f] : rep.table.chis) {
        if (f.signs == sign::any) continue;
        os << "  " << key.str() << " " << sign::str(f.signs) << "  ";
        print_derivation(os, f.why);
        os << "\n";
    }
    os << "ku:\n";
    for (const auto& [name, d] : rep.table.ku) os << "  " << name << "  [" << d.rule << "] " << d.note << "\n";
    if (rep.contradiction) {
        os << "contradiction: " << rep.contradiction_message << "\n  first:  ";
        print_derivation(os, rep.first);
        os << "\n  second: ";
        print_derivation(os, rep.second);
        os << "\n";
    }
    for (const auto& c : rep.checks) os << (c.ok ? "  ok   " : "  FAIL ") << c.text << " (got " << c.got << ")\n";
    os << "outcome: " << (rep.contradiction ? "contradiction" : "consistent");
    if (rep.scenario.expect_contradiction) {
        os << " (expected " << (*rep.scenario.expect_contradiction ? "contradiction" : "consistent") << ")";
    }
    os << "\nresult: " << (rep.passed() ? "as expected" : "UNEXPECTED") << "\n";
}

} // namespace kuwall
