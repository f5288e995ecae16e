#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kuwall/character.hpp"
#include "kuwall/stability.hpp"

namespace kuwall {

enum class HomState { unknown, zero, nonzero };

inline std::string to_string(HomState s)
{
    switch (s) {
    case HomState::zero: return "zero";
    case HomState::nonzero: return "nonzero";
    default: return "unknown";
    }
}

/// An object name with a shift, written "B0[1]".
struct ObjRef {
    std::string name;
    long shift = 0;

    std::string str() const { return shift == 0 ? name : name + "[" + std::to_string(shift) + "]"; }
    friend bool operator==(const ObjRef&, const ObjRef&) = default;
};

inline ObjRef parse_objref(std::string_view text)
{
    std::string_view s = detail::trim(text);
    ObjRef ref;
    if (!s.empty() && s.back() == ']') {
        const auto open = s.rfind('[');
        if (open == std::string_view::npos) throw ParseError("bad object reference '" + std::string(text) + "'");
        ref.shift = detail::parse_long(s.substr(open + 1, s.size() - open - 2), text);
        s = detail::trim(s.substr(0, open));
    }
    if (s.empty()) throw ParseError("empty object reference");
    ref.name = std::string(s);
    return ref;
}

/// B_i objects are built in under the names "B<i>", e.g. "B0", "B-2".
inline std::optional<long> b_index(const std::string& name)
{
    if (name.size() < 2 || name[0] != 'B') return std::nullopt;
    std::size_t pos = 1;
    if (name[pos] == '-') ++pos;
    if (pos >= name.size()) return std::nullopt;
    for (std::size_t i = pos; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    }
    return std::stol(name.substr(1));
}

inline std::string b_name(long i) { return "B" + std::to_string(i); }

/// Hom(source, target[shift]).
struct Slot {
    std::string source;
    std::string target;
    long shift = 0;

    std::string str() const
    {
        return "Hom(" + source + ", " + target + (shift == 0 ? "" : "[" + std::to_string(shift) + "]") + ")";
    }
    friend auto operator<=>(const Slot&, const Slot&) = default;
};

/// "Hom(A[m], B[n])" -> Hom(A, B[n - m]).
inline Slot parse_slot(std::string_view text)
{
    std::string_view s = detail::trim(text);
    if (s.substr(0, 4) != "Hom(" || s.back() != ')') throw ParseError("expected Hom(A, B[n]) in '" + std::string(text) + "'");
    s = s.substr(4, s.size() - 5);
    const auto comma = s.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected Hom(A, B[n]) in '" + std::string(text) + "'");
    const ObjRef a = parse_objref(s.substr(0, comma));
    const ObjRef b = parse_objref(s.substr(comma + 1));
    return {a.name, b.name, b.shift - a.shift};
}

/// Subsets of {<0, =0, >0} as a bit mask.
namespace sign {
constexpr unsigned neg = 1, zero = 2, pos = 4, any = 7;

inline unsigned of(int s) { return s < 0 ? neg : (s == 0 ? zero : pos); }

inline unsigned flip(unsigned m) { return (m & zero) | ((m & neg) ? pos : 0) | ((m & pos) ? neg : 0); }

/// Possible signs of x + y.
inline unsigned add(unsigned a, unsigned b)
{
    unsigned out = 0;
    for (int x = -1; x <= 1; ++x) {
        if (!(a & of(x))) continue;
        for (int y = -1; y <= 1; ++y) {
            if (!(b & of(y))) continue;
            if (x == 0) out |= of(y);
            else if (y == 0 || x == y) out |= of(x);
            else out |= any;
        }
    }
    return out;
}

inline std::string str(unsigned m)
{
    switch (m) {
    case 0: return "{}";
    case neg: return "<0";
    case zero: return "=0";
    case pos: return ">0";
    case neg | zero: return "<=0";
    case pos | zero: return ">=0";
    case neg | pos: return "!=0";
    default: return "any";
    }
}

inline unsigned parse(std::string_view text)
{
    const std::string_view s = detail::trim(text);
    if (s == "<0") return neg;
    if (s == "=0" || s == "0") return zero;
    if (s == ">0") return pos;
    if (s == "<=0") return neg | zero;
    if (s == ">=0") return pos | zero;
    if (s == "!=0") return neg | pos;
    if (s == "any") return any;
    return of(Rational::parse(s).sign());
}
} // namespace sign

struct HeartDecl {
    Rational beta;
    long shift = 0;
};

struct ObjectDecl {
    std::string name;
    std::optional<Character> character;
    bool in_ku = false;
    /// obj[shift] lies in the heart at beta.
    std::vector<HeartDecl> hearts;
    /// Points (by name) where the heart shift of the object is semistable.
    std::vector<std::string> semistable_at;
};

struct NamedPoint {
    std::string name;
    StabilityParams params;
};

/// sub -> object -> quotient, a short exact sequence in the heart at beta.
struct SequenceDecl {
    ObjRef sub, object, quotient;
    Rational beta;
};

struct SlopeTerm {
    enum class Kind { mu, mu_min, mu_max };
    Kind kind = Kind::mu;
    ObjRef obj;

    std::string str() const
    {
        const char* k = kind == Kind::mu ? "mu" : (kind == Kind::mu_min ? "mu_min" : "mu_max");
        return std::string(k) + "(" + obj.str() + ")";
    }
};

struct OrderPremise {
    std::string point;
    SlopeTerm lhs;
    std::string rel; // <, <=, =, >=, >
    SlopeTerm rhs;

    std::string str() const { return point + ": " + lhs.str() + " " + rel + " " + rhs.str(); }
};

inline SlopeTerm parse_slope_term(std::string_view text)
{
    std::string_view s = detail::trim(text);
    SlopeTerm t;
    std::string_view head;
    if (s.substr(0, 7) == "mu_min(") {
        t.kind = SlopeTerm::Kind::mu_min;
        head = s.substr(7);
    } else if (s.substr(0, 7) == "mu_max(") {
        t.kind = SlopeTerm::Kind::mu_max;
        head = s.substr(7);
    } else if (s.substr(0, 3) == "mu(") {
        head = s.substr(3);
    } else {
        throw ParseError("expected mu(X), mu_min(X) or mu_max(X) in '" + std::string(text) + "'");
    }
    if (head.empty() || head.back() != ')') throw ParseError("unbalanced parenthesis in '" + std::string(text) + "'");
    t.obj = parse_objref(head.substr(0, head.size() - 1));
    return t;
}

/// "point: mu(A) < mu_min(B[1])".
inline OrderPremise parse_order_premise(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError("order premise needs 'point:' prefix: '" + std::string(text) + "'");
    OrderPremise p;
    p.point = std::string(detail::trim(text.substr(0, colon)));
    std::string_view rest = text.substr(colon + 1);
    for (const char* rel : {"<=", ">=", "<", ">", "="}) {
        const auto at = rest.find(rel);
        if (at == std::string_view::npos) continue;
        p.rel = rel;
        p.lhs = parse_slope_term(rest.substr(0, at));
        p.rhs = parse_slope_term(rest.substr(at + p.rel.size()));
        return p;
    }
    throw ParseError("no relation in order premise '" + std::string(text) + "'");
}

struct SeedFact {
    Slot slot;
    HomState state = HomState::unknown;
    std::string why;
};

struct ChiDecl {
    std::string source, target;
    unsigned signs = sign::any;
    std::string why;
};

struct Expectation {
    enum class Kind { hom, chi, ku };
    Kind kind = Kind::hom;
    Slot slot;
    HomState state = HomState::unknown;
    std::string source, target;
    unsigned signs = sign::any;
    std::string object;
    std::string text;
};

struct Scenario {
    std::string name;
    std::string description;
    long window_lo = -3;
    long window_hi = 6;
    std::vector<NamedPoint> points;
    std::vector<ObjectDecl> objects;
    std::vector<SequenceDecl> sequences;
    std::vector<OrderPremise> order;
    std::vector<SeedFact> facts;
    std::vector<ChiDecl> chi;
    std::optional<bool> expect_contradiction;
    std::vector<Expectation> expectations;
};

// ---------------------------------------------------------------------------
// Rule instances

struct FixedClause {
    Slot slot;
    HomState state;
    std::string rule;
    std::string note;
};

struct EquivClause {
    Slot a, b;
    std::string note;
};

/// from nonzero => to nonzero.
struct ImpliesClause {
    Slot from, to;
    std::string note;
};

struct ChiKey {
    std::string source, target;
    std::string str() const { return "chi(" + source + ", " + target + ")"; }
    friend auto operator<=>(const ChiKey&, const ChiKey&) = default;
};

/// chi(source, total) = chi(source, a) + chi(source, b), with each term negated
/// when the corresponding flag is set (odd shifts).
struct ChiSumClause {
    ChiKey total, a, b;
    bool flip_total = false, flip_a = false, flip_b = false;
    std::string note;
};

struct ChiDeclClause {
    ChiKey key;
    unsigned signs;
    std::string note;
};

struct Constraints {
    long window_lo = -3, window_hi = 6;
    std::vector<FixedClause> fixed;
    std::vector<EquivClause> equiv;
    std::vector<ImpliesClause> implies;
    std::vector<ChiKey> tracked;
    std::vector<ChiDeclClause> chi_decls;
    std::vector<ChiSumClause> chi_sums;
    /// Non-B objects whose Ku membership is reported.
    std::vector<std::string> ku_candidates;
};

// ---------------------------------------------------------------------------
// Fact table

struct Derivation {
    std::string rule;
    std::string note;
    std::vector<std::string> premises;
};

struct HomFact {
    HomState state = HomState::unknown;
    Derivation why;
};

struct ChiFact {
    unsigned signs = sign::any;
    Derivation why;
};

struct FactTable {
    long window_lo = -3, window_hi = 6;
    std::map<Slot, HomFact> homs;
    std::map<ChiKey, ChiFact> chis;
    std::map<std::string, Derivation> ku;
    std::set<std::string> objects;

    HomState state(const Slot& s) const
    {
        auto it = homs.find(s);
        return it == homs.end() ? HomState::unknown : it->second.state;
    }
    unsigned chi(const ChiKey& k) const
    {
        auto it = chis.find(k);
        return it == chis.end() ? sign::any : it->second.signs;
    }
};

class ContradictionDetected : public Error {
public:
    ContradictionDetected(std::string what, FactTable partial, Derivation first, Derivation second)
        : Error(std::move(what)), table(std::move(partial)), first(std::move(first)), second(std::move(second))
    {
    }
    FactTable table;
    Derivation first;
    Derivation second;
};

// ---------------------------------------------------------------------------
// Instantiation

namespace detail {

struct Universe {
    const Scenario& sc;
    std::map<std::string, const ObjectDecl*> declared;
    std::set<long> b_indices;
    std::set<Rational> betas;

    explicit Universe(const Scenario& s) : sc(s)
    {
        for (const auto& o : sc.objects) {
            if (b_index(o.name)) throw Error("object name '" + o.name + "' is reserved for a built-in B_i");
            if (!declared.emplace(o.name, &o).second) throw Error("object '" + o.name + "' declared twice");
            for (const auto& h : o.hearts) betas.insert(h.beta);
        }
        for (const auto& p : sc.points) betas.insert(p.params.beta);
        for (const auto& q : sc.sequences) betas.insert(q.beta);
        for (long i = -2; i <= 3; ++i) b_indices.insert(i);
        auto note = [&](const std::string& name) {
            if (auto i = b_index(name)) {
                b_indices.insert(*i);
            } else if (!declared.count(name)) {
                throw UnknownObject("object '" + name + "' is not declared");
            }
        };
        for (const auto& q : sc.sequences) {
            note(q.sub.name);
            note(q.object.name);
            note(q.quotient.name);
        }
        for (const auto& p : sc.order) {
            note(p.lhs.obj.name);
            note(p.rhs.obj.name);
        }
        for (const auto& f : sc.facts) {
            note(f.slot.source);
            note(f.slot.target);
        }
        for (const auto& c : sc.chi) {
            note(c.source);
            note(c.target);
        }
    }

    const NamedPoint& point(const std::string& name) const
    {
        for (const auto& p : sc.points) {
            if (p.name == name) return p;
        }
        throw UnknownObject("point '" + name + "' is not declared");
    }

    std::optional<Character> character(const std::string& name) const
    {
        if (auto i = b_index(name)) return b_char(*i);
        return declared.at(name)->character;
    }

    std::optional<long> heart_shift(const std::string& name, const Rational& beta) const
    {
        if (auto i = b_index(name)) {
            return b_char(*i).at_frame(beta).c1().sign() > 0 ? 0L : 1L;
        }
        for (const auto& h : declared.at(name)->hearts) {
            if (h.beta == beta) return h.shift;
        }
        return std::nullopt;
    }

    bool semistable(const std::string& name, const std::string& point) const
    {
        if (b_index(name)) return true;
        const auto& list = declared.at(name)->semistable_at;
        return std::find(list.begin(), list.end(), point) != list.end();
    }

    /// Every object in the heart at beta, as (name, heart shift).
    std::vector<ObjRef> heart_members(const Rational& beta) const
    {
        std::vector<ObjRef> out;
        for (long i : b_indices) out.push_back({b_name(i), *heart_shift(b_name(i), beta)});
        for (const auto& o : sc.objects) {
            if (auto s = heart_shift(o.name, beta)) out.push_back({o.name, *s});
        }
        return out;
    }
};

/// Slope order at one point: nodes are slope terms, relations 0 (none), 1 (<=), 2 (<).
class SlopeOrder {
public:
    int node(const std::string& key)
    {
        auto [it, inserted] = index_.emplace(key, static_cast<int>(names_.size()));
        if (inserted) names_.push_back(key);
        return it->second;
    }

    void relate(int a, int b, int strength, std::string why)
    {
        edges_.push_back({a, b, strength, std::move(why)});
    }

    void constant(int a, Slope value) { constants_.push_back({a, std::move(value)}); }

    void close()
    {
        for (std::size_t i = 0; i < constants_.size(); ++i) {
            for (std::size_t j = 0; j < constants_.size(); ++j) {
                const auto& [a, va] = constants_[i];
                const auto& [b, vb] = constants_[j];
                if (a == b) continue;
                if (va < vb) relate(a, b, 2, "computed");
                else if (va == vb) relate(a, b, 1, "computed");
            }
        }
        const std::size_t n = names_.size();
        rel_.assign(n, std::vector<int>(n, 0));
        why_.assign(n, std::vector<std::string>(n));
        for (std::size_t i = 0; i < n; ++i) rel_[i][i] = 1;
        for (const auto& e : edges_) {
            if (e.strength > rel_[e.a][e.b]) {
                rel_[e.a][e.b] = e.strength;
                why_[e.a][e.b] = e.why;
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!rel_[i][k]) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (!rel_[k][j]) continue;
                    const int s = std::max(rel_[i][k], rel_[k][j]);
                    if (s > rel_[i][j]) {
                        rel_[i][j] = s;
                        why_[i][j] = join(why_[i][k], why_[k][j]);
                    }
                }
            }
        }
    }

    /// Index of a node with a strict cycle through it, or -1.
    int inconsistent() const
    {
        for (std::size_t i = 0; i < rel_.size(); ++i) {
            if (rel_[i][i] == 2) return static_cast<int>(i);
        }
        return -1;
    }

    bool strictly_less(int a, int b) const { return rel_[a][b] == 2; }
    const std::string& why(int a, int b) const { return why_[a][b]; }
    const std::string& name(int a) const { return names_[a]; }
    bool has(const std::string& key) const { return index_.count(key) > 0; }
    int at(const std::string& key) const { return index_.at(key); }

private:
    static std::string join(const std::string& a, const std::string& b)
    {
        if (a.empty() || a == b) return b;
        if (b.empty()) return a;
        return a + "; " + b;
    }

    struct Edge {
        int a, b, strength;
        std::string why;
    };
    std::map<std::string, int> index_;
    std::vector<std::string> names_;
    std::vector<Edge> edges_;
    std::vector<std::pair<int, Slope>> constants_;
    std::vector<std::vector<int>> rel_;
    std::vector<std::vector<std::string>> why_;
};

inline std::string term_key(SlopeTerm::Kind kind, const ObjRef& obj)
{
    return SlopeTerm{kind, obj}.str();
}

} // namespace detail

/// Turns a scenario into rule instances (R1 slope, R2 heart, R3 Serre,
/// R4 semiorthogonality, R5 Euler bookkeeping, R6 sub/quotient transfer).
inline Constraints instantiate(const Scenario& sc)
{
    if (sc.window_lo > sc.window_hi) throw Error("empty shift window");
    const detail::Universe U(sc);
    Constraints C;
    C.window_lo = sc.window_lo;
    C.window_hi = sc.window_hi;
    const long lo = sc.window_lo, hi = sc.window_hi;
    auto in_window = [&](long j) { return lo <= j && j <= hi; };

    // Seeds.
    for (const auto& f : sc.facts) {
        if (f.state == HomState::unknown) continue;
        C.fixed.push_back({f.slot, f.state, "seed", f.why});
    }

    // R1 slope vanishing, point by point.
    using Kind = SlopeTerm::Kind;
    for (const auto& p : sc.points) {
        detail::SlopeOrder order;
        const auto members = U.heart_members(p.params.beta);
        auto add_object = [&](const ObjRef& ref, bool in_heart) {
            const int mu = order.node(detail::term_key(Kind::mu, ref));
            const int lo_n = order.node(detail::term_key(Kind::mu_min, ref));
            const int hi_n = order.node(detail::term_key(Kind::mu_max, ref));
            if (in_heart) {
                order.relate(lo_n, mu, 1, "HN range");
                order.relate(mu, hi_n, 1, "HN range");
            }
            if (U.semistable(ref.name, p.name) && in_heart) {
                const std::string w = ref.str() + " semistable at " + p.name;
                order.relate(lo_n, hi_n, 1, w);
                order.relate(hi_n, lo_n, 1, w);
                order.relate(mu, lo_n, 1, w);
            }
            if (auto ch = U.character(ref.name)) order.constant(mu, slope(shift(*ch, ref.shift), p.params));
        };
        for (const auto& m : members) add_object(m, true);
        for (const auto& prem : sc.order) {
            if (prem.point != p.name) continue;
            for (const auto* t : {&prem.lhs, &prem.rhs}) {
                if (!order.has(detail::term_key(t->kind, t->obj))) add_object(t->obj, false);
            }
            const int a = order.at(prem.lhs.str());
            const int b = order.at(prem.rhs.str());
            const std::string why = prem.str();
            if (prem.rel == "<") order.relate(a, b, 2, why);
            else if (prem.rel == "<=") order.relate(a, b, 1, why);
            else if (prem.rel == ">") order.relate(b, a, 2, why);
            else if (prem.rel == ">=") order.relate(b, a, 1, why);
            else {
                order.relate(a, b, 1, why);
                order.relate(b, a, 1, why);
            }
        }
        order.close();
        if (const int bad = order.inconsistent(); bad >= 0) {
            throw ContradictionDetected("slope premises at " + p.name + " are cyclic through " + order.name(bad), {},
                                        {"slope", order.why(bad, bad), {}}, {});
        }
        for (const auto& a : members) {
            for (const auto& b : members) {
                if (a.name == b.name) continue;
                const int amin = order.at(detail::term_key(Kind::mu_min, a));
                const int bmax = order.at(detail::term_key(Kind::mu_max, b));
                if (!order.strictly_less(bmax, amin)) continue;
                const long j = b.shift - a.shift;
                if (!in_window(j)) continue;
                C.fixed.push_back({{a.name, b.name, j}, HomState::zero, "slope",
                                   "at " + p.name + ": " + order.name(bmax) + " < " + order.name(amin) + " [" +
                                       order.why(bmax, amin) + "]"});
            }
        }
    }

    // R2 heart negativity.
    for (const auto& beta : U.betas) {
        const auto members = U.heart_members(beta);
        for (const auto& a : members) {
            for (const auto& b : members) {
                for (long j = lo; j < b.shift - a.shift && j <= hi; ++j) {
                    C.fixed.push_back({{a.name, b.name, j}, HomState::zero, "heart",
                                       a.str() + " and " + b.str() + " in the heart at beta=" + beta.str()});
                }
            }
        }
    }

    // R3 Serre duality: Hom(B_s, X[j]) = Hom(X, B_{s-3}[3-j])^*.
    std::vector<std::string> plain;
    for (const auto& o : sc.objects) plain.push_back(o.name);
    for (const auto& x : plain) {
        for (long s : U.b_indices) {
            for (long j = lo; j <= hi; ++j) {
                if (!in_window(3 - j)) continue;
                C.equiv.push_back({{b_name(s), x, j}, {x, b_name(s - 3), 3 - j}, "Serre duality"});
                C.equiv.push_back({{x, b_name(s), j}, {b_name(s + 3), x, 3 - j}, "Serre duality"});
            }
        }
    }

    // R4 semiorthogonality for declared Ku objects.
    for (const auto& o : sc.objects) {
        C.ku_candidates.push_back(o.name);
        if (!o.in_ku) continue;
        for (long s = 1; s <= 3; ++s) {
            for (long j = lo; j <= hi; ++j) {
                C.fixed.push_back({{b_name(s), o.name, j}, HomState::zero, "semiorthogonal", o.name + " declared in Ku"});
            }
        }
    }

    // R5 Euler bookkeeping.
    std::set<std::string> sources = {"B1", "B2", "B3"};
    for (const auto& c : sc.chi) sources.insert(c.source);
    std::set<ChiKey> tracked;
    for (const auto& s : sources) {
        for (const auto& x : plain) tracked.insert({s, x});
        for (const auto& q : sc.sequences) {
            for (const auto* r : {&q.sub, &q.object, &q.quotient}) {
                if (r->name != s) tracked.insert({s, r->name});
            }
        }
    }
    for (const auto& c : sc.chi) {
        tracked.insert({c.source, c.target});
        C.chi_decls.push_back({{c.source, c.target}, c.signs, c.why});
    }
    C.tracked.assign(tracked.begin(), tracked.end());
    for (const auto& q : sc.sequences) {
        const std::string note = q.sub.str() + " -> " + q.object.str() + " -> " + q.quotient.str();
        for (const auto& s : sources) {
            C.chi_sums.push_back({{s, q.object.name},
                                  {s, q.sub.name},
                                  {s, q.quotient.name},
                                  q.object.shift % 2 != 0,
                                  q.sub.shift % 2 != 0,
                                  q.quotient.shift % 2 != 0,
                                  note});
        }
    }

    // R6 sub/quotient transfer inside the heart.
    for (const auto& q : sc.sequences) {
        const std::string note = q.sub.str() + " -> " + q.object.str() + " -> " + q.quotient.str();
        for (const auto* r : {&q.sub, &q.object, &q.quotient}) {
            const auto hs = U.heart_shift(r->name, q.beta);
            if (!hs || *hs != r->shift) {
                throw Error("sequence member " + r->str() + " is not in the heart at beta=" + q.beta.str());
            }
        }
        if (const long j = q.quotient.shift - q.object.shift; in_window(j)) {
            C.fixed.push_back({{q.object.name, q.quotient.name, j}, HomState::nonzero, "sequence",
                               "nonzero quotient map in " + note});
        }
        if (const long j = q.object.shift - q.sub.shift; in_window(j)) {
            C.fixed.push_back({{q.sub.name, q.object.name, j}, HomState::nonzero, "sequence",
                               "nonzero inclusion in " + note});
        }
        for (const auto& x : U.heart_members(q.beta)) {
            const long jq = x.shift - q.quotient.shift;
            const long je = x.shift - q.object.shift;
            if (in_window(jq) && in_window(je)) {
                C.implies.push_back({{q.quotient.name, x.name, jq}, {q.object.name, x.name, je}, note});
            }
            const long js = q.sub.shift - x.shift;
            const long je2 = q.object.shift - x.shift;
            if (in_window(js) && in_window(je2)) {
                C.implies.push_back({{x.name, q.sub.name, js}, {x.name, q.object.name, je2}, note});
            }
        }
    }
    return C;
}

// ---------------------------------------------------------------------------
// Propagation

namespace detail {

class Propagator {
public:
    explicit Propagator(const Constraints& c) : C(c)
    {
        T.window_lo = C.window_lo;
        T.window_hi = C.window_hi;
        for (const auto& k : C.tracked) T.chis[k] = {sign::any, {"", "", {}}};
        for (const auto& n : C.ku_candidates) T.objects.insert(n);
    }

    FactTable run()
    {
        for (const auto& f : C.fixed) set(f.slot, f.state, {f.rule, f.note, {}});
        for (const auto& d : C.chi_decls) narrow(d.key, d.signs, {"euler", "declared: " + d.note, {}});
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& e : C.equiv) changed |= transfer(e.a, e.b, e.note) | transfer(e.b, e.a, e.note);
            for (const auto& im : C.implies) {
                if (T.state(im.from) == HomState::nonzero) {
                    changed |= set(im.to, HomState::nonzero, {"sequence", im.note, {im.from.str()}});
                }
                if (T.state(im.to) == HomState::zero) {
                    changed |= set(im.from, HomState::zero, {"sequence", im.note, {im.to.str()}});
                }
            }
            for (const auto& k : C.tracked) changed |= euler_slots(k);
            for (const auto& s : C.chi_sums) changed |= euler_sum(s);
        }
        for (const auto& x : C.ku_candidates) {
            std::vector<std::string> prem;
            bool all = true;
            for (long s = 1; s <= 3 && all; ++s) {
                for (long j = C.window_lo; j <= C.window_hi; ++j) {
                    const Slot slot{b_name(s), x, j};
                    if (T.state(slot) != HomState::zero) {
                        all = false;
                        break;
                    }
                    prem.push_back(slot.str());
                }
            }
            if (all) T.ku[x] = {"semiorthogonal", "all Hom(B_s, " + x + "[j]) vanish, s = 1..3", prem};
        }
        return T;
    }

private:
    bool set(const Slot& s, HomState st, Derivation why)
    {
        auto& f = T.homs[s];
        if (f.state == st) return false;
        if (f.state != HomState::unknown) {
            throw ContradictionDetected(s.str() + " derived both " + to_string(f.state) + " and " + to_string(st), T,
                                        f.why, why);
        }
        f.state = st;
        f.why = std::move(why);
        return true;
    }

    bool transfer(const Slot& from, const Slot& to, const std::string& note)
    {
        const HomState st = T.state(from);
        if (st == HomState::unknown) return false;
        return set(to, st, {"serre", note, {from.str()}});
    }

    bool narrow(const ChiKey& k, unsigned mask, Derivation why)
    {
        auto& f = T.chis[k];
        const unsigned next = f.signs & mask;
        if (next == f.signs) return false;
        if (next == 0) {
            throw ContradictionDetected(k.str() + " has no admissible sign (" + sign::str(f.signs) + " vs " +
                                            sign::str(mask) + ")",
                                        T, f.why, why);
        }
        if (!f.why.rule.empty()) why.premises.push_back(k.str() + " " + sign::str(f.signs));
        f.signs = next;
        f.why = std::move(why);
        return true;
    }

    /// Sign set of the alternating sum, optionally with slot `forced_j` overridden.
    unsigned slot_sum(const ChiKey& k, long forced_j, HomState forced) const
    {
        unsigned acc = sign::zero;
        for (long j = C.window_lo; j <= C.window_hi; ++j) {
            const HomState st = j == forced_j ? forced : T.state({k.source, k.target, j});
            unsigned term = sign::zero;
            if (st == HomState::nonzero) term = sign::pos;
            else if (st == HomState::unknown) term = sign::pos | sign::zero;
            if (j % 2 != 0) term = sign::flip(term);
            acc = sign::add(acc, term);
        }
        return acc;
    }

    bool euler_slots(const ChiKey& k)
    {
        std::vector<std::string> prem;
        for (long j = C.window_lo; j <= C.window_hi; ++j) {
            const Slot s{k.source, k.target, j};
            if (T.state(s) != HomState::unknown) prem.push_back(s.str());
        }
        bool changed = narrow(k, slot_sum(k, C.window_lo - 1, HomState::unknown),
                              {"euler", "alternating sum over the window", prem});
        const unsigned allowed = T.chi(k);
        for (long j = C.window_lo; j <= C.window_hi; ++j) {
            const Slot s{k.source, k.target, j};
            if (T.state(s) != HomState::unknown) continue;
            auto p = prem;
            p.push_back(k.str() + " " + sign::str(allowed));
            if ((slot_sum(k, j, HomState::nonzero) & allowed) == 0) {
                changed |= set(s, HomState::zero, {"euler", "a nonzero term would break the sign of " + k.str(), p});
            } else if ((slot_sum(k, j, HomState::zero) & allowed) == 0) {
                changed |= set(s, HomState::nonzero, {"euler", "a zero term would break the sign of " + k.str(), p});
            }
        }
        return changed;
    }

    bool euler_sum(const ChiSumClause& c)
    {
        auto val = [&](const ChiKey& k, bool flip) {
            const unsigned m = T.chi(k);
            return flip ? sign::flip(m) : m;
        };
        auto unflip = [](unsigned m, bool flip) { return flip ? sign::flip(m) : m; };
        const unsigned a = val(c.a, c.flip_a);
        const unsigned b = val(c.b, c.flip_b);
        const std::vector<std::string> prem = {c.total.str(), c.a.str(), c.b.str()};
        const std::string note = "additivity over " + c.note;
        bool changed = narrow(c.total, unflip(sign::add(a, b), c.flip_total), {"euler", note, prem});
        changed |= narrow(c.a, unflip(sign::add(val(c.total, c.flip_total), sign::flip(b)), c.flip_a), {"euler", note, prem});
        changed |= narrow(c.b, unflip(sign::add(val(c.total, c.flip_total), sign::flip(val(c.a, c.flip_a))), c.flip_b),
                          {"euler", note, prem});
        return changed;
    }

    const Constraints& C;
    FactTable T;
};

} // namespace detail

inline FactTable propagate(const Constraints& c) { return detail::Propagator(c).run(); }

inline FactTable propagate(const Scenario& sc) { return propagate(instantiate(sc)); }

/// Re-propagation with every known fact of `prior` added as a seed.
inline FactTable propagate(const Scenario& sc, const FactTable& prior)
{
    Constraints c = instantiate(sc);
    for (const auto& [slot, f] : prior.homs) {
        if (f.state != HomState::unknown) c.fixed.push_back({slot, f.state, "seed", "earlier run"});
    }
    for (const auto& [key, f] : prior.chis) {
        if (f.signs != sign::any) c.chi_decls.push_back({key, f.signs, "earlier run"});
    }
    return propagate(c);
}

struct QueryResult {
    HomState state = HomState::unknown;
    std::vector<std::string> trace;
};

/// Derivation chain of Hom(source, target[shift]).
inline QueryResult query(const FactTable& table, const std::string& source, const std::string& target, long shift)
{
    for (const auto* n : {&source, &target}) {
        if (!b_index(*n) && !table.objects.count(*n)) throw UnknownObject("object '" + *n + "' is not declared");
    }
    QueryResult out;
    const Slot root{source, target, shift};
    out.state = table.state(root);
    std::set<std::string> seen;
    std::function<void(const std::string&, int)> walk = [&](const std::string& key, int depth) {
        const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
        if (!seen.insert(key).second) {
            out.trace.push_back(pad + key + " (see above)");
            return;
        }
        const Derivation* d = nullptr;
        std::string value;
        for (const auto& [slot, f] : table.homs) {
            if (slot.str() == key) {
                d = &f.why;
                value = to_string(f.state);
            }
        }
        for (const auto& [k, f] : table.chis) {
            if (key.rfind(k.str(), 0) == 0) {
                d = &f.why;
                value = sign::str(f.signs);
            }
        }
        if (!d) {
            out.trace.push_back(pad + key + " = unknown");
            return;
        }
        out.trace.push_back(pad + key + " = " + value + "  [" + d->rule + "] " + d->note);
        for (const auto& p : d->premises) walk(p, depth + 1);
    };
    walk(root.str(), 0);
    return out;
}

} // namespace kuwall
