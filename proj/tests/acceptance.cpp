// Acceptance suite: one PASS/FAIL line per criterion. `acceptance N` runs only
// criterion N; with no argument all eleven run. Exit status is nonzero if any
// selected criterion fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "kuwall/euler.hpp"
#include "kuwall/kuwall.hpp"
#include "kuwall/scenario_io.hpp"
#include "oracles.hpp"

using namespace kuwall;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};


const Character E_C(0, 6, 0, Rational(-1));
const Character M_l(-4, 3, Rational(7, 8), Rational(-1));

Character c8(long r, long x, long n) { return Character(r, x, Rational(n, 8), Rational(-1)); }

std::set<std::pair<Character, Character>, bool (*)(const std::pair<Character, Character>&,
                                                   const std::pair<Character, Character>&)>
unordered_pairs()
{
    return decltype(unordered_pairs())([](const auto& a, const auto& b) {
        if (!same_class(a.first, b.first)) return detail::components_less(a.first.at_frame(-1), b.first.at_frame(-1));
        return detail::components_less(a.second.at_frame(-1), b.second.at_frame(-1));
    });
}

std::pair<Character, Character> ordered(const Character& a, const Character& b)
{
    const Character x = a.at_frame(-1), y = b.at_frame(-1);
    return detail::components_less(x, y) ? std::pair{x, y} : std::pair{y, x};
}

// --------------------------------------------------------------------------

Outcome c1_twisted_cubic_walls()
{
    const auto t0 = std::chrono::steady_clock::now();
    const WallSearchResult res = enumerate_walls(E_C, -1, {Rational(1, 400)});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream why;
    bool ok = true;
    if (res.walls.size() != 3) {
        why << res.walls.size() << " walls (want 3); ";
        ok = false;
    }
    auto pairs_at = [&](const Rational& a2) {
        auto out = unordered_pairs();
        for (const auto& w : res.walls) {
            if (w.alpha_sq != a2) continue;
            for (const auto& d : w.decompositions) out.insert(ordered(d.sub, d.quotient));
        }
        return out;
    };
    auto family = [&](std::initializer_list<std::array<long, 3>> abc) {
        auto out = unordered_pairs();
        for (const auto& [a, b, c] : abc) out.insert(ordered(c8(4 * a, b, c), E_C - c8(4 * a, b, c)));
        return out;
    };
    if (pairs_at(Rational(9, 16)) != family({{1, 3, 9}})) {
        why << "9/16 decompositions differ; ";
        ok = false;
    }
    const auto quarter = family({{1, 1, 1}, {-1, 1, -1}, {2, 2, 2}, {-2, 2, -2}, {3, 3, 3}, {-3, 3, -3}, {1, 3, 1}});
    if (pairs_at(Rational(1, 16)) != quarter) {
        why << "1/16 decompositions differ; ";
        ok = false;
    }
    int small = 0;
    for (const auto& w : res.walls) small += w.alpha_sq < Rational(1, 16);
    if (small != 1) {
        why << small << " walls below 1/16 (want 1); ";
        ok = false;
    }
    if (secs >= 5.0) {
        why << "runtime " << secs << " s; ";
        ok = false;
    }
    why << "walls at";
    for (const auto& w : res.walls) why << " " << w.alpha_sq << "(" << w.decompositions.size() << ")";
    why << ", 1/16 has " << pairs_at(Rational(1, 16)).size() << " unordered pairs, search " << static_cast<int>(secs * 1000)
        << " ms";
    return {ok, why.str()};
}

Outcome c2_third_wall()
{
    const WallSearchResult res = enumerate_walls(E_C, -1, {Rational(1, 400)});
    std::vector<const Wall*> small;
    for (const auto& w : res.walls) {
        if (w.alpha_sq < Rational(1, 16)) small.push_back(&w);
    }
    if (small.size() != 1) return {false, std::to_string(small.size()) + " walls below 1/16"};
    const Rational a2 = small[0]->alpha_sq;
    // alpha in (1/20, 1/5) <=> alpha^2 in (1/400, 1/25)
    const bool inside = a2 > Rational(1, 400) && a2 < Rational(1, 25);
    std::ostringstream why;
    why << "alpha^2 = " << a2 << " (alpha ~ " << std::sqrt(a2.to_double()) << "), decomposition "
        << small[0]->decompositions[0].sub.str() << " + " << small[0]->decompositions[0].quotient.str()
        << "; quoted value alpha ~ 1/9 = 0.111, " << (inside ? "inside" : "OUTSIDE") << " (1/20, 1/5)";
    const Rational ninth_sq(1, 81);
    if (a2 != ninth_sq) why << "; differs from 1/81";
    return {inside, why.str()};
}

Outcome c3_line_wall()
{
    const WallSearchResult res = enumerate_walls(M_l, -1, {Rational(1, 400)});
    std::ostringstream why;
    why << res.walls.size() << " wall(s)";
    for (const auto& w : res.walls) {
        why << "; " << w.alpha_sq << ":";
        for (const auto& d : w.decompositions) why << " " << d.sub.str() << " + " << d.quotient.str();
    }
    const bool ok = res.walls.size() == 1 && res.walls[0].alpha_sq == Rational(5, 16) &&
                    res.walls[0].decompositions.size() == 1 &&
                    res.walls[0].decompositions[0].sub == c8(0, 2, 8) &&
                    res.walls[0].decompositions[0].quotient == c8(-4, 1, -1);
    return {ok, why.str()};
}

Outcome c4_discriminant_zero_anchors()
{
    int bad = 0;
    for (long i = -10; i <= 10; ++i) {
        const Character b = b_char(i).at_frame(-1);
        if (!discriminant(b).is_zero()) ++bad;
        if (b.c1() / b.rank() != Rational(i) / 2 - Rational(1, 4)) ++bad;
        if (b.c1() != Rational(2 * i - 1) || b.c2() != Rational((2 * i - 1) * (2 * i - 1), 8)) ++bad;
    }
    return {bad == 0, std::to_string(bad) + " mismatches over i in [-10, 10]"};
}

Outcome c5_lambda_lattice()
{
    bool ok = to_character({2, 1}).at_frame(-1) == E_C && to_character({1, 1}).at_frame(-1) == M_l;
    long off_plane = 0, min_delta = -1, min_form = -1, disagree = 0;
    for (long a = -50; a <= 50; ++a) {
        for (long b = -50; b <= 50; ++b) {
            const Character v = to_character({a, b}).at_frame(-1);
            if (v.c2() * 32 != v.rank() * -7) ++off_plane;
            if (!a && !b) continue;
            const Rational d = delta_on_lattice({a, b});
            const long form = 9 * a * a + 7 * (a - 2 * b) * (a - 2 * b);
            if (d != Rational(form)) ++disagree;
            const long dl = d.numerator().get_si();
            if (min_delta < 0 || dl < min_delta) min_delta = dl;
            if (min_form < 0 || form < min_form) min_form = form;
        }
    }
    ok = ok && off_plane == 0 && disagree == 0 && min_delta >= 7 && min_delta == min_form;
    std::ostringstream why;
    why << "anchors " << (to_character({2, 1}).at_frame(-1) == E_C ? "ok" : "bad") << ", off-plane " << off_plane
        << ", min delta " << min_delta << " vs brute min " << min_form << ", pointwise disagreements " << disagree;
    return {ok, why.str()};
}

Outcome c6_mukai()
{
    const long d11 = moduli_dim({1, 1}), d21 = moduli_dim({2, 1});
    const long s = pairing({1, 2}, {1, 2}), s1 = pairing({1, 0}, {1, 0});
    std::ostringstream why;
    why << "dim(1,1) = " << d11 << ", dim(2,1) = " << d21 << ", (l1+2l2)^2 = " << s << ", l1^2 = " << s1;
    return {d11 == 4 && d21 == 8 && s == 6 && s1 == 2, why.str()};
}

Outcome c7_lattice_rejection()
{
    int accepted = 0;
    for (long n = -40; n <= 40; ++n) accepted += lattice_member(c8(0, 3, n));
    int gens = 0;
    for (const auto& g : {lambda1_char(), lambda2_char(), b_char(1), b_char(2), b_char(3)}) gens += lattice_member(g);
    std::ostringstream why;
    why << accepted << " of 81 (0,3,n/8) accepted, " << gens << " of 5 generators accepted";
    return {accepted == 0 && gens == 5, why.str()};
}

Outcome c8_euler_chain()
{
    std::mt19937_64 rng(8);
    auto q = [&] { return Rational(static_cast<long>(rng() % 61) - 30, 1 + static_cast<long>(rng() % 12)); };
    int chain_fail = 0, derived_fail = 0;
    Rational residual_ratio;
    bool residual_uniform = true;
    for (int i = 0; i < 1000; ++i) {
        const Character F(q(), q(), q(), q(), Rational(0));
        const Character b = modify(F).at_frame(-1);
        const Rational lhs = chi_twisted_down(F);
        const Rational printed = chi_b2_chain(b, chi_p3(F));
        if (printed != lhs) {
            ++chain_fail;
            const Rational ratio = (lhs - printed) / F.rank();
            if (chain_fail == 1) residual_ratio = ratio;
            residual_uniform = residual_uniform && ratio == residual_ratio;
        }
        derived_fail += chi_b2_chain_derived(b, chi_p3(F)) != lhs;
    }
    int binom_fail = 0;
    for (long n = -5; n <= 5; ++n) {
        const long num = (n + 1) * (n + 2) * (n + 3);
        binom_fail += chi_p3(line_bundle(n)) != Rational(num, 6);
    }
    std::ostringstream why;
    why << "chain with 13/16 fails on " << chain_fail << "/1000";
    if (chain_fail) why << " (residual " << (residual_uniform ? residual_ratio.str() + "*rk" : "non-uniform") << ")";
    why << "; with 11/32 fails on " << derived_fail << "/1000; binomial mismatches " << binom_fail;
    return {chain_fail == 0 && binom_fail == 0, why.str()};
}

Outcome c9_parity_equivalence()
{
    long iii = 0, iv = 0, iii_not_iv = 0, iv_not_iii = 0;
    std::string example;
    for (long r = -40; r <= 40; ++r) {
        for (long x = -20; x <= 20; ++x) {
            for (long n = -80; n <= 80; ++n) {
                const Character v = c8(r, x, n);
                const bool a = lattice_member(v), b = satisfies_parity(v);
                iii += a;
                iv += b;
                if (a && !b) ++iii_not_iv;
                if (b && !a) {
                    if (!iv_not_iii) example = v.str();
                    ++iv_not_iii;
                }
            }
        }
    }
    std::ostringstream why;
    why << "iii holds on " << iii << ", iv on " << iv << "; iii&!iv " << iii_not_iv << ", iv&!iii " << iv_not_iii;
    if (!example.empty()) why << " (e.g. " << example << " at beta=-1)";
    why << "; printed -5/16 coefficient accepts (4,3,9/8): " << (satisfies_parity_printed(c8(4, 3, 9)) ? "yes" : "no");
    return {iii_not_iv == 0 && iv_not_iii == 0, why.str()};
}

Outcome c10_scenarios()
{
    std::ostringstream why;
    bool ok = true;
    for (const char* name : {"second_wall_filtration", "small_alpha_wall", "line_object_wall", "delta_zero_torsion"}) {
        const Scenario sc = load_scenario(std::string(KUWALL_SCENARIO_DIR) + "/" + name + ".yaml");
        const ScenarioReport rep = run_scenario(sc);
        const auto sound = oracle::check_soundness(sc);
        ok = ok && rep.passed() && sound.ok;
        why << name << ": " << (rep.contradiction ? "contradiction" : "consistent") << ", "
            << (rep.passed() ? "as expected" : "UNEXPECTED") << ", oracle " << (sound.ok ? "ok" : sound.detail) << "; ";
    }
    std::mt19937_64 rng(10);
    int random_bad = 0, checked = 0;
    for (int i = 0; i < 500; ++i) {
        const auto rep = oracle::check_soundness(oracle::random_scenario(rng));
        random_bad += !rep.ok;
        checked += rep.checked;
    }
    ok = ok && random_bad == 0;
    why << "random scenarios: " << random_bad << " unsound of 500 (" << checked << " facts checked)";
    return {ok, why.str()};
}

Outcome c11_properties()
{
    std::mt19937_64 rng(11);
    auto q = [&] { return Rational(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 8)); };
    int delta_bad = 0, group_bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const Character v(q(), q(), q(), q(), q());
        const Rational d = discriminant(v), s = q(), t = q();
        delta_bad += discriminant(twist(v, s)) != d;
        delta_bad += discriminant(shift(v, static_cast<long>(rng() % 7) - 3)) != d;
        delta_bad += discriminant(half_twist(v)) != d;
        group_bad += !same_class(twist(twist(v, s), t), twist(v, s + t));
        group_bad += !same_class(twist(v, 0), v);
    }

    const std::vector<Character> targets{E_C, M_l, to_character({3, 1}), to_character({1, -1}), to_character({2, 2})};
    const Rational amin(1, 100);
    std::vector<WallSearchResult> results;
    for (const auto& t : targets) results.push_back(enumerate_walls(t, -1, {amin}));
    int found = 0, missing = 0;
    for (int attempt = 0; attempt < 2'000'000 && found < 100; ++attempt) {
        const std::size_t ti = rng() % targets.size();
        const Character tc = targets[ti].at_frame(-1);
        const oracle::C8 t{tc.rank().numerator().get_si(), tc.c1().numerator().get_si(),
                           (tc.c2() * 8).numerator().get_si()};
        const oracle::C8 s{4 * (static_cast<long long>(rng() % 21) - 10), 1 + static_cast<long long>(rng() % (t.x - 1)),
                           static_cast<long long>(rng() % 161) - 80};
        const oracle::C8 qq = t - s;
        if (oracle::delta8(s) < 0 || oracle::delta8(qq) < 0) continue;
        if (!(static_cast<__int128>(t.r) * s.x < static_cast<__int128>(s.r) * t.x)) continue;
        const auto eq = wall_between(oracle::to_character(s), tc, -1);
        if (!eq.has_root() || eq.alpha_sq < amin) continue;
        if (!oracle::parity(s) || !oracle::parity(qq) || !oracle::in_lattice(s) || !oracle::in_lattice(qq)) continue;
        ++found;
        bool listed = false;
        for (const auto& w : results[ti].walls) {
            if (w.alpha_sq != eq.alpha_sq) continue;
            for (const auto& d : w.decompositions) listed |= d.sub == oracle::to_character(s);
        }
        missing += !listed;
    }

    int nondeterministic = 0;
    for (const auto& t : {E_C, M_l, to_character({3, 1})}) {
        std::vector<std::string> dumps;
        for (unsigned w : {1u, 2u, 4u}) {
            std::ostringstream os;
            const auto res = enumerate_walls(t, -1, {Rational(1, 400), 50'000'000ULL, w});
            for (const auto& wall : res.walls) {
                os << wall.alpha_sq << ":";
                for (const auto& d : wall.decompositions) os << d.sub << "+" << d.quotient << ";";
            }
            for (const auto& d : res.proportional) os << "p" << d.sub << ";";
            dumps.push_back(os.str());
        }
        nondeterministic += dumps[0] != dumps[1] || dumps[0] != dumps[2];
    }
    std::ostringstream why;
    why << "delta invariance failures " << delta_bad << ", group law failures " << group_bad << ", completeness "
        << found - missing << "/" << found << " listed, worker-count differences " << nondeterministic;
    return {delta_bad == 0 && group_bad == 0 && found == 100 && missing == 0 && nondeterministic == 0, why.str()};
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"walls of (0,6,0) at beta=-1", c1_twisted_cubic_walls},
        {"third wall report", c2_third_wall},
        {"line object wall", c3_line_wall},
        {"discriminant-zero anchors", c4_discriminant_zero_anchors},
        {"lambda lattice", c5_lambda_lattice},
        {"Mukai dimensions and degrees", c6_mukai},
        {"lattice rejection", c7_lattice_rejection},
        {"Euler chain identity", c8_euler_chain},
        {"condition iii/iv equivalence", c9_parity_equivalence},
        {"vanishing scenarios", c10_scenarios},
        {"property suite", c11_properties},
    };
    std::size_t lo = 1, hi = criteria.size();
    if (argc > 1) {
        lo = hi = std::strtoul(argv[1], nullptr, 10);
        if (lo < 1 || lo > criteria.size()) {
            std::cerr << "usage: acceptance [1-" << criteria.size() << "]\n";
            return 2;
        }
    }
    int failed = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
        Outcome o;
        try {
            o = criteria[i - 1].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i << ": " << criteria[i - 1].first << " -- "
                  << o.detail << std::endl;
    }
    return failed ? 1 : 0;
}
