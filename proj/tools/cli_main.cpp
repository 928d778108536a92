// espg: verification campaigns over quasifields, the extra special groups
// H_n(Q) / M_n, brick product sets, and the sum-product graph SP_{Q,n}.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or guard violation,
// 3 eigensolver non-convergence. Reports are JSON with fixed key order, so
// identical inputs (including --seed) give byte-identical bytes.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "espgroups/brick.hpp"
#include "espgroups/group.hpp"
#include "espgroups/qtable.hpp"
#include "espgroups/spgraph.hpp"

using json = nlohmann::ordered_json;
using namespace esp;

namespace {

struct Config {
    int prime = 0;
    std::string table_path;
    int n = 1;
    std::uint64_t seed = 0;
    double tol = 1e-6;
    std::string json_path;
};

QTablePtr resolve_table(const Config& cfg) {
    if (cfg.prime > 0)
        return std::make_shared<QTable>(QTable::prime(cfg.prime));
    if (!cfg.table_path.empty())
        return std::make_shared<QTable>(QTable::load(cfg.table_path));
    throw ParseError("a quasifield source is required: --prime P or --table PATH");
}

void emit(const json& report, const std::string& path) {
    const std::string text = report.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write report to " + path);
    out << text;
}

json table_json(const QTable& Q) {
    return {{"name", Q.name()}, {"q", Q.order()}, {"one", Q.one()}};
}

json vec_json(const QVec& v) { return json(v); }

json set_json(const ElemSet& s) { return json(s); }

// Deterministic across library implementations, unlike uniform_int_distribution.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

ElemSet random_nonempty_subset(std::mt19937_64& rng, int q) {
    std::vector<Elem> pool(q);
    for (int i = 0; i < q; ++i) pool[i] = i;
    const auto size = 1 + below(rng, static_cast<std::uint64_t>(q));
    for (std::uint64_t i = 0; i < size; ++i)
        std::swap(pool[i], pool[i + below(rng, q - i)]);
    pool.resize(size);
    std::sort(pool.begin(), pool.end());
    return pool;
}

// ---- verify-quasifield ----

int run_verify(const Config& cfg) {
    const QTablePtr Q = resolve_table(cfg);
    const AxiomReport rep = qf_verify(*Q);

    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"axiom", c.axiom},
                          {"pass", c.pass},
                          {"informational", c.informational},
                          {"witness", c.witness}});
    const json report = {{"command", "verify-quasifield"},
                         {"table", table_json(*Q)},
                         {"seed", cfg.seed},
                         {"checks", checks},
                         {"allPass", rep.all_pass()}};
    emit(report, cfg.json_path);
    return rep.all_pass() ? 0 : 1;
}

// ---- group-check ----

json assoc_json(const AssocReport& r, const std::string& mode) {
    json j = {{"mode", mode},
              {"checked", r.checked},
              {"ok", r.ok},
              {"fIdentityChecked", r.f_identity_checked},
              {"fIdentityOk", r.f_identity_ok}};
    if (r.witness) {
        json w = json::array();
        for (const auto& g : *r.witness) w.push_back(to_string(g));
        j["witness"] = w;
    }
    return j;
}

// Loop contract of H_n(Q) over a non-field table: two-sided identity,
// cancellation, and a commuting center. Associativity is not expected.
json loop_checks_json(const GroupParams& P, bool& all_pass) {
    const std::uint64_t order = P.order();
    if (order > 10'000)
        throw TooLarge("loop checks are quadratic in |G|; |G| = " +
                       std::to_string(order));

    std::vector<GElem> all(order);
    for (std::uint64_t i = 0; i < order; ++i) all[i] = g_decode(P, i);
    const GElem id = identity(P);

    bool id_ok = true;
    for (const GElem& g : all)
        if (mul(P, id, g) != g || mul(P, g, id) != g) {
            id_ok = false;
            break;
        }

    bool left_cancel = true, right_cancel = true;
    std::vector<std::uint8_t> seen(order);
    for (const GElem& g : all) {
        std::fill(seen.begin(), seen.end(), 0);
        for (const GElem& h : all) {
            auto r = g_encode(P, mul(P, g, h));
            if (seen[r]) {
                left_cancel = false;
                break;
            }
            seen[r] = 1;
        }
        if (!left_cancel) break;
    }
    for (const GElem& g : all) {
        std::fill(seen.begin(), seen.end(), 0);
        for (const GElem& h : all) {
            auto r = g_encode(P, mul(P, h, g));
            if (seen[r]) {
                right_cancel = false;
                break;
            }
            seen[r] = 1;
        }
        if (!right_cancel) break;
    }

    bool center_ok = true;
    for (Elem t = 0; t < P.q() && center_ok; ++t) {
        const GElem c{QVec(P.n(), 0), QVec(P.n(), 0), t};
        for (const GElem& g : all)
            if (mul(P, c, g) != mul(P, g, c)) {
                center_ok = false;
                break;
            }
    }

    all_pass = id_ok && left_cancel && right_cancel && center_ok;
    return json::array({{{"name", "two-sided-identity"}, {"pass", id_ok}},
                        {{"name", "left-cancellation"}, {"pass", left_cancel}},
                        {{"name", "right-cancellation"}, {"pass", right_cancel}},
                        {{"name", "center-commutes"}, {"pass", center_ok}}});
}

int run_group_check(const Config& cfg, const std::string& family_str) {
    const QTablePtr Q = resolve_table(cfg);
    const Family family = family_str == "M" ? Family::M : Family::Heisenberg;
    const GroupParams P(family, Q, cfg.n);

    json report = {{"command", "group-check"},
                   {"family", family_str},
                   {"table", table_json(*Q)},
                   {"n", cfg.n},
                   {"order", P.order()},
                   {"seed", cfg.seed}};
    bool all_pass = true;

    if (Q->is_prime_field()) {
        report["mode"] = "presentation";
        const RelationReport rels = check_relations(P);
        json checks = json::array();
        for (const auto& c : rels.checks)
            checks.push_back({{"relation", c.relation}, {"pass", c.pass}});
        report["relations"] = checks;
        report["relationsPass"] = rels.all_pass();

        const bool exhaustive = P.order() <= 464;
        const AssocReport assoc =
            exhaustive ? check_associativity_exhaustive(P)
                       : check_associativity_sampled(P, 100'000, cfg.seed);
        report["associativity"] =
            assoc_json(assoc, exhaustive ? "exhaustive" : "sampled");
        all_pass = rels.all_pass() && assoc.all_ok();
    } else {
        report["mode"] = "loop";
        report["checks"] = loop_checks_json(P, all_pass);
    }

    report["allPass"] = all_pass;
    emit(report, cfg.json_path);
    return all_pass ? 0 : 1;
}

// ---- coverage ----

Family pick_family(const std::string& family_str, const QTable& Q) {
    if (family_str == "M") return Family::M;
    if (family_str == "H") return Family::Heisenberg;
    return Q.is_prime_field() ? Family::M : Family::Heisenberg;
}

json coverage_json(const Brick& B, const CoverageReport& rep) {
    json pairs = json::array();
    for (const auto& pr : rep.pairs)
        pairs.push_back({{"a", vec_json(pr.a)},
                         {"b", vec_json(pr.b)},
                         {"contained", pr.contained},
                         {"certified", pr.certified}});
    json lb;
    if (rep.has_lower_bound)
        lb = {{"num", rep.lb_num}, {"den", rep.lb_den}, {"value", rep.lower_bound()}};
    json xs = json::array(), ys = json::array();
    for (const auto& f : B.X()) xs.push_back(set_json(f));
    for (const auto& f : B.Y()) ys.push_back(set_json(f));
    return {{"brick", {{"X", xs}, {"Y", ys}, {"Z", set_json(B.Z())},
                       {"size", B.size()}}},
            {"N", rep.N},
            {"certified", rep.certified},
            {"lowerBound", lb},
            {"pairs", pairs}};
}

int run_coverage(const Config& cfg, const std::string& brick_path,
                 const std::string& family_str) {
    // The brick file names its own quasifield; a global source, if present,
    // must agree with it.
    Brick probe = load_brick(brick_path, Family::Heisenberg);
    const QTable& BQ = probe.params().table();
    if (cfg.prime > 0 && !(BQ.is_prime_field() && BQ.order() == cfg.prime))
        throw ParseError("--prime disagrees with the brick file's quasifield");
    if (!cfg.table_path.empty() &&
        QTable::load(cfg.table_path).order() != BQ.order())
        throw ParseError("--table disagrees with the brick file's quasifield");

    const Brick B = load_brick(brick_path, pick_family(family_str, BQ));
    const CoverageReport rep = coverage(B);

    json report = {{"command", "coverage"},
                   {"family", B.params().family() == Family::M ? "M" : "H"},
                   {"table", table_json(BQ)},
                   {"n", B.params().n()},
                   {"seed", cfg.seed}};
    report.update(coverage_json(B, rep));

    bool pass = rep.sound();
    if (2 * B.Z().size() > static_cast<size_t>(B.params().q())) {
        const bool holds = large_z_branch(B);
        report["largeZ"] = {{"applies", true}, {"holds", holds}};
        pass = pass && holds;
    } else {
        report["largeZ"] = {{"applies", false}};
    }
    report["sound"] = rep.sound();
    report["allPass"] = pass;
    emit(report, cfg.json_path);
    return pass ? 0 : 1;
}

// ---- spectral ----

bool dichotomy_ok(const SPGraph& G) {
    const std::int64_t side = G.side_size();
    const int q = G.table().order();
    std::int64_t qn1 = 1;
    for (int i = 0; i < G.dimension() - 1; ++i) qn1 *= q;

    for (std::int64_t s = 0; s < 2; ++s)
        for (std::int64_t u = 0; u < side; ++u)
            for (std::int64_t v = u + 1; v < side; ++v) {
                const auto cn = G.common_neighbors(s * side + u, s * side + v);
                // Same vector index iff u/q == v/q; those pairs differ only
                // in the last coordinate.
                const bool same_vec = u / q == v / q;
                if (cn != (same_vec ? 0 : qn1)) return false;
            }
    return true;
}

int run_spectral(const Config& cfg) {
    const QTablePtr Q = resolve_table(cfg);
    const SPGraph G(Q, cfg.n);

    bool degree_ok = true;
    std::int64_t qn = 1;
    for (int i = 0; i < cfg.n; ++i) qn *= Q->order();
    for (std::int64_t v = 0; v < 2 * G.side_size(); ++v)
        if (G.degree(v) != qn) {
            degree_ok = false;
            break;
        }

    const bool dich = dichotomy_ok(G);
    const HGraph H = h_graph(G);
    const bool msq = m_squared_check(G);
    const SpectralReport sp = spectrum(G, cfg.tol);

    const bool all_pass = degree_ok && dich && H.regular && msq && sp.pass;
    const json report = {{"command", "spectral"},
                         {"table", table_json(*Q)},
                         {"n", cfg.n},
                         {"seed", cfg.seed},
                         {"side", G.side_size()},
                         {"degree", qn},
                         {"degreeOk", degree_ok},
                         {"dichotomyOk", dich},
                         {"hRegular", H.regular},
                         {"mSquared", msq},
                         {"spectral",
                          {{"lambda1", sp.lambda1},
                           {"lambda2", sp.lambda2},
                           {"lambdaMin", sp.lambda_min},
                           {"bound", sp.bound},
                           {"pass", sp.pass},
                           {"solverIterations", sp.solver_iterations},
                           {"residual", sp.residual}}},
                         {"allPass", all_pass}};
    emit(report, cfg.json_path);
    return all_pass ? 0 : 1;
}

// ---- mixing ----

int run_mixing(const Config& cfg, int samples) {
    const QTablePtr Q = resolve_table(cfg);
    const SPGraph G(Q, cfg.n);
    const SpectralReport sp = spectrum(G, cfg.tol);

    std::mt19937_64 rng(cfg.seed);
    auto random_side_subset = [&rng, &G] {
        std::vector<std::int64_t> s;
        for (std::int64_t v = 0; v < G.side_size(); ++v)
            if (rng() & 1) s.push_back(v);
        return s;
    };

    json runs = json::array();
    bool all_pass = true;
    for (int i = 0; i < samples; ++i) {
        const auto B = random_side_subset();
        const auto C = random_side_subset();
        const MixingResult r = mixing_check(G, B, C, sp.lambda2, cfg.tol);
        all_pass = all_pass && r.pass;
        runs.push_back({{"sizeB", B.size()},
                        {"sizeC", C.size()},
                        {"edges", r.edges},
                        {"expected", r.expected},
                        {"deviation", r.deviation},
                        {"bound", r.bound},
                        {"pass", r.pass}});
    }

    const json report = {{"command", "mixing"},
                         {"table", table_json(*Q)},
                         {"n", cfg.n},
                         {"seed", cfg.seed},
                         {"lambda2", sp.lambda2},
                         {"samples", samples},
                         {"runs", runs},
                         {"allPass", all_pass}};
    emit(report, cfg.json_path);
    return all_pass ? 0 : 1;
}

// ---- theorem-demo ----

int run_theorem_demo(const Config& cfg, const std::string& family_str,
                     bool exhaustive, int samples) {
    const QTablePtr Q = resolve_table(cfg);
    const Family family = pick_family(family_str, *Q);
    const GroupParams P(family, Q, cfg.n);
    const int q = P.q();
    const int n = P.n();

    std::uint64_t grid = 1;
    for (int i = 0; i < 2 * n; ++i) {
        grid *= static_cast<std::uint64_t>(q);
        if (grid > 1'000'000)
            throw TooLarge("theorem-demo guard: q^(2n) > 10^6");
    }

    std::vector<Brick> bricks;
    if (exhaustive) {
        // All (2^q - 1)^(2n+1) bricks; only feasible for tiny q and n.
        double count = 1;
        for (int i = 0; i < 2 * n + 1; ++i) count *= (1 << q) - 1;
        if (count > 100'000)
            throw TooLarge("exhaustive brick family too large; use --samples");
        std::vector<ElemSet> nonempty;
        for (int mask = 1; mask < (1 << q); ++mask) {
            ElemSet s;
            for (int v = 0; v < q; ++v)
                if (mask & (1 << v)) s.push_back(v);
            nonempty.push_back(std::move(s));
        }
        std::vector<size_t> pick(2 * n + 1, 0);
        bool more = true;
        while (more) {
            std::vector<ElemSet> X(n), Y(n);
            for (int i = 0; i < n; ++i) X[i] = nonempty[pick[i]];
            for (int i = 0; i < n; ++i) Y[i] = nonempty[pick[n + i]];
            bricks.emplace_back(P, X, Y, nonempty[pick[2 * n]]);
            more = false;
            for (size_t i = pick.size(); i-- > 0;) {
                if (++pick[i] < nonempty.size()) {
                    more = true;
                    break;
                }
                pick[i] = 0;
            }
        }
    } else {
        std::mt19937_64 rng(cfg.seed);
        for (int t = 0; t < samples; ++t) {
            std::vector<ElemSet> X(n), Y(n);
            for (int i = 0; i < n; ++i) X[i] = random_nonempty_subset(rng, q);
            for (int i = 0; i < n; ++i) Y[i] = random_nonempty_subset(rng, q);
            bricks.emplace_back(P, X, Y, random_nonempty_subset(rng, q));
        }
    }

    // Under the grid guard |G| <= 10^6 * q, so cubes and fourth powers fit
    // comfortably in 128 bits.
    using Wide = unsigned __int128;
    const Wide order3 = Wide(P.order()) * P.order() * P.order();

    json rows = json::array();
    bool sound = true, large_z_ok = true;
    std::uint64_t conclusion_count = 0, large_brick_count = 0,
                  large_brick_conclusions = 0;
    for (const Brick& B : bricks) {
        const CoverageReport rep = coverage(B);
        const std::uint64_t size = B.size();
        const Wide size4 = Wide(size) * size * size * size;
        const bool large_brick = size4 > order3;  // |B| > |G|^(3/4)
        const bool conclusion = rep.N * q >= size;  // N >= |B|/q
        const bool applies = 2 * B.Z().size() > static_cast<size_t>(q);

        sound = sound && rep.sound();
        if (applies) large_z_ok = large_z_ok && conclusion && large_z_branch(B);
        if (conclusion) ++conclusion_count;
        if (large_brick) {
            ++large_brick_count;
            if (conclusion) ++large_brick_conclusions;
        }

        json xs = json::array(), ys = json::array();
        for (const auto& f : B.X()) xs.push_back(set_json(f));
        for (const auto& f : B.Y()) ys.push_back(set_json(f));
        rows.push_back({{"X", xs},
                        {"Y", ys},
                        {"Z", set_json(B.Z())},
                        {"size", size},
                        {"largeBrick", large_brick},
                        {"N", rep.N},
                        {"certified", rep.certified},
                        {"largeZ", applies},
                        {"conclusion", conclusion}});
    }

    const bool all_pass = sound && large_z_ok;
    const json report = {
        {"command", "theorem-demo"},
        {"family", family == Family::M ? "M" : "H"},
        {"table", table_json(*Q)},
        {"n", n},
        {"seed", cfg.seed},
        {"mode", exhaustive ? "exhaustive" : "sampled"},
        {"bricks", rows},
        {"brickCount", bricks.size()},
        {"conclusionFraction",
         bricks.empty() ? 0.0
                        : static_cast<double>(conclusion_count) / bricks.size()},
        {"largeBrickCount", large_brick_count},
        {"largeBrickConclusionFraction",
         large_brick_count == 0 ? 1.0
                                : static_cast<double>(large_brick_conclusions) /
                                      large_brick_count},
        {"sound", sound},
        {"largeZOk", large_z_ok},
        {"allPass", all_pass}};
    emit(report, cfg.json_path);
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification campaigns for extra special group product sets"};
    app.require_subcommand(1);

    Config cfg;
    auto* prime_opt = app.add_option("--prime", cfg.prime, "prime field order");
    auto* table_opt =
        app.add_option("--table", cfg.table_path, "quasifield table file");
    prime_opt->excludes(table_opt);
    table_opt->excludes(prime_opt);
    app.add_option("-n", cfg.n, "dimension n")->capture_default_str();
    app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    app.add_option("--tol", cfg.tol, "numerical tolerance")
        ->capture_default_str();
    app.add_option("--json", cfg.json_path, "write the JSON report here");

    auto* verify = app.add_subcommand("verify-quasifield",
                                      "exhaustive quasifield axiom check");

    std::string family = "auto";
    auto* group = app.add_subcommand(
        "group-check", "presentation relations and associativity");
    std::string group_family = "H";
    group->add_option("--family", group_family, "H or M")
        ->check(CLI::IsMember({"H", "M"}))
        ->capture_default_str();

    std::string brick_path;
    auto* cover = app.add_subcommand("coverage", "coset coverage of B*B");
    cover->add_option("--brick", brick_path, "brick specification file")
        ->required();
    cover->add_option("--family", family, "H, M, or auto")
        ->check(CLI::IsMember({"H", "M", "auto"}))
        ->capture_default_str();

    auto* spectral = app.add_subcommand(
        "spectral", "graph structure, M^2 identity, and the lambda2 bound");

    int samples = 200;
    auto* mixing =
        app.add_subcommand("mixing", "expander mixing on random vertex sets");
    mixing->add_option("--samples", samples, "number of (B,C) pairs")
        ->capture_default_str();

    std::string demo_family = "auto";
    bool exhaustive = false;
    int demo_samples = 200;
    auto* demo = app.add_subcommand(
        "theorem-demo", "coset counts over a family of bricks");
    demo->add_option("--family", demo_family, "H, M, or auto")
        ->check(CLI::IsMember({"H", "M", "auto"}))
        ->capture_default_str();
    demo->add_flag("--exhaustive", exhaustive, "enumerate every brick");
    demo->add_option("--samples", demo_samples, "sampled brick count")
        ->capture_default_str();

    for (auto* sub : {verify, group, cover, spectral, mixing, demo})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(verify)) return run_verify(cfg);
        if (app.got_subcommand(group)) return run_group_check(cfg, group_family);
        if (app.got_subcommand(cover))
            return run_coverage(cfg, brick_path, family);
        if (app.got_subcommand(spectral)) return run_spectral(cfg);
        if (app.got_subcommand(mixing)) return run_mixing(cfg, samples);
        if (app.got_subcommand(demo))
            return run_theorem_demo(cfg, demo_family, exhaustive, demo_samples);
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NoWitness& e) {
        std::cerr << "soundness violation: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
