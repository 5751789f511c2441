// vlmc command line front end.

#include "checks.hpp"

#include "vlmc/context_tree.hpp"
#include "vlmc/dirichlet.hpp"
#include "vlmc/dynsource.hpp"
#include "vlmc/error.hpp"
#include "vlmc/occurrences.hpp"
#include "vlmc/simulate.hpp"
#include "vlmc/stationary.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace vlmc;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string tree_path;
    std::string mode_name = "rational";
    std::string a_text;
    std::string out_path;
    std::uint64_t seed = 1;
};

NumericMode effective_mode(const RunConfig& cfg) {
    if (const char* env = std::getenv("VLMC_NUMERIC_MODE"); env && *env) return parse_mode(env);
    return parse_mode(cfg.mode_name);
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    namespace fs = std::filesystem;
    fs::path target(cfg.out_path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
        f << text;
        if (!f.flush()) throw Error(ErrorKind::Io, "write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot rename to " + target.string() + ": " + ec.message());
}

ContextTree load(const RunConfig& cfg) {
    if (cfg.tree_path.empty()) throw Error(ErrorKind::Parse, "no tree file given");
    return load_tree(cfg.tree_path, effective_mode(cfg));
}

std::unique_ptr<StationaryMeasure> solve(const RunConfig& cfg, const ContextTree& t) {
    std::optional<Number> a;
    if (!cfg.a_text.empty()) a = Number::parse(cfg.a_text, t.mode());
    return solve_stationary(t, a);
}

// formula when the tree supports it, state-space oracle otherwise
std::vector<Number> first_occurrence_law(const StationaryMeasure& m, const Word& w, std::size_t nmax) {
    if (m.tree().shape() == ContextTree::Shape::Comb || m.tree().shape() == ContextTree::Shape::Bamboo) {
        try {
            return occurrence_gf(m, w, 1, nmax).phi;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::InternalNodeWord && e.kind() != ErrorKind::UnclassifiableWord) throw;
        }
    }
    return oracle_occurrence_pmf(m, w, 1, nmax);
}

std::string fmt(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return shortest_decimal(x);
}

int cmd_validate(const RunConfig& cfg) {
    ContextTree t = load(cfg);
    json out;
    out["valid"] = true;
    out["height"] = t.height() ? json(*t.height()) : json("∞");
    out["minimal_contexts"] = t.minimal_contexts();
    const char* shapes[] = {"finite", "comb", "bamboo", "other"};
    out["shape"] = shapes[static_cast<int>(t.shape())];
    out["numeric_mode"] = mode_name(t.mode());
    emit(cfg, out.dump(2) + "\n");
    return 0;
}

int cmd_stationary(const RunConfig& cfg, std::size_t depth) {
    ContextTree t = load(cfg);
    auto m = solve(cfg, t);
    json out = m->describe();
    json nodes = json::object();
    std::vector<Word> queue{""};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const Word u = queue[i];
        nodes[u] = m->measure_of(reversed(u)).str();
        NodeKind k = t.classify(u);
        if (u.size() < depth && (k == NodeKind::Internal || k == NodeKind::Spine)) {
            queue.push_back(u + '0');
            queue.push_back(u + '1');
        }
    }
    out["node_probabilities"] = nodes;
    emit(cfg, out.dump(2) + "\n");
    return 0;
}

int cmd_simulate(const RunConfig& cfg, std::size_t n, const std::string& word, std::size_t maxlen,
                 std::size_t replicas, std::size_t nmax) {
    ContextTree t = load(cfg);
    auto m = solve(cfg, t);
    Simulator sim(*m);
    RandomStream rng(cfg.seed);
    Word letters = sim.run(n, rng);
    EmpiricalReport rep = empirical_report(*m, letters, maxlen);
    if (!word.empty()) {
        require_binary(word);
        auto law = first_occurrence_law(*m, word, nmax);
        RandomStream occ = rng.split(1);
        add_occurrence_check(rep, *m, word, law, replicas, occ);
    }
    emit(cfg, letters + "\n" + rep.to_json().dump(2) + "\n");
    return 0;
}

int cmd_map_export(const RunConfig& cfg, std::size_t depth) {
    ContextTree t = load(cfg);
    auto m = solve(cfg, t);
    IntervalMap T(*m, depth);
    std::ostringstream os;
    os << "word,left,right,slope,target_left,target_right\n";
    for (const Piece& p : T.pieces()) {
        if (p.empty() || p.from.length().is_zero()) continue;
        os << p.source << ',' << p.from.left << ',' << p.from.right << ',' << Number(1) / p.q << ','
           << p.to.left << ',' << p.to.right << '\n';
    }
    emit(cfg, os.str());
    return 0;
}

int cmd_orbit(const RunConfig& cfg, std::size_t depth, const std::string& x0, std::size_t n) {
    ContextTree t = load(cfg);
    auto m = solve(cfg, t);
    IntervalMap T(*m, depth);
    std::ostringstream os;
    os << "n,x_n,Y_n\n";
    if (t.mode() == NumericMode::Rational) {
        Number x = Number::parse(x0, NumericMode::Rational);
        auto xs = T.orbit(x, n);
        for (std::size_t i = 0; i < xs.size(); ++i) os << i << ',' << xs[i] << ',' << T.code(xs[i]) << '\n';
    } else {
        double x = Number::parse(x0, NumericMode::Float).to_double();
        auto xs = T.orbit(x, n);
        for (std::size_t i = 0; i < xs.size(); ++i) os << i << ',' << fmt(xs[i]) << ',' << T.code(xs[i]) << '\n';
    }
    emit(cfg, os.str());
    return 0;
}

std::vector<double> s_values(double s, const std::string& grid) {
    if (grid.empty()) return {s};
    double a, b, step;
    char c1, c2;
    std::istringstream is(grid);
    if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 || b < a)
        throw Error(ErrorKind::Parse, "grid must be a:b:step");
    std::vector<double> out;
    for (std::size_t i = 0;; ++i) {
        double x = a + static_cast<double>(i) * step;
        if (x > b + step * 1e-9) break;
        out.push_back(x);
    }
    return out;
}

int cmd_dirichlet(const RunConfig& cfg, double s, const std::string& grid, std::size_t trunc, std::size_t maxlen) {
    ContextTree t = load(cfg);
    auto m = solve(cfg, t);
    std::ostringstream os;
    os << "s,value,tail_bound,oracle_partial\n";
    for (double x : s_values(s, grid)) {
        DirichletEvaluation ev;
        if (auto* c = dynamic_cast<const CombMeasure*>(m.get()))
            ev = comb_dirichlet(c->solution(), x, trunc);
        else if (auto* b = dynamic_cast<const BambooMeasure*>(m.get()))
            ev = bamboo_dirichlet(*b, x, trunc);
        else
            throw Error(ErrorKind::UnsupportedTree, "Dirichlet series need a comb or a bamboo");
        double partial = maxlen ? brute_force_dirichlet(*m, x, maxlen) : 0.0;
        os << fmt(x) << ',' << fmt(ev.value) << ',' << fmt(ev.tail_bound) << ',' << fmt(partial) << '\n';
    }
    emit(cfg, os.str());
    return 0;
}

int cmd_occurrence(const RunConfig& cfg, const std::string& w, std::size_t r, std::size_t nmax, bool oracle) {
    ContextTree t = load(cfg);
    auto m = solve(cfg, t);
    require_binary(w);
    OccurrenceGF gf = occurrence_gf(*m, w, r, nmax);
    std::vector<Number> ref;
    if (oracle) ref = oracle_occurrence_pmf(*m, w, r, nmax);
    std::ostringstream os;
    os << "n,pmf_formula,pmf_oracle,abs_diff\n";
    for (std::size_t n = 0; n <= nmax; ++n) {
        os << n << ',' << gf.phi[n] << ',';
        if (oracle) os << ref[n] << ',' << abs(gf.phi[n] - ref[n]);
        else os << ',';
        os << '\n';
    }
    emit(cfg, os.str());
    return 0;
}

int cmd_check(const RunConfig& cfg) {
    ContextTree t = load(cfg);
    auto m = solve(cfg, t);
    bool ok = true;
    std::ostringstream os;
    for (const auto& o : checks::run_all(*m, cfg.seed)) {
        os << (o.ok ? "PASS " : "FAIL ") << o.name << ": " << o.detail << '\n';
        ok = ok && o.ok;
    }
    emit(cfg, os.str());
    return ok ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variable length Markov chains, their stationary measures and dynamical sources"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&cfg](CLI::App* sub, bool randomized = false) {
        sub->add_option("tree,--tree", cfg.tree_path, "tree description (JSON)");
        sub->add_option("--numeric-mode", cfg.mode_name, "rational or float (VLMC_NUMERIC_MODE overrides)")
            ->check(CLI::IsMember({"rational", "float"}));
        sub->add_option("--a", cfg.a_text, "parameter selecting a member of a one-parameter family");
        sub->add_option("--out", cfg.out_path, "output file, written atomically");
        if (randomized) sub->add_option("--seed", cfg.seed, "master seed");
    };

    auto* validate = app.add_subcommand("validate", "check a tree description");
    common(validate);

    std::size_t node_depth = 6;
    auto* stationary = app.add_subcommand("stationary", "solve for the stationary measure");
    common(stationary);
    stationary->add_option("--depth", node_depth, "tree depth for node probabilities");

    std::size_t sim_n = 10000, sim_maxlen = 3, sim_replicas = 2000, sim_nmax = 30;
    std::string sim_word;
    auto* simulate = app.add_subcommand("simulate", "sample a trajectory and compare with the measure");
    common(simulate, true);
    simulate->add_option("--n", sim_n, "number of letters");
    simulate->add_option("--word", sim_word, "also check the first-occurrence law of this word");
    simulate->add_option("--maxlen", sim_maxlen, "longest word in the frequency report");
    simulate->add_option("--replicas", sim_replicas, "independent runs for the occurrence check");
    simulate->add_option("--nmax", sim_nmax, "last position of the occurrence law");

    std::size_t map_depth = 12;
    auto* map_export = app.add_subcommand("map-export", "write the pieces of the interval map as CSV");
    common(map_export);
    map_export->add_option("--depth", map_depth, "truncation depth for infinite trees");

    std::string x0 = "1/3";
    std::size_t orbit_n = 100;
    auto* orbit = app.add_subcommand("orbit", "iterate the interval map from a point");
    common(orbit);
    orbit->add_option("--depth", map_depth, "truncation depth for infinite trees");
    orbit->add_option("--x0", x0, "starting point (decimal or p/q)");
    orbit->add_option("--n", orbit_n, "number of iterates");

    double s = 2.0;
    std::string grid;
    std::size_t trunc = 1000, oracle_maxlen = 12;
    auto* dirichlet = app.add_subcommand("dirichlet", "evaluate the Dirichlet series of a comb or bamboo");
    common(dirichlet);
    dirichlet->add_option("--s", s, "real argument");
    dirichlet->add_option("--grid", grid, "a:b:step, overrides --s");
    dirichlet->add_option("--trunc", trunc, "truncation of the series over contexts");
    dirichlet->add_option("--oracle-maxlen", oracle_maxlen,
                          "word length for the brute-force partial sum over nonempty words (0 disables)");

    std::string occ_word;
    std::size_t occ_r = 1, occ_nmax = 30;
    bool occ_oracle = false;
    auto* occurrence = app.add_subcommand("occurrence", "law of the r-th occurrence of a word");
    common(occurrence);
    occurrence->add_option("--word", occ_word, "target word")->required();
    occurrence->add_option("--r", occ_r, "occurrence rank")->check(CLI::PositiveNumber);
    occurrence->add_option("--nmax", occ_nmax, "last position");
    occurrence->add_flag("--oracle", occ_oracle, "also run the state-space oracle");

    auto* check = app.add_subcommand("check", "run the property suite on a tree");
    common(check, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*validate) return cmd_validate(cfg);
        if (*stationary) return cmd_stationary(cfg, node_depth);
        if (*simulate) return cmd_simulate(cfg, sim_n, sim_word, sim_maxlen, sim_replicas, sim_nmax);
        if (*map_export) return cmd_map_export(cfg, map_depth);
        if (*orbit) return cmd_orbit(cfg, map_depth, x0, orbit_n);
        if (*dirichlet) return cmd_dirichlet(cfg, s, grid, trunc, oracle_maxlen);
        if (*occurrence) return cmd_occurrence(cfg, occ_word, occ_r, occ_nmax, occ_oracle);
        if (*check) return cmd_check(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: Io: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
