#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <istream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "qpartial/reduced.hpp"
#include "qpartial/statevector.hpp"
#include "qpartial/version.hpp"

namespace qpartial::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::int64_t sample_from_marginals(const std::vector<double>& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double acc = 0;
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(p.size()); ++k) {
        acc += p[k];
        if (u < acc) return k;
    }
    return static_cast<std::int64_t>(p.size()) - 1;
}

std::vector<std::int64_t> parse_int_list(const std::string& s, const std::string& key) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stoll(item, &pos));
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos])))
                ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("bad integer list for key " + key + ": " + s);
        }
    }
    if (out.empty()) throw ConfigError("empty list for key " + key);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string to_csv_row(const RunRecord& r) {
    std::ostringstream os;
    os << r.mode << ',' << r.geom.N << ',' << r.geom.K << ',' << r.geom.b << ','
       << r.geom.t << ',' << r.geom.tau << ',' << r.j1 << ',' << r.j2 << ','
       << format_double(r.theta) << ',' << format_double(r.phi) << ','
       << format_double(r.total_queries) << ',' << format_double(r.full_queries) << ','
       << format_double(r.residual) << ',' << format_double(r.target_mass);
    return os.str();
}

std::string to_csv_row(const Optimum& o) {
    std::ostringstream os;
    const double saved = std::isnan(o.total_real)
                             ? o.saved_coefficient()
                             : o.full_search_real - o.total_real;
    os << format_double(o.Ktilde) << ',' << format_double(o.eta_tilde) << ','
       << format_double(o.alpha_tilde) << ',' << format_double(o.omega) << ','
       << format_double(o.j1_real) << ',' << format_double(o.j2_real) << ','
       << format_double(o.total_real) << ',' << format_double(o.full_search_real) << ','
       << format_double(saved);
    return os.str();
}

namespace {

nlohmann::ordered_json json_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

}  // namespace

nlohmann::ordered_json to_json(const RunRecord& r) {
    nlohmann::ordered_json j;
    j["mode"] = r.mode;
    j["N"] = r.geom.N;
    j["K"] = r.geom.K;
    j["b"] = r.geom.b;
    j["t"] = r.geom.t;
    j["tau"] = r.geom.tau;
    j["j1"] = r.j1;
    j["j2"] = r.j2;
    j["theta"] = json_or_null(r.theta);
    j["phi"] = json_or_null(r.phi);
    j["total_queries"] = json_or_null(r.total_queries);
    j["full_queries"] = json_or_null(r.full_queries);
    j["residual"] = json_or_null(r.residual);
    j["target_mass"] = json_or_null(r.target_mass);
    j["omega"] = json_or_null(r.omega);
    if (!r.marginals.empty()) j["marginals"] = r.marginals;
    j["wall_ms"] = r.wall_ms;
    j["version"] = kVersion;
    if (r.seed) {
        j["seed"] = *r.seed;
        j["sampled_block"] = *r.sampled_block;
    }
    return j;
}

nlohmann::ordered_json to_json(const Optimum& o) {
    nlohmann::ordered_json j;
    j["Ktilde"] = o.Ktilde;
    j["eta_tilde"] = o.eta_tilde;
    j["alpha_tilde"] = o.alpha_tilde;
    j["omega"] = o.omega;
    j["j1"] = json_or_null(o.j1_real);
    j["j2"] = json_or_null(o.j2_real);
    j["total"] = json_or_null(o.total_real);
    j["full"] = json_or_null(o.full_search_real);
    j["saved"] = std::isnan(o.total_real) ? o.saved_coefficient()
                                          : o.full_search_real - o.total_real;
    j["version"] = kVersion;
    return j;
}

nlohmann::ordered_json solution_json(const SearchGeometry& g, const PhaseSolution& s) {
    nlohmann::ordered_json j;
    j["N"] = g.N;
    j["K"] = g.K;
    j["t"] = g.t;
    j["tau"] = g.tau;
    j["j1"] = s.j1;
    j["j2"] = s.j2;
    j["theta"] = s.theta;
    j["phi"] = s.phi;
    j["total_queries"] = s.total_queries();
    j["residual"] = s.residual;
    return j;
}

Engine resolve_engine(Engine requested, const SearchGeometry& g) {
    if (requested != Engine::Auto) return requested;
    return g.N > kAutoEngineMaxFullN ? Engine::Reduced : Engine::Full;
}

RunRecord run_simulation(const SearchGeometry& g, std::int64_t j1, std::int64_t j2,
                         Step3Ordering ordering, Engine engine,
                         std::optional<std::uint64_t> sample_seed) {
    const auto start = Clock::now();
    RunRecord rec;
    rec.mode = "exact";
    rec.geom = g;
    rec.j1 = j1;
    rec.j2 = j2;
    rec.total_queries = static_cast<double>(j1 + j2 + 1);
    rec.full_queries = full_search_queries(g);

    if (resolve_engine(engine, g) == Engine::Full) {
        FullState s = uniform_state(g, canonical_placement(g));
        for (std::int64_t i = 0; i < j1; ++i) apply_global_iteration(s);
        apply_local_iterations(s, j2);
        apply_step3(s, ordering);
        rec.marginals = block_marginals(s);
        rec.residual = max_nontarget_amplitude(s);
        rec.omega = canonical_angle(project_classes(s).reduced);
        if (sample_seed) {
            rec.seed = *sample_seed;
            rec.sampled_block = sample_block(s, *sample_seed);
        }
    } else {
        ReducedState r = initial_reduced(g);
        r = evolve_global(g, r, static_cast<double>(j1));
        r = evolve_local(g, r, static_cast<double>(j2));
        r = apply_step3(g, r, ordering);
        const double per_target = (std::norm(r.m) + std::norm(r.ntt)) / g.t;
        const double per_rest = std::norm(r.u) / (g.K - g.t);
        rec.marginals.assign(g.K, per_rest);
        for (std::int64_t blk = 0; blk < g.t; ++blk) rec.marginals[blk] = per_target;
        rec.residual = std::abs(r.u) / std::sqrt(static_cast<double>(g.b * (g.K - g.t)));
        rec.omega = canonical_angle(r);
        if (sample_seed) {
            rec.seed = *sample_seed;
            rec.sampled_block = sample_from_marginals(rec.marginals, *sample_seed);
        }
    }
    rec.target_mass = 0;
    for (std::int64_t blk = 0; blk < g.t; ++blk) rec.target_mass += rec.marginals[blk];
    rec.wall_ms = elapsed_ms(start);
    return rec;
}

RunRecord run_surephase(const SearchGeometry& g, PhaseSolution* solution) {
    const auto start = Clock::now();
    PhaseSolution sol = minimal_schedule(g);
    RunRecord rec;
    rec.mode = "sure-success";
    rec.geom = g;
    rec.j1 = sol.j1;
    rec.j2 = sol.j2;
    rec.theta = sol.theta;
    rec.phi = sol.phi;
    rec.total_queries = static_cast<double>(sol.total_queries());
    rec.full_queries = full_search_queries(g);
    rec.residual = verify_sure_success(g, sol, &rec.marginals);
    rec.target_mass = 0;
    for (std::int64_t blk = 0; blk < g.t; ++blk) rec.target_mass += rec.marginals[blk];
    rec.wall_ms = elapsed_ms(start);
    if (solution) *solution = sol;
    return rec;
}

RunRecord run_asymptotic(const SearchGeometry& g) {
    const auto start = Clock::now();
    const Optimum o = optimum_closed_form(g);
    const QuerySchedule sched = integer_schedule(g);
    RunRecord rec;
    rec.mode = "asymptotic";
    rec.geom = g;
    rec.j1 = sched.j1;
    rec.j2 = sched.j2;
    rec.total_queries = o.total_real;
    rec.full_queries = o.full_search_real;
    rec.omega = o.omega;
    rec.wall_ms = elapsed_ms(start);
    return rec;
}

SweepPlan parse_sweep_plan(std::istream& in) {
    const auto kv = parse_key_values(in);
    SweepPlan plan;
    auto it = kv.find("mode");
    if (it == kv.end()) throw ConfigError("sweep plan needs a mode");
    plan.mode = it->second;
    if (plan.mode != "exact" && plan.mode != "sure-success" && plan.mode != "asymptotic")
        throw ConfigError("unknown sweep mode: " + plan.mode);

    auto list = [&](const char* key) -> std::vector<std::int64_t> {
        auto i = kv.find(key);
        if (i == kv.end()) return {};
        return parse_int_list(i->second, key);
    };
    plan.N = list("N");
    plan.b = list("b");
    plan.K = list("K");
    plan.t = list("t");
    plan.tau = list("tau");
    if (plan.N.empty() == plan.b.empty())
        throw ConfigError("sweep plan needs exactly one of N or b");
    if (plan.K.empty() || plan.t.empty() || plan.tau.empty())
        throw ConfigError("sweep plan needs K, t and tau lists");

    auto scalar = [&](const char* key) -> std::optional<std::int64_t> {
        auto i = kv.find(key);
        if (i == kv.end()) return std::nullopt;
        const auto v = parse_int_list(i->second, key);
        if (v.size() != 1) throw ConfigError(std::string("key ") + key + " must be scalar");
        return v[0];
    };
    plan.j1 = scalar("j1");
    plan.j2 = scalar("j2");
    if (auto i = kv.find("ordering"); i != kv.end()) {
        if (i->second == "A")
            plan.ordering = Step3Ordering::ReflectionThenOracle;
        else if (i->second == "B")
            plan.ordering = Step3Ordering::OracleThenReflection;
        else
            throw ConfigError("ordering must be A or B");
    }
    if (auto i = kv.find("engine"); i != kv.end()) {
        if (i->second == "full")
            plan.engine = Engine::Full;
        else if (i->second == "reduced")
            plan.engine = Engine::Reduced;
        else if (i->second == "auto")
            plan.engine = Engine::Auto;
        else
            throw ConfigError("engine must be full, reduced or auto");
    }
    return plan;
}

int run_sweep(const SweepPlan& plan, std::ostream& out, std::ostream& err, bool json) {
    struct Cell {
        std::int64_t first, K, t, tau;  // first = N or b
    };
    std::vector<Cell> cells;
    const auto& firsts = plan.N.empty() ? plan.b : plan.N;
    for (const auto f : firsts)
        for (const auto K : plan.K)
            for (const auto t : plan.t)
                for (const auto tau : plan.tau) cells.push_back({f, K, t, tau});

    struct Outcome {
        bool ok = false;
        RunRecord rec;
        std::string error;
        std::string params;
    };
    auto evaluate = [&](const Cell& c) {
        Outcome o;
        const std::int64_t N = plan.N.empty() ? c.first * c.K : c.first;
        o.params = "N=" + std::to_string(N) + " K=" + std::to_string(c.K) +
                   " t=" + std::to_string(c.t) + " tau=" + std::to_string(c.tau);
        try {
            const SearchGeometry g = validate_geometry(N, c.K, c.t, c.tau);
            if (plan.mode == "exact") {
                const QuerySchedule sched = integer_schedule(g);
                o.rec = run_simulation(g, plan.j1.value_or(sched.j1),
                                       plan.j2.value_or(sched.j2), plan.ordering,
                                       plan.engine);
            } else if (plan.mode == "sure-success") {
                o.rec = run_surephase(g);
            } else {
                o.rec = run_asymptotic(g);
            }
            o.ok = true;
        } catch (const std::exception& e) {
            o.error = e.what();
        }
        return o;
    };

    // fan out, then emit in deterministic order
    std::vector<std::future<Outcome>> futures;
    futures.reserve(cells.size());
    for (const auto& c : cells)
        futures.push_back(std::async(std::launch::async | std::launch::deferred,
                                     evaluate, c));

    int failures = 0;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    if (!json) out << kRecordCsvHeader << '\n';
    for (auto& fut : futures) {
        Outcome o = fut.get();
        if (!o.ok) {
            ++failures;
            err << "sweep: " << o.params << ": " << o.error << '\n';
            continue;
        }
        if (json)
            arr.push_back(to_json(o.rec));
        else
            out << to_csv_row(o.rec) << '\n';
    }
    if (json) out << arr.dump(2) << '\n';
    return failures == 0 ? 0 : 1;
}

namespace {

struct GeometryArgs {
    std::int64_t N = 0, K = 0, t = 0, tau = 0;
    std::string config;

    void attach(CLI::App* cmd) {
        cmd->add_option("--N", N, "item count");
        cmd->add_option("--K", K, "block count");
        cmd->add_option("--t", t, "target-block count");
        cmd->add_option("--tau", tau, "target items per target block");
        cmd->add_option("--config", config, "key=value file with N, K, t, tau");
    }

    bool any() const { return N || K || t || tau || !config.empty(); }

    SearchGeometry resolve() const {
        std::int64_t n = N, k = K, tt = t, tt2 = tau;
        if (!config.empty()) {
            std::ifstream in(config);
            if (!in) throw ConfigError("cannot open config file: " + config);
            const auto kv = parse_key_values(in);
            auto fill = [&](const char* key, std::int64_t& slot) {
                if (slot != 0) return;  // explicit flag wins
                auto i = kv.find(key);
                if (i != kv.end()) slot = std::stoll(i->second);
            };
            fill("N", n);
            fill("K", k);
            fill("t", tt);
            fill("tau", tt2);
        }
        return validate_geometry(n, k, tt, tt2);
    }
};

void emit_optimum_rows(const std::vector<Optimum>& rows, bool json, bool gnuplot,
                       std::ostream& out) {
    if (json) {
        if (rows.size() == 1) {
            out << to_json(rows[0]).dump(2) << '\n';
        } else {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& o : rows) arr.push_back(to_json(o));
            out << arr.dump(2) << '\n';
        }
        return;
    }
    if (gnuplot) {
        std::string header = kOptimumCsvHeader;
        for (auto& ch : header)
            if (ch == ',') ch = ' ';
        out << "# " << header << '\n';
        for (const auto& o : rows) {
            std::string row = to_csv_row(o);
            for (auto& ch : row)
                if (ch == ',') ch = ' ';
            out << row << '\n';
        }
        return;
    }
    out << kOptimumCsvHeader << '\n';
    for (const auto& o : rows) out << to_csv_row(o) << '\n';
}

}  // namespace

int run_main(int argc, char** argv) {
    CLI::App app{"classical toolkit for quantum partial search of a blocked database"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    bool json = false;
    app.add_flag("--json", json, "emit JSON instead of CSV");

    // ---- optimize ----
    auto* opt_cmd = app.add_subcommand(
        "optimize", "large-block query optimum from Ktilde or a geometry");
    opt_cmd->add_flag("--json", json, "emit JSON instead of CSV");
    GeometryArgs opt_geom;
    opt_geom.attach(opt_cmd);
    double ktilde = 0;
    auto* kt_opt = opt_cmd->add_option("--Ktilde", ktilde, "rescaled block count K/t");
    std::string sweep_expr;
    opt_cmd->add_option("--sweep", sweep_expr, "Ktilde grid MIN:MAX:STEP");
    bool gnuplot = false;
    opt_cmd->add_flag("--gnuplot", gnuplot, "space-separated plot layout");

    // ---- simulate ----
    auto* sim_cmd = app.add_subcommand("simulate", "run Steps 1-3 and report marginals");
    sim_cmd->add_flag("--json", json, "emit JSON instead of CSV");
    GeometryArgs sim_geom;
    sim_geom.attach(sim_cmd);
    std::int64_t j1 = -1, j2 = -1;
    sim_cmd->add_option("--j1", j1, "global iterations (default: asymptotic schedule)");
    sim_cmd->add_option("--j2", j2, "local iterations (default: asymptotic schedule)");
    std::string ordering_name = "A";
    sim_cmd->add_option("--ordering", ordering_name, "step-3 ordering: A or B")
        ->check(CLI::IsMember({"A", "B"}));
    std::string engine_name = "auto";
    sim_cmd->add_option("--engine", engine_name, "full, reduced or auto")
        ->check(CLI::IsMember({"full", "reduced", "auto"}));
    std::uint64_t sample_seed = 0;
    auto* seed_opt =
        sim_cmd->add_option("--sample-seed", sample_seed, "draw one block measurement");

    // ---- surephase ----
    auto* sure_cmd =
        app.add_subcommand("surephase", "minimal sure-success schedule and phases");
    sure_cmd->add_flag("--json", json, "emit JSON instead of CSV");
    GeometryArgs sure_geom;
    sure_geom.attach(sure_cmd);

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "run a plan file of configurations");
    sweep_cmd->add_flag("--json", json, "emit JSON instead of CSV");
    std::string plan_path;
    sweep_cmd->add_option("plan", plan_path, "key=value sweep plan file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (opt_cmd->parsed()) {
            std::vector<Optimum> rows;
            if (!sweep_expr.empty()) {
                double lo = 0, hi = 0, step = 0;
                if (std::sscanf(sweep_expr.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
                    step <= 0)
                    throw ConfigError("--sweep expects MIN:MAX:STEP");
                for (double x = lo; x <= hi + 1e-12; x += step)
                    rows.push_back(optimum_closed_form(x));
            } else if (kt_opt->count() > 0) {
                if (opt_geom.any())
                    throw ConfigError("give either --Ktilde or a geometry, not both");
                rows.push_back(optimum_closed_form(ktilde));
            } else {
                rows.push_back(optimum_closed_form(opt_geom.resolve()));
            }
            emit_optimum_rows(rows, json, gnuplot, std::cout);
            return 0;
        }
        if (sim_cmd->parsed()) {
            const SearchGeometry g = sim_geom.resolve();
            const QuerySchedule sched = integer_schedule(g);
            if (j1 < 0) j1 = sched.j1;
            if (j2 < 0) j2 = sched.j2;
            const Step3Ordering ordering = ordering_name == "A"
                                               ? Step3Ordering::ReflectionThenOracle
                                               : Step3Ordering::OracleThenReflection;
            const Engine engine = engine_name == "full"      ? Engine::Full
                                  : engine_name == "reduced" ? Engine::Reduced
                                                             : Engine::Auto;
            std::optional<std::uint64_t> seed;
            if (seed_opt->count() > 0) seed = sample_seed;
            const RunRecord rec = run_simulation(g, j1, j2, ordering, engine, seed);
            if (json)
                std::cout << to_json(rec).dump(2) << '\n';
            else
                std::cout << kRecordCsvHeader << '\n' << to_csv_row(rec) << '\n';
            return 0;
        }
        if (sure_cmd->parsed()) {
            const SearchGeometry g = sure_geom.resolve();
            PhaseSolution sol;
            const RunRecord rec = run_surephase(g, &sol);
            if (json)
                std::cout << solution_json(g, sol).dump(2) << '\n';
            else
                std::cout << kRecordCsvHeader << '\n' << to_csv_row(rec) << '\n';
            return 0;
        }
        if (sweep_cmd->parsed()) {
            std::ifstream in(plan_path);
            if (!in) throw ConfigError("cannot open sweep plan: " + plan_path);
            const SweepPlan plan = parse_sweep_plan(in);
            return run_sweep(plan, std::cout, std::cerr, json);
        }
    } catch (const std::exception& e) {
        std::cerr << "qpartial: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace qpartial::cli
