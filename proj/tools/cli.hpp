#pragma once
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpartial/asymptotic.hpp"
#include "qpartial/geometry.hpp"
#include "qpartial/schedule.hpp"
#include "qpartial/surephase.hpp"

namespace qpartial::cli {

enum class Engine { Full, Reduced, Auto };

/// N above which engine=auto switches from the dense simulator to the
/// reduced model.
inline constexpr std::int64_t kAutoEngineMaxFullN = 1 << 16;

/// One row of machine-readable output shared by simulate, surephase and
/// sweep runs.
struct RunRecord {
    std::string mode;  // "asymptotic" | "exact" | "sure-success"
    SearchGeometry geom;
    std::int64_t j1 = 0;
    std::int64_t j2 = 0;
    double theta = std::numeric_limits<double>::quiet_NaN();
    double phi = std::numeric_limits<double>::quiet_NaN();
    double total_queries = std::numeric_limits<double>::quiet_NaN();
    double full_queries = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::quiet_NaN();
    double target_mass = std::numeric_limits<double>::quiet_NaN();
    double omega = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> marginals;  // length K (empty for asymptotic rows)
    double wall_ms = 0;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> sampled_block;
};

inline constexpr const char* kRecordCsvHeader =
    "mode,N,K,b,t,tau,j1,j2,theta,phi,total_queries,full_queries,residual,target_mass";
inline constexpr const char* kOptimumCsvHeader =
    "Ktilde,eta_tilde,alpha_tilde,omega,j1,j2,total,full,saved";

std::string format_double(double v);
std::string to_csv_row(const RunRecord& r);
std::string to_csv_row(const Optimum& o);
nlohmann::ordered_json to_json(const RunRecord& r);
nlohmann::ordered_json to_json(const Optimum& o);
/// Exactly {N, K, t, tau, j1, j2, theta, phi, total_queries, residual}.
nlohmann::ordered_json solution_json(const SearchGeometry& g, const PhaseSolution& s);

Engine resolve_engine(Engine requested, const SearchGeometry& g);

/// Steps 1-3 with the plain final reflection.
RunRecord run_simulation(const SearchGeometry& g, std::int64_t j1, std::int64_t j2,
                         Step3Ordering ordering, Engine engine,
                         std::optional<std::uint64_t> sample_seed = std::nullopt);

/// minimal_schedule + verification.
RunRecord run_surephase(const SearchGeometry& g, PhaseSolution* solution = nullptr);

/// Closed-form optimum and its rounded schedule; no simulation.
RunRecord run_asymptotic(const SearchGeometry& g);

struct SweepPlan {
    std::string mode;  // "exact" | "sure-success" | "asymptotic"
    std::vector<std::int64_t> N;  // empty when b is given instead
    std::vector<std::int64_t> b;
    std::vector<std::int64_t> K;
    std::vector<std::int64_t> t;
    std::vector<std::int64_t> tau;
    std::optional<std::int64_t> j1;
    std::optional<std::int64_t> j2;
    Step3Ordering ordering = Step3Ordering::ReflectionThenOracle;
    Engine engine = Engine::Auto;
};

SweepPlan parse_sweep_plan(std::istream& in);

/// Emits one CSV row (or JSON array element) per configuration in
/// lexicographic parameter order; failed rows go to err and the return
/// value becomes nonzero while the run continues.
int run_sweep(const SweepPlan& plan, std::ostream& out, std::ostream& err, bool json);

/// Full command-line entry point.
int run_main(int argc, char** argv);

}  // namespace qpartial::cli
