#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kolmo/config.hpp"
#include "kolmo/dpp_solver.hpp"
#include "kolmo/game.hpp"

namespace kolmo {

/// "box lo hi" (the cube [lo, hi]^m), "box lo_1 hi_1 ... lo_m hi_m",
/// "ball r" (centred at 0) or "ball c_1 ... c_m r".
SpatialDomain parse_domain(const std::string& spec, std::size_t m);

/// Boundary datum named by the config: const, linear, y_plus_tx, quadratic_p or table.
BoundaryDatum make_boundary(const ExperimentConfig& e, const SpatialDomain& domain, double eps);

/// The datum itself when it is an exact solution of K_p u = 0 (everything but table).
std::optional<std::function<double(const GroupPoint&)>> exact_solution(const ExperimentConfig& e,
                                                                        const BoundaryDatum& F);

SolveConfig make_solve_config(const ExperimentConfig& e, double eps);

/// Builds every object the experiment needs without running it. Throws ConfigError.
void validate_experiment(const ExperimentConfig& e);

struct ExperimentOutcome {
    bool pass = true;
    std::string summary;
    std::vector<std::string> files;
};

/// Runs one experiment, writing its artifacts under out_dir.
ExperimentOutcome run_experiment(const ExperimentConfig& e, const std::string& out_dir);

}  // namespace kolmo
