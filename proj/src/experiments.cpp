#include "kolmo/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "kolmo/mean_value.hpp"

namespace kolmo {

namespace {

using nlohmann::ordered_json;

std::vector<double> numbers(const std::string& field, const std::vector<std::string>& w, std::size_t from) {
    std::vector<double> out;
    for (std::size_t i = from; i < w.size(); ++i) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(w[i], &used));
            if (used != w[i].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError(field, "'" + w[i] + "' is not a number");
        }
    }
    return out;
}

std::vector<std::string> split_words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

Vec to_vec(const std::vector<double>& v, std::size_t from, std::size_t m) {
    Vec out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = v[from + i];
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + format_double(v[i]);
    return out;
}

std::string path_in(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os) throw std::runtime_error("cannot write '" + path + "'");
    return os;
}

void write_json(const std::string& path, const ordered_json& j) {
    auto os = open_out(path);
    os << j.dump(2) << '\n';
}

std::vector<Sample> read_table(const std::string& path, std::size_t m) {
    std::ifstream in(path);
    if (!in) throw ConfigError("boundary_table", "cannot open '" + path + "'");
    std::vector<Sample> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            if (line.find_first_of("abcdefghijklmnopqrsuvwxyz") != std::string::npos) continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        const auto v = numbers("boundary_table", split_words(line), 0);
        if (v.size() != 2 * m + 2) throw ConfigError("boundary_table", "rows need 2m+2 columns (X, Y, t, value)");
        out.push_back({GroupPoint(to_vec(v, 0, m), to_vec(v, m, m), v[2 * m]), v[2 * m + 1]});
    }
    if (out.empty()) throw ConfigError("boundary_table", "no samples");
    return out;
}

Strategy make_strategy(const std::string& name, const ExperimentConfig& e, double eps,
                       const std::shared_ptr<const ValueGrid>& grid, const BallRule& rule) {
    Vec Z(e.m);
    if (!e.pull_target.empty()) Z = to_vec(e.pull_target, 0, e.m);
    if (name == "stay") return stay();
    if (name == "random") return random_strategy(eps);
    if (name == "pull_toward") return pull_toward(Z, eps);
    if (name == "push_away") return push_away(Z, eps);
    if (name == "greedy_max" || name == "greedy_min") {
        if (!grid) throw ConfigError("player", "greedy strategies need a solved grid");
        return greedy_from_grid(grid, name == "greedy_max" ? GreedyMode::Maximize : GreedyMode::Minimize,
                                grid->hY(), rule);
    }
    throw ConfigError("player", "unknown strategy '" + name + "'");
}

double positive_radius(double r) {
    if (!(r > 0.0)) throw ConfigError("domain", "ball radius must be positive");
    return r;
}

bool is_greedy(const std::string& s) { return s == "greedy_max" || s == "greedy_min"; }

MeanValueQuadrature make_quadrature(const ExperimentConfig& e) {
    MeanValueQuadrature q;
    q.x_ball.n_radial = e.x_radial;
    q.x_ball.n_angular = e.x_angular;
    q.x_ball.n_points = e.qmc_points;
    q.x_ball.seed = e.quadrature_seed;
    q.x_ball.mode = e.quadrature == "tensor" ? QuadratureMode::Tensor : QuadratureMode::QuasiRandom;
    q.y_ball.n_radial = e.y_radial;
    q.y_ball.n_angular = e.y_angular;
    q.y_ball.n_points = e.qmc_points;
    q.y_ball.seed = e.quadrature_seed + 1;
    q.y_ball.mode = q.x_ball.mode;
    q.n_time = e.time_nodes;
    q.refine = e.refine;
    return q;
}

// ---------------------------------------------------------------- mv-check

ExperimentOutcome run_mv_check(const ExperimentConfig& e, const std::string& dir) {
    const std::size_t m = e.m;
    const SmoothProfile phi = profiles::by_name(e.profile, m, e.p);
    const GroupPoint g(to_vec(e.point, 0, m), to_vec(e.point, m, m), e.point[2 * m]);
    const MeanValueQuadrature quad = make_quadrature(e);
    const std::string point = join(e.point);

    ExperimentOutcome out;
    const std::string csv = path_in(dir, e.output + ".csv");
    auto os = open_out(csv);
    os << "variant,p,point,epsilon,residual,residual_over_eps2,extrapolated_limit,oracle_value,rel_error\n";
    double worst = 0.0;
    for (const std::string& vname : e.variants) {
        const MeanValueVariant v = parse_variant(vname);
        double oracle = NAN;
        try {
            oracle = mv_limit_oracle(phi, g, e.p, v);
        } catch (const DegenerateGradient&) {
        }
        LimitEstimate est;
        bool ok = true;
        try {
            est = mv_limit_estimate(phi, g, e.p, v, e.epsilons, quad);
        } catch (const NonMonotoneResidual&) {
            ok = false;
            est.limit = NAN;
            for (double eps : e.epsilons) {
                const double r = mv_residual(phi, g, e.p, eps, v, quad);
                est.epsilons.push_back(eps);
                est.residuals.push_back(r);
                est.scaled.push_back(r / (eps * eps));
            }
        }
        const double rel = oracle == 0.0 ? std::abs(est.limit) : std::abs(est.limit - oracle) / std::abs(oracle);
        if (!ok || std::isnan(rel))
            worst = INFINITY;
        else
            worst = std::max(worst, rel);
        for (std::size_t i = 0; i < est.epsilons.size(); ++i)
            os << to_string(v) << ',' << format_p(e.p) << ',' << point << ',' << format_double(est.epsilons[i]) << ','
               << format_double(est.residuals[i]) << ',' << format_double(est.scaled[i]) << ','
               << format_double(est.limit) << ',' << format_double(oracle) << ',' << format_double(rel) << '\n';
    }
    out.files.push_back(csv);
    if (e.max_rel_error) out.pass = worst <= *e.max_rel_error;
    out.summary = "mv-check profile=" + e.profile + " p=" + format_p(e.p) + " variants=" +
                  std::to_string(e.variants.size()) + " max_rel_error=" + format_double(worst);
    return out;
}

// ---------------------------------------------------------------- solve

struct Solved {
    SolveConfig config;
    BoundaryDatum F;
    std::shared_ptr<const ValueGrid> grid;
};

Solved solve_for(const ExperimentConfig& e, double eps) {
    Solved s{make_solve_config(e, eps), {}, nullptr};
    s.F = make_boundary(e, s.config.domain, eps);
    s.grid = std::make_shared<const ValueGrid>(solve(s.config, s.F));
    return s;
}

ExperimentOutcome run_solve(const ExperimentConfig& e, const std::string& dir) {
    ExperimentOutcome out;
    const Solved s = solve_for(e, e.epsilon);
    const ValueGrid& grid = *s.grid;
    if (e.grid_format == "binary" || e.grid_format == "both") {
        const std::string path = path_in(dir, e.output + ".bin");
        auto os = open_out(path, true);
        grid.write_binary(os);
        out.files.push_back(path);
    }
    if (e.grid_format == "csv" || e.grid_format == "both") {
        const std::string path = path_in(dir, e.output + "_grid.csv");
        auto os = open_out(path);
        grid.write_csv(os);
        out.files.push_back(path);
    }
    const double h = std::max(grid.hX(), grid.hY());
    ordered_json j;
    j["command"] = "solve";
    j["m"] = e.m;
    j["p"] = format_p(e.p);
    j["epsilon"] = e.epsilon;
    j["T"] = e.T;
    j["hX"] = grid.hX();
    j["hY"] = grid.hY();
    j["slices"] = grid.n_slices();
    j["x_nodes"] = grid.x_count();
    j["y_nodes"] = grid.y_count();
    j["boundary"] = s.F.name;
    j["interpolation_bound_10h2"] = 10.0 * h * h;
    std::string summary = "solve boundary=" + s.F.name + " eps=" + format_double(e.epsilon);
    if (const auto exact = exact_solution(e, s.F)) {
        const double err = max_node_error(grid, *exact, -INFINITY, INFINITY);
        j["max_error"] = err;
        summary += " max_error=" + format_double(err);
        if (e.max_error) out.pass = err <= *e.max_error;
    }
    if (e.fixed_point_check) {
        const double r = fixed_point_residual(grid, solver_rule(s.config), e.threads);
        j["fixed_point_residual"] = r;
        summary += " fixed_point_residual=" + format_double(r);
    }
    const std::string path = path_in(dir, e.output + ".json");
    write_json(path, j);
    out.files.push_back(path);
    out.summary = summary;
    return out;
}

// ---------------------------------------------------------------- play

Game make_game(const ExperimentConfig& e, const BoundaryDatum& F, const SpatialDomain& domain) {
    GameConfig gc;
    gc.domain = domain;
    gc.T = e.T;
    gc.p = e.p;
    gc.eps = e.epsilon;
    gc.payoff = F;
    gc.seed = *e.seed;
    gc.episodes = e.episodes;
    gc.threads = e.threads;
    return Game(gc);
}

void write_episode_log(std::ostream& os, std::size_t start, std::size_t episode,
                       const std::vector<EpisodeLogEntry>& log) {
    for (const auto& entry : log) {
        os << start << ',' << episode << ',' << entry.k;
        for (double x : entry.X) os << ',' << format_double(x);
        for (double y : entry.Y) os << ',' << format_double(y);
        os << ',' << format_double(entry.t) << ',';
        if (entry.step) {
            os << format_double(entry.step->coin) << ',' << to_string(entry.step->actor);
        } else {
            os << ",start";
        }
        os << '\n';
    }
}

ExperimentOutcome run_play(const ExperimentConfig& e, const std::string& dir) {
    ExperimentOutcome out;
    const std::size_t m = e.m;
    std::shared_ptr<const ValueGrid> grid;
    BallRule rule;
    SpatialDomain domain = parse_domain(e.domain, m);
    BoundaryDatum F = make_boundary(e, domain, e.epsilon);
    if (is_greedy(e.player_I) || is_greedy(e.player_II)) {
        Solved s = solve_for(e, e.epsilon);
        grid = s.grid;
        rule = solver_rule(s.config);
    }
    const Game game = make_game(e, F, domain);
    const Strategy sI = make_strategy(e.player_I, e, e.epsilon, grid, rule);
    const Strategy sII = make_strategy(e.player_II, e, e.epsilon, grid, rule);

    ordered_json j;
    j["command"] = "play";
    j["player_I"] = sI.name;
    j["player_II"] = sII.name;
    j["p"] = format_p(e.p);
    j["epsilon"] = e.epsilon;
    j["seed"] = *e.seed;
    j["results"] = ordered_json::array();
    std::ofstream log_os;
    std::string log_path;
    if (e.log_episodes > 0) {
        log_path = path_in(dir, e.output + "_episodes.csv");
        log_os = open_out(log_path);
        log_os << "start,episode,k";
        for (std::size_t a = 0; a < m; ++a) log_os << ",x" << a + 1;
        for (std::size_t a = 0; a < m; ++a) log_os << ",y" << a + 1;
        log_os << ",t,coin,actor\n";
    }
    for (std::size_t si = 0; si < e.starts.size(); ++si) {
        const auto& st = e.starts[si];
        const Vec X0 = to_vec(st, 0, m), Y0 = to_vec(st, m, m);
        const double t0 = st[2 * m];
        const ValueEstimate est = estimate_value(game, X0, Y0, t0, sI, sII);
        ordered_json r;
        r["start"] = st;
        r["mean"] = est.mean;
        r["se"] = est.se;
        r["n"] = est.n;
        r["tau_histogram"] = est.tau_histogram;
        j["results"].push_back(r);
        for (std::size_t ep = 0; ep < std::min(e.log_episodes, e.episodes); ++ep) {
            RandomStream rng(*e.seed, ep);
            std::vector<EpisodeLogEntry> log;
            game.run_episode(X0, Y0, t0, sI, sII, rng, &log);
            write_episode_log(log_os, si, ep, log);
        }
    }
    const std::string path = path_in(dir, e.output + ".json");
    write_json(path, j);
    out.files.push_back(path);
    if (!log_path.empty()) out.files.push_back(log_path);
    out.summary = "play " + sI.name + " vs " + sII.name + " starts=" + std::to_string(e.starts.size()) +
                  " episodes=" + std::to_string(e.episodes) + " first_mean=" + format_double(j["results"][0]["mean"]);
    return out;
}

// ---------------------------------------------------------------- sweep

ExperimentOutcome run_sweep(const ExperimentConfig& e, const std::string& dir) {
    ExperimentOutcome out;
    const std::string csv = path_in(dir, e.output + ".csv");
    auto os = open_out(csv);
    os << "epsilon,hX,hY,slices,error\n";
    std::vector<double> errors;
    const Vec xlo(e.m, e.compact_x[0]), xhi(e.m, e.compact_x[1]);
    const Vec ylo(e.m, e.compact_y[0]), yhi(e.m, e.compact_y[1]);
    for (double eps : e.epsilons) {
        const Solved s = solve_for(e, eps);
        const auto exact = exact_solution(e, s.F);
        if (!exact) throw ConfigError("boundary", "sweep needs a boundary datum with a known exact solution");
        const double err = max_node_error(*s.grid, *exact, e.compact_t[0], e.compact_t[1], std::make_pair(xlo, xhi),
                                          std::make_pair(ylo, yhi));
        errors.push_back(err);
        os << format_double(eps) << ',' << format_double(s.grid->hX()) << ',' << format_double(s.grid->hY()) << ','
           << s.grid->n_slices() << ',' << format_double(err) << '\n';
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < errors.size(); ++i) decreasing = decreasing && errors[i] < errors[i - 1];
    if (e.require_decreasing) out.pass = decreasing;
    out.files.push_back(csv);
    out.summary = "sweep boundary=" + e.boundary + " errors=" + join(errors) +
                  (decreasing ? " strictly decreasing" : " NOT strictly decreasing");
    return out;
}

// ---------------------------------------------------------------- cross-validate

ExperimentOutcome run_cross_validate(const ExperimentConfig& e, const std::string& dir) {
    ExperimentOutcome out;
    const std::size_t m = e.m;
    const Solved s = solve_for(e, e.epsilon);
    const ValueGrid& grid = *s.grid;
    const BallRule rule = solver_rule(s.config);
    const Game game = make_game(e, s.F, s.config.domain);
    const Strategy sI = make_strategy(e.player_I, e, e.epsilon, s.grid, rule);
    const Strategy sII = make_strategy(e.player_II, e, e.epsilon, s.grid, rule);
    const Strategy noise = random_strategy(e.epsilon);
    const double h = std::max(grid.hX(), grid.hY());

    const std::string csv = path_in(dir, e.output + ".csv");
    auto os = open_out(csv);
    os << "start,check,mc_mean,se,grid_value,abs_diff,tolerance,pass\n";
    ordered_json j;
    j["command"] = "cross-validate";
    j["p"] = format_p(e.p);
    j["epsilon"] = e.epsilon;
    j["seed"] = *e.seed;
    j["episodes"] = e.episodes;
    j["checks"] = ordered_json::array();
    std::size_t failures = 0, checks = 0;
    auto record = [&](const std::vector<double>& st, const std::string& check, const ValueEstimate& est,
                      double gv, bool one_sided) {
        const double tol = 3.0 * est.se + 10.0 * h * h;
        const double diff = std::abs(est.mean - gv);
        const bool pass = one_sided ? est.mean >= gv - tol : diff <= tol;
        ++checks;
        if (!pass) ++failures;
        os << join(st) << ',' << check << ',' << format_double(est.mean) << ',' << format_double(est.se) << ','
           << format_double(gv) << ',' << format_double(diff) << ',' << format_double(tol) << ','
           << (pass ? "true" : "false") << '\n';
        ordered_json r;
        r["start"] = st;
        r["check"] = check;
        r["mc_mean"] = est.mean;
        r["se"] = est.se;
        r["grid_value"] = gv;
        r["tolerance"] = tol;
        r["pass"] = pass;
        j["checks"].push_back(r);
    };
    for (const auto& st : e.starts) {
        const Vec X0 = to_vec(st, 0, m), Y0 = to_vec(st, m, m);
        const double t0 = st[2 * m];
        const double gv = grid.evaluate(grid.slice_index(t0), X0, Y0);
        record(st, "value", estimate_value(game, X0, Y0, t0, sI, sII), gv, false);
        if (e.adversarial_check) record(st, "adversarial", estimate_value(game, X0, Y0, t0, sI, noise), gv, true);
    }
    const std::string path = path_in(dir, e.output + ".json");
    write_json(path, j);
    out.files = {csv, path};
    if (e.require_agreement) out.pass = failures == 0;
    out.summary = "cross-validate " + sI.name + " vs " + sII.name + ": " + std::to_string(checks - failures) + "/" +
                  std::to_string(checks) + " checks within 3*SE + 10h^2";
    return out;
}

}  // namespace

SpatialDomain parse_domain(const std::string& spec, std::size_t m) {
    const auto w = split_words(spec);
    if (w.empty()) throw ConfigError("domain", "empty domain spec");
    const auto v = numbers("domain", w, 1);
    if (w[0] == "box") {
        Vec lo(m), hi(m);
        if (v.size() == 2) {
            lo = Vec(m, v[0]);
            hi = Vec(m, v[1]);
        } else if (v.size() == 2 * m) {
            for (std::size_t a = 0; a < m; ++a) {
                lo[a] = v[2 * a];
                hi[a] = v[2 * a + 1];
            }
        } else {
            throw ConfigError("domain", "box needs 'lo hi' or m pairs");
        }
        for (std::size_t a = 0; a < m; ++a)
            if (!(lo[a] < hi[a])) throw ConfigError("domain", "box needs lo < hi");
        return SpatialDomain::box(lo, hi);
    }
    if (w[0] == "ball") {
        if (v.size() == 1) return SpatialDomain::ball(Vec(m), positive_radius(v[0]));
        if (v.size() == m + 1) return SpatialDomain::ball(to_vec(v, 0, m), positive_radius(v[m]));
        throw ConfigError("domain", "ball needs 'r' or m centre coordinates and r");
    }
    throw ConfigError("domain", "expected 'box ...' or 'ball ...'");
}

BoundaryDatum make_boundary(const ExperimentConfig& e, const SpatialDomain& domain, double eps) {
    const std::size_t m = e.m;
    const auto& prm = e.boundary_params;
    if (e.boundary == "const") {
        if (prm.size() > 1) throw ConfigError("boundary_params", "const takes one value");
        return constant_datum(prm.empty() ? 1.0 : prm[0]);
    }
    if (e.boundary == "linear") {
        if (prm.size() != m && prm.size() != m + 1)
            throw ConfigError("boundary_params", "linear takes m coefficients and an optional offset");
        return linear_datum(to_vec(prm, 0, m), prm.size() == m + 1 ? prm[m] : 0.0);
    }
    if (e.boundary == "y_plus_tx") {
        if (prm.empty()) return y_plus_tx_datum(m);
        if (prm.size() != m) throw ConfigError("boundary_params", "y_plus_tx takes a direction with m entries");
        const Vec d = to_vec(prm, 0, m);
        if (std::abs(norm(d) - 1.0) > 1e-12) throw ConfigError("boundary_params", "direction must be a unit vector");
        return y_plus_tx_datum(m, d);
    }
    if (e.boundary == "quadratic_p") return quadratic_p_datum(m, e.p, domain, e.T, eps);
    if (e.boundary == "table") {
        if (e.boundary_table.empty()) throw ConfigError("boundary_table", "required for boundary = table");
        try {
            return mcshane_extend(read_table(e.boundary_table, m), e.boundary_lipschitz);
        } catch (const LipschitzViolation& v) {
            throw ConfigError("boundary_table", v.what());
        }
    }
    throw ConfigError("boundary", "unknown boundary '" + e.boundary + "'");
}

std::optional<std::function<double(const GroupPoint&)>> exact_solution(const ExperimentConfig& e,
                                                                        const BoundaryDatum& F) {
    if (e.boundary == "table") return std::nullopt;
    return F.evaluate;
}

SolveConfig make_solve_config(const ExperimentConfig& e, double eps) {
    SolveConfig c;
    c.domain = parse_domain(e.domain, e.m);
    c.T = e.T;
    c.p = e.p;
    c.eps = eps;
    c.hX = e.grid_hX(eps);
    c.hY = e.grid_hY(eps);
    c.ball_samples = e.ball_samples;
    double lo = e.y_seed[0], hi = e.y_seed[1];
    if (e.command == "sweep") {
        lo = std::min(lo, e.compact_y[0]);
        hi = std::max(hi, e.compact_y[1]);
    }
    c.y_seed_lo = Vec(e.m, lo);
    c.y_seed_hi = Vec(e.m, hi);
    c.threads = e.threads;
    try {
        c.validate();
    } catch (const std::invalid_argument& ex) {
        const std::string msg = ex.what();
        throw ConfigError(msg.substr(0, msg.find(':')), msg.substr(msg.find(':') + 2));
    }
    return c;
}

void validate_experiment(const ExperimentConfig& e) {
    const SpatialDomain domain = parse_domain(e.domain, e.m);
    if (e.command == "mv-check") {
        try {
            profiles::by_name(e.profile, e.m, e.p);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError("profile", ex.what());
        }
        for (const auto& v : e.variants) {
            try {
                parse_variant(v);
            } catch (const std::invalid_argument& ex) {
                throw ConfigError("variants", ex.what());
            }
        }
        try {
            const MeanValueQuadrature q = make_quadrature(e);
            make_ball_rule(e.m, q.x_ball);
            make_ball_rule(e.m, q.y_ball);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError("quadrature", ex.what());
        }
        return;
    }
    const std::vector<double> eps_list = e.command == "sweep" ? e.epsilons : std::vector<double>{e.epsilon};
    for (double eps : eps_list) {
        make_solve_config(e, eps);
        make_boundary(e, domain, eps);
    }
    if (e.command == "solve" && e.max_error && e.boundary == "table")
        throw ConfigError("max_error", "needs a boundary datum with a known exact solution");
    if (e.command == "play" || e.command == "cross-validate") {
        for (const auto& name : {e.player_I, e.player_II})
            if (name != "stay" && name != "random" && name != "pull_toward" && name != "push_away" && !is_greedy(name))
                throw ConfigError("player", "unknown strategy '" + name + "'");
        const bool needs_grid = e.command == "cross-validate" || is_greedy(e.player_I) || is_greedy(e.player_II);
        std::optional<ValueGrid> shape;
        if (needs_grid) shape.emplace(make_grid(make_solve_config(e, e.epsilon)));
        for (const auto& st : e.starts) {
            const double t0 = st[2 * e.m];
            if (!(t0 > 0.0) || t0 > e.T + 1e-12) throw ConfigError("starts", "start time must lie in (0, T]");
            if (!needs_grid) continue;
            try {
                (void)shape->slice_index(t0);
            } catch (const GridQueryOutOfRange&) {
                throw ConfigError("starts", "start time " + format_double(t0) +
                                                " is not on the eps^2/2 ladder ending at T");
            }
            for (std::size_t a = 0; a < e.m; ++a)
                if (st[e.m + a] < e.y_seed[0] || st[e.m + a] > e.y_seed[1])
                    throw ConfigError("starts", "start Y must lie inside y_seed");
        }
    }
}

ExperimentOutcome run_experiment(const ExperimentConfig& e, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    if (e.command == "mv-check") return run_mv_check(e, out_dir);
    if (e.command == "solve") return run_solve(e, out_dir);
    if (e.command == "play") return run_play(e, out_dir);
    if (e.command == "sweep") return run_sweep(e, out_dir);
    if (e.command == "cross-validate") return run_cross_validate(e, out_dir);
    throw ConfigError("", "unknown command '" + e.command + "'");
}

}  // namespace kolmo
