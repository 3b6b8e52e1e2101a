#include "kolmo/game.hpp"

#include <cmath>
#include <limits>

#include "kolmo/parallel.hpp"

namespace kolmo {

std::string to_string(Actor a) {
    switch (a) {
        case Actor::PlayerI: return "I";
        case Actor::PlayerII: return "II";
        case Actor::Noise: return "noise";
    }
    return "?";
}

void GameConfig::validate() const {
    if (!(p >= 2.0)) throw std::invalid_argument("p: the game requires p >= 2 (got " + format_p(p) + ")");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps: must be positive");
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("T: must be positive");
    if (!payoff.evaluate) throw std::invalid_argument("payoff: missing");
}

Game::Game(GameConfig config) : config_(std::move(config)) {
    config_.validate();
    w_ = tug_weights(config_.p, config_.domain.dim());
}

namespace {

double clock_time(double t0, std::size_t k, double h) {
    const double t = t0 - static_cast<double>(k) * h;
    return std::abs(t) <= 1e-12 * std::max(1.0, std::abs(t0)) ? 0.0 : t;
}

Vec project_step(const Vec& X, const Vec& target, double eps) {
    if (target.size() != X.size() || !all_finite(target))
        throw GameStepError("strategy returned an invalid target");
    const Vec d = target - X;
    const double n = norm(d);
    if (n <= eps) return target;
    return X + (eps / n) * d;
}

}  // namespace

GameState Game::start(const Vec& X0, const Vec& Y0, double t0) const {
    if (X0.size() != config_.domain.dim() || Y0.size() != X0.size())
        throw DimensionMismatch("start point dimension differs from the domain's");
    GameState s;
    s.X = X0;
    s.Y = Y0;
    s.t0 = t0;
    s.t = t0;
    s.N = rounds(t0);
    s.done = terminal_position(X0) || s.N == 0;
    return s;
}

StepRecord Game::toss(RandomStream& rng) const {
    const double u = rng.uniform();
    const double half = 0.5 * w_.alpha;
    if (u < half) return {Actor::PlayerI, u};
    if (u < w_.alpha) return {Actor::PlayerII, u};
    return {Actor::Noise, u};
}

StepRecord Game::step(GameState& s, const Strategy& sI, const Strategy& sII, RandomStream& rng,
                      std::optional<Actor> forced) const {
    if (s.done) throw GameStepError("step called on a terminal state");
    const double eps = config_.eps;
    const StepRecord r = forced ? StepRecord{*forced, std::numeric_limits<double>::quiet_NaN()} : toss(rng);
    Vec next;
    switch (r.actor) {
        case Actor::PlayerI: next = project_step(s.X, sI.chooser(s, rng), eps); break;
        case Actor::PlayerII: next = project_step(s.X, sII.chooser(s, rng), eps); break;
        case Actor::Noise: next = s.X + eps * rng.unit_ball(s.X.size()); break;
    }
    const double h = 0.5 * eps * eps;
    s.Y = s.Y + h * next;
    s.X = next;
    ++s.k;
    s.t = clock_time(s.t0, s.k, h);
    s.done = terminal_position(s.X) || s.k >= s.N;
    return r;
}

EpisodeResult Game::run_episode(const Vec& X0, const Vec& Y0, double t0, const Strategy& sI, const Strategy& sII,
                                RandomStream& rng, std::vector<EpisodeLogEntry>* log) const {
    GameState s = start(X0, Y0, t0);
    if (log) log->push_back({s.k, s.X, s.Y, s.t, std::nullopt});
    while (!s.done) {
        const StepRecord r = step(s, sI, sII, rng);
        if (log) log->push_back({s.k, s.X, s.Y, s.t, r});
    }
    return {s.k, s.X, s.Y, s.t, config_.payoff(GroupPoint(s.X, s.Y, s.t))};
}

std::pair<double, double> mean_and_se(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n == 0) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    // Shifted by the first sample: exact for constant data.
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = x[i] - x[0];
    const double shift = pairwise_sum(dev) / static_cast<double>(n);
    const double mean = x[0] + shift;
    if (n < 2) return {mean, std::numeric_limits<double>::quiet_NaN()};
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = (dev[i] - shift) * (dev[i] - shift);
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

ValueEstimate estimate_value(const Game& game, const Vec& X0, const Vec& Y0, double t0, const Strategy& sI,
                             const Strategy& sII) {
    const std::size_t n = game.config().episodes;
    if (n < 2) throw std::invalid_argument("estimate_value: need at least 2 episodes");
    std::vector<double> payoff(n);
    std::vector<std::size_t> tau(n);
    parallel_for(n, game.config().threads, [&](std::size_t i) {
        RandomStream rng(game.config().seed, i);
        const EpisodeResult r = game.run_episode(X0, Y0, t0, sI, sII, rng);
        payoff[i] = r.payoff;
        tau[i] = r.tau;
    });
    ValueEstimate out;
    std::tie(out.mean, out.se) = mean_and_se(payoff);
    out.n = n;
    out.tau_histogram.assign(game.rounds(t0) + 1, 0);
    for (std::size_t t : tau) ++out.tau_histogram[t];
    return out;
}

Strategy stay() {
    return {"stay", [](const GameState& s, RandomStream&) { return s.X; }};
}

Strategy pull_toward(Vec Z, double eps) {
    return {"pull_toward", [Z, eps](const GameState& s, RandomStream&) {
                const Vec d = s.X - Z;
                const double n = norm(d);
                if (n <= eps) return s.X;
                return s.X - (eps / n) * d;
            }};
}

Strategy push_away(Vec Z, double eps) {
    return {"push_away", [Z, eps](const GameState& s, RandomStream&) {
                Vec d = s.X - Z;
                double n = norm(d);
                if (n == 0.0) {
                    d = Vec(s.X.size());
                    d[0] = 1.0;
                    n = 1.0;
                }
                return s.X + (eps / n) * d;
            }};
}

Strategy random_strategy(double eps) {
    return {"random", [eps](const GameState& s, RandomStream& rng) { return s.X + eps * rng.unit_ball(s.X.size()); }};
}

Strategy greedy_from_grid(std::shared_ptr<const ValueGrid> grid, GreedyMode mode, double delta_snap, BallRule rule) {
    if (!(delta_snap > 0.0)) throw std::invalid_argument("greedy_from_grid: delta_snap must be positive");
    if (rule.size() == 0) throw std::invalid_argument("greedy_from_grid: empty sample set");
    const std::string name = mode == GreedyMode::Maximize ? "greedy_max" : "greedy_min";
    return {name, [grid = std::move(grid), mode, delta_snap, rule = std::move(rule)](const GameState& s,
                                                                                     RandomStream&) {
                const double eps = grid->eps();
                const double h = 0.5 * eps * eps;
                const std::size_t j = grid->slice_index(clock_time(s.t, 1, h));
                Vec Ys = s.Y;
                for (double& y : Ys) y = delta_snap * std::round(y / delta_snap);
                Vec best = s.X + eps * rule.points[0];
                double best_v = grid->evaluate(j, best, Ys + h * best);
                for (std::size_t i = 1; i < rule.size(); ++i) {
                    const Vec Xt = s.X + eps * rule.points[i];
                    const double v = grid->evaluate(j, Xt, Ys + h * Xt);
                    const bool better = mode == GreedyMode::Maximize ? v > best_v : v < best_v;
                    if (better) {
                        best_v = v;
                        best = Xt;
                    }
                }
                return best;
            }};
}

SupermartingaleReport supermartingale_diagnostic(const Game& game, const Vec& X0, const Vec& Y0, double t0,
                                                 const Vec& Z, const Strategy& opponent, std::size_t episodes,
                                                 std::optional<double> c, std::optional<double> c_y) {
    if (episodes < 2) throw std::invalid_argument("supermartingale_diagnostic: need at least 2 episodes");
    const GameConfig& cfg = game.config();
    const double eps = cfg.eps;
    const double md = static_cast<double>(X0.size());
    const double R = cfg.domain.radius_bound();
    SupermartingaleReport rep;
    rep.c = c.value_or(0.5 * game.weights().alpha + game.weights().beta * md / (md + 1.0));
    rep.c_y = c_y.value_or((R + eps + norm(Z)) / (2.0 * R));
    const Strategy pull = pull_toward(Z, eps);
    const std::size_t N = game.rounds(t0);
    const double h = 0.5 * eps * eps;

    // mx[k * episodes + i]: stopped process of episode i at round k.
    std::vector<double> mx((N + 1) * episodes), my((N + 1) * episodes);
    parallel_for(episodes, cfg.threads, [&](std::size_t i) {
        RandomStream rng(cfg.seed, i);
        std::vector<EpisodeLogEntry> log;
        game.run_episode(X0, Y0, t0, pull, opponent, rng, &log);
        for (std::size_t k = 0; k <= N; ++k) {
            const EpisodeLogEntry& e = log[std::min(k, log.size() - 1)];
            const double ks = static_cast<double>(e.k);
            mx[k * episodes + i] = norm(e.X - Z) - rep.c * ks * eps;
            my[k * episodes + i] = norm(e.Y - Y0 - (ks * h) * Z) - rep.c_y * ks * eps * eps * R;
        }
    });

    auto column = [&](const std::vector<double>& v, std::size_t k) {
        return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(k * episodes),
                                   v.begin() + static_cast<std::ptrdiff_t>((k + 1) * episodes));
    };
    auto diff = [&](const std::vector<double>& v, std::size_t k) {
        std::vector<double> d(episodes);
        for (std::size_t i = 0; i < episodes; ++i) d[i] = v[k * episodes + i] - v[(k - 1) * episodes + i];
        return d;
    };
    for (std::size_t k = 0; k <= N; ++k) {
        RoundStats st{};
        std::tie(st.mean_x, st.se_x) = mean_and_se(column(mx, k));
        std::tie(st.mean_y, st.se_y) = mean_and_se(column(my, k));
        if (k > 0) {
            std::tie(st.increment_x, st.increment_se_x) = mean_and_se(diff(mx, k));
            std::tie(st.increment_y, st.increment_se_y) = mean_and_se(diff(my, k));
            if (st.increment_x > 3.0 * st.increment_se_x + 1e-12) rep.flagged_x.push_back(k);
            if (st.increment_y > 3.0 * st.increment_se_y + 1e-12) rep.flagged_y.push_back(k);
        }
        rep.rounds.push_back(st);
    }
    return rep;
}

double one_round_value(const Game& game, const Vec& X0, const Vec& Y0, double t0, const Strategy& sI,
                       const Strategy& sII, const BallRule& rule) {
    const GameState s = game.start(X0, Y0, t0);
    if (s.done || s.N != 1) throw std::invalid_argument("one_round_value: needs an interior start with N(t0) = 1");
    const double eps = game.config().eps;
    const double h = 0.5 * eps * eps;
    const double t1 = clock_time(t0, 1, h);
    const BoundaryDatum& F = game.config().payoff;
    auto at = [&](const Vec& Xt) { return F(GroupPoint(Xt, Y0 + h * Xt, t1)); };
    RandomStream unused(0);
    const TugWeights& w = game.weights();
    double v = 0.0;
    if (w.alpha > 0.0) {
        v += 0.5 * w.alpha * at(project_step(X0, sI.chooser(s, unused), eps));
        v += 0.5 * w.alpha * at(project_step(X0, sII.chooser(s, unused), eps));
    }
    if (w.beta > 0.0) v += w.beta * ball_average(at, X0, eps, rule);
    return v;
}

}  // namespace kolmo
