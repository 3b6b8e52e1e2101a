#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kolmo/domain.hpp"
#include "kolmo/operators.hpp"
#include "kolmo/quadrature.hpp"
#include "kolmo/value_grid.hpp"

namespace kolmo {

struct GameState {
    std::size_t k = 0;
    Vec X;
    Vec Y;
    double t = 0.0;
    /// Round cap N(t0) and the starting time.
    std::size_t N = 0;
    double t0 = 0.0;
    bool done = false;
};

enum class Actor { PlayerI, PlayerII, Noise };

std::string to_string(Actor a);

/// Maps the current state to a target within the closed eps-ball around X.
/// Strategies also see the round's time and a random stream; the deterministic
/// ones ignore both.
struct Strategy {
    std::string name;
    std::function<Vec(const GameState&, RandomStream&)> chooser;
};

struct GameConfig {
    SpatialDomain domain = SpatialDomain::box(Vec{-1.0}, Vec{1.0});
    double T = 0.5;
    double p = 3.0;
    double eps = 0.1;
    BoundaryDatum payoff = constant_datum(0.0);
    std::uint64_t seed = 1;
    std::size_t episodes = 1000;
    std::size_t threads = 0;

    void validate() const;
};

class GameStepError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct StepRecord {
    Actor actor;
    double coin;  // the uniform draw deciding the actor
};

struct EpisodeLogEntry {
    std::size_t k;
    Vec X;
    Vec Y;
    double t;
    std::optional<StepRecord> step;  // empty for the starting position
};

struct EpisodeResult {
    std::size_t tau;
    Vec X;
    Vec Y;
    double t;
    double payoff;
};

/// Tug-of-war with noise on U_X x R^m with the eps^2/2 backward clock.
class Game {
public:
    explicit Game(GameConfig config);

    [[nodiscard]] const GameConfig& config() const { return config_; }
    [[nodiscard]] const TugWeights& weights() const { return w_; }

    /// Initial state at (X0, Y0, t0); terminal at once if X0 is outside U_X or N(t0) = 0.
    [[nodiscard]] GameState start(const Vec& X0, const Vec& Y0, double t0) const;
    [[nodiscard]] std::size_t rounds(double t0) const { return time_ladder(t0, config_.eps).N; }

    /// Coin: Player I with probability alpha/2, Player II with alpha/2, noise with beta.
    [[nodiscard]] StepRecord toss(RandomStream& rng) const;

    /// One round. Only the winning player's strategy is evaluated. `forced`
    /// rigs the coin. Throws GameStepError on a terminal state.
    StepRecord step(GameState& s, const Strategy& sI, const Strategy& sII, RandomStream& rng,
                    std::optional<Actor> forced = std::nullopt) const;

    EpisodeResult run_episode(const Vec& X0, const Vec& Y0, double t0, const Strategy& sI, const Strategy& sII,
                              RandomStream& rng, std::vector<EpisodeLogEntry>* log = nullptr) const;

    [[nodiscard]] bool terminal_position(const Vec& X) const { return !config_.domain.contains(X); }

private:
    GameConfig config_;
    TugWeights w_;
};

struct ValueEstimate {
    double mean = 0.0;
    double se = 0.0;
    std::size_t n = 0;
    /// tau_histogram[k] = number of episodes that stopped after k rounds.
    std::vector<std::size_t> tau_histogram;
};

/// Monte Carlo estimate over config.episodes episodes; episode i uses
/// RandomStream(seed, i), so the result does not depend on the thread count.
ValueEstimate estimate_value(const Game& game, const Vec& X0, const Vec& Y0, double t0, const Strategy& sI,
                             const Strategy& sII);

/// Sample mean and standard error with pairwise summation.
std::pair<double, double> mean_and_se(const std::vector<double>& x);

Strategy stay();
/// X - eps (X - Z)/|X - Z|; stays put when |X - Z| <= eps.
Strategy pull_toward(Vec Z, double eps);
/// X + eps (X - Z)/|X - Z| (first axis when X = Z).
Strategy push_away(Vec Z, double eps);
/// Uniform target in the eps-ball.
Strategy random_strategy(double eps);

enum class GreedyMode { Maximize, Minimize };

/// Snaps Y to delta Z^m, scans the rule points of B_eps(X) and returns the
/// first arg-extremum of u(X~, Y_snap + eps^2 X~/2) on the slice at t - eps^2/2.
Strategy greedy_from_grid(std::shared_ptr<const ValueGrid> grid, GreedyMode mode, double delta_snap,
                          BallRule rule);

struct RoundStats {
    double mean_x;
    double se_x;
    double mean_y;
    double se_y;
    double increment_x;  // mean of M^X_k - M^X_{k-1}
    double increment_se_x;
    double increment_y;
    double increment_se_y;
};

struct SupermartingaleReport {
    double c;
    double c_y;
    std::vector<RoundStats> rounds;  // k = 0..N
    std::vector<std::size_t> flagged_x;
    std::vector<std::size_t> flagged_y;
};

/// Player I pulls toward Z. Tracks the stopped processes
///   M^X_k = |X_k - Z| - c k eps,  M^Y_k = |Y_k - Y0 - k eps^2 Z/2| - c_Y k eps^2 R
/// and flags rounds whose mean increment exceeds 3 SE. Defaults:
/// c = alpha/2 + beta m/(m+1), c_Y = (R + eps + |Z|)/(2R).
SupermartingaleReport supermartingale_diagnostic(const Game& game, const Vec& X0, const Vec& Y0, double t0,
                                                 const Vec& Z, const Strategy& opponent, std::size_t episodes,
                                                 std::optional<double> c = std::nullopt,
                                                 std::optional<double> c_y = std::nullopt);

/// Closed-form one-round value: (alpha/2)(F at sI target + F at sII target)
/// + beta (ball average of F), the average by quadrature. Requires N(t0) = 1
/// and deterministic strategies.
double one_round_value(const Game& game, const Vec& X0, const Vec& Y0, double t0, const Strategy& sI,
                       const Strategy& sII, const BallRule& rule);

}  // namespace kolmo
