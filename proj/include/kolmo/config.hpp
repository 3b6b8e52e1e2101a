#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kolmo {

/// Invalid configuration; `field` names the offending key ("" for syntax errors).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& reason);
    std::string field;
};

/// One `[command]` block of key = value lines, in file order.
struct ConfigSection {
    std::string command;
    std::vector<std::pair<std::string, std::string>> entries;

    [[nodiscard]] std::optional<std::string> get(const std::string& key) const;
    void set(const std::string& key, const std::string& value);
};

struct ConfigFile {
    std::vector<ConfigSection> sections;
};

const std::vector<std::string>& known_commands();
/// Keys accepted in a section for `command`, in canonical order.
const std::vector<std::string>& allowed_keys(const std::string& command);

/// '#' starts a comment; blank lines are ignored. Rejects unknown sections and
/// keys, duplicates and keys outside a section.
ConfigFile parse_config(const std::string& text);

/// Canonical text: sections in order, keys in canonical order, values with
/// whitespace collapsed. serialize(parse(serialize(parse(t)))) == serialize(parse(t)).
std::string serialize_config(const ConfigFile& cfg);

/// Typed, validated view of one section. Every field has a default except
/// `seed`, which play and cross-validate require.
struct ExperimentConfig {
    std::string command;
    std::size_t m = 1;
    double p = 3.0;
    double T = 0.5;
    std::string domain = "box -1 1";
    std::size_t threads = 0;
    std::string output;

    // Mean-value checks.
    std::string profile = "x2";
    std::vector<std::string> variants{"V1", "V2", "V3", "V4"};
    std::vector<double> point{0.5, 0.3, 0.7};
    std::vector<double> epsilons{0.2, 0.1, 0.05};
    std::string quadrature = "tensor";
    std::size_t x_radial = 16;
    std::size_t x_angular = 32;
    std::size_t qmc_points = 512;
    std::size_t y_radial = 8;
    std::size_t y_angular = 8;
    std::size_t time_nodes = 8;
    bool refine = true;
    std::uint64_t quadrature_seed = 0;
    std::optional<double> max_rel_error;

    // Solver.
    double epsilon = 0.1;
    std::string boundary = "y_plus_tx";
    std::vector<double> boundary_params;
    std::string boundary_table;
    double boundary_lipschitz = 1.0;
    std::optional<double> hX;
    std::optional<double> hY;
    double h_ratio = 8.0;
    std::size_t ball_samples = 0;
    std::vector<double> y_seed{-0.5, 0.5};
    std::string grid_format = "binary";
    bool fixed_point_check = false;
    std::optional<double> max_error;

    // Games.
    std::optional<std::uint64_t> seed;
    std::size_t episodes = 10000;
    std::vector<std::vector<double>> starts;
    std::string player_I = "pull_toward";
    std::string player_II = "random";
    std::vector<double> pull_target;
    std::size_t log_episodes = 0;
    bool adversarial_check = true;
    bool require_agreement = true;

    // Sweeps.
    std::vector<double> compact_x{-0.5, 0.5};
    std::vector<double> compact_y{-0.5, 0.5};
    std::vector<double> compact_t{0.1, 0.4};
    bool require_decreasing = true;

    [[nodiscard]] double grid_hX(double eps) const { return hX.value_or(eps / h_ratio); }
    [[nodiscard]] double grid_hY(double eps) const { return hY.value_or(eps / h_ratio); }
};

/// Applies command defaults, then the section's entries. Throws ConfigError.
ExperimentConfig to_experiment(const ConfigSection& section);

std::string read_text_file(const std::string& path);

}  // namespace kolmo
