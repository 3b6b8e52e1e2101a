#include "kolmo/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace kolmo {

ConfigError::ConfigError(std::string f, const std::string& reason)
    : std::runtime_error(f.empty() ? reason : f + ": " + reason), field(std::move(f)) {}

std::optional<std::string> ConfigSection::get(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return v;
    return std::nullopt;
}

void ConfigSection::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries)
        if (k == key) {
            v = value;
            return;
        }
    entries.emplace_back(key, value);
}

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> c{"mv-check", "solve", "play", "sweep", "cross-validate"};
    return c;
}

namespace {

const std::vector<std::string> kCommon{"m", "p", "T", "domain", "threads", "output"};
const std::vector<std::string> kQuadrature{"profile",   "variants",   "point",      "epsilons",   "quadrature",
                                           "x_radial",  "x_angular",  "qmc_points", "y_radial",   "y_angular",
                                           "time_nodes", "refine",    "quadrature_seed", "max_rel_error"};
const std::vector<std::string> kBoundary{"boundary", "boundary_params", "boundary_table", "boundary_lipschitz"};
const std::vector<std::string> kGrid{"hX", "hY", "h_ratio", "ball_samples", "y_seed"};
const std::vector<std::string> kGame{"seed", "episodes", "starts", "player_I", "player_II", "pull_target",
                                     "log_episodes"};

std::vector<std::string> concat(std::initializer_list<const std::vector<std::string>*> parts,
                                std::initializer_list<std::string> extra = {}) {
    std::vector<std::string> out;
    for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string collapse(const std::string& s) {
    std::istringstream is(s);
    std::string tok, out;
    while (is >> tok) {
        if (!out.empty()) out += ' ';
        out += tok;
    }
    return out;
}

}  // namespace

const std::vector<std::string>& allowed_keys(const std::string& command) {
    static const std::map<std::string, std::vector<std::string>> table{
        {"mv-check", concat({&kCommon, &kQuadrature})},
        {"solve", concat({&kCommon, &kBoundary, &kGrid},
                         {"epsilon", "grid_format", "fixed_point_check", "max_error"})},
        {"play", concat({&kCommon, &kBoundary, &kGrid, &kGame}, {"epsilon"})},
        {"sweep", concat({&kCommon, &kBoundary, &kGrid},
                         {"epsilons", "compact_x", "compact_y", "compact_t", "require_decreasing"})},
        {"cross-validate", concat({&kCommon, &kBoundary, &kGrid, &kGame},
                                  {"epsilon", "adversarial_check", "require_agreement"})},
    };
    const auto it = table.find(command);
    if (it == table.end()) throw ConfigError("", "unknown command '" + command + "'");
    return it->second;
}

ConfigFile parse_config(const std::string& text) {
    ConfigFile cfg;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("", where + ": unterminated section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            const auto& cmds = known_commands();
            if (std::find(cmds.begin(), cmds.end(), name) == cmds.end())
                throw ConfigError("", where + ": unknown section [" + name + "]");
            cfg.sections.push_back({name, {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("", where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = collapse(line.substr(eq + 1));
        if (cfg.sections.empty()) throw ConfigError(key, where + ": key outside any [section]");
        ConfigSection& sec = cfg.sections.back();
        const auto& keys = allowed_keys(sec.command);
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ConfigError(key, where + ": unknown key for [" + sec.command + "]");
        if (sec.get(key)) throw ConfigError(key, where + ": duplicate key");
        sec.entries.emplace_back(key, value);
    }
    return cfg;
}

std::string serialize_config(const ConfigFile& cfg) {
    std::ostringstream os;
    for (std::size_t i = 0; i < cfg.sections.size(); ++i) {
        const ConfigSection& sec = cfg.sections[i];
        if (i) os << '\n';
        os << '[' << sec.command << "]\n";
        for (const std::string& key : allowed_keys(sec.command))
            if (const auto v = sec.get(key)) os << key << " = " << collapse(*v) << '\n';
    }
    return os.str();
}

namespace {

double to_double(const std::string& field, const std::string& s) {
    if (s == "inf" || s == "infinity") return INFINITY;
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError(field, "'" + s + "' is not a finite number");
    return v;
}

std::uint64_t to_u64(const std::string& field, const std::string& s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty())
        throw ConfigError(field, "'" + s + "' is not a non-negative integer");
    return v;
}

bool to_bool(const std::string& field, const std::string& s) {
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    throw ConfigError(field, "'" + s + "' is not a boolean");
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

std::vector<double> to_list(const std::string& field, const std::string& s) {
    std::vector<double> out;
    for (const auto& w : words(s)) {
        const double v = to_double(field, w);
        if (std::isinf(v)) throw ConfigError(field, "infinite entry");
        out.push_back(v);
    }
    return out;
}

double positive(const std::string& field, double v) {
    if (!(v > 0.0)) throw ConfigError(field, "must be positive");
    return v;
}

std::vector<double> interval(const std::string& field, const std::string& s) {
    auto v = to_list(field, s);
    if (v.size() != 2 || !(v[0] <= v[1])) throw ConfigError(field, "expected 'lo hi' with lo <= hi");
    return v;
}

void apply_command_defaults(ExperimentConfig& e) {
    if (e.command == "sweep") {
        e.boundary = "quadratic_p";
        e.epsilons = {0.4, 0.2, 0.1};
    } else if (e.command == "cross-validate") {
        e.epsilon = 0.2;
        e.player_I = "greedy_max";
        e.player_II = "greedy_min";
    } else if (e.command == "play") {
        e.epsilon = 0.2;
    }
    e.output = e.command;
}

}  // namespace

ExperimentConfig to_experiment(const ConfigSection& section) {
    ExperimentConfig e;
    e.command = section.command;
    allowed_keys(e.command);
    apply_command_defaults(e);

    for (const auto& [key, value] : section.entries) {
        const std::string& k = key;
        const std::string& v = value;
        if (k == "m") {
            e.m = to_u64(k, v);
            if (e.m < 1 || e.m > 4) throw ConfigError(k, "must lie in 1..4");
        } else if (k == "p") {
            e.p = to_double(k, v);
            if (!(e.p > 1.0)) throw ConfigError(k, "must lie in (1, inf]");
        } else if (k == "T") {
            e.T = positive(k, to_double(k, v));
        } else if (k == "domain") {
            e.domain = v;
        } else if (k == "threads") {
            e.threads = to_u64(k, v);
        } else if (k == "output") {
            if (v.empty() || v.find('/') != std::string::npos) throw ConfigError(k, "must be a plain file stem");
            e.output = v;
        } else if (k == "profile") {
            e.profile = v;
        } else if (k == "variants") {
            e.variants = words(v);
            if (e.variants.empty()) throw ConfigError(k, "empty list");
        } else if (k == "point") {
            e.point = to_list(k, v);
        } else if (k == "epsilons") {
            e.epsilons = to_list(k, v);
        } else if (k == "quadrature") {
            if (v != "tensor" && v != "quasi-random") throw ConfigError(k, "expected tensor or quasi-random");
            e.quadrature = v;
        } else if (k == "x_radial") {
            e.x_radial = to_u64(k, v);
        } else if (k == "x_angular") {
            e.x_angular = to_u64(k, v);
        } else if (k == "qmc_points") {
            e.qmc_points = to_u64(k, v);
        } else if (k == "y_radial") {
            e.y_radial = to_u64(k, v);
        } else if (k == "y_angular") {
            e.y_angular = to_u64(k, v);
        } else if (k == "time_nodes") {
            e.time_nodes = to_u64(k, v);
        } else if (k == "refine") {
            e.refine = to_bool(k, v);
        } else if (k == "quadrature_seed") {
            e.quadrature_seed = to_u64(k, v);
        } else if (k == "max_rel_error") {
            e.max_rel_error = positive(k, to_double(k, v));
        } else if (k == "epsilon") {
            e.epsilon = positive(k, to_double(k, v));
        } else if (k == "boundary") {
            e.boundary = v;
        } else if (k == "boundary_params") {
            e.boundary_params = to_list(k, v);
        } else if (k == "boundary_table") {
            e.boundary_table = v;
        } else if (k == "boundary_lipschitz") {
            e.boundary_lipschitz = positive(k, to_double(k, v));
        } else if (k == "hX") {
            e.hX = positive(k, to_double(k, v));
        } else if (k == "hY") {
            e.hY = positive(k, to_double(k, v));
        } else if (k == "h_ratio") {
            e.h_ratio = to_double(k, v);
            if (!(e.h_ratio >= 8.0)) throw ConfigError(k, "must be >= 8 (hX <= eps/8)");
        } else if (k == "ball_samples") {
            e.ball_samples = to_u64(k, v);
        } else if (k == "y_seed") {
            e.y_seed = interval(k, v);
        } else if (k == "grid_format") {
            if (v != "binary" && v != "csv" && v != "both" && v != "none")
                throw ConfigError(k, "expected binary, csv, both or none");
            e.grid_format = v;
        } else if (k == "fixed_point_check") {
            e.fixed_point_check = to_bool(k, v);
        } else if (k == "max_error") {
            e.max_error = positive(k, to_double(k, v));
        } else if (k == "seed") {
            e.seed = to_u64(k, v);
        } else if (k == "episodes") {
            e.episodes = to_u64(k, v);
            if (e.episodes < 2) throw ConfigError(k, "need at least 2 episodes");
        } else if (k == "starts") {
            e.starts.clear();
            std::istringstream is(v);
            std::string group;
            while (std::getline(is, group, ';')) {
                if (trim(group).empty()) continue;
                e.starts.push_back(to_list(k, group));
            }
        } else if (k == "player_I") {
            e.player_I = v;
        } else if (k == "player_II") {
            e.player_II = v;
        } else if (k == "pull_target") {
            e.pull_target = to_list(k, v);
        } else if (k == "log_episodes") {
            e.log_episodes = to_u64(k, v);
        } else if (k == "adversarial_check") {
            e.adversarial_check = to_bool(k, v);
        } else if (k == "require_agreement") {
            e.require_agreement = to_bool(k, v);
        } else if (k == "compact_x") {
            e.compact_x = interval(k, v);
        } else if (k == "compact_y") {
            e.compact_y = interval(k, v);
        } else if (k == "compact_t") {
            e.compact_t = interval(k, v);
        } else if (k == "require_decreasing") {
            e.require_decreasing = to_bool(k, v);
        } else {
            throw ConfigError(k, "unknown key");
        }
    }

    const std::size_t m = e.m;
    if (e.command == "mv-check") {
        if (e.point.size() != 2 * m + 1) throw ConfigError("point", "expected 2m+1 numbers (X, Y, t)");
        if (e.epsilons.size() < 3) throw ConfigError("epsilons", "need at least 3 entries");
        for (std::size_t i = 0; i < e.epsilons.size(); ++i) {
            positive("epsilons", e.epsilons[i]);
            if (i > 0 && e.epsilons[i] > 0.5 * e.epsilons[i - 1])
                throw ConfigError("epsilons", "each entry must be at most half the previous");
        }
    } else {
        if (!(e.p >= 2.0)) throw ConfigError("p", "solver and game require p >= 2");
    }
    if (e.command == "sweep") {
        if (e.epsilons.size() < 2) throw ConfigError("epsilons", "need at least 2 entries");
        for (std::size_t i = 0; i < e.epsilons.size(); ++i) {
            positive("epsilons", e.epsilons[i]);
            if (i > 0 && !(e.epsilons[i] < e.epsilons[i - 1])) throw ConfigError("epsilons", "must be decreasing");
        }
        if (e.hX || e.hY) throw ConfigError(e.hX ? "hX" : "hY", "sweep uses h_ratio, not fixed spacings");
    }
    if (e.command == "play" || e.command == "cross-validate") {
        if (!e.seed) throw ConfigError("seed", "mandatory for " + e.command + " (set it or pass --seed)");
        if (e.starts.empty()) {
            std::vector<double> s(2 * m + 1, 0.0);
            s[2 * m] = e.T;
            e.starts.push_back(s);
        }
        for (const auto& s : e.starts)
            if (s.size() != 2 * m + 1) throw ConfigError("starts", "each start needs 2m+1 numbers (X, Y, t)");
        if (!e.pull_target.empty() && e.pull_target.size() != m) throw ConfigError("pull_target", "expected m numbers");
    }
    if (e.command != "mv-check" && e.command != "sweep") {
        const double eps = e.epsilon;
        if (e.grid_hX(eps) > eps / 8.0 * (1.0 + 1e-12)) throw ConfigError("hX", "must not exceed epsilon/8");
    }
    return e;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace kolmo
