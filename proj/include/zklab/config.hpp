#ifndef ZKLAB_CONFIG_HPP
#define ZKLAB_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "zklab/background.hpp"
#include "zklab/evolution.hpp"

namespace zklab {

enum class ScenarioKind {
    Conservation,
    Scaling,
    BonaSmith,
    BackgroundPerturbation,
    GrowthBound,
    BilinearProbe,
    StrichartzProbe,
    CommutatorProbe,
};

inline const std::vector<std::pair<std::string, ScenarioKind>>& scenario_names() {
    static const std::vector<std::pair<std::string, ScenarioKind>> names = {
        {"conservation", ScenarioKind::Conservation},
        {"scaling", ScenarioKind::Scaling},
        {"bona_smith", ScenarioKind::BonaSmith},
        {"background_perturbation", ScenarioKind::BackgroundPerturbation},
        {"growth_bound", ScenarioKind::GrowthBound},
        {"bilinear_probe", ScenarioKind::BilinearProbe},
        {"strichartz_probe", ScenarioKind::StrichartzProbe},
        {"commutator_probe", ScenarioKind::CommutatorProbe},
    };
    return names;
}

inline std::string kind_name(ScenarioKind k) {
    for (const auto& [n, v] : scenario_names())
        if (v == k) return n;
    return "?";
}

// Key-value config text with [section] headers, '#' comments. Values are
// kept as strings; typed access validates on read. Every key must be
// consumed by the schema or validation fails naming the stray field.
class ConfigFile {
  public:
    static ConfigFile parse_text(const std::string& text) {
        ConfigFile cf;
        cf.raw_ = text;
        std::istringstream in(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw config_error("config line " + std::to_string(lineno) +
                                       ": malformed section header");
                section = trim(line.substr(1, line.size() - 2));
                if (section.empty())
                    throw config_error("config line " + std::to_string(lineno) + ": empty section");
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw config_error("config line " + std::to_string(lineno) +
                                   ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw config_error("config line " + std::to_string(lineno) +
                                                ": empty key");
            const std::string full = section.empty() ? key : section + "." + key;
            if (cf.values_.count(full))
                throw config_error("config: duplicate key '" + full + "'");
            cf.values_[full] = value;
        }
        return cf;
    }

    static ConfigFile parse_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw config_error("config: cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_text(ss.str());
    }

    const std::string& raw_text() const { return raw_; }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw config_error("config: missing required key '" + key + "'");
        consumed_.insert(key);
        return it->second;
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        return has(key) ? get_string(key) : fallback;
    }

    double get_double(const std::string& key) const { return to_double(key, get_string(key)); }
    double get_double(const std::string& key, double fallback) const {
        return has(key) ? get_double(key) : fallback;
    }

    long get_long(const std::string& key) const {
        const std::string s = get_string(key);
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(s, &pos);
        } catch (...) {
            throw config_error("config: key '" + key + "' is not an integer: '" + s + "'");
        }
        if (pos != s.size())
            throw config_error("config: key '" + key + "' is not an integer: '" + s + "'");
        return v;
    }
    long get_long(const std::string& key, long fallback) const {
        return has(key) ? get_long(key) : fallback;
    }

    bool get_bool(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const std::string s = get_string(key);
        if (s == "true" || s == "1") return true;
        if (s == "false" || s == "0") return false;
        throw config_error("config: key '" + key + "' is not a boolean: '" + s + "'");
    }

    std::vector<double> get_double_list(const std::string& key) const {
        std::vector<double> out;
        std::istringstream in(get_string(key));
        std::string tok;
        while (std::getline(in, tok, ',')) out.push_back(to_double(key, trim(tok)));
        if (out.empty()) throw config_error("config: key '" + key + "' is an empty list");
        return out;
    }

    std::uint64_t get_dyadic(const std::string& key) const {
        const long v = get_long(key);
        if (v < 1 || (v & (v - 1)) != 0)
            throw config_error("config: key '" + key + "' must be a power of two, got " +
                               std::to_string(v));
        return static_cast<std::uint64_t>(v);
    }

    std::vector<std::string> keys_with_prefix(const std::string& prefix) const {
        std::vector<std::string> out;
        for (const auto& [k, v] : values_)
            if (k.rfind(prefix, 0) == 0) out.push_back(k);
        return out;
    }

    // every key must have been read by the schema walk
    void check_all_consumed() const {
        for (const auto& [k, v] : values_)
            if (!consumed_.count(k))
                throw config_error("config: unknown key '" + k + "'");
    }

  private:
    static std::string trim(const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return (a == std::string::npos) ? "" : s.substr(a, b - a + 1);
    }
    static double to_double(const std::string& key, const std::string& s) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(s, &pos);
        } catch (...) {
            throw config_error("config: key '" + key + "' is not a number: '" + s + "'");
        }
        if (pos != s.size())
            throw config_error("config: key '" + key + "' is not a number: '" + s + "'");
        return v;
    }

    std::string raw_;
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> consumed_;
};

// Fully validated scenario description.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::Conservation;
    std::uint64_t seed = 0;
    Grid2 grid;
    Background background;
    SolverConfig solver;
    std::string output_path;
    ConfigFile file; // typed access to scenario-specific params

    static ScenarioConfig load(const std::string& path) {
        return from_config(ConfigFile::parse_file(path));
    }

    static ScenarioConfig from_config(const ConfigFile& cf) {
        ScenarioConfig sc;
        sc.file = cf;

        const std::string kind = cf.get_string("scenario.kind");
        bool found = false;
        for (const auto& [n, v] : scenario_names())
            if (n == kind) {
                sc.kind = v;
                found = true;
            }
        if (!found) throw config_error("config: unknown scenario.kind '" + kind + "'");
        sc.seed = static_cast<std::uint64_t>(cf.get_long("scenario.seed", 0));

        // background first: cnoidal boxes may be given in period counts
        const std::string family = cf.get_string("background.family", "zero");
        if (family == "zero") {
            sc.background = Background::zero();
        } else if (family == "line_soliton") {
            sc.background = Background::line_soliton(cf.get_double("background.c"));
        } else if (family == "cnoidal") {
            sc.background =
                Background::cnoidal(cf.get_double("background.alpha", 0.0),
                                    cf.get_double("background.gamma"),
                                    cf.get_double("background.kappa"));
        } else if (family == "tanh_kink") {
            sc.background = Background::tanh_kink(cf.get_double("background.a"),
                                                  cf.get_double("background.b"));
        } else {
            throw config_error("config: unknown background.family '" + family + "'");
        }

        const bool needs_grid = sc.kind != ScenarioKind::BilinearProbe &&
                                sc.kind != ScenarioKind::StrichartzProbe;
        if (needs_grid || cf.has("grid.nx")) {
            const int nx = static_cast<int>(cf.get_long("grid.nx"));
            const int ny = static_cast<int>(cf.get_long("grid.ny"));
            double lx;
            if (cf.has("grid.lx_periods")) {
                if (sc.background.family != BackgroundFamily::Cnoidal)
                    throw config_error("config: grid.lx_periods requires a cnoidal background");
                lx = cf.get_double("grid.lx_periods") * sc.background.cnoidal_box_quantum();
            } else {
                lx = cf.get_double("grid.lx");
            }
            const double ly = cf.get_double("grid.ly");
            sc.grid = Grid2(nx, ny, lx, ly);
            validate_background_grid(sc.background, sc.grid);
        }

        if (cf.has("solver.dt") || needs_grid_solver(sc.kind)) {
            sc.solver.dt = cf.get_double("solver.dt", 1e-3);
            sc.solver.T = cf.get_double("solver.T", 1.0);
            const std::string scheme = cf.get_string("solver.scheme", "etdrk4");
            if (scheme == "etdrk4")
                sc.solver.scheme = Scheme::Etdrk4;
            else if (scheme == "lawson_rk4")
                sc.solver.scheme = Scheme::LawsonRk4;
            else if (scheme == "strang")
                sc.solver.scheme = Scheme::Strang;
            else
                throw config_error("config: unknown solver.scheme '" + scheme + "'");
            sc.solver.dealias = cf.get_bool("solver.dealias", true);
            sc.solver.record_every = static_cast<int>(cf.get_long("solver.record_every", 1));
            sc.solver.validate();
        }

        sc.output_path = cf.get_string("output.path", "");
        return sc;
    }

  private:
    static bool needs_grid_solver(ScenarioKind k) {
        switch (k) {
            case ScenarioKind::Conservation:
            case ScenarioKind::Scaling:
            case ScenarioKind::BonaSmith:
            case ScenarioKind::BackgroundPerturbation:
            case ScenarioKind::GrowthBound: return true;
            default: return false;
        }
    }
};

} // namespace zklab

#endif
