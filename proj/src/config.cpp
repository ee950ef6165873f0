#include "taskmech/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace taskmech {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError("config error at " + where + ": " + what);
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) fail(where + "/" + key, "unknown key");
}

double get_number(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) fail(where, "missing required key '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(where + "/" + key, "expected a number");
    return v.get<double>();
}

double get_number_or(const json& obj, const std::string& where, const std::string& key,
                     double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(where + "/" + key, "expected a number");
    return v.get<double>();
}

int get_int_or(const json& obj, const std::string& where, const std::string& key,
               int fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) fail(where + "/" + key, "expected an integer");
    return v.get<int>();
}

std::vector<double> get_number_array(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) fail(where, "expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

}  // namespace

TypeDistribution ProblemConfig::make_distribution() const {
    if (distribution.kind == TypeDistribution::Kind::Uniform)
        return make_uniform(distribution.lo, distribution.hi);
    return make_custom(distribution.lo, distribution.hi, distribution.density,
                       distribution.cdf);
}

Models ProblemConfig::make_models() const {
    return Models{SatisfactionModel(z1, z2), RevenueModel(q1), MarketParams(p)};
}

ProblemConfig parse_problem_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("/", "top level must be an object");
    require_keys(doc, "", {"distribution", "satisfaction", "revenue", "market", "solver",
                           "verify", "output_dir", "snapshot_iters"});

    ProblemConfig cfg;

    // distribution
    if (!doc.contains("distribution")) fail("/", "missing required key 'distribution'");
    {
        const auto& d = doc.at("distribution");
        if (!d.is_object()) fail("/distribution", "expected an object");
        require_keys(d, "/distribution", {"kind", "lo", "hi", "density", "cdf"});
        std::string kind = d.contains("kind") ? d.at("kind").get<std::string>() : "uniform";
        cfg.distribution.lo = get_number(d, "/distribution", "lo");
        cfg.distribution.hi = get_number(d, "/distribution", "hi");
        if (kind == "uniform") {
            cfg.distribution.kind = TypeDistribution::Kind::Uniform;
            if (d.contains("density") || d.contains("cdf"))
                fail("/distribution", "uniform kind takes no tabulated values");
        } else if (kind == "custom") {
            cfg.distribution.kind = TypeDistribution::Kind::Custom;
            if (!d.contains("density")) fail("/distribution", "custom kind needs 'density'");
            cfg.distribution.density =
                get_number_array(d.at("density"), "/distribution/density");
            if (d.contains("cdf"))
                cfg.distribution.cdf = get_number_array(d.at("cdf"), "/distribution/cdf");
        } else {
            fail("/distribution/kind", "must be 'uniform' or 'custom'");
        }
        if (cfg.distribution.lo <= 0.0) fail("/distribution/lo", "type support must be positive");
        if (cfg.distribution.hi <= cfg.distribution.lo)
            fail("/distribution/hi", "must exceed lo");
    }

    // satisfaction
    if (!doc.contains("satisfaction")) fail("/", "missing required key 'satisfaction'");
    {
        const auto& s = doc.at("satisfaction");
        require_keys(s, "/satisfaction", {"z1", "z2"});
        cfg.z1 = get_number(s, "/satisfaction", "z1");
        cfg.z2 = get_number_or(s, "/satisfaction", "z2", 1.0);
        if (cfg.z1 <= 0.0 || cfg.z1 >= 1.0) fail("/satisfaction/z1", "must lie in (0, 1)");
        if (cfg.z2 <= 0.0) fail("/satisfaction/z2", "must be positive");
    }

    // revenue
    if (!doc.contains("revenue")) fail("/", "missing required key 'revenue'");
    {
        const auto& r = doc.at("revenue");
        require_keys(r, "/revenue", {"q1"});
        cfg.q1 = get_number(r, "/revenue", "q1");
        if (cfg.q1 <= 0.0 || cfg.q1 >= 1.0) fail("/revenue/q1", "must lie in (0, 1)");
    }

    // market
    if (!doc.contains("market")) fail("/", "missing required key 'market'");
    {
        const auto& m = doc.at("market");
        require_keys(m, "/market", {"p"});
        cfg.p = get_number(m, "/market", "p");
        if (cfg.p <= 0.0) fail("/market/p", "marginal cost must be positive");
    }

    // solver
    if (!doc.contains("solver")) fail("/", "missing required key 'solver'");
    {
        const auto& s = doc.at("solver");
        require_keys(s, "/solver",
                     {"alpha0", "search_interval", "u_bar", "u_init", "gamma0",
                      "gamma_schedule", "max_iters", "tol_u", "n_grid"});

        if (!s.contains("alpha0")) fail("/solver", "missing required key 'alpha0'");
        const auto& a0 = s.at("alpha0");
        if (a0.is_string()) {
            if (a0.get<std::string>() != "search")
                fail("/solver/alpha0", "must be a number or \"search\"");
            cfg.alpha0_search = true;
        } else if (a0.is_number()) {
            cfg.solver.alpha0 = a0.get<double>();
            if (cfg.solver.alpha0 < 0.0 || cfg.solver.alpha0 >= cfg.p)
                fail("/solver/alpha0", "must lie in [0, p)");
        } else {
            fail("/solver/alpha0", "must be a number or \"search\"");
        }

        if (s.contains("search_interval")) {
            cfg.search_interval =
                get_number_array(s.at("search_interval"), "/solver/search_interval");
            if (cfg.search_interval.size() != 2)
                fail("/solver/search_interval", "expected [lo, hi]");
            if (cfg.search_interval[0] < 0.0 ||
                cfg.search_interval[1] < cfg.search_interval[0] ||
                cfg.search_interval[1] >= cfg.p)
                fail("/solver/search_interval", "must lie inside [0, p)");
        } else {
            cfg.search_interval = {0.0, 0.9 * cfg.p};
        }

        if (s.contains("u_bar")) {
            const auto& ub = s.at("u_bar");
            if (ub.is_string()) {
                if (ub.get<std::string>() != "auto")
                    fail("/solver/u_bar", "must be a positive number or \"auto\"");
            } else if (ub.is_number()) {
                const double v = ub.get<double>();
                if (v <= 0.0) fail("/solver/u_bar", "must be positive");
                cfg.solver.u_bar = v;
            } else {
                fail("/solver/u_bar", "must be a positive number or \"auto\"");
            }
        }

        if (s.contains("u_init")) {
            const auto& ui = s.at("u_init");
            if (ui.is_number()) {
                cfg.solver.u_init_scalar = ui.get<double>();
                if (cfg.solver.u_init_scalar < 0.0)
                    fail("/solver/u_init", "must be nonnegative");
            } else if (ui.is_array()) {
                cfg.solver.u_init = get_number_array(ui, "/solver/u_init");
            } else {
                fail("/solver/u_init", "must be a number or an array");
            }
        }

        cfg.solver.gamma0 = get_number_or(s, "/solver", "gamma0", 0.01);
        if (cfg.solver.gamma0 <= 0.0) fail("/solver/gamma0", "must be positive");

        if (s.contains("gamma_schedule")) {
            const std::string gs = s.at("gamma_schedule").get<std::string>();
            if (gs == "constant")
                cfg.solver.gamma_schedule = GammaSchedule::Constant;
            else if (gs == "diminishing")
                cfg.solver.gamma_schedule = GammaSchedule::Diminishing;
            else
                fail("/solver/gamma_schedule", "must be 'constant' or 'diminishing'");
        }

        cfg.solver.max_iters = get_int_or(s, "/solver", "max_iters", 1000);
        if (cfg.solver.max_iters < 1) fail("/solver/max_iters", "must be at least 1");
        cfg.solver.tol_u = get_number_or(s, "/solver", "tol_u", 1e-5);
        if (cfg.solver.tol_u <= 0.0) fail("/solver/tol_u", "must be positive");
        cfg.solver.n_grid = get_int_or(s, "/solver", "n_grid", 201);
        if (cfg.solver.n_grid < 3) fail("/solver/n_grid", "must be at least 3");
        if (!cfg.solver.u_init.empty() &&
            cfg.solver.u_init.size() != static_cast<std::size_t>(cfg.solver.n_grid))
            fail("/solver/u_init", "array length must equal n_grid");
    }

    // verify thresholds
    if (doc.contains("verify")) {
        const auto& v = doc.at("verify");
        require_keys(v, "/verify",
                     {"ir_min", "ir_binding", "ic_steps", "ic_tie_tol", "envelope",
                      "profit_rel"});
        cfg.verify.ir_min = get_number_or(v, "/verify", "ir_min", -1e-6);
        cfg.verify.ir_binding = get_number_or(v, "/verify", "ir_binding", 1e-3);
        cfg.verify.ic_steps = get_int_or(v, "/verify", "ic_steps", 1);
        cfg.verify.ic_tie_tol = get_number_or(v, "/verify", "ic_tie_tol", 1e-9);
        cfg.verify.envelope = get_number_or(v, "/verify", "envelope", 1e-3);
        cfg.verify.profit_rel = get_number_or(v, "/verify", "profit_rel", 1e-3);
        if (cfg.verify.ic_steps < 0) fail("/verify/ic_steps", "must be nonnegative");
    }

    if (doc.contains("output_dir")) {
        if (!doc.at("output_dir").is_string()) fail("/output_dir", "expected a string");
        cfg.output_dir = doc.at("output_dir").get<std::string>();
    }

    if (doc.contains("snapshot_iters")) {
        const auto& xs = doc.at("snapshot_iters");
        if (!xs.is_array()) fail("/snapshot_iters", "expected an array of integers");
        for (const auto& e : xs) {
            if (!e.is_number_integer() || e.get<int>() < 1)
                fail("/snapshot_iters", "entries must be positive integers");
            cfg.solver.snapshot_iters.push_back(e.get<int>());
        }
    }

    return cfg;
}

ProblemConfig load_problem_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_problem_config(buf.str());
}

}  // namespace taskmech
