#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "taskmech/econ.hpp"
#include "taskmech/solver.hpp"
#include "taskmech/verifier.hpp"

namespace taskmech {

/// Fully validated problem description loaded from a single JSON document.
/// Unknown keys anywhere in the document are rejected.
struct ProblemConfig {
    struct Distribution {
        TypeDistribution::Kind kind = TypeDistribution::Kind::Uniform;
        double lo = 0.0;
        double hi = 0.0;
        std::vector<double> density;  // Custom only
        std::vector<double> cdf;      // Custom only, optional
    };

    Distribution distribution;
    double z1 = 0.5;
    double z2 = 1.0;
    double q1 = 0.5;
    double p = 1.0;

    SolverConfig solver;
    bool alpha0_search = false;            // solver.alpha0 == "search"
    std::vector<double> search_interval;   // [lo, hi]; defaults to [0, 0.9p]

    VerifyThresholds verify;
    std::optional<std::string> output_dir;

    TypeDistribution make_distribution() const;
    Models make_models() const;
};

ProblemConfig load_problem_config(const std::filesystem::path& path);
ProblemConfig parse_problem_config(const std::string& json_text);

}  // namespace taskmech
