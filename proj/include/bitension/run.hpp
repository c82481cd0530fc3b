#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bitension/calculus.hpp"
#include "bitension/classify.hpp"

namespace bitension {

// Default seed of the counter-based generator used for random check points;
// any other value gives a different, equally reproducible stream.
inline constexpr std::uint64_t kDefaultSeed = 101;

struct RunConfig {
    std::string command;  // verify-theorem1 | verify-theorem2 | verify-composition |
                          // classify | sweep | bitension
    int p = 1;
    int q = 1;
    double c = 1.0;
    double d = 1.0;
    std::optional<double> a, b, t;
    std::string locus;   // "minimal" | "biharmonic" | ""
    std::string inner;   // "identity" | "great_sphere:m" | "clifford_pair:m1,m2" | ""
    std::string inner2;  // second inner map (torus compositions)
    std::vector<double> angles;  // evaluation chart angles, empty -> generic point
    DerivativeConfig numeric = verification_config();
    std::string output = "json";  // "json" | "csv"
    int samples = 0;              // 0 -> command default
    std::uint64_t seed = kDefaultSeed;
    double tol = kClassifyTol;
};

struct RunResult {
    int exit_code = 0;     // 0 pass, 1 usage/config error, 2 verification failure
    std::string artifact;  // report bytes (JSON or CSV)
    std::string message;   // diagnostic text for standard error
};

RunResult run(const RunConfig& cfg);

}  // namespace bitension
