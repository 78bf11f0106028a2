#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moments/distance.hpp"
#include "moments/harness.hpp"
#include "moments/optimize.hpp"
#include "moments/polynomials.hpp"

namespace moments {

inline constexpr const char* kVersion = "momentlab 0.1.0";

// Every document is {command, config, results[], version} with a fixed field
// order and floating-point values printed with 17 significant digits, so equal
// inputs produce byte-identical output.

struct DeltaConfig {
    std::string input;
    int k = 2;
    bool weak = false;
    double tolerance = 1e-7;
    std::uint64_t seed = 20240501;
    int budget = 32;
    std::string format = "json";
    std::string out;
};

struct DeltaOutcome {
    MatrixClass matrix_class = MatrixClass::General;
    MomentResult result;
    std::optional<double> upper;  // present on the general-matrix path
    double wall_time_s = 0;
};

struct DistConfig {
    std::string input;
    double tolerance = 1e-9;
    std::string format = "json";
    std::string out;
};

struct PolynormConfig {
    int k = 2;
    PolyKind kind = PolyKind::P;
    std::string format = "json";
    std::string out;
};

struct VerifyConfig {
    std::string suite = "all";
    SuiteConfig suite_config;
    std::string format = "json";
    std::string out;
};

std::string render_delta(const DeltaConfig& cfg, const DeltaOutcome& outcome);
std::string render_dist(const DistConfig& cfg, const DistanceResult& result);
std::string render_polynorm(const PolynormConfig& cfg, const MomentPolynomial& poly, const SupNormResult& norm);
std::string render_verify(const VerifyConfig& cfg, const std::vector<CheckReport>& reports);

}  // namespace moments
