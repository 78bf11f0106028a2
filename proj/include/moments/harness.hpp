#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moments/states.hpp"

namespace moments {

enum class Relation { Eq, Le, Ge };

const char* relation_name(Relation r);

struct CheckReport {
    std::string check_id;
    std::string inputs_digest;  // seed and parameters, enough to replay
    double lhs = 0;
    double rhs = 0;
    Relation relation = Relation::Eq;
    double residual = 0;
    double tolerance = 0;
    bool passed = false;
};

// Pass rules: Eq |lhs-rhs| <= tol*(1+|rhs|), Le lhs <= rhs+tol, Ge lhs >= rhs-tol.
CheckReport make_report(std::string id, std::string digest, double lhs, double rhs, Relation rel, double tol);

struct SuiteConfig {
    std::uint64_t seed = 20240501;
    int trials = 20;
    std::vector<int> k_list = {2, 3, 4, 5, 6};
};

// Equality of the weak moment optimizer with the real-spectrum closed form on
// random Hermitian matrices, plus the extreme-support witness property.
std::vector<CheckReport> check_theorem1(const SuiteConfig& cfg);

// Strong moment vs the q_k diameter bound on Hermitian matrices; equality for
// even k where the two polynomial families coincide.
std::vector<CheckReport> check_remark_eq1(const SuiteConfig& cfg);

// Normal matrices: the q_k upper bound, the p_k lower bound, and the even-k
// equality, all against the scalar distance r0.
std::vector<CheckReport> check_theorem2_3_4(const SuiteConfig& cfg);

// Strong moment is preserved by a -> a (+) a*, checked through the full matrix
// construction on the doubled side.
std::vector<CheckReport> check_lemma3(const SuiteConfig& cfg);

// Non-normal matrices: weak lower bounds never exceed the q_k distance bound;
// residuals record the observed gap distribution.
std::vector<CheckReport> check_theorem5(const SuiteConfig& cfg);

// The fixed worked examples on 2x2 and 3x3 matrices.
std::vector<CheckReport> run_examples();

const std::vector<std::string>& suite_names();

// Accepts canonical names and the aliases theorem2/theorem3/theorem4.
// Throws UnknownSuite.
std::vector<CheckReport> run_suite(const std::string& name, const SuiteConfig& cfg);

std::vector<CheckReport> run_all(const SuiteConfig& cfg);

}  // namespace moments
