#pragma once

// Named identity suites behind `verify-algebra`, `kahler-check` and the acceptance run.
// Exact identities are checked in Gaussian-rational arithmetic and report residual 0 or 1;
// floating identities report the largest relative error over their samples.

#include "swtorus/field.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace swtorus {

struct IdentityResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool exact = false;
    int samples = 0;
    bool passed = false;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    int exactSamples = 100;
    int floatSamples = 1000;
    // Test hook: the named identity is evaluated with 1/1024 added to its expected side, so
    // its check must fail. Naming an identity no suite runs is an error.
    std::string corruptIdentity;
};

// Clifford relations, the self-dual Pauli action, sigma and its norm and pairing identities,
// sigmaPolar and quaternion algebra.
std::vector<IdentityResult> cliffordSuite(const SuiteOptions& opts);
// The action table on u0 and K^-1 and sigma in the {i omega, f, fbar} basis.
std::vector<IdentityResult> kahlerAlgebraSuite(const SuiteOptions& opts);
// Field-level Kahler checks on `lat`: the two evaluations of the Taubes residual at r on
// random states, the |alpha|^2 = 2 solution, Witten's formulas on constructed curvature,
// harmonicity of the constant u0 and the Leibniz identity at zero curvature.
std::vector<IdentityResult> kahlerFieldSuite(const Lattice& lat, double r, const SuiteOptions& opts);

// cliffordSuite followed by kahlerAlgebraSuite. Throws std::invalid_argument if
// opts.corruptIdentity names none of them.
std::vector<IdentityResult> algebraSuite(const SuiteOptions& opts);
// kahlerAlgebraSuite followed by kahlerFieldSuite, with the same corruptIdentity check.
std::vector<IdentityResult> kahlerSuite(const Lattice& lat, double r, const SuiteOptions& opts);

bool allPassed(const std::vector<IdentityResult>& results);

}  // namespace swtorus
