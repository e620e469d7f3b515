#include "doctest.h"

#include "swtorus/suites.hpp"

#include <set>
#include <stdexcept>

using namespace swtorus;

namespace {

SuiteOptions quick() {
    SuiteOptions o;
    o.exactSamples = 8;
    o.floatSamples = 40;
    return o;
}

void checkNames(const std::vector<IdentityResult>& results) {
    std::set<std::string> names;
    for (const auto& r : results) {
        CHECK_MESSAGE(names.insert(r.name).second, "duplicate identity name " << r.name);
        CHECK(r.samples > 0);
    }
}

}  // namespace

TEST_CASE("the algebra suite passes at full sample counts") {
    const auto results = algebraSuite(SuiteOptions{});
    checkNames(results);
    for (const auto& r : results) {
        INFO(r.name << " residual " << r.residual);
        CHECK(r.passed);
        if (r.exact) CHECK(r.residual == 0.0);
    }
    CHECK(allPassed(results));
    CHECK(results.size() == cliffordSuite({}).size() + kahlerAlgebraSuite({}).size());
    int anticommutators = 0, table = 0;
    for (const auto& r : results) {
        anticommutators += r.name.rfind("anticommutator", 0) == 0;
        table += r.name.rfind("rho(", 0) == 0 && r.name.find(" u0") != std::string::npos;
    }
    CHECK(anticommutators == 16);
    CHECK(table >= 3);
}

TEST_CASE("corrupting any algebra identity fails exactly that identity") {
    const auto names = algebraSuite(quick());
    for (const auto& target : names) {
        SuiteOptions o = quick();
        o.corruptIdentity = target.name;
        const auto results = algebraSuite(o);
        REQUIRE(results.size() == names.size());
        for (const auto& r : results) {
            INFO("corrupted " << target.name << ", checking " << r.name);
            CHECK(r.passed == (r.name != target.name));
        }
        CHECK_FALSE(allPassed(results));
    }
}

TEST_CASE("unknown corruption targets are rejected") {
    SuiteOptions o = quick();
    o.corruptIdentity = "no such identity";
    CHECK_THROWS_AS(algebraSuite(o), std::invalid_argument);
    CHECK_THROWS_AS(kahlerSuite(Lattice({4, 4, 4, 4}, 1.0), 1.0, o), std::invalid_argument);
    CHECK_THROWS_AS(kahlerFieldSuite(Lattice({4, 4, 4, 4}, 1.0), -1.0, quick()), std::invalid_argument);
}

TEST_CASE("the Kahler suite passes and detects corruption of each field identity") {
    const Lattice lat({4, 4, 4, 4}, 0.5);
    for (double r : {0.0, 1.0, 7.5}) {
        const auto results = kahlerSuite(lat, r, quick());
        checkNames(results);
        for (const auto& res : results) {
            INFO("r = " << r << ": " << res.name << " residual " << res.residual);
            CHECK(res.passed);
        }
    }
    for (const auto& target : kahlerFieldSuite(lat, 1.0, quick())) {
        SuiteOptions o = quick();
        o.corruptIdentity = target.name;
        for (const auto& r : kahlerSuite(lat, 1.0, o)) {
            INFO("corrupted " << target.name << ", checking " << r.name);
            CHECK(r.passed == (r.name != target.name));
        }
    }
}
