#include "cli.hpp"

#include "swtorus/dirac.hpp"
#include "swtorus/kahler.hpp"
#include "swtorus/random.hpp"
#include "swtorus/snapshot.hpp"
#include "swtorus/suites.hpp"
#include "swtorus/sw_system.hpp"
#include "swtorus/topology.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

namespace swtorus::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

struct LatticeArgs {
    std::vector<int> dims;
    std::optional<double> spacing;
};

Lattice makeLattice(const LatticeArgs& l, double defaultSpacing) {
    if (l.dims.size() != 4) throw UsageError("--dims needs exactly four extents");
    try {
        return Lattice({l.dims[0], l.dims[1], l.dims[2], l.dims[3]}, l.spacing.value_or(defaultSpacing));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void addLatticeOptions(CLI::App* cmd, LatticeArgs& l, const std::string& spacingHelp) {
    cmd->add_option("--dims", l.dims, "lattice extents n1,n2,n3,n4")->delimiter(',')->expected(4)->capture_default_str();
    cmd->add_option("--spacing", l.spacing, spacingHelp);
}

void addFormat(CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
}

// verify-algebra and kahler-check

int reportIdentities(const std::vector<IdentityResult>& results, const std::string& format, std::ostream& out,
                     std::ostream& err) {
    std::vector<std::string> failed;
    for (const auto& r : results)
        if (!r.passed) failed.push_back(r.name);
    if (format == "json") {
        json residuals = json::object();
        for (const auto& r : results) residuals[r.name] = r.residual;
        json j;
        j["passed"] = failed.empty();
        j["identities"] = results.size();
        j["failed"] = failed;
        j["residuals"] = residuals;
        out << j.dump(2) << '\n';
    } else {
        for (const auto& r : results) {
            out << (r.passed ? "PASS  " : "FAIL  ") << r.name;
            if (r.exact)
                out << "  [exact, " << r.samples << (r.samples == 1 ? " sample]\n" : " samples]\n");
            else
                out << "  residual " << sci(r.residual) << " <= " << sci(r.tolerance) << "  [" << r.samples << (r.samples == 1 ? " sample]\n" : " samples]\n");
        }
        out << results.size() << " identities, " << failed.size() << " failed\n";
    }
    for (const auto& name : failed) err << "identity failed: " << name << '\n';
    return failed.empty() ? kOk : kAlgebraFailure;
}

struct SuiteArgs {
    std::uint64_t seed = 1;
    std::string format = "text";
    std::string fault;
};

SuiteOptions suiteOptions(const SuiteArgs& a) {
    SuiteOptions o;
    o.seed = a.seed;
    o.corruptIdentity = a.fault;
    return o;
}

int cmdVerifyAlgebra(const SuiteArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<IdentityResult> results;
    try {
        results = algebraSuite(suiteOptions(a));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return reportIdentities(results, a.format, out, err);
}

struct KahlerArgs {
    SuiteArgs suite;
    LatticeArgs lattice{{4, 4, 4, 4}, std::nullopt};
    double r = 1.0;
    std::string out;
};

int cmdKahlerCheck(const KahlerArgs& a, std::ostream& out, std::ostream& err) {
    const Lattice lat = makeLattice(a.lattice, 1.0);
    if (!(a.r >= 0.0)) throw UsageError("--r must be non-negative");
    std::vector<IdentityResult> results;
    try {
        results = kahlerSuite(lat, a.r, suiteOptions(a.suite));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!a.out.empty()) {
        const KahlerSpinorSplit s = split(bandLimitedSpinor(lat, {a.suite.seed, 1.0, 1, 6, 4}));
        writeSnapshotFile(a.out + ".alpha.field", s.alpha);
        writeSnapshotFile(a.out + ".beta.field", s.beta);
    }
    return reportIdentities(results, a.suite.format, out, err);
}

// weitzenbock

struct WeitzenbockArgs {
    LatticeArgs lattice{{16, 16, 4, 4}, std::nullopt};
    std::uint64_t seed = 11;
    double amplitude = 0.5;
    int activeAxes = 2;
    std::string format = "text";
};

double weitzenbockRms(const Lattice& lat, const WeitzenbockArgs& a) {
    const OneForm form = bandLimitedOneForm(lat, {a.seed, a.amplitude, 1, 6, a.activeAxes});
    const U1Connection conn(form);
    curvature(conn);  // raises BranchCutError when a plaquette phase leaves (-pi, pi)
    const SpinorPlusField<> psi = bandLimitedSpinor(lat, {a.seed + 1, 1.0, 1, 6, a.activeAxes});
    double volume = 1.0;
    for (int mu = 0; mu < 4; ++mu) volume *= lat.extent(mu);
    return weitzenbockResidual(conn, psi).norm / std::sqrt(volume);
}

int cmdWeitzenbock(const WeitzenbockArgs& a, std::ostream& out, std::ostream& err) {
    if (a.activeAxes < 1 || a.activeAxes > 4) throw UsageError("--active-axes must lie in 1..4");
    if (!(a.amplitude >= 0.0) || !std::isfinite(a.amplitude)) throw UsageError("--amplitude must be finite and non-negative");
    const Lattice coarse = makeLattice(a.lattice, 2.0 * std::numbers::pi / (a.lattice.dims.empty() ? 1 : a.lattice.dims[0]));
    const auto& n = coarse.dims();
    const Lattice fine({2 * n[0], 2 * n[1], 2 * n[2], 2 * n[3]}, coarse.spacing() / 2.0);

    // At the trivial connection the identity is checked in exact arithmetic on the coarse spinor.
    const SpinorPlusField<> psi = bandLimitedSpinor(coarse, {a.seed + 1, 1.0, 1, 6, a.activeAxes});
    SpinorPlusField<GaussianRational> exact(coarse);
    for (std::size_t x = 0; x < coarse.sites(); ++x)
        exact[x] = {GaussianRational(Rational(psi[x].z.real()), Rational(psi[x].z.imag())),
                    GaussianRational(Rational(psi[x].w.real()), Rational(psi[x].w.imag()))};
    const auto trivial = weitzenbockResidual(trivialLinks<GaussianRational>(coarse), exact);
    const bool trivialZero = std::all_of(trivial.residual.begin(), trivial.residual.end(),
                                         [](const SpinorPlus<GaussianRational>& v) { return v == SpinorPlus<GaussianRational>{}; });

    const double rc = weitzenbockRms(coarse, a), rf = weitzenbockRms(fine, a);
    const double order = std::log2(rc / rf);
    const bool orderOk = order >= 1.7 && order <= 2.3;

    if (a.format == "json") {
        json j;
        j["trivialResidual"] = trivial.norm;
        j["trivialExactZero"] = trivialZero;
        j["coarseResidual"] = rc;
        j["fineResidual"] = rf;
        j["order"] = order;
        j["passed"] = trivialZero && orderOk;
        out << j.dump(2) << '\n';
    } else {
        out << "trivial connection on " << coarse.describe() << ": residual " << (trivialZero ? "exactly 0" : sci(trivial.norm))
            << '\n';
        out << "residual on " << coarse.describe() << ": " << sci(rc) << '\n';
        out << "residual on " << fine.describe() << ": " << sci(rf) << '\n';
        out << "measured order " << order << " (accepted range [1.7, 2.3])\n";
    }
    if (!trivialZero) err << "residual at the trivial connection is not exactly zero\n";
    if (!orderOk)
        err << "measured order " << order
            << " lies outside [1.7, 2.3]; the lattice may be too coarse for the asymptotic regime, refine --dims\n";
    return trivialZero && orderOk ? kOk : kDiscretization;
}

// solve

struct SolveArgs {
    LatticeArgs lattice{{8, 8, 8, 8}, std::nullopt};
    std::uint64_t seed = 42;
    std::vector<double> delta{0.0, 0.0, 0.0};
    int maxIters = 5000;
    double tol = 1e-8;
    std::string format = "text";
    std::string out;
    std::string initA;
    std::string initPsi;
};

int cmdSolve(const SolveArgs& a, const CLI::App& cmd, std::ostream& out, std::ostream& err) {
    if (a.maxIters < 0) throw UsageError("--max-iters must be non-negative");
    if (!(a.tol > 0.0) || !std::isfinite(a.tol)) throw UsageError("--tol must be positive");
    if (a.delta.size() != 3 || !std::all_of(a.delta.begin(), a.delta.end(), [](double d) { return std::isfinite(d); }))
        throw UsageError("--delta needs three finite coefficients");
    if (a.initA.empty() != a.initPsi.empty()) throw UsageError("--init-a and --init-psi must be given together");

    std::optional<SWState> init;
    if (!a.initA.empty()) {
        OneForm form = readSnapshotFile(a.initA, readOneFormSnapshot);
        SpinorPlusField<> psi = readSnapshotFile(a.initPsi, readSpinorPlusSnapshot);
        if (!(form.lattice() == psi.lattice()))
            throw SnapshotError(a.initPsi + ": lattice " + psi.lattice().describe() + " differs from " +
                                    form.lattice().describe() + " in " + a.initA,
                                1);
        const bool dimsGiven = cmd.count("--dims") > 0, spacingGiven = cmd.count("--spacing") > 0;
        if ((dimsGiven || spacingGiven) && !(makeLattice(a.lattice, form.lattice().spacing()) == form.lattice()))
            throw UsageError("--dims/--spacing disagree with the lattice of the initial snapshots");
        init = SWState{U1Connection(std::move(form)), std::move(psi)};
    }
    const Lattice lat = init ? init->psi.lattice() : makeLattice(a.lattice, 1.0);
    if (!init) init = randomInitialState(lat, a.seed);

    SolverConfig cfg;
    cfg.maxIterations = a.maxIters;
    cfg.residualTolerance = a.tol;
    cfg.seed = a.seed;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const Perturbation pert = Perturbation::constant(lat, {a.delta[0], a.delta[1], a.delta[2]});
    const SolveResult r = solve(*init, pert, cfg);
    const C0Check c0 = c0BoundCheck(r.final);

    if (!a.out.empty()) {
        writeSnapshotFile(a.out + ".a.field", r.final.A.oneForm());
        writeSnapshotFile(a.out + ".psi.field", r.final.psi);
    }
    if (a.format == "json") {
        json j;
        j["diracNorm"] = r.report.diracNorm;
        j["curvatureNorm"] = r.report.curvatureNorm;
        j["energy"] = r.report.energy;
        j["maxPsiSq"] = r.report.maxPsiSq;
        j["c0Bound"] = r.report.c0Bound;
        j["iterations"] = r.iterations;
        j["converged"] = r.converged;
        out << j.dump(2) << '\n';
    } else {
        out << "lattice " << lat.describe() << '\n';
        out << "iterations " << r.iterations << (r.converged ? " (converged)" : " (not converged)") << '\n';
        out << "energy " << sci(r.report.energy) << '\n';
        out << "dirac residual " << sci(r.report.diracNorm) << '\n';
        out << "curvature residual " << sci(r.report.curvatureNorm) << '\n';
        out << "max |psi|^2 " << sci(r.report.maxPsiSq) << " (C0 bound " << sci(r.report.c0Bound) << ")\n";
    }
    if (!r.converged) {
        err << "solver did not reach energy " << sci(a.tol * a.tol) << " within " << a.maxIters
            << " iterations; the report describes the best state found\n";
        return kNonConvergence;
    }
    if (!c0.satisfied) {
        err << "converged state violates the C0 bound: max |psi|^2 = " << sci(c0.maxPsiSq) << '\n';
        return kNonConvergence;
    }
    return kOk;
}

// topology

struct TopologyArgs {
    std::string format = "text";
    std::int64_t c1sq = 0, chi = 0, sigma = 0, bplus = 0, b1 = 0;
    std::int64_t k = 0, l = 0, x = 0, y = 0;
    std::string form;
    bool signature = false, rank = false, det = false, even = false, inertia = false;
};

void emit(const json& j, const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << j.dump(2) << '\n';
        return;
    }
    for (const auto& [key, value] : j.items()) out << key << ' ' << value.dump() << '\n';
}

int cmdDim(const TopologyArgs& a, std::ostream& out) {
    const std::int64_t d = moduliDimension(a.c1sq, {a.chi, a.sigma, a.bplus, a.b1});
    if (a.format == "json")
        out << json{{"dimension", d}}.dump(2) << '\n';
    else
        out << d << '\n';
    return kOk;
}

int cmdFuruta(const TopologyArgs& a, std::ostream& out) {
    const FurutaResult f = furutaBound(a.k, a.l);
    const ElevenEighthsGap g = elevenEighthsGap(a.k, a.l);
    json j;
    j["passes"] = f.passes;
    j["minL"] = f.minL;
    j["conjectureMinL"] = g.conjectureMinL;
    j["gap"] = g.gap;
    j["meetsConjecture"] = g.meetsConjecture;
    if (a.format == "json")
        out << j.dump(2) << '\n';
    else
        out << (f.passes ? "pass" : "fail") << ", minL " << f.minL << " (11/8 bound " << g.conjectureMinL << ")\n";
    return kOk;
}

int cmdFreed(const TopologyArgs& a, std::ostream& out) {
    const FreedResult f = freedDivisibility(a.k, a.x, a.y, a.l);
    json j;
    j["divides"] = f.divides;
    j["minL"] = f.equivalentBound;
    emit(j, a.format, out);
    return kOk;
}

int cmdForm(const TopologyArgs& a, std::ostream& out) {
    const ParsedForm p = parseForm(a.form);
    const bool all = !(a.signature || a.rank || a.det || a.even || a.inertia);
    json j;
    if (all || a.rank) j["rank"] = p.form.rank();
    if (all || a.signature) j["signature"] = signature(p.form);
    if (all || a.det) j["determinant"] = static_cast<std::int64_t>(determinant(p.form));
    if (all || a.even) j["even"] = isEven(p.form);
    if (all || a.inertia) {
        const Inertia in = inertia(p.form);
        j["positive"] = in.positive;
        j["negative"] = in.negative;
    }
    if (a.format == "text" && j.size() == 1)
        out << j.begin().value().dump() << '\n';
    else
        emit(j, a.format, out);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lattice Seiberg-Witten toolkit on the flat 4-torus", "swtorus"};
    app.require_subcommand(1);

    SuiteArgs algebra;
    auto* verify = app.add_subcommand("verify-algebra", "exact and floating identity checks of the Clifford and Kahler algebra");
    verify->add_option("--seed", algebra.seed, "seed for the random samples")->capture_default_str();
    addFormat(verify, algebra.format);
    verify->add_option("--inject-fault", algebra.fault)->group("");

    WeitzenbockArgs weitz;
    auto* weitzCmd = app.add_subcommand("weitzenbock", "Weitzenbock residual at spacing h and h/2 and its convergence order");
    addLatticeOptions(weitzCmd, weitz.lattice, "lattice spacing (default 2 pi / n1)");
    weitzCmd->add_option("--seed", weitz.seed, "seed of the band-limited fields")->capture_default_str();
    weitzCmd->add_option("--amplitude", weitz.amplitude, "amplitude of the connection 1-form")->capture_default_str();
    weitzCmd->add_option("--active-axes", weitz.activeAxes, "number of leading axes the fields vary along")->capture_default_str();
    addFormat(weitzCmd, weitz.format);

    SolveArgs solveArgs;
    auto* solveCmd = app.add_subcommand("solve", "minimise the Seiberg-Witten energy from a seeded or given state");
    addLatticeOptions(solveCmd, solveArgs.lattice, "lattice spacing (default 1)");
    solveCmd->add_option("--seed", solveArgs.seed, "seed of the random initial state")->capture_default_str();
    solveCmd->add_option("--delta", solveArgs.delta, "constant self-dual perturbation c1,c2,c3")
        ->delimiter(',')
        ->expected(3)
        ->capture_default_str();
    solveCmd->add_option("--max-iters", solveArgs.maxIters, "iteration limit")->capture_default_str();
    solveCmd->add_option("--tol", solveArgs.tol, "converged when the energy is below tol^2")->capture_default_str();
    solveCmd->add_option("--out", solveArgs.out, "write the final state to <out>.a.field and <out>.psi.field");
    solveCmd->add_option("--init-a", solveArgs.initA, "initial connection snapshot (kind=oneform)");
    solveCmd->add_option("--init-psi", solveArgs.initPsi, "initial spinor snapshot (kind=spinor+)");
    addFormat(solveCmd, solveArgs.format);

    KahlerArgs kahler;
    auto* kahlerCmd = app.add_subcommand("kahler-check", "Kahler splitting, Witten's formulas and the Taubes residual");
    addLatticeOptions(kahlerCmd, kahler.lattice, "lattice spacing (default 1)");
    kahlerCmd->add_option("--seed", kahler.suite.seed, "seed for the random samples")->capture_default_str();
    kahlerCmd->add_option("--r", kahler.r, "Taubes parameter r >= 0")->capture_default_str();
    kahlerCmd->add_option("--out", kahler.out, "write alpha and beta of a smooth spinor to <out>.alpha.field and <out>.beta.field");
    addFormat(kahlerCmd, kahler.suite.format);
    kahlerCmd->add_option("--inject-fault", kahler.suite.fault)->group("");

    TopologyArgs topo;
    auto* topoCmd = app.add_subcommand("topology", "exact integer invariants of 4-manifolds and intersection forms");
    topoCmd->require_subcommand(1);
    addFormat(topoCmd, topo.format);
    auto* dim = topoCmd->add_subcommand("dim", "expected dimension of the moduli space");
    dim->add_option("--c1sq", topo.c1sq, "c1(L)^2")->required();
    dim->add_option("--chi", topo.chi, "Euler characteristic")->required();
    dim->add_option("--sigma", topo.sigma, "signature")->required();
    dim->add_option("--bplus", topo.bplus, "b+")->required();
    dim->add_option("--b1", topo.b1, "first Betti number")->capture_default_str();
    auto* furuta = topoCmd->add_subcommand("furuta", "l >= 2k + 1 for the form 2k E8 + l H");
    furuta->add_option("--k", topo.k)->required();
    furuta->add_option("--l", topo.l)->required();
    auto* freed = topoCmd->add_subcommand("freed", "whether 4^(k+y) 2^x divides 4^y 2^(l+x)");
    freed->add_option("--k", topo.k)->required();
    freed->add_option("--l", topo.l)->required();
    freed->add_option("--x", topo.x)->capture_default_str();
    freed->add_option("--y", topo.y)->capture_default_str();
    auto* form = topoCmd->add_subcommand("form", "invariants of a sum of E8 and H forms, e.g. 2E8+3H");
    form->add_option("spec", topo.form, "form expression")->required();
    form->add_flag("--signature", topo.signature);
    form->add_flag("--rank", topo.rank);
    form->add_flag("--det", topo.det);
    form->add_flag("--even", topo.even);
    form->add_flag("--inertia", topo.inertia);
    for (auto* sub : {dim, furuta, freed, form}) addFormat(sub, topo.format);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (*verify) return cmdVerifyAlgebra(algebra, out, err);
        if (*weitzCmd) return cmdWeitzenbock(weitz, out, err);
        if (*solveCmd) return cmdSolve(solveArgs, *solveCmd, out, err);
        if (*kahlerCmd) return cmdKahlerCheck(kahler, out, err);
        try {
            if (*dim) return cmdDim(topo, out);
            if (*furuta) return cmdFuruta(topo, out);
            if (*freed) return cmdFreed(topo, out);
            return cmdForm(topo, out);
        } catch (const std::invalid_argument& e) {
            err << "topology input error: " << e.what() << '\n';
            return kTopologyInput;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const SnapshotError& e) {
        err << "snapshot error: " << e.what() << '\n';
        return kIoError;
    } catch (const BranchCutError& e) {
        err << "discretization error: " << e.what() << '\n';
        return kDiscretization;
    }
}

}  // namespace swtorus::cli
