#include "lqso/cli.hpp"

#include "lqso/atomic_dynamics.hpp"
#include "lqso/bounds.hpp"
#include "lqso/cdf_dynamics.hpp"
#include "lqso/convergence.hpp"
#include "lqso/execution.hpp"
#include "lqso/invariants.hpp"
#include "lqso/io.hpp"
#include "lqso/initial_measure.hpp"
#include "lqso/orbit_grid.hpp"
#include "lqso/particles.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <utility>

namespace lqso::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::array<std::pair<const char*, Verb>, 7> verbs{{
    {"iterate-atoms", Verb::iterate_atoms},
    {"density", Verb::density},
    {"push-interval", Verb::push_interval},
    {"bounds", Verb::bounds},
    {"converge", Verb::converge},
    {"particles", Verb::particles},
    {"verify", Verb::verify},
}};

json number(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

void emit_json(const json& doc, const std::optional<std::string>& path)
{
    io::OutputSink sink(path);
    sink.stream() << doc.dump(2) << '\n';
    sink.finish();
}

bool want_json(const RunConfig& cfg)
{
    return cfg.format == Format::json;
}

InitialMeasure initial_of(const RunConfig& cfg)
{
    return parse_measure(cfg.initial);
}

int run_iterate_atoms(const RunConfig& cfg)
{
    const InitialMeasure init = initial_of(cfg);
    if (!init.is_atomic())
        throw UsageError("--initial: iterate-atoms needs an atomic measure (atoms ...)");
    const AtomicTrajectory traj = iterate(KernelParams(cfg.p), init.atomic(), cfg.steps);
    const auto atoms = init.atomic().atoms();

    std::vector<std::vector<double>> rows;
    for (const auto& m : traj.steps) {
        std::vector<double> row;
        for (double a : atoms)
            row.push_back(m.weight_at(a));
        rows.push_back(std::move(row));
    }

    if (want_json(cfg)) {
        json dropped = json::array();
        for (const auto& d : traj.dropped)
            dropped.push_back(json{{"step", d.step}, {"atom", d.atom}});
        emit_json(json{{"p", cfg.p},
                       {"atoms", std::vector<double>(atoms.begin(), atoms.end())},
                       {"weights_per_step", rows},
                       {"dropped_atoms", dropped}},
                  cfg.output);
        return 0;
    }
    io::OutputSink sink(cfg.output);
    auto& out = sink.stream();
    out << "step";
    for (double a : atoms)
        out << ',' << io::format_number(a);
    out << '\n';
    for (std::size_t s = 0; s < rows.size(); ++s) {
        out << s << ',';
        io::write_csv_row(out, rows[s]);
    }
    sink.finish();
    return 0;
}

int run_density(const RunConfig& cfg)
{
    const InitialMeasure init = initial_of(cfg);
    if (init.is_atomic())
        throw UsageError("--initial: density needs a continuous measure");
    if (cfg.steps < 1)
        throw UsageError("--steps: density needs n >= 1");
    const DensityOrbit orbit(KernelParams(cfg.p), init.continuous(), cfg.steps);
    const auto xs = linspace(0.0, 1.0, cfg.grid);
    const OrbitGrid values = evaluate_orbit_grid(orbit, xs);

    if (want_json(cfg)) {
        json logs = json::array();
        for (double v : values.log_f)
            logs.push_back(number(v));
        json fs = json::array();
        for (double v : values.f)
            fs.push_back(number(v));
        emit_json(json{{"p", cfg.p},
                       {"initial", cfg.initial},
                       {"n", cfg.steps},
                       {"x", values.x},
                       {"g_n", values.g},
                       {"f_n", fs},
                       {"log_f_n", logs}},
                  cfg.output);
        return 0;
    }
    io::OutputSink sink(cfg.output);
    io::write_csv_header(sink.stream(), {"x", "g_n", "f_n", "log_f_n"});
    for (std::size_t i = 0; i < xs.size(); ++i)
        io::write_csv_row(sink.stream(), {values.x[i], values.g[i], values.f[i], values.log_f[i]});
    sink.finish();
    return 0;
}

int run_push_interval(const RunConfig& cfg)
{
    const InitialMeasure init = initial_of(cfg);
    if (init.is_atomic())
        throw UsageError("--initial: push-interval needs a continuous measure");
    if (cfg.a > cfg.b)
        throw UsageError("--a/--b: need a <= b");
    const double value = pushforward_interval(KernelParams(cfg.p), init.continuous(), cfg.a, cfg.b);
    if (want_json(cfg)) {
        emit_json(json{{"p", cfg.p}, {"initial", cfg.initial}, {"a", cfg.a}, {"b", cfg.b}, {"value", value}},
                  cfg.output);
        return 0;
    }
    io::OutputSink sink(cfg.output);
    io::write_csv_header(sink.stream(), {"a", "b", "value"});
    io::write_csv_row(sink.stream(), {cfg.a, cfg.b, value});
    sink.finish();
    return 0;
}

json certificate_json(const BoundCertificate& c)
{
    json doc{{"p", c.params.p()}, {"n", c.n}, {"beta_n", c.beta_n}};
    doc["domain_end"] = c.domain_end ? json(*c.domain_end) : json(nullptr);
    if (c.domain_end)
        doc["domain"] = c.mirrored() ? json::array({*c.domain_end, 1.0}) : json::array({0.0, *c.domain_end});
    else
        doc["domain"] = nullptr;
    doc["bound"] = c.bound;
    doc["valid"] = c.valid;
    return doc;
}

int run_bounds(const RunConfig& cfg, std::ostream& err)
{
    const InitialMeasure init = initial_of(cfg);
    if (init.is_atomic())
        throw UsageError("--initial: bounds needs a continuous measure");
    const KernelParams k(cfg.p);
    if (k.is_identity())
        throw UsageError("--p: no bound certificate exists for p = 1/2");
    if (cfg.steps < 2)
        throw UsageError("--steps: bounds needs n >= 2");
    const BoundCertificate cert = certificate(k, cfg.steps);

    json doc{{"initial", cfg.initial}, {"certificate", certificate_json(cert)}};
    if (!cert.valid) {
        err << "warning: certificate invalid at n=" << cfg.steps << " (beta_n <= 2 min(p,q)); smallest valid n is "
            << min_valid_n(k) << '\n';
        doc["verification"] = nullptr;
    } else {
        const BoundsReport report = verify_bounds(k, init.continuous(), cfg.steps, cfg.grid);
        json checks = json::object();
        for (const auto& c : report.checks)
            checks[c.name] = number(c.max_violation);
        json diagnostics = json::object();
        for (const auto& c : report.diagnostics)
            diagnostics[c.name] = number(c.max_violation);
        doc["verification"] = json{{"grid", report.grid},
                                   {"domain_samples", report.domain_samples},
                                   {"tolerance", BoundsReport::tolerance},
                                   {"checks", checks},
                                   {"diagnostics", diagnostics},
                                   {"passed", report.passed()}};
        if (!want_json(cfg)) {
            io::OutputSink sink(cfg.output);
            io::write_csv_header(sink.stream(), {"check,max_violation,samples"});
            for (const auto* list : {&report.checks, &report.diagnostics})
                for (const auto& c : *list)
                    sink.stream() << c.name << ',' << io::format_number(c.max_violation) << ',' << c.samples
                                  << '\n';
            sink.finish();
            return 0;
        }
    }
    emit_json(doc, cfg.output);
    return 0;
}

Metric metric_of(const std::string& name)
{
    if (name == "W1" || name == "w1")
        return Metric::w1;
    if (name == "tail-mass")
        return Metric::tail_mass;
    throw UsageError("--metric: expected W1 or tail-mass");
}

void write_trace(const ConvergenceReport& report, const std::optional<std::string>& path)
{
    io::OutputSink sink(path);
    io::write_csv_header(sink.stream(), {"step", "value"});
    for (const auto& [step, value] : report.distances)
        sink.stream() << step << ',' << io::format_number(value) << '\n';
    sink.finish();
}

int run_converge(const RunConfig& cfg)
{
    const InitialMeasure init = initial_of(cfg);
    const ConvergenceReport report =
        run_to_convergence(KernelParams(cfg.p), init, cfg.tol, cfg.max_steps, metric_of(cfg.metric));
    if (cfg.trace)
        write_trace(report, cfg.trace);
    if (!want_json(cfg)) {
        write_trace(report, cfg.output);
        return 0;
    }
    json distances = json::array();
    for (const auto& [step, value] : report.distances)
        distances.push_back(json::array({step, value}));
    json limit = std::holds_alternative<IdentityLimit>(report.predicted_limit)
                     ? json("identity")
                     : json(std::get<double>(report.predicted_limit));
    emit_json(json{{"p", cfg.p},
                   {"initial", report.initial},
                   {"metric", to_string(report.metric)},
                   {"tol", cfg.tol},
                   {"max_steps", cfg.max_steps},
                   {"predicted_limit", limit},
                   {"converged_at", report.converged_at ? json(*report.converged_at) : json(nullptr)},
                   {"distances", distances}},
              cfg.output);
    return 0;
}

int run_particles(const RunConfig& cfg, std::ostream& err)
{
    const InitialMeasure init = initial_of(cfg);
    const KernelParams k(cfg.p);
    // Continuous data are compared against the CDF map, which corresponds
    // to the swapped particle rule.
    const KernelParams simulated = init.is_atomic() ? k : continuous_particle_kernel(k);

    ParticleEnsemble e = sample_initial(init, cfg.particles, cfg.seed);
    for (std::size_t s = 0; s < cfg.steps; ++s)
        e = step_generation(simulated, e);

    json summary{{"p", cfg.p},
                 {"kernel_p", simulated.p()},
                 {"initial", cfg.initial},
                 {"particles", cfg.particles},
                 {"seed", cfg.seed},
                 {"generations", e.generation}};
    if (init.is_atomic()) {
        const AtomicMeasure exact = iterate(k, init.atomic(), cfg.steps).last();
        const auto atoms = init.atomic().atoms();
        const auto emp = empirical_weights(e, atoms);
        double worst = 0.0;
        std::vector<double> exact_w;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            exact_w.push_back(exact.weight_at(atoms[i]));
            worst = std::max(worst, std::abs(emp[i] - exact_w.back()));
        }
        summary["atoms"] = std::vector<double>(atoms.begin(), atoms.end());
        summary["empirical_weights"] = emp;
        summary["exact_weights"] = exact_w;
        summary["max_weight_error"] = worst;
    } else {
        const DensityOrbit orbit(k, init.continuous(), cfg.steps + 1);
        summary["kolmogorov"] = kolmogorov_distance(e, [&](double x) { return cdf_at(orbit, x); });
        summary["empirical_w1_to_1"] = empirical_w1(e, 1.0);
        summary["analytic_w1_to_1"] = w1_to_dirac(orbit, 1.0);
    }

    if (want_json(cfg)) {
        emit_json(summary, cfg.output);
        return 0;
    }
    io::OutputSink sink(cfg.output);
    io::write_csv_header(sink.stream(), {"x"});
    for (double x : e.points)
        sink.stream() << io::format_number(x) << '\n';
    sink.finish();
    if (cfg.summary)
        emit_json(summary, cfg.summary);
    else
        err << summary.dump() << '\n';
    return 0;
}

int run_verify(const RunConfig& cfg)
{
    const auto results = run_invariant_suite(cfg.threads > 1 ? Execution::parallel : Execution::serial);
    io::OutputSink sink(cfg.output);
    std::size_t failed = 0;
    for (const auto& r : results) {
        sink.stream() << (r.passed ? "PASS " : "FAIL ") << r.module << '/' << r.name;
        if (!r.passed) {
            sink.stream() << ": " << r.detail;
            ++failed;
        }
        sink.stream() << '\n';
    }
    sink.stream() << (results.size() - failed) << '/' << results.size() << " invariants hold\n";
    sink.finish();
    return failed == 0 ? 0 : 1;
}

} // namespace

std::string usage()
{
    return "usage: lqso <iterate-atoms|density|push-interval|bounds|converge|particles|verify> [options]\n"
           "run 'lqso <verb> --help' for the options of a verb\n";
}

RunConfig parse_config(const std::vector<std::string>& args)
{
    if (args.empty())
        throw UsageError("missing verb\n" + usage());
    const std::string& verb = args.front();
    const auto found = std::find_if(verbs.begin(), verbs.end(), [&](const auto& v) { return verb == v.first; });
    if (found == verbs.end())
        throw UsageError("unknown verb '" + verb + "'\n" + usage());

    RunConfig cfg;
    cfg.command = found->second;

    CLI::App app("lqso " + verb);
    std::string format = "csv";
    std::optional<std::string> output, trace, summary;
    app.add_option("--p", cfg.p, "inheritance probability of the smaller parent");
    app.add_option("--initial", cfg.initial, "uniform | pow:<k> | atoms a:w,... | grid:<path>");
    app.add_option("--steps", cfg.steps, "iterations / orbit index n / generations");
    app.add_option("--grid", cfg.grid, "number of grid points");
    app.add_option("--tol", cfg.tol, "convergence tolerance");
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--output,-o", output, "output path (stdout when omitted)");
    app.add_option("--format", format, "csv or json");
    app.add_option("--threads", cfg.threads, "OpenMP threads for grid and particle kernels");
    app.add_option("--a", cfg.a, "left interval end");
    app.add_option("--b", cfg.b, "right interval end");
    app.add_option("--max-steps", cfg.max_steps, "iteration cap for converge");
    app.add_option("--metric", cfg.metric, "W1 or tail-mass");
    app.add_option("--particles", cfg.particles, "particle count");
    app.add_option("--trace", trace, "extra CSV trace path for converge");
    app.add_option("--summary", summary, "summary JSON path for particles");

    std::vector<std::string> rest(args.begin() + 1, args.end());
    std::reverse(rest.begin(), rest.end()); // CLI11 consumes a reversed vector
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        throw UsageError(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    cfg.output = output;
    cfg.trace = trace;
    cfg.summary = summary;
    if (format == "csv")
        cfg.format = Format::csv;
    else if (format == "json")
        cfg.format = Format::json;
    else
        throw UsageError("--format must be csv or json");

    if (!std::isfinite(cfg.p) || cfg.p < 0.0 || cfg.p > 1.0)
        throw UsageError("--p: p must lie in [0,1]");
    if (cfg.grid < 2)
        throw UsageError("--grid: grid must be >= 2");
    if (!(cfg.tol > 0.0))
        throw UsageError("--tol: tol must be > 0");
    if (cfg.threads < 1)
        throw UsageError("--threads: must be >= 1");
    if (cfg.particles < 1)
        throw UsageError("--particles: must be >= 1");
    if (cfg.a < 0.0 || cfg.b > 1.0 || cfg.a > cfg.b)
        throw UsageError("--a/--b: need 0 <= a <= b <= 1");
    try {
        (void)parse_measure(cfg.initial);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--initial: ") + e.what());
    }
    (void)metric_of(cfg.metric);
    return cfg;
}

int execute(const RunConfig& cfg, std::ostream& err)
{
    try {
        set_thread_count(cfg.threads);
        switch (cfg.command) {
        case Verb::iterate_atoms: return run_iterate_atoms(cfg);
        case Verb::density: return run_density(cfg);
        case Verb::push_interval: return run_push_interval(cfg);
        case Verb::bounds: return run_bounds(cfg, err);
        case Verb::converge: return run_converge(cfg);
        case Verb::particles: return run_particles(cfg, err);
        case Verb::verify: return run_verify(cfg);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}

} // namespace lqso::cli
