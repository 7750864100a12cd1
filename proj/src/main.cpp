// Command-line front end.  Subcommands wrap the library one-to-one and print
// versioned JSON documents (or SVG/ASCII for `render`); all output is
// deterministic for identical inputs.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage/parse error,
// 3 degenerate input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "iis/cases.hpp"
#include "iis/engine.hpp"
#include "iis/json_io.hpp"
#include "iis/render.hpp"
#include "iis/sampler.hpp"
#include "iis/system.hpp"
#include "iis/thin.hpp"
#include "iis/verify.hpp"

namespace {

using namespace iis;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;

using ParamsVariant = std::variant<SymmetricParams<Rational>, SymmetricParams<NFElem>>;

// "10,4,1,2", "1/3,1/4,5/12,1/5", or the literal token `thin`
ParamsVariant parse_params(const std::string& text) {
    if (text == "thin") return thin_eigen_params();
    std::vector<Rational> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(Rational::parse(tok));
    if (vals.size() != 4)
        throw std::invalid_argument("params: expected four comma-separated rationals or 'thin'");
    return SymmetricParams<Rational>{vals[0], vals[1], vals[2], vals[3]};
}

// Output goes to stdout unless a path is given; relative paths resolve against
// $IIS_OUTPUT_DIR when that is set.
void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::string full = path;
    const char* dir = std::getenv("IIS_OUTPUT_DIR");
    if (dir && *dir && path.front() != '/') full = std::string(dir) + "/" + path;
    std::ofstream out(full, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + full);
    out << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Side parse_side(const std::string& s) { return s == "left" ? Side::left : Side::right; }

// Runs up to `rounds` consecutive symmetrization rounds (each stops at the
// next return to symmetric form) and concatenates the traces, so a render of
// the thin example's full self-similarity cycle is a single document.
template <ExactOrderedField F>
InductionTrace<F> run_rounds(const IISystem<F>& sys, Side side, long max_steps, long rounds,
                             StopWhen stop_when) {
    InductionTrace<F> trace = run_induction(sys, side, max_steps, stop_when);
    for (long r = 1; r < rounds && trace.outcome == InductionOutcome::symmetric; ++r) {
        auto next = run_induction(trace.final_state, side, max_steps, stop_when);
        trace.steps.insert(trace.steps.end(), next.steps.begin(), next.steps.end());
        trace.final_state = next.final_state;
        trace.outcome = next.outcome;
        trace.note = next.note;
    }
    return trace;
}

template <ExactOrderedField F>
void attach_field(json& j, const SymmetricParams<F>& p) {
    if (auto fld = field_of(p)) j["field"] = field_to_json(*fld);
}

// ---------------------------------------------------------------------------
// subcommands (templated over the scalar field; `thin` params use Q(lambda))

template <ExactOrderedField F>
int cmd_classify(const SymmetricParams<F>& p0, const std::string& output) {
    auto p = normalize_params(p0);
    auto [label, hole] = classify_case(p);
    json j{{"schema_version", kSchemaVersion},
           {"params", params_to_json(p)},
           {"case", label_to_json(label)},
           {"counts", counts_to_json(case_counts(label, p))},
           {"hole", hole}};
    json cands = json::array();
    auto matrices = case_matrices(label, p);
    auto selected = select_candidates(matrices, p);
    for (const auto& m : matrices) {
        json c{{"tag", m.tag}, {"matrix", matrix_to_json(m)}, {"selected", false}};
        for (const auto& [sm, img] : selected)
            if (sm == m) {
                c["selected"] = true;
                c["image"] = params_to_json(img);
            }
        cands.push_back(c);
    }
    j["candidates"] = cands;
    write_output(output, dump(j));
    return kExitOk;
}

template <ExactOrderedField F>
int cmd_induce(const SymmetricParams<F>& p, Side side, long max_steps, long rounds,
               bool hole_only, const std::string& output) {
    auto trace = run_rounds(build_special_symmetric(p), side, max_steps, rounds,
                            hole_only ? StopWhen::hole_only : StopWhen::symmetric);
    if (trace.outcome == InductionOutcome::degenerate)
        throw DegenerateError("induction degenerate: " + trace.note);
    json j = trace_to_json(trace);
    j["schema_version"] = kSchemaVersion;
    attach_field(j, p);
    write_output(output, dump(j));
    return kExitOk;
}

template <ExactOrderedField F>
int cmd_symmetrize(const SymmetricParams<F>& p, long max_steps, const std::string& output) {
    auto out = symmetrize(build_special_symmetric(normalize_params(p)), max_steps);
    using R = typename SymmetrizeOutcome<F>::Result;
    if (out.result == R::degenerate) throw DegenerateError("symmetrize degenerate");
    const char* result = out.result == R::symmetric ? "symmetric"
                         : out.result == R::hole   ? "hole"
                                                   : "step_cap";
    json j{{"schema_version", kSchemaVersion},
           {"result", result},
           {"generalized_iterations", out.generalized_iterations_used},
           {"trace", trace_to_json(out.trace)}};
    attach_field(j, p);
    j["params"] = out.params ? params_to_json(*out.params) : json();
    if (out.matrix_used) {
        j["matrix_tag"] = out.matrix_used->tag;
        j["matrix"] = matrix_to_json(*out.matrix_used);
    }
    write_output(output, dump(j));
    return kExitOk;
}

int cmd_thin_check(long max_generalized, const Rational& epsilon, const std::string& output) {
    const auto& ctx = thin_context();
    std::string diag;
    bool self_similar = verify_self_similarity(ctx.params, &diag);
    std::string mdiag;
    bool product_ok = verify_matrix_product(&mdiag);
    auto scan = thin_scan(ctx.params, max_generalized, NFElem(epsilon));

    json j{{"schema_version", kSchemaVersion},
           {"lambda", to_json(ctx.lambda)},
           {"lambda_approx", ctx.lambda.to_double()},
           {"field", field_to_json(*ctx.field)},
           {"eigenvector", params_to_json(ctx.params)},
           {"eigenvector_approx",
            {ctx.params.a.to_double(), ctx.params.b.to_double(), ctx.params.c.to_double(),
             ctx.params.u.to_double()}},
           {"self_similar", self_similar},
           {"matrix_product_ok", product_ok},
           {"scan", thin_report_to_json(scan)}};
    if (!self_similar) j["self_similarity_diagnostic"] = diag;
    if (!product_ok) j["matrix_product_diagnostic"] = mdiag;
    write_output(output, dump(j));
    return self_similar && product_ok ? kExitOk : kExitMismatch;
}

template <ExactOrderedField F>
int cmd_orbit(const SymmetricParams<F>& p, const std::string& point_text, std::size_t max_size,
              const std::string& output) {
    auto sys = build_special_symmetric(p);
    F x = [&] {
        if constexpr (std::is_same_v<F, NFElem>)
            return NFElem(Rational::parse(point_text));
        else
            return Rational::parse(point_text);
    }();
    auto res = orbit(sys, x, max_size);
    json pts = json::array();
    for (const auto& q : res.points) pts.push_back(to_json(q));
    json j{{"schema_version", kSchemaVersion},
           {"point", to_json(x)},
           {"points", pts},
           {"size", res.points.size()},
           {"status", res.status == OrbitStatus::exhausted ? "exhausted" : "truncated"}};
    write_output(output, dump(j));
    return kExitOk;
}

template <ExactOrderedField F>
int render_trace(const InductionTrace<F>& trace, const std::string& format,
                 const std::string& output) {
    write_output(output, format == "ascii" ? render_ascii(trace) : render_svg(trace));
    return kExitOk;
}

int cmd_render_file(const std::string& trace_path, const std::string& format,
                    const std::string& output) {
    std::ifstream in(trace_path);
    if (!in) throw std::invalid_argument("cannot open trace file: " + trace_path);
    json j;
    try {
        in >> j;
        // field elements in a trace need the document's field block
        std::shared_ptr<const NumberField> fld;
        if (j.contains("field")) fld = field_from_json(j.at("field"));
        if (fld) return render_trace(trace_from_json<NFElem>(j, fld), format, output);
        return render_trace(trace_from_json<Rational>(j, nullptr), format, output);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed trace: ") + e.what());
    }
}

int cmd_verify(long samples, std::uint64_t seed, long height, long max_steps, int threads,
               bool serial, bool thin_only, const std::string& output) {
    json j{{"schema_version", kSchemaVersion}};
    bool ok = true;

    if (!thin_only) {
        SweepConfig cfg;
        cfg.seed = seed;
        cfg.samples = samples;
        cfg.sampler.max_height = height;
        cfg.max_ordinary_steps = max_steps;
        cfg.threads = threads;
        SweepSummary sum = serial ? run_sweep_serial(cfg) : run_sweep(cfg);
        json tally = json::object();
        for (const auto& [idx, n] : sum.case_tally) tally[std::to_string(idx)] = n;
        json sweep{{"samples", sum.samples},           {"agreed", sum.agreed},
                   {"symmetric", sum.symmetric},       {"holes", sum.holes},
                   {"max_generalized", sum.max_generalized}, {"resamples", sum.resamples},
                   {"case_tally", tally},              {"all_ok", sum.all_ok()}};
        if (samples == 0) {
            sweep["warning"] = "0 samples requested: vacuous pass";
            std::cerr << "warning: 0 samples requested, sweep passes vacuously\n";
        }
        json fails = json::array();
        for (const auto& f : sum.failures) {
            json jf{{"index", f.index}, {"report", verify_report_to_json(f.report)}};
            if (f.invariant_violation) jf["invariant_violation"] = *f.invariant_violation;
            fails.push_back(jf);
        }
        if (!fails.empty()) sweep["failures"] = fails;
        j["sweep"] = sweep;
        ok = ok && sum.all_ok();
    }

    // the thin example always participates unless explicitly running it alone
    std::string diag;
    bool self_similar = verify_self_similarity(thin_eigen_params(), &diag);
    bool product_ok = verify_matrix_product(&diag);
    j["thin"] = json{{"self_similar", self_similar}, {"matrix_product_ok", product_ok}};
    ok = ok && self_similar && product_ok;

    j["all_ok"] = ok;
    write_output(output, dump(j));
    return ok ? kExitOk : kExitMismatch;
}

template <ExactOrderedField F>
int cmd_scan(const SymmetricParams<F>& p, long max_generalized, const Rational& epsilon,
             const std::string& output) {
    F eps = [&] {
        if constexpr (std::is_same_v<F, NFElem>)
            return NFElem(epsilon);
        else
            return epsilon;
    }();
    auto rep = thin_scan(p, max_generalized, eps);
    write_output(output, dump(thin_report_to_json(rep)));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Rauzy induction on oriented interval identification systems of order 3"};
    app.require_subcommand(1);

    std::string params_text, output, side = "right", format = "svg", stop = "symmetric";
    std::string point_text, trace_path, epsilon_text = "1/1000000";
    long max_steps = 2000, max_generalized = 12, samples = 1000, height = 50, rounds = 1;
    std::uint64_t seed = 7;
    std::size_t max_orbit = 10000;
    int threads = 0;
    bool serial = false, thin_only = false;

    auto add_params = [&](CLI::App* c, bool required = true) {
        auto* opt = c->add_option("-p,--params", params_text,
                                  "a,b,c,u as exact rationals (e.g. 10,4,1,2) or 'thin'");
        if (required) opt->required();
    };
    auto add_output = [&](CLI::App* c) {
        c->add_option("-o,--output", output, "output file (default stdout; relative paths join $IIS_OUTPUT_DIR)");
    };

    auto* c_classify = app.add_subcommand("classify", "case label, counts, hole flag, candidate matrices");
    add_params(c_classify);
    add_output(c_classify);

    auto* c_induce = app.add_subcommand("induce", "run ordinary iterations, print the trace");
    add_params(c_induce);
    add_output(c_induce);
    c_induce->add_option("--side", side, "left or right")->check(CLI::IsMember({"left", "right"}));
    c_induce->add_option("--max-steps", max_steps, "ordinary-iteration cap");
    c_induce->add_option("--rounds", rounds, "consecutive symmetrization rounds to chain");
    c_induce->add_option("--stop", stop, "stop condition")
        ->check(CLI::IsMember({"symmetric", "hole-only"}));

    auto* c_symmetrize = app.add_subcommand("symmetrize", "induce until symmetric again (or hole)");
    add_params(c_symmetrize);
    add_output(c_symmetrize);
    c_symmetrize->add_option("--max-steps", max_steps, "ordinary-iteration cap");

    auto* c_thin = app.add_subcommand("thin-check", "verify the thin example end to end");
    add_output(c_thin);
    c_thin->add_option("--max-generalized", max_generalized, "scanner depth cap");
    c_thin->add_option("--epsilon", epsilon_text, "scanner support-length stop threshold (rational)");

    auto* c_orbit = app.add_subcommand("orbit", "orbit of a point under the identifications");
    add_params(c_orbit);
    add_output(c_orbit);
    c_orbit->add_option("-x,--point", point_text, "rational point in the support")->required();
    c_orbit->add_option("--max-size", max_orbit, "orbit size cap");

    auto* c_render = app.add_subcommand("render", "draw a trace (SVG 1.1 or ASCII)");
    add_params(c_render, false);
    add_output(c_render);
    c_render->add_option("--trace", trace_path, "trace JSON file (alternative to --params)");
    c_render->add_option("--side", side, "left or right")->check(CLI::IsMember({"left", "right"}));
    c_render->add_option("--max-steps", max_steps, "ordinary-iteration cap");
    c_render->add_option("--rounds", rounds, "consecutive symmetrization rounds to chain");
    c_render->add_option("--format", format, "svg or ascii")
        ->check(CLI::IsMember({"svg", "ascii"}));

    auto* c_verify = app.add_subcommand("verify", "randomized dual-route sweep + thin example");
    add_output(c_verify);
    c_verify->add_option("--samples", samples, "number of seeded samples");
    c_verify->add_option("--seed", seed, "sweep seed");
    c_verify->add_option("--height", height, "max numerator/denominator of drawn rationals");
    c_verify->add_option("--max-steps", max_steps, "ordinary-iteration cap per sample");
    c_verify->add_option("--threads", threads, "worker threads (0 = default)");
    c_verify->add_flag("--serial", serial, "use the serial reference driver");
    c_verify->add_flag("--thin", thin_only, "run only the thin-example checks");

    auto* c_scan = app.add_subcommand("scan", "thin-type scanner: iterate and watch support decay");
    add_params(c_scan);
    add_output(c_scan);
    c_scan->add_option("--max-generalized", max_generalized, "depth cap");
    c_scan->add_option("--epsilon", epsilon_text, "support-length stop threshold (rational)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*c_thin) return cmd_thin_check(max_generalized, Rational::parse(epsilon_text), output);
        if (*c_verify)
            return cmd_verify(samples, seed, height, max_steps, threads, serial, thin_only, output);
        if (*c_render && params_text.empty()) {
            if (trace_path.empty())
                throw std::invalid_argument("render: need --params or --trace");
            return cmd_render_file(trace_path, format, output);
        }

        ParamsVariant pv = parse_params(params_text);
        return std::visit(
            [&](const auto& p) -> int {
                if (*c_classify) return cmd_classify(p, output);
                if (*c_induce)
                    return cmd_induce(p, parse_side(side), max_steps, rounds,
                                      stop == "hole-only", output);
                if (*c_symmetrize) return cmd_symmetrize(p, max_steps, output);
                if (*c_orbit) return cmd_orbit(p, point_text, max_orbit, output);
                if (*c_render) {
                    auto trace = run_rounds(build_special_symmetric(p), parse_side(side),
                                            max_steps, rounds, StopWhen::symmetric);
                    return render_trace(trace, format, output);
                }
                if (*c_scan)
                    return cmd_scan(p, max_generalized, Rational::parse(epsilon_text), output);
                return kExitUsage;
            },
            pv);
    } catch (const DegenerateError& e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitMismatch;
    }
}
