// multifiber - calculator for linear systems with multiple base points on
// products of projective lines.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "multifiber/multifiber.hpp"

using nlohmann::json;
using namespace multifiber;

namespace {

constexpr const char* kOracleNote =
    "dim_affine is an upper bound certified by random specialization; it can "
    "exceed the very-general value only with probability on the order of "
    "deg/p per trial, and dim_affine == vcount certifies non-speciality "
    "unconditionally";

Int default_prime() {
    if (const char* env = std::getenv("MULTIFIBER_PRIME")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end == env || *end != '\0' || v <= 2)
            throw std::invalid_argument("MULTIFIBER_PRIME is not a usable prime");
        return v;
    }
    return 2147483647;
}

json dims_json(const DivisorClassY& D) {
    auto rep = dim_report(D);
    return {{"vcount", rep.vcount}, {"vdim", rep.vdim},   {"edim", rep.edim},
            {"fcount", rep.fcount}, {"fdim", rep.fdim},   {"efdim", rep.efdim}};
}

json std_json(const ReductionTrace& trace, bool with_steps) {
    json out;
    out["outcome"] = trace.is_empty() ? "empty" : "reduced";
    out["result"] = trace.is_empty() ? json() : json(render_system(*trace.outcome));
    out["is_pre_standard"] = trace.is_empty() ? false : is_pre_standard(*trace.outcome);
    out["is_standard"] = trace.is_empty() ? false : is_standard(*trace.outcome);
    if (with_steps) {
        json steps = json::array();
        for (const auto& s : trace.steps) steps.push_back(render_system(s));
        out["steps"] = steps;
    }
    return out;
}

json oracle_json(const InterpReport& rep) {
    return {{"cols", rep.cols},
            {"rows", rep.rows},
            {"rank", rep.rank},
            {"dim_affine", rep.dim_affine},
            {"dim_proj", rep.dim_proj},
            {"prime", rep.prime},
            {"seed", rep.seed},
            {"trials", rep.trials},
            {"note", kOracleNote}};
}

json trace_json(const DegenTrace& tr) {
    json out;
    out["system"] = render_system(tr.system);
    out["standard"] = tr.standard ? json(render_system(*tr.standard)) : json();
    out["base"] = tr.base;
    out["vcount"] = tr.vcount_sys;
    out["fcount"] = tr.fcount_sys;
    out["vcount_std"] = tr.vcount_std;
    out["fcount_std"] = tr.fcount_std;
    if (tr.base == "split") {
        out["k"] = tr.k;
        out["s"] = tr.s;
    }
    json kids = json::array();
    for (const auto& c : tr.children) kids.push_back(trace_json(c));
    out["children"] = kids;
    return out;
}

json verdict_json(const Verdict& v, bool with_trace) {
    json out;
    out["verdict"] = to_string(v.kind);
    out["standard"] = v.standard ? json(render_system(*v.standard)) : json();
    out["vcount_input"] = v.vcount_input;
    out["fcount_input"] = v.fcount_input;
    out["vcount_std"] = v.vcount_std;
    out["fcount_std"] = v.fcount_std;
    out["certified_count"] = v.certified_count ? json(*v.certified_count) : json();
    out["truncated"] = v.truncated;
    if (with_trace && v.trace) out["trace"] = trace_json(*v.trace);
    return out;
}

void print_trace_text(const DegenTrace& tr, int indent) {
    const std::string pad(static_cast<size_t>(indent) * 2, ' ');
    std::cout << pad << render_system(tr.system);
    if (tr.standard && !(tr.standard == tr.system))
        std::cout << "  ~>  " << render_system(*tr.standard);
    std::cout << "  [" << tr.base;
    if (tr.base == "split") std::cout << " k=" << tr.k << " s=" << tr.s;
    std::cout << "]\n";
    for (const auto& c : tr.children) print_trace_text(c, indent + 1);
}

struct GlobalOpts {
    std::string format = "text";
    bool json() const { return format == "json"; }
};

void emit(const GlobalOpts& g, const json& payload, const std::string& text) {
    if (g.json())
        std::cout << payload.dump() << "\n";
    else
        std::cout << text;
}

std::string dims_text(const DivisorClassY& D) {
    auto rep = dim_report(D);
    std::string out;
    out += "system      " + render_system(D) + "\n";
    out += "vcount      " + std::to_string(rep.vcount) + "   (vdim " +
           std::to_string(rep.vdim) + ", edim " + std::to_string(rep.edim) + ")\n";
    out += "fcount      " + std::to_string(rep.fcount) + "   (fdim " +
           std::to_string(rep.fdim) + ", efdim " + std::to_string(rep.efdim) + ")\n";
    return out;
}

int run_selftest(const GlobalOpts& g) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        if (!ok) ++failures;
        if (!g.json())
            std::cout << (ok ? "ok    " : "FAIL  ") << name << "\n";
    };

    const DivisorClassY ex1({13, 9, 5}, {11, 11, 7, 7, 3, 3});
    const DivisorClassY ex1std({5, 5, 5}, {3, 3, 3, 3, 3, 3});
    const DivisorClassY seven(std::vector<Int>(7, 1), {3, 3, 3});

    auto red = standard_form(ex1);
    check("reduction reaches (5,5,5)(3^6)",
          !red.is_empty() && *red.outcome == ex1std &&
              red.steps.size() == 2 &&
              red.steps[0] == DivisorClassY({9, 5, 5}, {7, 7, 3, 3, 3, 3}));

    check("counts of the degree (13,9,5) system",
          vcount(ex1) == 80 && fcount(ex1) == 154);
    check("counts of the reduced system", vcount(ex1std) == 156 && fcount(ex1std) == 156);
    check("counts of the seven-fold system", vcount(seven) == 20 && fcount(seven) == 41);

    InterpConfig cfg;
    cfg.prime = default_prime();
    auto o1 = dim_oracle(ex1std, cfg);
    check("oracle dimension 156 on a 60x216 matrix",
          o1.dim_affine == 156 && o1.rows == 60 && o1.cols == 216);
    auto o2 = dim_oracle(seven, cfg);
    check("oracle dimension 42 with rank 86 on a 87x128 matrix",
          o2.dim_affine == 42 && o2.rank == 86 && o2.rows == 87 && o2.cols == 128);
    {
        bool ok = true;
        for (Int n = 1; n <= 4; ++n) {
            DivisorClassY nQ({n, n, n}, std::vector<Int>(7, n));
            ok = ok && dim_oracle(nQ, cfg).dim_affine == 1;
        }
        check("quadric multiples keep section count 1", ok);
    }

    auto v1 = speciality(ex1);
    bool trace_ok = false;
    if (v1.trace) {
        std::function<bool(const DegenTrace&)> find = [&](const DegenTrace& tr) {
            if (tr.system == DivisorClassY({5, 5, 2}, {3, 3, 3})) return true;
            for (const auto& c : tr.children)
                if (find(c)) return true;
            return false;
        };
        trace_ok = find(*v1.trace);
    }
    check("degeneration certifies the reduced system",
          v1.kind == VerdictKind::NonSpecial && v1.certified_count == 156 && trace_ok);
    check("degeneration is undecided on the seven-fold system",
          speciality(seven).kind == VerdictKind::Undecided);

    check("quadric restriction characteristic",
          q_value(DivisorClassY({1, 1, 1}, std::vector<Int>(7, 1))) == 0 &&
              q_value(ex1std) == 55 &&
              q_value(DivisorClassY({2, 2, 2}, std::vector<Int>(7, 2))) == -2);

    {
        bool ok = conjecture_test(ex1std, cfg).agree;
        for (Int n = 1; n <= 2; ++n) {
            DivisorClassY nQ({n, n, n}, std::vector<Int>(7, n));
            ok = ok && conjecture_test(nQ, cfg).agree;
        }
        check("conjecture harness agrees on the worked cases", ok);
    }

    check("notation round trip",
          render_system(parse_system("(13,9,5)(11^2,7^2,3^2)")) == "(13,9,5)(11^2,7^2,3^2)");

    if (g.json())
        std::cout << json{{"failures", failures}}.dump() << "\n";
    else
        std::cout << (failures ? "selftest FAILED\n" : "selftest passed\n");
    return failures ? 1 : 0;
}

struct BatchTask {
    std::size_t lineno;
    std::string text;
};

int run_batch(const GlobalOpts& g, const std::string& file, int jobs, bool with_oracle,
              bool with_verdict, const InterpConfig& cfg, const DegenLimits& limits) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open batch file: " + file);
    std::vector<BatchTask> tasks;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char c : line) blank = blank && std::isspace(static_cast<unsigned char>(c));
        if (!blank) tasks.push_back({lineno, line});
    }

    std::vector<json> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> any_parse_error{false};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            json out;
            out["line"] = tasks[i].lineno;
            out["input"] = tasks[i].text;
            try {
                auto D = parse_system(tasks[i].text);
                out["system"] = render_system(D);
                out["dims"] = dims_json(D);
                out["std"] = std_json(standard_form(D), false);
                if (with_oracle) out["oracle"] = oracle_json(dim_oracle(D, cfg));
                if (with_verdict) out["verdict"] = verdict_json(speciality(D, limits), false);
            } catch (const ParseError& e) {
                out["error"] = e.what();
                any_parse_error = true;
            } catch (const std::exception& e) {
                out["error"] = e.what();
            }
            results[i] = std::move(out);
        }
    };
    const int n_threads = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    for (const auto& r : results) {
        if (g.json()) {
            std::cout << r.dump() << "\n";
        } else {
            std::cout << "line " << r["line"].get<std::size_t>() << ": ";
            if (r.contains("error"))
                std::cout << "error: " << r["error"].get<std::string>() << "\n";
            else {
                std::cout << r["system"].get<std::string>()
                          << "  vcount=" << r["dims"]["vcount"].get<Int>()
                          << " fcount=" << r["dims"]["fcount"].get<Int>();
                if (r.contains("oracle"))
                    std::cout << " dim_affine=" << r["oracle"]["dim_affine"].get<Int>();
                if (r.contains("verdict"))
                    std::cout << " verdict=" << r["verdict"]["verdict"].get<std::string>();
                std::cout << "\n";
            }
        }
    }
    return any_parse_error ? 2 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear systems with multiple base points on (P^1)^n"};
    app.require_subcommand(1);

    GlobalOpts global;
    app.add_option("--format", global.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    std::string system_text;
    InterpConfig cfg;
    DegenLimits limits;
    Int prime_opt = 0;
    bool with_trace = false;

    auto* c_dims = app.add_subcommand("dims", "expected and fiber-corrected counts");
    c_dims->add_option("system", system_text, "system notation")->required();

    auto* c_std = app.add_subcommand("std", "Weyl reduction to standard form");
    c_std->add_option("system", system_text)->required();
    c_std->add_flag("--trace", with_trace, "print each reduction step");

    auto* c_dim = app.add_subcommand("dim", "finite-field dimension oracle");
    c_dim->add_option("system", system_text)->required();
    c_dim->add_option("--prime", prime_opt, "modulus (default 2^31-1 or MULTIFIBER_PRIME)");
    c_dim->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    c_dim->add_option("--trials", cfg.trials, "independent point samples")
        ->capture_default_str();

    auto* c_degen = app.add_subcommand("degen", "speciality by degeneration");
    c_degen->add_option("system", system_text)->required();
    c_degen->add_option("--max-depth", limits.max_depth, "recursion depth limit")
        ->capture_default_str();
    c_degen->add_flag("--strict-compat", limits.strict_compat,
                      "use the >= two-point rule instead of the strict > correction");

    auto* c_conj = app.add_subcommand("conjecture",
                                      "quadric-reduction prediction vs oracle (n = 3)");
    c_conj->add_option("system", system_text)->required();
    c_conj->add_option("--prime", prime_opt);
    c_conj->add_option("--seed", cfg.seed)->capture_default_str();
    c_conj->add_option("--trials", cfg.trials)->capture_default_str();

    auto* c_phi = app.add_subcommand("phi", "transport classes between P^n and (P^1)^n");
    std::string direction;
    int phi_n = 0;
    c_phi->add_option("direction", direction, "push (P^n -> (P^1)^n) or pull")
        ->check(CLI::IsMember({"push", "pull"}))
        ->required();
    c_phi->add_option("class", system_text, "class notation")->required();
    c_phi->add_option("--n", phi_n, "ambient dimension (required for push)");

    auto* c_batch = app.add_subcommand("batch", "process one system per line");
    std::string batch_file;
    int jobs = 1;
    bool batch_oracle = false, batch_verdict = false;
    c_batch->add_option("file", batch_file, "input file, '#' comments")->required();
    c_batch->add_option("--jobs", jobs, "worker threads")->capture_default_str();
    c_batch->add_flag("--oracle", batch_oracle, "include the dimension oracle");
    c_batch->add_flag("--degen", batch_verdict, "include the degeneration verdict");
    c_batch->add_option("--prime", prime_opt);
    c_batch->add_option("--seed", cfg.seed)->capture_default_str();
    c_batch->add_option("--trials", cfg.trials)->capture_default_str();

    auto* c_selftest = app.add_subcommand("selftest", "run the built-in example suite");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        cfg.prime = prime_opt > 0 ? prime_opt : default_prime();

        if (c_dims->parsed()) {
            auto D = parse_system(system_text);
            json out = {{"input", render_system(D)}, {"n", D.n()}, {"r", D.r()}};
            out.update(dims_json(D));
            emit(global, out, dims_text(D));
        } else if (c_std->parsed()) {
            auto D = parse_system(system_text);
            auto trace = standard_form(D);
            json out = {{"input", render_system(D)}};
            out.update(std_json(trace, true));
            std::string text;
            if (trace.is_empty())
                text = "empty\n";
            else {
                text = render_system(*trace.outcome) + "\n";
                if (with_trace)
                    for (const auto& s : trace.steps)
                        text += "  step " + render_system(s) + "\n";
            }
            emit(global, out, text);
        } else if (c_dim->parsed()) {
            auto D = parse_system(system_text);
            auto rep = dim_oracle(D, cfg);
            json out = {{"input", render_system(D)}};
            out.update(oracle_json(rep));
            std::string text = "matrix      " + std::to_string(rep.rows) + "x" +
                               std::to_string(rep.cols) + "  rank " +
                               std::to_string(rep.rank) + "\n" + "dim_affine  " +
                               std::to_string(rep.dim_affine) + "\n" + "dim_proj    " +
                               std::to_string(rep.dim_proj) + "\n";
            emit(global, out, text);
        } else if (c_degen->parsed()) {
            auto D = parse_system(system_text);
            auto v = speciality(D, limits);
            json out = {{"input", render_system(D)}};
            out.update(verdict_json(v, true));
            std::string text = std::string("verdict     ") + to_string(v.kind) + "\n";
            if (v.standard)
                text += "standard    " + render_system(*v.standard) + "  (vcount " +
                        std::to_string(v.vcount_std) + ", fcount " +
                        std::to_string(v.fcount_std) + ")\n";
            text += "input       vcount " + std::to_string(v.vcount_input) + ", fcount " +
                    std::to_string(v.fcount_input) + "\n";
            if (v.certified_count)
                text += "certified   dim_affine " + std::to_string(*v.certified_count) + "\n";
            if (v.truncated) text += "note        search truncated by depth limit\n";
            if (v.trace && !global.json()) {
                text += "trace:\n";
                std::cout << text;
                print_trace_text(*v.trace, 1);
                text.clear();
            }
            emit(global, out, text);
        } else if (c_conj->parsed()) {
            auto D = parse_system(system_text);
            auto rep = conjecture_test(D, cfg);
            json chain = json::array();
            std::string text;
            for (const auto& step : rep.chain) {
                chain.push_back({{"class", render_system(step.cls)},
                                 {"q", step.q},
                                 {"dim_affine", step.oracle.dim_affine}});
                text += render_system(step.cls) + "  q=" + std::to_string(step.q) +
                        "  dim_affine=" + std::to_string(step.oracle.dim_affine) + "\n";
            }
            json out = {{"input", render_system(D)},
                        {"chain", chain},
                        {"stop_reason", rep.stop_reason},
                        {"prediction", rep.terminal_prediction
                                           ? json(to_string(*rep.terminal_prediction))
                                           : json()},
                        {"predicted_count",
                         rep.predicted_count ? json(*rep.predicted_count) : json()},
                        {"agree", rep.agree}};
            if (rep.terminal_prediction)
                text += std::string("prediction  ") + to_string(*rep.terminal_prediction) +
                        (rep.predicted_count
                             ? " (count " + std::to_string(*rep.predicted_count) + ")"
                             : std::string()) +
                        "\n";
            text += std::string("agree       ") + (rep.agree ? "yes" : "no") + "\n";
            emit(global, out, text);
        } else if (c_phi->parsed()) {
            if (direction == "push") {
                if (phi_n < 2)
                    throw std::invalid_argument("phi push needs --n (ambient dimension >= 2)");
                auto X = parse_x_class(system_text, phi_n);
                auto Y = phi_push(X);
                json out = {{"direction", "push"},
                            {"n", phi_n},
                            {"input", render_x_class(X)},
                            {"result", render_system(Y)},
                            {"r", Y.r()}};
                emit(global, out, render_system(Y) + "\n");
            } else {
                auto Y = parse_system(system_text);
                auto X = phi_pull(Y);
                json out = {{"direction", "pull"},
                            {"n", Y.n()},
                            {"input", render_system(Y)},
                            {"result", render_x_class(X)},
                            {"s", X.s()}};
                emit(global, out, render_x_class(X) + "  (points: " +
                                      std::to_string(X.s()) + ")\n");
            }
        } else if (c_batch->parsed()) {
            return run_batch(global, batch_file, jobs, batch_oracle, batch_verdict, cfg,
                             limits);
        } else if (c_selftest->parsed()) {
            return run_selftest(global);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
