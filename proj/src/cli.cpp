#include "purity/cli.hpp"

#include "purity/fixtures.hpp"
#include "purity/report.hpp"
#include "purity/weight_ss.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <optional>
#include <unistd.h>

namespace purity {

namespace {

void on_alarm(int) {
    static const char msg[] = "error: timeout exceeded\n";
    ssize_t r = ::write(STDERR_FILENO, msg, sizeof(msg) - 1);
    (void)r;
    ::_exit(2);
}

struct Options {
    std::string format = "text";
    std::optional<int> max_dim, max_q;
    std::optional<double> max_work;
    unsigned timeout = 0;

    int n = 2, q = 2;
    std::optional<int> k;
    std::string divisor = "omega";
    bool skip_positivity = false;
    std::string fixture, input;
    bool lemmas = false, zeta = false;
    std::string fixture_name, output;
    bool list = false;

    ResourceLimits limits() const {
        ResourceLimits l = ResourceLimits::from_env();
        if (max_dim) l.max_dim = *max_dim;
        if (max_q) l.max_q = *max_q;
        if (max_work) l.max_work = *max_work;
        return l;
    }
};

int emit(const Json& rep, const Options& o, std::ostream& out) {
    if (o.format == "json")
        out << rep.dump(2) << "\n";
    else
        out << render_text(rep);
    return exit_code(rep);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact checks of hard Lefschetz, the Hodge standard conjecture and weight-monodromy purity"};
    app.name("purity");
    app.require_subcommand(1);
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--max-dim", o.max_dim, "Largest blow-up dimension to build");
    app.add_option("--max-q", o.max_q, "Largest field order");
    app.add_option("--max-work", o.max_work, "Intersection numbers allowed for basis selection");
    app.add_option("--timeout", o.timeout, "Seconds before giving up (0 = none)");

    auto* ring = app.add_subcommand("ring", "Betti numbers and numerical ring of B^n");
    ring->add_option("--n", o.n, "Dimension")->required();
    ring->add_option("--q", o.q, "Field order")->required();
    ring->add_option("--k", o.k, "Also print the pairing matrix in degree k");

    auto* hodge = app.add_subcommand("hodge", "Hard Lefschetz and Hodge standard for an invariant divisor on B^n");
    hodge->add_option("--n", o.n, "Dimension")->required();
    hodge->add_option("--q", o.q, "Field order")->required();
    hodge->add_option("--divisor", o.divisor, "\"omega\" or \"alpha,a_0,...\"");
    hodge->add_flag("--skip-positivity", o.skip_positivity, "Run the checks even when the divisor is not positive");

    auto* wss = app.add_subcommand("wss", "Weight spectral sequence of a semistable fiber");
    auto* fx = wss->add_option("--fixture", o.fixture, "Built-in fiber, e.g. tate-cycle:3,2");
    auto* in = wss->add_option("--input", o.input, "JSON description")->check(CLI::ExistingFile);
    fx->excludes(in);
    wss->add_flag("--check-lemmas", o.lemmas, "Run the image-splitting lemma suite");
    wss->add_flag("--zeta", o.zeta, "Local L-factors and zeta function");

    auto* fixture = app.add_subcommand("fixture", "Print a built-in fiber as JSON");
    fixture->add_option("name", o.fixture_name, "Fixture name with parameters");
    fixture->add_option("--output", o.output, "Write to a file instead of stdout");
    fixture->add_flag("--list", o.list, "List fixture names");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (o.timeout > 0) {
        std::signal(SIGALRM, on_alarm);
        ::alarm(o.timeout);
    }
    try {
        if (*ring) return emit(ring_report(o.n, o.q, o.k, o.limits()), o, out);
        if (*hodge) return emit(hodge_report(o.n, o.q, DivisorArg::parse(o.divisor), o.skip_positivity, o.limits()), o, out);
        if (*wss) {
            if (o.fixture.empty() && o.input.empty()) {
                err << "error: wss needs --fixture or --input\n";
                return 2;
            }
            Json desc;
            std::string label;
            if (!o.fixture.empty()) {
                desc = fixture_json(o.fixture);
                label = o.fixture;
            } else {
                std::ifstream f(o.input);
                try {
                    desc = Json::parse(f);
                } catch (const Json::parse_error& e) {
                    err << "error: " << o.input << " is not valid JSON: " << e.what() << "\n";
                    return 2;
                }
                label = o.input;
            }
            SemistableComplex cx = load_complex(desc, o.limits());
            return emit(wss_report(cx, label, WssOptions{o.lemmas, o.zeta}), o, out);
        }
        if (*fixture) {
            if (o.list) {
                for (const auto& n : fixture_names()) out << n << "\n";
                return 0;
            }
            if (o.fixture_name.empty()) {
                err << "error: fixture needs a name (see --list)\n";
                return 2;
            }
            Json j = fixture_json(o.fixture_name);
            if (o.output.empty()) {
                out << j.dump(2) << "\n";
            } else {
                std::ofstream f(o.output);
                if (!f) {
                    err << "error: cannot write " << o.output << "\n";
                    return 2;
                }
                f << j.dump(2) << "\n";
            }
            return 0;
        }
    } catch (const LoadError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        err << "refused: " << e.what() << "\n";
        return 2;
    } catch (const SpectralError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

}  // namespace purity
