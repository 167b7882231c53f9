#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "cubetile/commands.hpp"

using namespace cubetile;

namespace {

std::string read_input(const std::string& path)
{
    if (path.empty() || path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int emit(const CommandResult& r, const std::string& format)
{
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    if (!r.ok) {
        std::cerr << "error: " << r.payload.value("error", std::string("failed")) << '\n';
        if (format != "text") std::cout << format_result(r, format);
        return r.exit_code;
    }
    std::cout << format_result(r, format);
    return 0;
}

struct ParamArgs {
    std::size_t n = 2;
    std::int64_t e = 1;
    std::int64_t q = 0;

    void attach(CLI::App* app, bool need_n)
    {
        auto* opt_n = app->add_option("-n,--n", n, "dimension")->check(CLI::PositiveNumber);
        if (need_n) opt_n->required();
        app->add_option("-e,--e", e, "packing radius")->required()->check(CLI::NonNegativeNumber);
        app->add_option("-q,--q", q, "alphabet size")->required()->check(CLI::PositiveNumber);
    }
    Params get() const { return Params::make(n, e, q); }
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Perfect codes in the maximum metric over Z_q^n"};
    app.require_subcommand(1);
    app.fallthrough();
    CommonOptions opt;
    auto* format = app.add_option("--format", opt.format, "output format (render defaults to text)")
        ->check(CLI::IsMember({"json", "jsonl", "text"}))
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "random seed")->capture_default_str();
    app.add_option("--max-cells", opt.max_cells, "cell budget for exhaustive scans")->capture_default_str();
    app.add_option("--max-matrices", opt.max_matrices, "matrix budget for enumeration")->capture_default_str();

    std::string input;
    std::function<CommandResult()> action;

    auto* verify = app.add_subcommand("verify", "check perfection, type, structure of a code");
    verify->add_option("input", input, "code document (default stdin)");
    verify->callback([&] { action = [&] { return cmd_verify(read_input(input), opt); }; });

    ConstructRequest req;
    std::vector<std::string> input_files;
    auto* construct = app.add_subcommand("construct", "build a code");
    construct->add_option("kind", req.kind, "construction")
        ->required()
        ->check(CLI::IsMember(
            {"cartesian", "lc", "cyclic", "horizontal", "vertical", "product", "linear", "nonlinear", "section"}));
    construct->add_option("-n,--n", req.n, "dimension");
    construct->add_option("-e,--e", req.e, "packing radius");
    construct->add_option("-q,--q", req.q, "alphabet size");
    construct->add_option("-k,--k", req.k, "LC parameter");
    construct->add_option("-a,--a", req.a, "offset of the horizontal/vertical construction");
    construct->add_option("--heights", req.heights, "height function values");
    construct->add_option("-x,--x", req.x, "vector of the linear construction");
    construct->add_option("--coords", req.coords, "section indices (1-based)");
    construct->add_option("-i,--input", input_files, "input code document(s)");
    construct->add_flag("--words", req.words, "include codewords");
    construct->callback([&] {
        action = [&] {
            for (const auto& f : input_files) req.inputs.push_back(read_input(f));
            return cmd_construct(req, opt);
        };
    });

    ParamArgs enum_p;
    EnumerateFlags flags;
    auto* enumerate = app.add_subcommand("enumerate", "list perfect codes for (n, e, q)");
    enum_p.attach(enumerate, false);
    enumerate->add_flag("--ordered", flags.ordered, "type-2 linear codes, n = 2");
    enumerate->add_flag("--maximal", flags.maximal, "ordered linear codes of a maximal pair");
    enumerate->add_flag("--oracle", flags.oracle, "every perfect code by exact cover");
    enumerate->add_flag("--classes", flags.classes, "report isometry and isomorphism classes");
    enumerate->add_flag("--words", flags.words, "include codewords");
    enumerate->callback([&] { action = [&] { return cmd_enumerate(enum_p.get(), flags, opt); }; });

    auto* classify = app.add_subcommand("classify", "permutation and perfect matrix of a linear perfect code");
    classify->add_option("input", input, "code document (default stdin)");
    classify->callback([&] { action = [&] { return cmd_classify(read_input(input), opt); }; });

    ParamArgs count_p;
    auto* count = app.add_subcommand("count", "closed-form counts and existence");
    count_p.attach(count, false);
    count->callback([&] { action = [&] { return cmd_count(count_p.get(), opt); }; });

    ParamArgs census_p;
    auto* census = app.add_subcommand("census", "exhaustive census with class counts");
    census_p.attach(census, false);
    census->callback([&] { action = [&] { return cmd_census(census_p.get(), opt); }; });

    bool balls = false;
    auto* render = app.add_subcommand("render", "draw a two-dimensional code");
    render->add_option("input", input, "code document (default stdin)");
    render->add_flag("--balls", balls, "mark the ball around each codeword");
    render->callback([&] { action = [&] { return cmd_render(read_input(input), balls, opt); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (render->parsed() && format->count() == 0) opt.format = "text";
    return emit(guarded(action), opt.format);
}
