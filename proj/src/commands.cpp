#include "cubetile/commands.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "cubetile/classification.hpp"
#include "cubetile/constructions.hpp"
#include "cubetile/oracle.hpp"

namespace cubetile {

namespace {

std::string text_value(const Json& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

void append_text(std::ostringstream& os, const Json& j)
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "codes") {
            for (const auto& rec : it.value()) os << rec.dump() << '\n';
        } else {
            os << it.key() << ": " << text_value(it.value()) << '\n';
        }
    }
}

CommandResult ok(Json payload)
{
    CommandResult r;
    r.payload = std::move(payload);
    return r;
}

CommandResult failure(const std::string& msg, int code = 1)
{
    CommandResult r;
    r.ok = false;
    r.exit_code = code;
    r.payload = Json{{"status", "error"}, {"error", msg}};
    return r;
}

Json params_json(const Params& p)
{
    return Json{{"n", p.n}, {"e", p.e}, {"q", p.q}, {"t", p.t()}};
}

Json linear_record(const LinearCode& c, bool words)
{
    Json j = to_json(c, words);
    j["structure"] = group_structure(c).to_string();
    return j;
}

HeightFunction heights_for(const ConstructRequest& req, const Params& p, std::mt19937_64& rng)
{
    HeightFunction h{p.t(), req.heights};
    if (h.values.empty()) {
        std::uniform_int_distribution<std::int64_t> dist(0, p.q - 1);
        for (std::int64_t k = 0; k < p.t(); ++k) h.values.push_back(dist(rng));
    }
    if (static_cast<std::int64_t>(h.values.size()) != p.t()) {
        throw std::invalid_argument("--heights needs exactly t = " + std::to_string(p.t()) + " values");
    }
    return h;
}

CodeDocument input_at(const ConstructRequest& req, std::size_t i)
{
    if (req.inputs.size() <= i) {
        throw std::invalid_argument("construct " + req.kind + " needs " + std::to_string(i + 1) + " input code(s)");
    }
    return parse_code_document(req.inputs[i]);
}

std::int64_t radius_of(const CodeDocument& doc)
{
    const auto rep = doc.linear ? is_perfect(*doc.linear) : is_perfect(*doc.code);
    if (!rep.perfect) throw std::domain_error("input code is not perfect: " + rep.reason);
    return rep.e;
}

Json code_output(const Code& c, const std::optional<LinearCode>& lin, bool words)
{
    if (lin) return linear_record(*lin, words);
    return to_json(c);
}

}  // namespace

Json envelope(const CommandResult& r)
{
    Json j{{"status", r.ok ? "ok" : "error"}};
    for (auto it = r.payload.begin(); it != r.payload.end(); ++it) {
        if (it.key() != "status") j[it.key()] = it.value();
    }
    if (r.records) j["codes"] = *r.records;
    if (r.text) j["grid"] = *r.text;
    if (!r.warnings.empty()) j["warnings"] = r.warnings;
    return j;
}

std::string format_result(const CommandResult& r, const std::string& format)
{
    std::ostringstream os;
    if (format == "text") {
        if (r.text && r.ok) return *r.text;
        append_text(os, envelope(r));
        return os.str();
    }
    if (format == "jsonl" && r.records && r.ok) {
        for (const auto& rec : *r.records) os << rec.dump() << '\n';
        return os.str();
    }
    const Json j = envelope(r);
    os << (format == "jsonl" ? j.dump() : j.dump(2)) << '\n';
    return os.str();
}

CommandResult guarded(const std::function<CommandResult()>& body)
{
    try {
        return body();
    } catch (const InputError& e) {
        return failure(std::string("invalid input: ") + e.what());
    } catch (const BudgetExceeded& e) {
        return failure(std::string("budget exceeded: ") + e.what());
    } catch (const OverflowError& e) {
        return failure(std::string("overflow: ") + e.what());
    } catch (const std::invalid_argument& e) {
        return failure(e.what());
    } catch (const std::domain_error& e) {
        return failure(e.what());
    } catch (const std::length_error& e) {
        return failure(e.what());
    }
}

// ---------------------------------------------------------------- verify

CommandResult cmd_verify(const std::string& input, const CommonOptions& opt)
{
    const auto doc = parse_code_document(input);
    Json out;
    std::optional<LinearCode> lin = doc.linear;
    PerfectnessReport rep;
    std::vector<std::size_t> types;
    if (doc.linear) {
        rep = is_perfect(*doc.linear);
        types = code_type(*doc.linear, rep.e);
    } else {
        rep = is_perfect(*doc.code, opt.max_cells);
        types = code_type(*doc.code, rep.e);
        lin = as_linear(*doc.code);
    }
    out["perfect"] = rep.perfect;
    out["e"] = rep.e;
    out["dist"] = rep.dist;
    out["size"] = to_json(rep.size);
    out["types"] = index_list(types);
    out["standard"] = !types.empty();
    out["linear"] = lin.has_value();
    if (lin) {
        const auto s = group_structure(*lin);
        out["structure"] = s.to_string();
        out["divisors"] = to_json(s).at("divisors");
        if (rep.perfect && rep.size > 1) {
            const auto perm = associated_permutation(*lin, rep.e);
            out["permutation"] = index_list(perm.perm);
        }
    }
    out["certificate"] = to_json(rep);
    return ok(std::move(out));
}

// ------------------------------------------------------------- construct

CommandResult cmd_construct(const ConstructRequest& req, const CommonOptions& opt)
{
    std::mt19937_64 rng(opt.seed);
    const std::string& kind = req.kind;
    std::optional<LinearCode> lin;
    Code code;
    std::int64_t e = req.e;
    Json extra = Json::object();

    if (kind == "cartesian") {
        lin = cartesian_code(Params::make(req.n, req.e, req.q));
    } else if (kind == "lc") {
        lin = lc_code(req.e, req.q, req.k);
        extra["alternative_gen"] = to_json(lc_alternative_generator(req.e, req.q, req.k));
        extra["same_code"] = LinearCode::from_generators(req.q, lc_alternative_generator(req.e, req.q, req.k)) == *lin;
    } else if (kind == "cyclic") {
        lin = cyclic_family(Params::make(req.n, req.e, req.q));
    } else if (kind == "horizontal" || kind == "vertical") {
        const auto p = Params::make(2, req.e, req.q);
        const auto h = heights_for(req, p, rng);
        code = kind == "horizontal" ? horizontal(req.a, h, p) : vertical(req.a, h, p);
        extra["heights"] = h.values;
        lin = as_linear(code);
    } else if (kind == "product") {
        const auto a = input_at(req, 0);
        const auto b = input_at(req, 1);
        e = radius_of(a);
        if (a.linear && b.linear) {
            lin = cartesian_product(*a.linear, *b.linear);
        } else {
            code = cartesian_product(a.words(), b.words());
        }
    } else if (kind == "linear") {
        const auto a = input_at(req, 0);
        e = radius_of(a);
        const auto base = a.linear ? a.linear : as_linear(*a.code);
        if (!base) throw std::domain_error("linear construction needs a linear input code");
        lin = linear_construction(*base, req.x, e);
    } else if (kind == "nonlinear") {
        const auto a = input_at(req, 0);
        e = radius_of(a);
        const Code base = a.words();
        std::map<Word, std::int64_t> h;
        if (!req.heights.empty() && req.heights.size() != base.size()) {
            throw std::invalid_argument("--heights needs one value per codeword (" + std::to_string(base.size()) + ")");
        }
        std::uniform_int_distribution<std::int64_t> dist(0, base.q() - 1);
        for (std::size_t i = 0; i < base.size(); ++i) {
            h[base.words()[i]] = req.heights.empty() ? dist(rng) : req.heights[i];
        }
        code = nonlinear_construction(base, h, e);
        lin = as_linear(code);
    } else if (kind == "section") {
        const auto a = input_at(req, 0);
        e = radius_of(a);
        std::vector<std::size_t> idx;
        for (auto c : req.coords) {
            if (c == 0) throw std::invalid_argument("section indices are 1-based");
            idx.push_back(c - 1);
        }
        std::vector<std::size_t> keep;
        if (a.linear) {
            const auto types = code_type(*a.linear, e);
            const bool all_types = std::all_of(idx.begin(), idx.end(), [&](std::size_t i) {
                return std::find(types.begin(), types.end(), i) != types.end();
            });
            if (all_types) {
                auto s = section_linear(*a.linear, idx, e);
                lin = s.code;
                keep = s.coords;
            }
        }
        if (!lin) {
            auto s = section(a.words(), idx, e);
            code = s.code;
            keep = s.coords;
            lin = as_linear(code);
        }
        extra["coords"] = index_list(keep);
    } else {
        throw std::invalid_argument("unknown construction \"" + kind + "\"");
    }

    const auto rep = lin ? is_perfect(*lin) : is_perfect(code, opt.max_cells);
    if (lin && code.size() == 0 && req.words) code = lin->expand();
    Json out{{"kind", kind}};
    const Json body = code_output(code, lin, req.words);
    for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
    out["perfect"] = rep.perfect;
    out["e"] = rep.e;
    for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = it.value();
    return ok(std::move(out));
}

// ------------------------------------------------------------- enumerate

CommandResult cmd_enumerate(const Params& p, const EnumerateFlags& flags, const CommonOptions& opt)
{
    const int modes = int(flags.ordered) + int(flags.maximal) + int(flags.oracle);
    if (modes > 1) return failure("choose at most one of --ordered, --maximal, --oracle", 2);
    CommandResult res;
    if (flags.oracle) {
        auto codes = oracle_all_perfect(p, opt.max_cells);
        std::optional<Integer> expected;
        if (p.n == 2 && p.t() >= 2) expected = count_all_2d(p.e, p.q);
        if (p.n == 1) expected = Integer(static_cast<long>(p.side()));
        const Integer found = static_cast<unsigned long>(codes.size());
        if (expected && *expected != found) {
            return failure("oracle found " + found.get_str() + " codes but the closed form gives " + expected->get_str());
        }
        if (!expected) res.warnings.push_back("no closed-form count for n = " + std::to_string(p.n));
        if (flags.classes) {
            res.payload = to_json(classify_codes(p, std::move(codes)), flags.words);
        } else {
            std::vector<Json> recs;
            for (const auto& c : codes) recs.push_back(to_json(c));
            res.payload = Json{{"params", params_json(p)}, {"count", to_json(found)}};
            res.records = std::move(recs);
        }
        if (expected) res.payload["formula_count"] = to_json(*expected);
        return res;
    }
    ClassReport rep;
    if (flags.maximal || (!flags.ordered && p.n != 2)) {
        rep = enumerate_ordered_maximal(p, opt.max_matrices);
    } else {
        if (p.n != 2) return failure("--ordered enumerates two-dimensional codes only; use --maximal or --oracle");
        rep = enumerate_2d(p.e, p.q);
    }
    if (flags.classes) {
        res.payload = to_json(rep, flags.words);
        return res;
    }
    std::vector<Json> recs;
    for (const auto& rc : rep.codes) {
        Json j = linear_record(*rc.linear, flags.words);
        if (rc.parameter) j["k"] = *rc.parameter;
        recs.push_back(std::move(j));
    }
    res.payload = Json{{"params", params_json(p)}, {"count", recs.size()}};
    res.records = std::move(recs);
    return res;
}

// -------------------------------------------------------------- classify

CommandResult cmd_classify(const std::string& input, const CommonOptions&)
{
    const auto doc = parse_code_document(input);
    std::optional<LinearCode> lin = doc.linear;
    if (!lin) lin = as_linear(*doc.code);
    if (!lin) return failure("classify needs a linear code");
    const auto rep = is_perfect(*lin);
    if (!rep.perfect) return failure("classify needs a perfect code: " + rep.reason);
    const auto p = Params::make(lin->dim(), rep.e, lin->q());
    const auto perm = associated_permutation(*lin, rep.e);
    const auto theta = ordering_permutation(*lin, rep.e);
    const auto ordered = apply_isometry(theta, *lin);
    const auto pm = perfect_generator_matrix(ordered, rep.e);
    const auto check = is_perfect_matrix(pm, rep.e, lin->q());
    Json out;
    out["params"] = params_json(p);
    out["structure"] = group_structure(*lin).to_string();
    out["permutation"] = index_list(perm.perm);
    out["ordering"] = to_json(theta);
    out["ordered_gen"] = to_json(ordered.hermite());
    out["perfect_matrix"] = to_json(pm);
    out["perfect_matrix_check"] = check.perfect;
    if (check.certificate) {
        out["certificate"] = Json{{"A", to_json(check.certificate->A)}, {"B", to_json(check.certificate->B)}};
    }
    out["maximal"] = is_maximal(p);
    out["cyclic_pair"] = is_cyclic_pair(p);
    return ok(std::move(out));
}

// ----------------------------------------------------------------- count

CommandResult cmd_count(const Params& p, const CommonOptions&)
{
    Json out;
    out["params"] = params_json(p);
    const auto ex = existence_predicates(p.e, p.q);
    out["existence"] = Json{{"perfect_code", ex.perfect_code_exists},
                            {"nontrivial_q_ary", ex.nontrivial_q_ary_exists},
                            {"noncartesian_linear_2d", ex.noncartesian_linear_2d_exists},
                            {"cyclic_2d", ex.cyclic_2d_exists}};
    if (p.t() < 2) return ok(std::move(out));
    out["maximal"] = is_maximal(p);
    out["cyclic_pair"] = is_cyclic_pair(p);
    if (p.n == 2) {
        const std::int64_t d1 = d1_of(p.e, p.q);
        out["all_codes_2d"] = to_json(count_all_2d(p.e, p.q));
        out["d1"] = d1;
        out["ordered_linear_codes"] = d1;
        out["isometry_classes"] = (d1 + 1) / 2;
        std::int64_t sigma = 0;
        for (std::int64_t d = 1; d <= d1; ++d) sigma += d1 % d == 0;
        out["isomorphism_classes"] = sigma;
    }
    if (is_maximal(p)) {
        Integer side = static_cast<long>(p.side());
        Integer ordered;
        mpz_pow_ui(ordered.get_mpz_t(), side.get_mpz_t(), p.n * (p.n - 1) / 2);
        out["ordered_linear_codes"] = to_json(ordered);
        out["isomorphism_classes"] = to_json(count_isomorphism_classes_maximal(p.n, p.e));
    }
    const auto adm = admissible_structures(p);
    Json list = Json::array();
    for (const auto& s : adm.structures) list.push_back(s.to_string());
    out["admissible_structures"] = Json{{"regime", adm.regime}, {"complete", adm.complete}, {"structures", list}};
    return ok(std::move(out));
}

// ---------------------------------------------------------------- census

CommandResult cmd_census(const Params& p, const CommonOptions& opt)
{
    auto codes = oracle_all_perfect(p, opt.max_cells);
    std::size_t standard = 0;
    for (const auto& c : codes) standard += is_standard(c, p.e);
    const std::size_t total = codes.size();
    auto rep = classify_codes(p, std::move(codes));
    Json out;
    out["params"] = params_json(p);
    Json counts = Json::object();
    for (const auto& [k, v] : rep.counts) counts[k] = to_json(v);
    counts["standard_codes"] = standard;
    out["counts"] = counts;
    CommandResult res;
    if (p.n == 2 && p.t() >= 2) {
        const Integer expected = count_all_2d(p.e, p.q);
        out["formula_count"] = to_json(expected);
        if (expected != static_cast<unsigned long>(total)) {
            return failure("census found " + std::to_string(total) + " codes but the closed form gives " +
                           expected.get_str());
        }
    }
    Json structures = Json::object();
    if (rep.isomorphism_classes) {
        for (const auto& c : *rep.isomorphism_classes) structures[c.structure->to_string()] = c.members.size();
    }
    out["linear_structures"] = structures;
    if (rep.isometry_classes) {
        Json sizes = Json::array();
        for (const auto& c : *rep.isometry_classes) sizes.push_back(c.members.size());
        out["isometry_class_sizes"] = sizes;
    } else {
        res.warnings.push_back("isometry classes are not computed for q <= 3");
    }
    res.payload = std::move(out);
    return res;
}

// ---------------------------------------------------------------- render

CommandResult cmd_render(const std::string& input, bool balls, const CommonOptions&)
{
    const auto doc = parse_code_document(input);
    const Code code = doc.words();
    if (code.dim() != 2) return failure("render needs a two-dimensional code");
    const std::int64_t q = code.q();
    if (q > 60) return failure("render supports q <= 60");
    std::vector<std::string> grid(static_cast<std::size_t>(q), std::string(static_cast<std::size_t>(q), '.'));
    std::int64_t e = 0;
    if (balls) {
        const auto rep = is_perfect(code);
        e = code.size() > 1 ? rep.e : 0;
        for (std::size_t i = 0; i < code.size(); ++i) {
            const auto& w = code.words()[i];
            const char mark = static_cast<char>('a' + i % 26);
            for (std::int64_t dx = -e; dx <= e; ++dx) {
                for (std::int64_t dy = -e; dy <= e; ++dy) {
                    const auto x = static_cast<std::size_t>(((w[0] + dx) % q + q) % q);
                    const auto y = static_cast<std::size_t>(((w[1] + dy) % q + q) % q);
                    char& cell = grid[y][x];
                    cell = cell == '.' ? mark : '*';
                }
            }
        }
    }
    for (const auto& w : code.words()) grid[static_cast<std::size_t>(w[1])][static_cast<std::size_t>(w[0])] = 'C';
    std::string text;
    for (std::size_t y = grid.size(); y-- > 0;) {
        for (std::size_t x = 0; x < grid[y].size(); ++x) {
            if (x) text += ' ';
            text += grid[y][x];
        }
        text += '\n';
    }
    CommandResult res;
    res.payload = Json{{"q", q}, {"codewords", code.size()}, {"balls", balls}, {"radius", e}};
    res.text = std::move(text);
    return res;
}

}  // namespace cubetile
