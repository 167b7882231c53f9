#include "cubetile/json_io.hpp"

#include <algorithm>
#include <set>

namespace cubetile {

namespace {

std::int64_t get_int(const Json& j, const std::string& what)
{
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_string()) {
        Integer v;
        if (v.set_str(j.get<std::string>(), 10) != 0) throw InputError(what + ": not an integer");
        return to_int64(v);
    }
    throw InputError(what + ": expected an integer");
}

Integer get_integer(const Json& j, const std::string& what)
{
    if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        Integer v;
        if (v.set_str(j.get<std::string>(), 10) != 0) throw InputError(what + ": not an integer");
        return v;
    }
    throw InputError(what + ": expected an integer");
}

}  // namespace

Code CodeDocument::words(std::size_t max_words) const
{
    if (code) return *code;
    return linear->expand(max_words);
}

CodeDocument code_document_from_json(const Json& j)
{
    if (!j.is_object()) throw InputError("code document must be a JSON object");
    if (!j.contains("q")) throw InputError("missing field \"q\"");
    const std::int64_t q = get_int(j.at("q"), "q");
    if (q < 1) throw InputError("q must be positive");
    const bool has_words = j.contains("words");
    const bool has_gen = j.contains("gen");
    if (!has_words && !has_gen) throw InputError("one of \"words\" or \"gen\" is required");

    if (has_gen) {
        const Json& g = j.at("gen");
        if (!g.is_array() || g.empty()) throw InputError("\"gen\" must be a nonempty array of rows");
        const std::size_t n = g.front().is_array() ? g.front().size() : 0;
        if (n == 0) throw InputError("\"gen\" rows must be nonempty arrays");
        if (j.contains("n") && static_cast<std::size_t>(get_int(j.at("n"), "n")) != n) {
            throw InputError("\"n\" does not match the generator width");
        }
        IntMatrix rows(g.size(), n);
        for (std::size_t r = 0; r < g.size(); ++r) {
            if (!g[r].is_array() || g[r].size() != n) {
                throw InputError("gen row " + std::to_string(r + 1) + " has the wrong length");
            }
            for (std::size_t c = 0; c < n; ++c) {
                rows(r, c) = get_integer(g[r][c], "gen[" + std::to_string(r + 1) + "]");
            }
        }
        CodeDocument doc;
        doc.linear = LinearCode::from_generators(q, rows);
        if (has_words) {
            // Both given: the word list must be exactly the spanned code.
            Json plain = j;
            plain.erase("gen");
            plain["n"] = n;
            const auto listed = code_document_from_json(plain).code;
            if (Integer(static_cast<unsigned long>(listed->size())) != doc.linear->size() ||
                !std::all_of(listed->words().begin(), listed->words().end(),
                             [&](const Word& w) { return doc.linear->contains(w); })) {
                throw InputError("\"words\" is not the code spanned by \"gen\"");
            }
        }
        return doc;
    }

    if (!j.contains("n")) throw InputError("missing field \"n\"");
    const std::int64_t n = get_int(j.at("n"), "n");
    if (n < 1) throw InputError("n must be at least 1");
    const Json& w = j.at("words");
    if (!w.is_array() || w.empty()) throw InputError("\"words\" must be a nonempty array");
    std::vector<Word> words;
    words.reserve(w.size());
    std::set<Word> seen;
    for (std::size_t r = 0; r < w.size(); ++r) {
        const std::string where = "word " + std::to_string(r + 1);
        if (!w[r].is_array() || w[r].size() != static_cast<std::size_t>(n)) {
            throw InputError(where + " does not have n = " + std::to_string(n) + " coordinates");
        }
        Word x;
        for (const auto& v : w[r]) {
            const auto c = get_int(v, where);
            if (c < 0 || c >= q) throw InputError(where + ": coordinate " + std::to_string(c) + " outside [0, q)");
            x.push_back(c);
        }
        if (!seen.insert(x).second) throw InputError(where + " is a duplicate");
        words.push_back(std::move(x));
    }
    CodeDocument doc;
    doc.code = Code(q, static_cast<std::size_t>(n), std::move(words));
    return doc;
}

CodeDocument parse_code_document(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& err) {
        throw InputError("malformed JSON at byte " + std::to_string(err.byte) + ": " + err.what());
    }
    return code_document_from_json(j);
}

Json to_json(const Integer& v)
{
    if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
    return Json(v.get_str());
}

Json to_json(const IntMatrix& m)
{
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

Json to_json(const Word& w)
{
    return Json(w);
}

Json to_json(const AbelianType& a)
{
    Json d = Json::array();
    for (const auto& v : a.divisors) d.push_back(to_json(v));
    return Json{{"name", a.to_string()}, {"divisors", d}, {"cyclic", a.is_cyclic()}};
}

Json to_json(const Code& c)
{
    Json words = Json::array();
    for (const auto& w : c.words()) words.push_back(w);
    return Json{{"q", c.q()}, {"n", c.dim()}, {"words", words}};
}

Json to_json(const LinearCode& c, bool with_words)
{
    Json out{{"q", c.q()}, {"n", c.dim()}, {"gen", to_json(c.generator())}};
    if (with_words) out["words"] = to_json(c.expand()).at("words");
    return out;
}

Json to_json(const PerfectnessReport& r)
{
    Json out{{"perfect", r.perfect}, {"e", r.e}, {"dist", r.dist}, {"size", to_json(r.size)}, {"reason", r.reason}};
    if (r.covering) out["covering_radius"] = *r.covering;
    if (r.uncovered) out["uncovered_point"] = *r.uncovered;
    return out;
}

Json to_json(const Isometry& g)
{
    Json perm = Json::array();
    for (auto p : g.perm) perm.push_back(p + 1);
    Json neg = Json::array();
    for (std::size_t i = 0; i < g.negate.size(); ++i) {
        if (g.negate[i]) neg.push_back(i + 1);
    }
    return Json{{"perm", perm}, {"negate", neg}};
}

Json index_list(const std::vector<std::size_t>& idx)
{
    Json out = Json::array();
    for (auto i : idx) out.push_back(i + 1);
    return out;
}

Json to_json(const ClassReport& r, bool with_words)
{
    Json out;
    out["params"] = Json{{"n", r.params.n}, {"e", r.params.e}, {"q", r.params.q}};
    Json counts = Json::object();
    for (const auto& [k, v] : r.counts) counts[k] = to_json(v);
    out["counts"] = counts;
    Json codes = Json::array();
    for (std::size_t i = 0; i < r.codes.size(); ++i) {
        const auto& rc = r.codes[i];
        Json c{{"index", i}};
        if (rc.parameter) c["k"] = *rc.parameter;
        if (rc.matrix) c["matrix"] = to_json(*rc.matrix);
        if (rc.structure) c["structure"] = rc.structure->to_string();
        c["linear"] = rc.linear.has_value();
        if (with_words && rc.code.size() > 0) c["words"] = to_json(rc.code).at("words");
        codes.push_back(std::move(c));
    }
    out["codes"] = codes;
    auto classes = [&](const std::vector<ClassEntry>& list) {
        Json arr = Json::array();
        for (const auto& c : list) {
            Json e{{"members", c.members}, {"representative", c.representative}};
            if (c.structure) e["structure"] = to_json(*c.structure);
            if (c.canonical_matrix) e["canonical_matrix"] = to_json(*c.canonical_matrix);
            arr.push_back(std::move(e));
        }
        return arr;
    };
    if (r.isometry_classes) out["isometry_classes"] = classes(*r.isometry_classes);
    if (r.isomorphism_classes) out["isomorphism_classes"] = classes(*r.isomorphism_classes);
    return out;
}

}  // namespace cubetile
