#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cubetile/classification.hpp"
#include "cubetile/code.hpp"

namespace cubetile {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent code document.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A code document: {"q","n","words"} or {"q","gen"}.
/// Generator input stays unexpanded; call words() when the codeword set is needed.
struct CodeDocument {
    std::optional<Code> code;
    std::optional<LinearCode> linear;

    Code words(std::size_t max_words = 5'000'000) const;
};

/// Parses JSON text; errors carry the byte offset for syntax problems.
CodeDocument parse_code_document(const std::string& text);
CodeDocument code_document_from_json(const Json& j);

/// int64 values as numbers, larger ones as decimal strings.
Json to_json(const Integer& v);
Json to_json(const IntMatrix& m);
Json to_json(const Word& w);
Json to_json(const AbelianType& a);
Json to_json(const Code& c);
/// {"q","n","gen"}; adds "words" when with_words is set.
Json to_json(const LinearCode& c, bool with_words = false);
Json to_json(const PerfectnessReport& r);
Json to_json(const Isometry& g);
/// 1-based indices.
Json index_list(const std::vector<std::size_t>& idx);
Json to_json(const ClassReport& r, bool with_words = false);

}  // namespace cubetile
