#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cubetile/json_io.hpp"

namespace cubetile {

struct CommonOptions {
    std::string format = "json";  ///< json | jsonl | text
    std::uint64_t seed = 1;
    std::size_t max_cells = 10'000;
    std::size_t max_matrices = 1'000'000;
};

struct CommandResult {
    bool ok = true;
    int exit_code = 0;  ///< 0 ok, 1 domain error, 2 usage error
    Json payload;
    /// Per-item documents for list-shaped output.
    std::optional<std::vector<Json>> records;
    /// Preformatted text (grids).
    std::optional<std::string> text;
    std::vector<std::string> warnings;
};

/// {"status", payload fields..., "codes"?, "grid"?, "warnings"?}.
Json envelope(const CommandResult& r);
/// Serialises a result for stdout in the requested format.
std::string format_result(const CommandResult& r, const std::string& format);

/// Runs `body`, turning library errors into an exit-1 result.
CommandResult guarded(const std::function<CommandResult()>& body);

CommandResult cmd_verify(const std::string& input, const CommonOptions& opt);

struct ConstructRequest {
    std::string kind;  ///< cartesian lc cyclic horizontal vertical product linear nonlinear section
    std::size_t n = 0;
    std::int64_t e = 0;
    std::int64_t q = 0;
    std::int64_t k = 0;
    std::int64_t a = 0;
    std::vector<std::int64_t> heights;
    std::vector<std::int64_t> x;
    std::vector<std::size_t> coords;  ///< 1-based section indices
    std::vector<std::string> inputs;  ///< code documents (JSON text)
    bool words = false;
};

CommandResult cmd_construct(const ConstructRequest& req, const CommonOptions& opt);

struct EnumerateFlags {
    bool ordered = false;
    bool maximal = false;
    bool oracle = false;
    bool classes = false;
    bool words = false;
};

CommandResult cmd_enumerate(const Params& p, const EnumerateFlags& flags, const CommonOptions& opt);
CommandResult cmd_classify(const std::string& input, const CommonOptions& opt);
CommandResult cmd_count(const Params& p, const CommonOptions& opt);
CommandResult cmd_census(const Params& p, const CommonOptions& opt);
/// q x q grid, x to the right, y upwards, origin at the lower left.
CommandResult cmd_render(const std::string& input, bool balls, const CommonOptions& opt);

}  // namespace cubetile
