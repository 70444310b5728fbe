#pragma once

#include <iosfwd>
#include <map>

#include "torsionlab/hn.hpp"
#include "torsionlab/monocat.hpp"

namespace torsionlab {

// Parsed input document: quiver, field, and named subcategories, twin pairs
// and chains. Subcategories are arrays of dimension-vector labels ("110" is
// the indecomposable with dimension vector (1,1,0)).
struct ProblemSpec {
    int vertices = 0;
    std::vector<std::pair<int, int>> arrows;  // 1-based, as written in the file
    Field field{2};

    std::map<std::string, std::vector<std::string>> subcats;

    struct TwinSpec {
        std::vector<std::string> inner, outer;  // torsion class label lists
        friend bool operator==(const TwinSpec&, const TwinSpec&) = default;
    };
    std::map<std::string, TwinSpec> twins;

    struct ChainStep {
        Rat from;                         // left endpoint of the step
        std::vector<std::string> labels;  // torsion class on [from, next)
        friend bool operator==(const ChainStep&, const ChainStep&) = default;
    };
    std::map<std::string, std::vector<ChainStep>> chains;

    static ProblemSpec parse(const std::string& json_text);
    static ProblemSpec load(const std::string& path);
    std::string dump() const;  // canonical JSON; parse(dump()) == *this

    friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

// Everything resolved against the computed indecomposable table.
struct Workspace {
    ProblemSpec spec;
    QuiverPtr quiver;
    CategoryPtr cat;
    Context full;
    std::map<std::string, Mask> subcats;
    std::map<std::string, TwinPair> twins;
    std::map<std::string, Chain> chains;
};

Workspace resolve(const ProblemSpec& spec, const std::string* cache_path = nullptr);

// Cache file location: explicit flag, else TORSIONLAB_CACHE, else next to the
// input. Empty input path with no overrides disables caching.
std::string resolve_cache_path(const std::string& flag_value, const std::string& input_path);

// Hasse diagram of the torsion class inclusion order (covering relations).
std::string lattice_dot(const Context& ctx, const std::vector<TorsionPair>& pairs);

std::vector<std::string> verify_suite_names();

// Runs a named verification suite, printing one line per check. Returns true
// iff everything holds. Unknown suite names throw parse_error.
bool run_verify_suite(const Workspace& ws, const std::string& suite, bool exhaustive,
                      std::ostream& out);

}  // namespace torsionlab
