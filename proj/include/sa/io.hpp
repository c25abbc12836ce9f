#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "sa/finite_sa.hpp"
#include "sa/fn_algebra.hpp"
#include "sa/predicates.hpp"
#include "sa/search.hpp"
#include "sa/subst.hpp"

namespace sa {

using json = nlohmann::ordered_json;

// File formats (bit-exact contracts, keys in the order shown):
//   FiniteSA   {"dimension": d, "size": n, "v": [id...],
//               "star": [per index: n rows of n ids]}
//   FnAlgebra  {"dimension": d, "base_size": u,
//               "elements": [per element: output table in rank order],
//               "full": bool}
// Writers emit two-space indentation and a trailing newline; loading a
// canonical file and saving it again reproduces the bytes.

json finite_sa_to_json(const FiniteSA& algebra);
FiniteSA finite_sa_from_json(const json& j);
json fn_algebra_to_json(const FnAlgebra& algebra);
FnAlgebra fn_algebra_from_json(const json& j);

json axiom_violation_to_json(const AxiomViolation& violation);
json law_report_to_json(const LawReport& report);
json hom_report_to_json(const HomReport& report);
json witness_to_json(const EmbeddingWitness& witness);
// Sidecar emitted next to construction outputs: {"map": [per-source-id
// target id]}.
json sidecar_to_json(const std::vector<std::uint64_t>& map);

// dump with two-space indentation plus a trailing newline; the only
// serialization used for files.
std::string dump_canonical(const json& j);

using AnyAlgebra = std::variant<FiniteSA, FnAlgebra>;

// Loads either format, distinguished by the presence of "size" vs
// "base_size". Malformed JSON or values violating the format raise
// parse_error naming the file and the offending position.
AnyAlgebra load_algebra(const std::filesystem::path& path);
FiniteSA load_finite_sa(const std::filesystem::path& path);
FnAlgebra load_fn_algebra(const std::filesystem::path& path);

void save_finite_sa(const FiniteSA& algebra, const std::filesystem::path& path);
void save_fn_algebra(const FnAlgebra& algebra, const std::filesystem::path& path);

// Load, then write the canonical serialization to `out`; key order and
// whitespace are normalized, canonical input is reproduced byte for byte.
void io_roundtrip(const std::filesystem::path& in, const std::filesystem::path& out);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace sa
