#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "wilton/cosine_series.hpp"
#include "wilton/plseries.hpp"
#include "wilton/solver.hpp"

namespace wilton {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// {"degree", "mode", "coeffs"}; rational coefficients as "p/q" strings.
Json to_json(const CosineSeries<double>& f);
Json to_json(const CosineSeries<Rational>& f);

// Deterministic description of a command invocation (no timestamp).
Json run_info(const std::string& command, const Json& parameters, ScalarMode mode);

Json constants_payload(int K);
template <class S>
Json expand_payload(const PLSeries<S>& series);
Json solve_payload(const SolveResult& result);
Json sweep_payload(const BranchPath& path);

std::string expand_csv(const PLSeries<double>& series);
std::string expand_csv(const PLSeries<Rational>& series);
std::string solve_csv(const SolveResult& result);
// Columns a, c, measured_b, residual_sup, iters.
std::string sweep_csv(const BranchPath& path);
std::string constants_text(int K);

// Writes via a temporary file and rename; throws Io naming the path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// Writes `<path>.manifest.json`: the run object plus a UTC timestamp.
void write_manifest(const std::filesystem::path& path, const Json& run);

}  // namespace wilton
