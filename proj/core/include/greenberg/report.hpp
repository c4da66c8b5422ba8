#pragma once

#include <string>
#include <vector>

#include "greenberg/filtration.hpp"
#include "greenberg/suites.hpp"

namespace greenberg {

/// One suite result as a JSON object string:
/// {"suite","group","ring","verdict","witnesses","sizes","millis"}.
/// Keys are emitted sorted, so output is byte-stable.
std::string suite_result_json(const SuiteResult& r, bool timings);

/// Full report: {"command","guard","results","seed","suites"}. `millis` is
/// zero unless timings are requested, keeping reports byte-identical across
/// runs and worker counts.
std::string report_json(const std::vector<SuiteResult>& results, std::uint64_t seed,
                        std::uint64_t guard, const std::vector<std::string>& suite_names,
                        bool timings);

/// Fixed-width table: suite | group | ring | verdict | sizes | ms.
std::string report_table(const std::vector<SuiteResult>& results, bool timings);

/// Filtration report: ring spec, group kind, and per-level kernel/layer
/// data with the elementary-abelian flag.
std::string filtration_json(const Filtration& f);

}  // namespace greenberg
