#ifndef ELLKERN_REGISTRY_HPP
#define ELLKERN_REGISTRY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ellkern/sampler.hpp"

namespace ellkern {

struct RunOverrides {
    std::optional<int> points;
    std::optional<double> tolerance;
    std::optional<int> threads;
    SamplerAnnuli annuli;
    PrecisionConfig precision;
};

struct RunReport {
    std::string case_id;
    uint64_t seed = 0;
    std::vector<std::pair<std::string, cx>> params; // full-precision draw
    cx lhs, rhs;
    double abs_err = 0.0, rel_err = 0.0;
    bool pass = false;
    bool known_open = false;
    std::string error; // sampler exhaustion / pole reports
    double wall_seconds = 0.0;
};

enum class CostTier { fast, slow };

struct IdentityCase {
    std::string id;
    std::string paper_ref;
    CostTier tier = CostTier::fast;
    double tolerance = 1e-8;
    int dim = 1; // quadrature dimensionality driving the tier tolerance
    int default_points = 128;
    int repetitions = 1;
    bool known_open = false;
    std::function<RunReport(uint64_t seed, const RunOverrides&)> run;
};

const std::vector<IdentityCase>& registry();

std::vector<const IdentityCase*> list_cases(const std::string& filter);

// executes sampler -> evaluators -> residual for each id; unknown ids throw
std::vector<RunReport> run_cases(const std::vector<std::string>& ids, uint64_t seed,
                                 const RunOverrides& overrides);

std::string report_json(const std::vector<RunReport>& reports);

// draws the parameter set a case would use, without evaluating it
std::vector<std::pair<std::string, cx>> sample_params(const std::string& id, uint64_t seed,
                                                      const RunOverrides& overrides);

// registration helpers shared by the per-module registration units
void register_core_cases(std::vector<IdentityCase>& out);
void register_littlewood_cases(std::vector<IdentityCase>& out);

// retry loop: redraw on pole/certificate errors, up to 100 attempts
RunReport with_redraws(const std::string& id, uint64_t seed, int max_attempts,
                       const std::function<RunReport(Rng&)>& attempt);

} // namespace ellkern

#endif
