#pragma once

#include <stdexcept>
#include <string>

namespace flexmap {

enum class errc {
    invalid_parameter,
    invalid_targets,
    domain,
    resource_limit,
    not_markov,
    no_convergence,
    infeasible,
    no_bracket,
    alpha_too_large,
    fixed_point_not_found,
    non_integer_degree,
    invariant_violation,
};

// Single exception type for the whole library; callers dispatch on code().
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_parameter: return "invalid-parameter";
        case errc::invalid_targets: return "invalid-targets";
        case errc::domain: return "domain";
        case errc::resource_limit: return "resource-limit";
        case errc::not_markov: return "not-markov";
        case errc::no_convergence: return "no-convergence";
        case errc::infeasible: return "infeasible";
        case errc::no_bracket: return "no-bracket";
        case errc::alpha_too_large: return "alpha-too-large";
        case errc::fixed_point_not_found: return "fixed-point-not-found";
        case errc::non_integer_degree: return "non-integer-degree";
        case errc::invariant_violation: return "invariant-violation";
    }
    return "unknown";
}

}  // namespace flexmap
