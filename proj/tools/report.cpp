#include "report.hpp"

#include <cstdio>

namespace flexmap::cli {

bool Report::within_tolerances() const {
    if (residual_abs > tolerance || residual_max > tolerance) return false;
    if (ulam && !ulam->ok) return false;
    if (cylinders && !cylinders->ok) return false;
    if (birkhoff && !birkhoff->ok) return false;
    return true;
}

nlohmann::ordered_json to_json(const Report& report) {
    nlohmann::ordered_json j;
    j["schema_version"] = report.schema_version;
    j["targets"] = {{"a", report.target_a}, {"b", report.target_b}};
    j["params"] = {{"n", report.params.n},
                   {"u", report.params.u.value},
                   {"one_minus_u", report.params.u.complement},
                   {"k", report.params.k},
                   {"v", report.params.v.value},
                   {"one_minus_v", report.params.v.complement}};
    j["closed_form"] = {{"lambda_abs", report.closed_form.lambda_abs},
                        {"lambda_max", report.closed_form.lambda_max}};
    j["residuals"] = {{"lambda_abs", report.residual_abs}, {"lambda_max", report.residual_max}};
    j["iterations"] = report.iterations;
    j["verify_level"] = report.verify_level;
    j["tolerances"] = {{"realize", report.tolerance},
                       {"ulam_l1", report.ulam_l1_tolerance},
                       {"cylinders", report.cylinder_tolerance},
                       {"birkhoff_standard_errors", report.birkhoff_sigmas}};

    nlohmann::ordered_json verification(nlohmann::ordered_json::value_t::object);
    if (report.ulam) {
        verification["ulam"] = {{"bins", report.ulam->bins},
                                {"estimate", report.ulam->estimate},
                                {"l1_error", report.ulam->l1_error}};
    }
    if (report.cylinders) {
        verification["cylinders"] = {{"level", report.cylinders->level},
                                     {"estimate", report.cylinders->estimate}};
    }
    if (report.birkhoff) {
        verification["birkhoff"] = {{"samples", report.birkhoff->samples},
                                    {"iterations", report.birkhoff->iterations},
                                    {"burn_in", report.birkhoff->burn_in},
                                    {"seed", report.birkhoff->seed},
                                    {"estimate", report.birkhoff->estimate},
                                    {"standard_error", report.birkhoff->standard_error}};
    }
    if (report.verify_level > 0) j["verification"] = verification;
    j["within_tolerances"] = report.within_tolerances();
    if (report.timing) {
        j["timing"] = {{"realize_ms", report.timing->realize_ms},
                       {"verify_ms", report.timing->verify_ms}};
    }
    return j;
}

std::string format_full(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace flexmap::cli
