#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "flexmap/exponents.hpp"
#include "flexmap/family.hpp"

namespace flexmap::cli {

struct UlamBlock {
    int bins = 0;
    double estimate = 0.0;
    double l1_error = 0.0;
    bool ok = true;
};

struct CylinderBlock {
    int level = 0;
    double estimate = 0.0;
    bool ok = true;
};

struct BirkhoffBlock {
    int samples = 0;
    int iterations = 0;
    int burn_in = 0;
    std::uint64_t seed = 0;
    double estimate = 0.0;
    double standard_error = 0.0;
    bool ok = true;
};

struct Timing {
    double realize_ms = 0.0;
    double verify_ms = 0.0;
};

// Machine-readable result of the realize command. Serialisation is
// deterministic: identical inputs and seeds produce identical bytes.
struct Report {
    std::string schema_version = "1";
    double target_a = 0.0;
    double target_b = 0.0;
    FamilyParams params;
    ExponentPair closed_form;
    double residual_abs = 0.0;
    double residual_max = 0.0;
    int iterations = 0;
    int verify_level = 0;
    double tolerance = 0.0;
    double ulam_l1_tolerance = 0.0;
    double cylinder_tolerance = 0.0;
    double birkhoff_sigmas = 4.0;
    std::optional<UlamBlock> ulam;
    std::optional<CylinderBlock> cylinders;
    std::optional<BirkhoffBlock> birkhoff;
    std::optional<Timing> timing;

    bool within_tolerances() const;
};

nlohmann::ordered_json to_json(const Report& report);

// 17 significant digits, enough to round-trip any double.
std::string format_full(double x);

}  // namespace flexmap::cli
