#pragma once

#include <array>
#include <string>

#include "swarmsim/sensing.hpp"
#include "swarmsim/world.hpp"

namespace swarmsim {

/// Memoryless reactive policy: six normalized wheel velocities in [-1, 1],
/// one (left, right) pair per sensor reading.
struct ControllerParams {
    // Order: (vl_nothing, vr_nothing, vl_same, vr_same, vl_other, vr_other).
    std::array<double, 6> v{};

    bool operator==(const ControllerParams&) const = default;
};

/// The four fixed leading parameters reused from the single-task controller.
constexpr std::array<double, 4> kFixedPrefix = {-0.7, -1.0, 1.0, -1.0};

/// The best controller found by the grid search.
constexpr ControllerParams kBestController{{-0.7, -1.0, 1.0, -1.0, -0.7, -1.0}};

/// True when all six components are finite and within [-1, 1].
bool controller_is_valid(const ControllerParams& params);

/// Normalized (left, right) pair for the given reading. Pure table lookup.
/// Throws std::invalid_argument on invalid params.
std::pair<double, double> actuate(const ControllerParams& params, SensorReading reading);

/// Scales a normalized pair by max_speed. Throws std::invalid_argument when a
/// component falls outside [-1, 1].
WheelSpeeds to_wheel_speeds(std::pair<double, double> normalized, double max_speed);

/// Text form used by the CLI and config files: "[-0.7,-1.0,1.0,-1.0,-0.7,-1.0]".
std::string format_controller(const ControllerParams& params);

/// Parses the text form. Throws std::invalid_argument on malformed input or
/// out-of-range components.
ControllerParams parse_controller(const std::string& text);

}  // namespace swarmsim
