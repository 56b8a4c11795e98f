#include "swarmsim/controller.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace swarmsim {

bool controller_is_valid(const ControllerParams& params) {
    for (double v : params.v) {
        if (!std::isfinite(v) || v < -1.0 || v > 1.0) return false;
    }
    return true;
}

std::pair<double, double> actuate(const ControllerParams& params, SensorReading reading) {
    if (!controller_is_valid(params)) {
        throw std::invalid_argument("actuate: controller components must be finite and in [-1, 1]");
    }
    const int i = static_cast<int>(reading);
    return {params.v[2 * i], params.v[2 * i + 1]};
}

WheelSpeeds to_wheel_speeds(std::pair<double, double> normalized, double max_speed) {
    auto [l, r] = normalized;
    if (!std::isfinite(l) || !std::isfinite(r) || l < -1.0 || l > 1.0 || r < -1.0 || r > 1.0) {
        throw std::invalid_argument("to_wheel_speeds: normalized pair outside [-1, 1]");
    }
    return {l * max_speed, r * max_speed};
}

namespace {

// "-1" prints as "-1.0" so the text form round-trips the example style.
void append_component(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    std::string s(buf);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
        s += ".0";
    }
    out += s;
}

}  // namespace

std::string format_controller(const ControllerParams& params) {
    std::string out = "[";
    for (size_t i = 0; i < params.v.size(); ++i) {
        if (i > 0) out += ",";
        append_component(out, params.v[i]);
    }
    out += "]";
    return out;
}

ControllerParams parse_controller(const std::string& text) {
    const char* p = text.c_str();
    auto skip_ws = [&p] { while (*p == ' ' || *p == '\t') ++p; };

    skip_ws();
    if (*p != '[') throw std::invalid_argument("controller: expected '[' in \"" + text + "\"");
    ++p;

    ControllerParams params;
    for (size_t i = 0; i < params.v.size(); ++i) {
        skip_ws();
        char* end = nullptr;
        const double v = std::strtod(p, &end);
        if (end == p) throw std::invalid_argument("controller: expected number in \"" + text + "\"");
        p = end;
        params.v[i] = v;
        skip_ws();
        if (i + 1 < params.v.size()) {
            if (*p != ',') throw std::invalid_argument("controller: expected ',' in \"" + text + "\"");
            ++p;
        }
    }
    skip_ws();
    if (*p != ']') throw std::invalid_argument("controller: expected ']' in \"" + text + "\"");
    ++p;
    skip_ws();
    if (*p != '\0') throw std::invalid_argument("controller: trailing characters in \"" + text + "\"");

    if (!controller_is_valid(params)) {
        throw std::invalid_argument("controller: components must be in [-1, 1] in \"" + text + "\"");
    }
    return params;
}

}  // namespace swarmsim
