#include "swarmsim/world_json.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace swarmsim {

std::string world_to_json(const World& world) {
    std::string out;
    out.reserve(64 + world.robots.size() * 96 + world.bollards.size() * 64);
    char buf[192];

    std::snprintf(buf, sizeof(buf), "{\"arena_side\":%.6f,\"tick\":%lld,\"robots\":[",
                  world.arena.side, static_cast<long long>(world.tick));
    out += buf;
    for (size_t i = 0; i < world.robots.size(); ++i) {
        const RobotBody& r = world.robots[i];
        std::snprintf(buf, sizeof(buf),
                      "%s{\"id\":%d,\"group\":%d,\"x\":%.6f,\"y\":%.6f,\"theta\":%.6f}",
                      i == 0 ? "" : ",", r.id, r.group, r.pose.position.x, r.pose.position.y,
                      r.pose.orientation);
        out += buf;
    }
    out += "],\"bollards\":[";
    for (size_t i = 0; i < world.bollards.size(); ++i) {
        const Bollard& b = world.bollards[i];
        std::snprintf(buf, sizeof(buf), "%s{\"group\":%d,\"x\":%.6f,\"y\":%.6f}",
                      i == 0 ? "" : ",", b.group, b.position.x, b.position.y);
        out += buf;
    }
    out += "]}";
    return out;
}

World world_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("world snapshot: ") + e.what());
    }

    try {
        World world;
        world.arena.side = doc.at("arena_side").get<double>();
        world.tick = doc.at("tick").get<int64_t>();

        int max_group = -1;
        for (const auto& jr : doc.at("robots")) {
            RobotBody r;
            r.id = jr.at("id").get<int>();
            r.group = jr.at("group").get<int>();
            r.pose.position = {jr.at("x").get<double>(), jr.at("y").get<double>()};
            r.pose.orientation = jr.at("theta").get<double>();
            max_group = std::max(max_group, r.group);
            world.robots.push_back(r);
        }
        if (doc.contains("bollards")) {
            for (const auto& jb : doc.at("bollards")) {
                Bollard b;
                b.group = jb.at("group").get<int>();
                b.position = {jb.at("x").get<double>(), jb.at("y").get<double>()};
                max_group = std::max(max_group, b.group);
                world.bollards.push_back(b);
            }
        }
        world.group_count = max_group + 1;

        if (!world_is_finite(world)) {
            throw std::invalid_argument("world snapshot: non-finite values");
        }
        return world;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("world snapshot: ") + e.what());
    }
}

}  // namespace swarmsim
