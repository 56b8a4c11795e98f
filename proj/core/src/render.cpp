#include "swarmsim/render.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace swarmsim {

namespace {

constexpr double kPxPerCm = 2.0;

void append(std::string& out, const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  out += buf;
}

}  // namespace

const std::array<const char*, 8>& group_palette() {
  static const std::array<const char*, 8> palette = {
      "#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
      "#ff7f00", "#a65628", "#f781bf", "#17becf"};
  return palette;
}

std::string render_svg(const World& world) {
  const double side_px = world.arena.side * kPxPerCm;
  const auto& palette = group_palette();
  auto sx = [&](double x) { return x * kPxPerCm; };
  auto sy = [&](double y) { return (world.arena.side - y) * kPxPerCm; };

  std::string out;
  out.reserve(1024 + 256 * world.robots.size());
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  append(out,
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
         "viewBox=\"-2 -2 %.0f %.0f\">\n",
         side_px + 4.0, side_px + 4.0, side_px + 4.0, side_px + 4.0);
  append(out, "<rect x=\"0\" y=\"0\" width=\"%.0f\" height=\"%.0f\" "
              "fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n",
         side_px, side_px);

  for (const Bollard& b : world.bollards) {
    append(out,
           "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"none\" "
           "stroke=\"%s\" stroke-width=\"2\"/>\n",
           sx(b.position.x), sy(b.position.y), b.radius * kPxPerCm,
           palette[static_cast<size_t>(b.group) % palette.size()]);
  }
  for (const RobotBody& r : world.robots) {
    const double cx = sx(r.pose.position.x);
    const double cy = sy(r.pose.position.y);
    const Vec2 tip{r.pose.position.x + r.radius * std::cos(r.pose.orientation),
                   r.pose.position.y + r.radius * std::sin(r.pose.orientation)};
    append(out, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"%s\"/>\n", cx, cy,
           r.radius * kPxPerCm, palette[static_cast<size_t>(r.group) % palette.size()]);
    append(out,
           "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
           "stroke=\"black\" stroke-width=\"1.5\"/>\n",
           cx, cy, sx(tip.x), sy(tip.y));
  }
  out += "</svg>\n";
  return out;
}

void render_snapshot(const World& world, const std::string& path) {
  const std::string svg = render_svg(world);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(svg.data(), static_cast<std::streamsize>(svg.size()));
  out.flush();
  if (!out) throw std::runtime_error("render_snapshot: cannot write " + path);
}

}  // namespace swarmsim
