#include "threadkit/export.hpp"

#include "threadkit/io.hpp"

#include <Eigen/Geometry>
#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace threadkit {

namespace {

std::string num17(double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d == 0 ? 0.0 : d);
  return buf;
}

std::string num6(double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", d);
  std::string s = buf;
  return s == "-0.000000" ? "0.000000" : s;
}

}  // namespace

std::vector<FrameRecord> frame_set(const MotionPlan& plan, int count) {
  std::vector<FrameRecord> out;
  for (const auto& f : sample_frames(plan, count)) {
    FrameRecord r{f.param, f.pose, {}};
    for (const auto& v : plan.chain.vertices()) r.vertices.push_back(f.pose.apply(to_vec(v)));
    out.push_back(std::move(r));
  }
  return out;
}

std::string frames_json(const std::vector<FrameRecord>& frames) {
  std::ostringstream out;
  out << "{\n  \"frames\": [";
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const auto& f = frames[k];
    out << (k ? ",\n" : "\n") << "    {\"param\": {\"edge\": " << f.param.edge << ", \"t\": \"" << format_scalar(f.param.t)
        << "\"}, \"pose\": {\"angle\": " << num17(f.pose.angle) << ", \"tx\": " << num17(f.pose.translation.x())
        << ", \"ty\": " << num17(f.pose.translation.y()) << "}, \"vertices\": [";
    for (std::size_t i = 0; i < f.vertices.size(); ++i)
      out << (i ? ", " : "") << "[" << num17(f.vertices[i].x()) << ", " << num17(f.vertices[i].y()) << "]";
    out << "]}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

std::vector<FrameRecord> parse_frames_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<FrameRecord> out;
  for (const auto& f : j.at("frames")) {
    FrameRecord r;
    r.param = {f.at("param").at("edge").get<std::size_t>(), parse_scalar(f.at("param").at("t").get<std::string>())};
    r.pose.angle = f.at("pose").at("angle").get<double>();
    r.pose.translation = {f.at("pose").at("tx").get<double>(), f.at("pose").at("ty").get<double>()};
    for (const auto& v : f.at("vertices")) r.vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    out.push_back(std::move(r));
  }
  return out;
}

std::string frame_svg(const FrameRecord& frame, const Eigen::AlignedBox2d& view, double diameter) {
  const Eigen::Vector2d lo = view.min(), size = view.sizes();
  std::ostringstream out;
  // SVG y grows downwards; flip so the prefix side appears on top.
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << num6(lo.x()) << " "
      << num6(-view.max().y()) << " " << num6(size.x()) << " " << num6(size.y()) << "\">\n";
  const double stroke = 0.004 * std::max(size.x(), size.y());
  out << "  <line x1=\"" << num6(lo.x()) << "\" y1=\"0\" x2=\"" << num6(view.max().x())
      << "\" y2=\"0\" stroke=\"#888888\" stroke-width=\"" << num6(stroke) << "\"/>\n";
  out << "  <polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"" << num6(stroke) << "\" points=\"";
  for (std::size_t i = 0; i < frame.vertices.size(); ++i)
    out << (i ? " " : "") << num6(frame.vertices[i].x()) << "," << num6(-frame.vertices[i].y());
  out << "\"/>\n";
  out << "  <circle cx=\"0\" cy=\"0\" r=\"" << num6(0.01 * diameter) << "\" fill=\"#c0392b\"/>\n";
  out << "</svg>\n";
  return out.str();
}

std::vector<std::filesystem::path> export_svg_frames(const MotionPlan& plan, int count, const std::filesystem::path& dir) {
  const auto frames = frame_set(plan, count);
  Eigen::AlignedBox2d box(Eigen::Vector2d::Zero());
  for (const auto& f : frames)
    for (const auto& v : f.vertices) box.extend(v);
  const Eigen::Vector2d pad = 0.05 * box.sizes().cwiseMax(1e-9);
  box.min() -= pad;
  box.max() += pad;
  const double diameter = chain_diameter(plan.chain);

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> paths;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%03zu.svg", k);
    paths.push_back(dir / name);
    write_file_atomic(paths.back(), frame_svg(frames[k], box, diameter));
  }
  return paths;
}

void export_frames_json(const MotionPlan& plan, int count, const std::filesystem::path& path) {
  write_file_atomic(path, frames_json(frame_set(plan, count)));
}

}  // namespace threadkit
