#include "metapeel/svg.hpp"

#include <cstdio>
#include <sstream>

namespace metapeel {

namespace {

std::string fmt_mm(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

} // namespace

std::string export_cut_paths(const PatternLayout& pattern, std::string_view format) {
  if (format != "svg")
    throw UnsupportedFormat("export_cut_paths: unknown format tag '" + std::string(format) + "'");
  if (pattern.size() == 0)
    throw PreconditionViolation("export_cut_paths: empty pattern");

  const Vec2 ext = pattern.extent();
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_mm(ext.x)
      << "mm\" height=\"" << fmt_mm(ext.y) << "mm\" viewBox=\"0 0 " << fmt_mm(ext.x) << ' '
      << fmt_mm(ext.y) << "\">\n";
  for (const auto& pts : pattern.cut_polylines()) {
    out << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.1\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out << ' ';
      out << fmt_mm(pts[i].x) << ',' << fmt_mm(pts[i].y);
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

} // namespace metapeel
