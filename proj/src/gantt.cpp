#include "migsched/gantt.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace migsched {

GanttFormat parse_gantt_format(const std::string& name) {
  if (name == "svg") return GanttFormat::svg;
  if (name == "text") return GanttFormat::text;
  throw Error("unknown gantt format " + name);
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double horizon(const Schedule& s) {
  double h = s.makespan;
  for (const auto& e : s.reconfigs) h = std::max(h, e.end());
  return h;
}

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#b07aa1", "#edc948",
                          "#76b7b2", "#ff9da7", "#9c755f", "#bab0ac", "#e15759"};

std::string svg(const Schedule& s, double px) {
  const int lane = 24;
  const int left = 40;
  const int top = 10;
  const int slices = s.model.num_slices();
  const double end = horizon(s);
  const double width = left + end * px + 20;
  const double height = top + slices * lane + 30;
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<g font-family=\"monospace\" font-size=\"10\">\n";
  for (int sl = 0; sl < slices; ++sl)
    os << "<text x=\"4\" y=\"" << top + sl * lane + 15 << "\">S" << sl << "</text>\n";

  auto box = [&](const Instance& inst, double start, double dur, const char* fill, const std::string& label) {
    const double x = left + start * px;
    const double y = top + inst.start_slice * lane + 1;
    const double w = std::max(dur * px, 0.5);
    const double h = inst.size * lane - 2;
    os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h << "\" fill=\"" << fill
       << "\" stroke=\"#333\" stroke-width=\"0.5\"><title>" << escape(label) << "</title></rect>\n";
  };
  for (std::size_t i = 0; i < s.tasks.size(); ++i) {
    const auto& t = s.tasks[i];
    std::ostringstream label;
    label << t.task_id << " size " << t.size_used << " [" << t.start << ", " << t.end() << ")";
    box(t.instance, t.start, t.duration, kPalette[i % 10], label.str());
    os << "<text x=\"" << left + t.start * px + 2 << "\" y=\"" << top + t.instance.start_slice * lane + 14 << "\">"
       << escape(t.task_id) << "</text>\n";
  }
  for (const auto& e : s.reconfigs) {
    std::ostringstream label;
    label << to_string(e.kind) << ' ' << to_string(e.instance) << " [" << e.start << ", " << e.end() << ")";
    box(e.instance, e.start, e.duration, e.kind == ReconfigKind::create ? "cyan" : "red", label.str());
  }

  // Time axis with about ten ticks.
  const double axis_y = top + slices * lane + 4;
  os << "<line x1=\"" << left << "\" y1=\"" << axis_y << "\" x2=\"" << left + end * px << "\" y2=\"" << axis_y
     << "\" stroke=\"black\"/>\n";
  double step = end > 0 ? std::pow(10.0, std::floor(std::log10(end))) : 1.0;
  if (end / step < 4) step /= 2;
  for (double t = 0; t <= end + 1e-9; t += step) {
    os << "<line x1=\"" << left + t * px << "\" y1=\"" << axis_y << "\" x2=\"" << left + t * px << "\" y2=\""
       << axis_y + 4 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left + t * px - 4 << "\" y=\"" << axis_y + 15 << "\">" << t << "</text>\n";
  }
  os << "<text x=\"" << left << "\" y=\"" << axis_y + 26 << "\">seconds</text>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string text(const Schedule& s, int width) {
  const int slices = s.model.num_slices();
  const double end = horizon(s);
  const double scale = end > 0 ? width / end : 0.0;
  auto col = [&](double t) { return std::clamp(static_cast<int>(std::floor(t * scale)), 0, width); };
  std::vector<std::string> lanes(static_cast<std::size_t>(slices), std::string(static_cast<std::size_t>(width), '.'));
  for (std::size_t i = 0; i < s.tasks.size(); ++i) {
    const auto& t = s.tasks[i];
    const char mark = static_cast<char>(i < 26 ? 'A' + i : (i < 52 ? 'a' + (i - 26) : '#'));
    const int a = col(t.start);
    const int b = std::max(a + 1, col(t.end()));
    for (int sl = t.instance.start_slice; sl < t.instance.end_slice(); ++sl)
      for (int c = a; c < b && c < width; ++c) lanes[static_cast<std::size_t>(sl)][static_cast<std::size_t>(c)] = mark;
  }
  for (const auto& e : s.reconfigs) {
    if (e.duration <= 0) continue;
    const int c = std::min(col(e.start), width - 1);
    for (int sl = e.instance.start_slice; sl < e.instance.end_slice(); ++sl)
      lanes[static_cast<std::size_t>(sl)][static_cast<std::size_t>(c)] = e.kind == ReconfigKind::create ? '+' : 'x';
  }
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  for (int sl = 0; sl < slices; ++sl) os << 'S' << sl << " |" << lanes[static_cast<std::size_t>(sl)] << "|\n";
  os << "    0" << std::string(static_cast<std::size_t>(std::max(0, width - 4)), ' ') << end << " s\n";
  for (std::size_t i = 0; i < s.tasks.size() && i < 52; ++i) {
    const auto& t = s.tasks[i];
    const char mark = static_cast<char>(i < 26 ? 'A' + i : 'a' + (i - 26));
    os << "  " << mark << " = " << t.task_id << " on " << to_string(t.instance) << " [" << t.start << ", " << t.end()
       << ")\n";
  }
  os << "  + create, x destroy\n";
  return os.str();
}

}  // namespace

std::string render_gantt(const Schedule& s, GanttFormat format, double px_per_second, int text_width) {
  if (px_per_second <= 0) throw Error("pixels per second must be positive");
  if (text_width < 10) throw Error("text width too small");
  return format == GanttFormat::svg ? svg(s, px_per_second) : text(s, text_width);
}

}  // namespace migsched
