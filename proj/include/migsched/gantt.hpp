#pragma once

#include <string>

#include "migsched/schedule.hpp"

namespace migsched {

enum class GanttFormat { svg, text };

GanttFormat parse_gantt_format(const std::string& name);

/// One lane per slice. The SVG holds exactly one <rect> per task and per
/// reconfiguration event (creations cyan, destructions red).
std::string render_gantt(const Schedule& s, GanttFormat format, double px_per_second = 10.0, int text_width = 100);

}  // namespace migsched
