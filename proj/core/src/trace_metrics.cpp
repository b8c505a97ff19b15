#include "pi/trace_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pi {

EmpiricalMetrics compute_metrics(const SessionTrace& trace, std::optional<Window> window) {
  trace.validate();

  double start = 0.0, end = 0.0;
  if (window) {
    start = window->start_s;
    end = window->end_s;
    if (!(end > start)) throw std::invalid_argument("window end must exceed its start");
  } else if (trace.events.empty()) {
    throw std::invalid_argument("trace has no events to derive a window from");
  } else {
    // Default to whole pause/play cycles: from the first event (end of the
    // initial fill) to the last resume.
    start = trace.events.front().time_s;
    for (auto it = trace.events.rbegin(); it != trace.events.rend(); ++it) {
      if (it->kind == EventKind::play_start) {
        end = it->time_s;
        break;
      }
    }
  }

  EmpiricalMetrics out;
  out.window = Window{start, end};
  const double span = end - start;

  double completed_sum = 0.0;
  double overlap_sum = 0.0;
  std::size_t completed = 0;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    if (trace.events[i].kind != EventKind::pause_start) continue;
    const double pause_at = trace.events[i].time_s;
    const double resume_at = i + 1 < trace.events.size()
                                 ? trace.events[i + 1].time_s
                                 : std::numeric_limits<double>::infinity();
    if (pause_at >= start && resume_at <= end) {
      ++completed;
      completed_sum += resume_at - pause_at;
    }
    overlap_sum += std::max(0.0, std::min(resume_at, end) - std::max(pause_at, start));
  }

  out.pause_count = completed;
  out.mean_pause_duration_s =
      completed > 0 ? completed_sum / static_cast<double>(completed)
                    : std::numeric_limits<double>::quiet_NaN();
  out.pause_frequency_hz = (completed > 0 && span > 0.0)
                               ? static_cast<double>(completed) / span
                               : 0.0;
  out.pause_intensity =
      completed > 0 ? out.mean_pause_duration_s * out.pause_frequency_hz : 0.0;
  out.paused_fraction = span > 0.0 ? overlap_sum / span : 0.0;
  return out;
}

}  // namespace pi
