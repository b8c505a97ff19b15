#pragma once

#include <cstddef>
#include <optional>

#include "pi/trace.hpp"

namespace pi {

struct Window {
  double start_s = 0.0;
  double end_s = 0.0;
};

struct EmpiricalMetrics {
  double mean_pause_duration_s = 0.0;  // NaN when no completed pauses
  std::size_t pause_count = 0;         // completed pauses inside the window
  double pause_frequency_hz = 0.0;     // completed pauses / window length
  double pause_intensity = 0.0;        // mean duration * frequency
  double paused_fraction = 0.0;        // paused time / window length
  Window window;
};

// Computes pause statistics over `window`, defaulting to [first event, last
// play_start] so that the span covers whole pause/play cycles. A pause counts
// as completed when it starts at/after window start and its resume falls
// at/before window end; paused_fraction additionally includes clipped partial
// overlap. Throws std::invalid_argument for an invalid trace, a window with
// end <= start, or an empty trace without an explicit window.
EmpiricalMetrics compute_metrics(const SessionTrace& trace,
                                 std::optional<Window> window = std::nullopt);

}  // namespace pi
