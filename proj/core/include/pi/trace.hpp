#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace pi {

enum class EventKind {
  play_start,
  pause_start,
};

std::string event_name(EventKind kind);

struct TraceEvent {
  double time_s = 0.0;
  EventKind kind = EventKind::play_start;
};

// Optional buffer-occupancy sample stream recorded alongside the events.
struct OccupancySample {
  double time_s = 0.0;
  double bytes = 0.0;
};

struct SessionTrace {
  std::vector<TraceEvent> events;          // strictly increasing, alternating
  std::vector<OccupancySample> occupancy;  // may be empty

  // Throws std::invalid_argument unless events alternate play/pause, start
  // with play_start, and are strictly increasing in time. An empty trace is
  // valid.
  void validate() const;
};

// Reads a `time_s,event` CSV. Malformed rows raise csv::ParseError carrying
// the line number; structural violations (ordering, alternation) do too.
SessionTrace parse_trace(std::istream& in, const std::string& source);
SessionTrace ingest_trace(const std::string& path);

// Writes the `time_s,event` CSV with 6-decimal timestamps.
void serialize_trace(const SessionTrace& trace, std::ostream& out);
void write_trace(const SessionTrace& trace, const std::string& path);

}  // namespace pi
