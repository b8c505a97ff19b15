#include "pi/trace.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "pi/csv.hpp"

namespace pi {

std::string event_name(EventKind kind) {
  return kind == EventKind::play_start ? "play_start" : "pause_start";
}

void SessionTrace::validate() const {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (!std::isfinite(events[i].time_s)) {
      throw std::invalid_argument("event times must be finite");
    }
    if (i == 0) {
      if (events[0].kind != EventKind::play_start) {
        throw std::invalid_argument("trace must begin with play_start");
      }
      continue;
    }
    if (events[i].kind == events[i - 1].kind) {
      throw std::invalid_argument("trace events must alternate pause/play");
    }
    if (!(events[i].time_s > events[i - 1].time_s)) {
      throw std::invalid_argument("trace event times must be strictly increasing");
    }
  }
}

SessionTrace parse_trace(std::istream& in, const std::string& source) {
  const std::vector<csv::Row> rows = csv::read_table(in, source, {"time_s", "event"});
  SessionTrace trace;
  trace.events.reserve(rows.size());
  for (const csv::Row& row : rows) {
    const double t = csv::parse_double(row.fields[0], source, row.line);
    EventKind kind;
    if (row.fields[1] == "play_start") {
      kind = EventKind::play_start;
    } else if (row.fields[1] == "pause_start") {
      kind = EventKind::pause_start;
    } else {
      throw csv::ParseError(source, row.line, "unknown event kind '" + row.fields[1] + "'");
    }
    if (trace.events.empty()) {
      if (kind != EventKind::play_start) {
        throw csv::ParseError(source, row.line, "trace must begin with play_start");
      }
    } else {
      if (trace.events.back().kind == kind) {
        throw csv::ParseError(source, row.line,
                              "events must alternate: consecutive " + event_name(kind));
      }
      if (!(t > trace.events.back().time_s)) {
        throw csv::ParseError(source, row.line, "event times must be strictly increasing");
      }
    }
    trace.events.push_back(TraceEvent{t, kind});
  }
  return trace;
}

SessionTrace ingest_trace(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open trace file: " + path);
  return parse_trace(file, path);
}

void serialize_trace(const SessionTrace& trace, std::ostream& out) {
  out << "time_s,event\n";
  for (const TraceEvent& e : trace.events) {
    out << csv::format_fixed(e.time_s, 6) << ',' << event_name(e.kind) << '\n';
  }
}

void write_trace(const SessionTrace& trace, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  serialize_trace(trace, file);
}

}  // namespace pi
