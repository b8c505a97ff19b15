#include "doctest.h"

#include "pi/csv.hpp"
#include "pi/simulator.hpp"
#include "pi/trace.hpp"
#include "pi/trace_metrics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace {

pi::SessionTrace make_trace(std::initializer_list<pi::TraceEvent> events) {
  pi::SessionTrace t;
  t.events = events;
  return t;
}

using pi::EventKind;

}  // namespace

TEST_CASE("a single pause/play cycle measures out exactly") {
  auto t = make_trace({{0.0, EventKind::play_start},
                       {10.0, EventKind::pause_start},
                       {20.0, EventKind::play_start}});

  auto m = pi::compute_metrics(t, pi::Window{10.0, 110.0});
  CHECK(m.pause_count == size_t(1));
  CHECK(m.mean_pause_duration_s == doctest::Approx(10.0));
  CHECK(m.pause_frequency_hz == doctest::Approx(0.01));
  CHECK(m.pause_intensity == doctest::Approx(0.1));
  CHECK(m.paused_fraction == doctest::Approx(0.1));

  // Default window runs from the first event to the last play resume.
  auto d = pi::compute_metrics(t);
  CHECK(d.window.start_s == 0.0);
  CHECK(d.window.end_s == 20.0);
  CHECK(d.mean_pause_duration_s == doctest::Approx(10.0));
  CHECK(d.pause_frequency_hz == doctest::Approx(0.05));
  CHECK(d.pause_intensity == doctest::Approx(0.5));
  CHECK(d.pause_intensity == doctest::Approx(d.paused_fraction));
}

TEST_CASE("a trace without pauses reports zero intensity and no mean") {
  auto t = make_trace({{1.6, EventKind::play_start}});
  auto m = pi::compute_metrics(t, pi::Window{0.0, 90.0});
  CHECK(m.pause_count == size_t(0));
  CHECK(std::isnan(m.mean_pause_duration_s));
  CHECK(m.pause_frequency_hz == 0.0);
  CHECK(m.pause_intensity == 0.0);
  CHECK(m.paused_fraction == 0.0);
}

TEST_CASE("periodic synthetic traces reproduce their generating parameters") {
  auto t = pi::synthesize_trace(0.11, 3.97, 90.0);
  auto m = pi::compute_metrics(t);
  CHECK(m.pause_frequency_hz == doctest::Approx(0.11).epsilon(1e-9));
  CHECK(m.mean_pause_duration_s == doctest::Approx(3.97).epsilon(1e-9));
  CHECK(m.pause_intensity == doctest::Approx(0.11 * 3.97).epsilon(1e-9));
  CHECK(m.paused_fraction == doctest::Approx(m.pause_intensity).epsilon(1e-9));
}

TEST_CASE("growing a periodic window by whole periods changes nothing") {
  auto t = pi::synthesize_trace(0.1, 2.0, 200.0);  // period 10 s, 20 cycles
  auto a = pi::compute_metrics(t, pi::Window{0.0, 100.0});
  auto b = pi::compute_metrics(t, pi::Window{0.0, 150.0});
  CHECK(a.pause_frequency_hz == doctest::Approx(b.pause_frequency_hz).epsilon(1e-12));
  CHECK(a.mean_pause_duration_s == doctest::Approx(b.mean_pause_duration_s).epsilon(1e-12));
  CHECK(a.pause_intensity == doctest::Approx(b.pause_intensity).epsilon(1e-12));
}

TEST_CASE("an open trailing pause counts toward paused time but not the mean") {
  auto t = make_trace({{0.0, EventKind::play_start},
                       {5.0, EventKind::pause_start},
                       {10.0, EventKind::play_start},
                       {15.0, EventKind::pause_start}});
  auto m = pi::compute_metrics(t, pi::Window{0.0, 18.0});
  CHECK(m.pause_count == size_t(1));  // only the 5..10 pause completed
  CHECK(m.mean_pause_duration_s == doctest::Approx(5.0));
  CHECK(m.pause_intensity == doctest::Approx(5.0 / 18.0));
  CHECK(m.paused_fraction == doctest::Approx(8.0 / 18.0));  // includes the open tail
}

TEST_CASE("window validation") {
  auto t = make_trace({{0.0, EventKind::play_start}, {1.0, EventKind::pause_start},
                       {2.0, EventKind::play_start}});
  CHECK_THROWS_AS(pi::compute_metrics(t, pi::Window{5.0, 5.0}), std::invalid_argument);
  CHECK_THROWS_AS(pi::compute_metrics(t, pi::Window{5.0, 1.0}), std::invalid_argument);
}

TEST_CASE("structural trace validation") {
  auto bad = make_trace({{0.0, EventKind::pause_start}});
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  auto dup = make_trace({{0.0, EventKind::play_start}, {1.0, EventKind::play_start}});
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

  auto order = make_trace({{0.0, EventKind::play_start}, {0.0, EventKind::pause_start}});
  CHECK_THROWS_AS(order.validate(), std::invalid_argument);

  pi::SessionTrace empty;
  CHECK_NOTHROW(empty.validate());
  CHECK_THROWS_AS(pi::compute_metrics(empty), std::invalid_argument);
}

TEST_CASE("trace serialization round-trips byte for byte") {
  auto t = pi::synthesize_trace(0.11, 3.97, 90.0);
  std::ostringstream first;
  pi::serialize_trace(t, first);

  std::istringstream in(first.str());
  auto back = pi::parse_trace(in, "roundtrip");
  REQUIRE(back.events.size() == t.events.size());
  std::ostringstream second;
  pi::serialize_trace(back, second);
  CHECK(first.str() == second.str());
}

TEST_CASE("malformed trace files carry the offending line number") {
  auto expect_line = [](const std::string& text, int line) {
    std::istringstream in(text);
    try {
      pi::parse_trace(in, "bad");
      FAIL(("expected ParseError for: " + text));
    } catch (const pi::csv::ParseError& e) {
      CHECK(e.line() == line);
    }
  };

  expect_line("time_s,event\n0.0,play_start\n1.0,pause_start\n2.0,pause_start\n", 4);
  expect_line("time_s,event\n0.0,play_start\n1.0,pause_start\n0.5,play_start\n", 4);
  expect_line("time_s,event\n0.0,play_start\n1.0,resume\n", 3);
  expect_line("time_s,event\n0.0,play_start\nabc,pause_start\n", 3);
  expect_line("time_s,event\n0.0,pause_start\n", 2);
  expect_line("time,kind\n0.0,play_start\n", 1);
}

TEST_CASE("ingesting a missing file fails loudly") {
  CHECK_THROWS_AS(pi::ingest_trace("/nonexistent/trace.csv"), std::runtime_error);
}
