// Copyright 2026 The holopi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace holopi {

/// Instantaneous drive parameters of the Lambda Hamiltonian: envelope
/// amplitude omega (rad/s), polar angle theta and azimuth phi (rad).
struct ControlPoint {
  double omega = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// One piece of a control program. The envelope is constant over the piece
/// and both angles move linearly from their start to their end values.
struct Segment {
  double duration = 0.0;  // s
  double omega = 0.0;     // rad/s
  double theta_start = 0.0;
  double theta_end = 0.0;
  double phi_start = 0.0;
  double phi_end = 0.0;
  std::string tag;

  double theta_rate() const;
  double phi_rate() const;
  bool frozen() const { return theta_start == theta_end && phi_start == phi_end; }
  double area() const { return omega * duration; }
  /// Control point at local time u in [0, duration].
  ControlPoint at(double u) const;
};

class ScheduleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Piecewise control program. Immutable once built.
class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }
  double duration() const { return duration_; }
  /// Start time of segment i.
  double start_time(std::size_t i) const { return starts_.at(i); }

  /// Segment active at time t. Ties at a boundary go to the later segment
  /// of positive duration; t == duration() maps to the last positive one.
  std::size_t locate(double t) const;
  ControlPoint at(double t) const;

  /// Same program with every duration multiplied by factor; envelopes kept.
  Schedule stretched(double factor) const;
  /// Segments whose time interval lies within [0, t], truncating the last.
  Schedule truncated(double t) const;

 private:
  std::vector<Segment> segments_;
  std::vector<double> starts_;
  double duration_ = 0.0;
};

/// Line-oriented text form: one segment per line,
/// `duration omega theta_start theta_end phi_start phi_end tag`.
/// Numbers use shortest round-trip decimal, independent of locale.
/// Lines starting with '#' and blank lines are ignored on input.
void write_schedule(std::ostream& out, const Schedule& schedule);
Schedule read_schedule(std::istream& in);
std::string format_double(double value);

}  // namespace holopi
