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

#include "holopi/control.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace holopi {

double Segment::theta_rate() const {
  return duration > 0.0 ? (theta_end - theta_start) / duration : 0.0;
}

double Segment::phi_rate() const {
  return duration > 0.0 ? (phi_end - phi_start) / duration : 0.0;
}

ControlPoint Segment::at(double u) const {
  if (duration <= 0.0) return {omega, theta_end, phi_end};
  const double x = std::clamp(u / duration, 0.0, 1.0);
  return {omega, theta_start + (theta_end - theta_start) * x, phi_start + (phi_end - phi_start) * x};
}

Schedule::Schedule(std::vector<Segment> segments) : segments_(std::move(segments)) {
  starts_.reserve(segments_.size());
  double t = 0.0;
  for (const auto& s : segments_) {
    if (!(s.duration >= 0.0) || !std::isfinite(s.duration)) {
      throw ScheduleError("segment '" + s.tag + "' has invalid duration");
    }
    if (!(s.omega >= 0.0) || !std::isfinite(s.omega)) {
      throw ScheduleError("segment '" + s.tag + "' has negative or non-finite omega");
    }
    starts_.push_back(t);
    t += s.duration;
  }
  duration_ = t;
}

std::size_t Schedule::locate(double t) const {
  if (segments_.empty()) throw ScheduleError("empty schedule");
  if (t < 0.0 || t > duration_ * (1.0 + 1e-12) + 1e-300) {
    throw ScheduleError("time outside schedule");
  }
  std::size_t last_positive = segments_.size();
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i].duration <= 0.0) continue;
    last_positive = i;
    if (t < starts_[i] + segments_[i].duration) return i;
  }
  if (last_positive == segments_.size()) return segments_.size() - 1;
  return last_positive;
}

ControlPoint Schedule::at(double t) const {
  const std::size_t i = locate(t);
  return segments_[i].at(t - starts_[i]);
}

Schedule Schedule::stretched(double factor) const {
  if (!(factor > 0.0)) throw ScheduleError("stretch factor must be positive");
  std::vector<Segment> out = segments_;
  for (auto& s : out) s.duration *= factor;
  return Schedule(std::move(out));
}

Schedule Schedule::truncated(double t) const {
  std::vector<Segment> out;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const double start = starts_[i];
    if (start > t) break;
    Segment s = segments_[i];
    if (start + s.duration > t) {
      const double u = t - start;
      const ControlPoint end = s.at(u);
      s.duration = u;
      s.theta_end = end.theta;
      s.phi_end = end.phi;
      out.push_back(std::move(s));
      break;
    }
    out.push_back(std::move(s));
  }
  return Schedule(std::move(out));
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw ScheduleError("cannot format number");
  return std::string(buf.data(), ptr);
}

void write_schedule(std::ostream& out, const Schedule& schedule) {
  out << "# duration_s omega_rad_per_s theta_start theta_end phi_start phi_end tag\n";
  for (const auto& s : schedule.segments()) {
    out << format_double(s.duration) << ' ' << format_double(s.omega) << ' '
        << format_double(s.theta_start) << ' ' << format_double(s.theta_end) << ' '
        << format_double(s.phi_start) << ' ' << format_double(s.phi_end) << ' '
        << (s.tag.empty() ? "-" : s.tag) << '\n';
  }
}

namespace {

double parse_number(const std::string& token, std::size_t line_no) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ScheduleError("line " + std::to_string(line_no) + ": bad number '" + token + "'");
  }
  return value;
}

}  // namespace

Schedule read_schedule(std::istream& in) {
  std::vector<Segment> segments;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.size() != 7) {
      throw ScheduleError("line " + std::to_string(line_no) + ": expected 7 fields, got " +
                          std::to_string(tokens.size()));
    }
    Segment s;
    s.duration = parse_number(tokens[0], line_no);
    s.omega = parse_number(tokens[1], line_no);
    s.theta_start = parse_number(tokens[2], line_no);
    s.theta_end = parse_number(tokens[3], line_no);
    s.phi_start = parse_number(tokens[4], line_no);
    s.phi_end = parse_number(tokens[5], line_no);
    s.tag = tokens[6] == "-" ? std::string{} : tokens[6];
    segments.push_back(std::move(s));
  }
  return Schedule(std::move(segments));
}

}  // namespace holopi
