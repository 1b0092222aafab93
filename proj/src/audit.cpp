// Copyright 2026 The saferules Authors
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

#include "saferules/audit.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>

#include "saferules/error.hpp"

namespace saferules {

namespace {

std::string sanitize(std::string text) {
  for (auto& c : text) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string format_operands(const std::vector<Operand>& operands) {
  if (operands.empty()) return "-";
  std::string out;
  for (const auto& op : operands) {
    if (!out.empty()) out += ";";
    out += sanitize(op.label) + "=" + format_rational(op.value);
  }
  return out;
}

std::string format_trips(const std::vector<Trip>& trips) {
  if (trips.empty()) return "-";
  std::string out;
  for (const auto& t : trips) {
    if (!out.empty()) out += ",";
    out += std::to_string(t.frame_id) + ":" + t.rule_id;
  }
  return out;
}

std::int64_t parse_frame(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto value = std::stoll(text, &used);
    if (used != text.size()) throw InvalidArgument("bad frame id '" + text + "'");
    return value;
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad frame id '" + text + "'");
  }
}

}  // namespace

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::system_clock::to_time_t(now);
  const auto millis =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm utc{};
  gmtime_r(&secs, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &utc);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(millis));
  return out;
}

AuditLog::AuditLog(std::ostream& sink, bool timestamps) : sink_(sink), timestamps_(timestamps) {}

void AuditLog::append(std::int64_t frame_id, const std::vector<Verdict>& verdicts, const PipelineDecision& decision) {
  const std::string ts = timestamps_ ? iso8601_now() : "-";
  for (const auto& v : verdicts) {
    sink_ << "VERDICT\t" << v.frame_id << '\t' << v.rule_id << '\t' << to_string(v.outcome) << '\t'
          << format_operands(v.evaluated) << '\t' << sanitize(v.message) << '\t' << ts << '\n';
  }
  sink_ << "DECISION\t" << frame_id << '\t' << to_string(decision.state) << '\t' << format_trips(decision.tripped_by)
        << '\t' << ts << '\n';
  flush_checked();
}

void AuditLog::append_reset(std::int64_t frame_id) {
  sink_ << "RESET\t" << frame_id << '\t' << (timestamps_ ? iso8601_now() : "-") << '\n';
  flush_checked();
}

void AuditLog::flush_checked() {
  sink_.flush();
  if (!sink_) throw IoError("failed to write audit log");
}

std::vector<AuditRecord> parse_audit_log(std::istream& in) {
  std::vector<AuditRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, '\t');
    auto bad = [&] { return InvalidArgument("malformed audit record on line " + std::to_string(line_no)); };
    AuditRecord rec;
    if (f[0] == "VERDICT") {
      if (f.size() != 7) throw bad();
      rec.kind = AuditRecord::Kind::Verdict;
      Verdict v;
      v.frame_id = parse_frame(f[1]);
      v.rule_id = f[2];
      v.outcome = parse_outcome(f[3]);
      if (f[4] != "-") {
        for (const auto& item : split(f[4], ';')) {
          const auto eq = item.rfind('=');
          if (eq == std::string::npos) throw bad();
          v.evaluated.push_back({item.substr(0, eq), parse_rational(item.substr(eq + 1))});
        }
      }
      v.message = f[5];
      if (v.outcome == Outcome::Error) v.error = f[5].substr(0, f[5].find(':'));
      rec.frame_id = v.frame_id;
      rec.verdict = std::move(v);
      rec.timestamp = f[6];
    } else if (f[0] == "DECISION") {
      if (f.size() != 5) throw bad();
      rec.kind = AuditRecord::Kind::Decision;
      rec.frame_id = parse_frame(f[1]);
      PipelineDecision d;
      d.state = parse_gate_state(f[2]);
      if (f[3] != "-") {
        for (const auto& item : split(f[3], ',')) {
          const auto colon = item.find(':');
          if (colon == std::string::npos) throw bad();
          d.tripped_by.push_back({parse_frame(item.substr(0, colon)), item.substr(colon + 1)});
        }
      }
      rec.decision = std::move(d);
      rec.timestamp = f[4];
    } else if (f[0] == "RESET") {
      if (f.size() != 3) throw bad();
      rec.kind = AuditRecord::Kind::Reset;
      rec.frame_id = parse_frame(f[1]);
      rec.timestamp = f[2];
    } else {
      throw bad();
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace saferules
