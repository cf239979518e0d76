// Copyright 2026 The tierspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tierspec/diagnostics.hpp"

#include <sstream>

namespace tierspec {

std::string SourceSpan::str() const {
  std::ostringstream os;
  os << (file.empty() ? "<input>" : file);
  if (line > 0) os << ':' << line << ':' << column;
  return os.str();
}

std::string Diagnostic::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Diagnostic& d) {
  return os << d.span.str() << ": "
            << (d.severity == Severity::Error ? "error" : "warning") << ": "
            << d.message;
}

SpecError::SpecError(SourceSpan span, std::string message)
    : std::runtime_error(span.str() + ": " + message),
      diag_{Severity::Error, std::move(span), std::move(message)} {}

namespace {

std::string describe_parse_error(const std::string& found,
                                 const std::vector<std::string>& expected) {
  std::string msg = "unexpected " + found;
  if (!expected.empty()) {
    msg += "; expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += (i + 1 == expected.size()) ? " or " : ", ";
      msg += expected[i];
    }
  }
  return msg;
}

}  // namespace

ParseError::ParseError(SourceSpan span, std::string found,
                       std::vector<std::string> expected)
    : SpecError(std::move(span), describe_parse_error(found, expected)),
      found_(std::move(found)),
      expected_(std::move(expected)) {}

void Diagnostics::error(SourceSpan span, std::string message) {
  items_.push_back({Severity::Error, std::move(span), std::move(message)});
}

void Diagnostics::warning(SourceSpan span, std::string message) {
  items_.push_back({Severity::Warning, std::move(span), std::move(message)});
}

void Diagnostics::append(const Diagnostics& other) {
  items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

bool Diagnostics::has_errors() const {
  for (const auto& d : items_)
    if (d.severity == Severity::Error) return true;
  return false;
}

}  // namespace tierspec
