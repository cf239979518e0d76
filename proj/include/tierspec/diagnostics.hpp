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

#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tierspec {

/// A half-open region of a source file. Lines and columns are 1-based;
/// a zero line means "no position known".
struct SourceSpan {
  std::string file;
  int line = 0;
  int column = 0;
  int end_line = 0;
  int end_column = 0;

  bool known() const { return line > 0; }
  std::string str() const;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  SourceSpan span;
  std::string message;

  std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const Diagnostic& d);

/// Static error in a specification: syntax, sorts, binding, layering.
/// Carries one primary diagnostic; the CLI maps it to exit status 1.
class SpecError : public std::runtime_error {
 public:
  SpecError(SourceSpan span, std::string message);

  const Diagnostic& diagnostic() const { return diag_; }
  const SourceSpan& span() const { return diag_.span; }

 private:
  Diagnostic diag_;
};

/// Syntax error with the set of tokens the parser would have accepted.
class ParseError : public SpecError {
 public:
  ParseError(SourceSpan span, std::string found, std::vector<std::string> expected);

  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::string found_;
  std::vector<std::string> expected_;
};

class Diagnostics {
 public:
  void error(SourceSpan span, std::string message);
  void warning(SourceSpan span, std::string message);
  void add(Diagnostic d) { items_.push_back(std::move(d)); }
  void append(const Diagnostics& other);

  bool has_errors() const;
  const std::vector<Diagnostic>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

 private:
  std::vector<Diagnostic> items_;
};

}  // namespace tierspec
