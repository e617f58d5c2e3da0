// Copyright 2026 The Quizmorph Authors.
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

#ifndef QUIZMORPH_ERROR_H_
#define QUIZMORPH_ERROR_H_

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace quizmorph {

// Unrecoverable failure for the current run (bad input file, duplicate id,
// broken invariant). The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Recoverable, per-record problem. Rendered as "WARN <file>:<line>: <msg>".
struct Diagnostic {
  std::string file;
  int line = 0;  // 0 when the problem has no line position
  std::string message;
};

class Diagnostics {
 public:
  void warn(std::string file, int line, std::string message) {
    items_.push_back({std::move(file), line, std::move(message)});
  }
  void warn(std::string message) { warn("", 0, std::move(message)); }
  void append(const Diagnostics &other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
  }

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::vector<Diagnostic> &items() const { return items_; }

  void print(std::ostream &out) const {
    for (const Diagnostic &d : items_) {
      out << "WARN ";
      if (!d.file.empty()) {
        out << d.file;
        if (d.line > 0) out << ':' << d.line;
        out << ": ";
      }
      out << d.message << '\n';
    }
  }

 private:
  std::vector<Diagnostic> items_;
};

}  // namespace quizmorph

#endif  // QUIZMORPH_ERROR_H_
