// Copyright 2026 The ppmplan Authors
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

#include "ppmplan/lp_export.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "ppmplan/error.hpp"

namespace ppmplan {
namespace {

constexpr std::size_t kLineWidth = 78;

// Accumulates terms and breaks lines before they grow past kLineWidth.
class Wrapper {
 public:
  Wrapper(std::ostream& out, std::string head) : out_(out), line_(std::move(head)) {}

  void term(const std::string& t) {
    if (line_.size() + 1 + t.size() > kLineWidth && line_.find_first_not_of(' ') != std::string::npos) {
      out_ << line_ << '\n';
      line_ = "   ";
    }
    line_ += ' ';
    line_ += t;
  }

  void finish() { out_ << line_ << '\n'; }

 private:
  std::ostream& out_;
  std::string line_;
};

}  // namespace

void write_lp(const CoverInstance& instance, std::ostream& out) {
  const std::size_t links = instance.link_count();
  const std::size_t groups = instance.group_count();
  const long long alpha = instance.alpha();
  const long long gamma = instance.gamma();

  out << "\\ Monitoring placement: min alpha * sum_e (gamma - x_e) + sum_l p_l\n";
  out << "\\ links " << links << ", path groups " << groups << ", gamma "
      << gamma << ", alpha " << alpha << '\n';
  out << "\\ The constant alpha * gamma * |E| = " << alpha * gamma * static_cast<long long>(links)
      << " is dropped from the objective below.\n";
  for (std::size_t e = 0; e < links; ++e) {
    out << "\\ x" << e << " = " << instance.link_label(e) << '\n';
  }
  for (std::size_t l = 0; l < groups; ++l) {
    out << "\\ p" << l << " =";
    for (LinkIndex e : instance.group(l).links) out << ' ' << instance.link_label(e);
    out << " (c = " << instance.group(l).count << ")\n";
  }

  out << "Minimize\n";
  {
    Wrapper w(out, " obj:");
    bool first = true;
    for (std::size_t l = 0; l < groups; ++l) {
      w.term((first ? "" : "+ ") + std::string("p") + std::to_string(l));
      first = false;
    }
    for (std::size_t e = 0; e < links; ++e) {
      w.term((first ? "-" : "- ") + std::to_string(alpha) + " x" + std::to_string(e));
      first = false;
    }
    if (first) w.term("0");
    w.finish();
  }

  out << "Subject To\n";
  for (std::size_t e = 0; e < links; ++e) {
    Wrapper w(out, " npl" + std::to_string(e) + ":");
    w.term("x" + std::to_string(e));
    for (std::size_t l : instance.groups_on_link()[e]) {
      w.term("- p" + std::to_string(l));
    }
    w.term("<= 0");
    w.finish();
  }

  out << "Bounds\n";
  for (std::size_t l = 0; l < groups; ++l) {
    out << " 0 <= p" << l << " <= " << instance.group(l).count << '\n';
  }
  for (std::size_t e = 0; e < links; ++e) {
    out << " 0 <= x" << e << " <= " << gamma << '\n';
  }

  if (links + groups > 0) {
    out << "General\n";
    Wrapper w(out, "");
    for (std::size_t l = 0; l < groups; ++l) w.term("p" + std::to_string(l));
    for (std::size_t e = 0; e < links; ++e) w.term("x" + std::to_string(e));
    w.finish();
  }
  out << "End\n";
}

std::string lp_text(const CoverInstance& instance) {
  std::ostringstream out;
  write_lp(instance, out);
  return out.str();
}

void export_lp(const CoverInstance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write LP file: " + path);
  write_lp(instance, out);
  if (!out) throw DataError("failed writing LP file: " + path);
}

}  // namespace ppmplan
