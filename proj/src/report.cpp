#include "tgk/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace tgk {

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::field(const std::string& key, const std::string& value) {
  lines_.push_back({depth_, key, value, false});
}

void Report::open(const std::string& key) {
  lines_.push_back({depth_, key, "", true});
  ++depth_;
}

void Report::close() {
  if (depth_ == 0) throw std::logic_error("Report::close without open");
  --depth_;
}

void Report::add_input(std::string_view data) {
  // Length-prefix so that ("ab","c") and ("a","bc") differ.
  inputs_ += std::to_string(data.size());
  inputs_ += ':';
  inputs_ += data;
}

std::string Report::str() const {
  std::string out = "command: " + command_ + "\n";
  out += "inputs_digest: fnv1a:" + fnv1a_hex(inputs_) + "\n";
  for (const auto& l : lines_) {
    out.append(2 * l.indent, ' ');
    out += l.key;
    out += ':';
    if (!l.block) {
      out += ' ';
      out += l.value;
    }
    out += '\n';
  }
  return out;
}

}  // namespace tgk
