#pragma once

// Line-oriented "key: value" reports with indented blocks.  Output depends
// only on what was added, so identical inputs give byte-identical reports.

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace tgk {

// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

class Report {
 public:
  explicit Report(std::string command);

  void field(const std::string& key, const std::string& value);
  // Opens "key:" and indents later fields until close().
  void open(const std::string& key);
  void close();
  // Every input (file text or argument) folds into the digest in order.
  void add_input(std::string_view data);

  std::string str() const;
  void write(std::ostream& os) const { os << str(); }

 private:
  struct Line {
    std::size_t indent;
    std::string key;
    std::string value;
    bool block;
  };
  std::string command_;
  std::string inputs_;
  std::vector<Line> lines_;
  std::size_t depth_ = 0;
};

}  // namespace tgk
