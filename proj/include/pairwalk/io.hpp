#pragma once

#include <stdexcept>
#include <string>

namespace pairwalk {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 17 significant digits, '.' decimal separator: lossless round trip of
// binary64 and byte-stable across runs.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace pairwalk
