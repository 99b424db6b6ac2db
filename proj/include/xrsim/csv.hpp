#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace xrsim::csvio {

// Locale-independent fixed-precision number, so outputs are byte-stable.
inline std::string num(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

class Writer {
 public:
  Writer(const std::string& path, const std::string& header)
      : f_(path, std::ios::binary) {
    if (!f_) throw std::runtime_error("cannot open output file: " + path);
    f_ << header << "\n";
  }

  void row(const std::string& line) { f_ << line << "\n"; }

  void close() {
    f_.close();
    if (f_.fail()) throw std::runtime_error("failed to write output file");
  }

 private:
  std::ofstream f_;
};

}  // namespace xrsim::csvio
