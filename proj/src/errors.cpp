#include "polykernel/errors.hpp"

#include <iostream>
#include <mutex>

namespace polykernel {

void warn(const std::string& msg) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "warning: " << msg << '\n';
}

}  // namespace polykernel
