#pragma once

// Counter-based 64-bit generator: the i-th output of stream `key` is
// splitmix64(key + (i + 1) * 0x9e3779b97f4a7c15). Streams are split by
// deriving a fresh key from (parent key, index), so configuration i of a batch
// sees the same numbers no matter which thread samples it.

#include <cstdint>

namespace polykernel {

std::uint64_t splitmix64(std::uint64_t x);

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  // Key of child stream `index`.
  static std::uint64_t derive(std::uint64_t key, std::uint64_t index);

  std::uint64_t next_u64();
  // Uniform on [0, 1), 53 random bits.
  double uniform();

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace polykernel
