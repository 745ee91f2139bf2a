#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace specsift {

/// Subject-language runtime value. Int is a 32-bit two's-complement integer
/// with wrapping arithmetic; IntArray is a fixed-length sequence of Int.
struct Value {
  enum class Kind { Int, Bool, Array, Null };

  Kind kind = Kind::Null;
  int32_t i = 0;
  bool b = false;
  std::vector<int32_t> arr;

  static Value from_int(int32_t v) {
    Value x;
    x.kind = Kind::Int;
    x.i = v;
    return x;
  }
  static Value from_bool(bool v) {
    Value x;
    x.kind = Kind::Bool;
    x.b = v;
    return x;
  }
  static Value from_array(std::vector<int32_t> a) {
    Value x;
    x.kind = Kind::Array;
    x.arr = std::move(a);
    return x;
  }
  static Value null() { return Value{}; }

  bool is_null() const { return kind == Kind::Null; }

  bool operator==(const Value&) const = default;

  std::string to_string() const;
};

// Wrapping 32-bit arithmetic (signed interpretation of modulo-2^32 results).
inline int32_t wrap_add(int32_t a, int32_t b) {
  return static_cast<int32_t>(static_cast<uint32_t>(a) + static_cast<uint32_t>(b));
}
inline int32_t wrap_sub(int32_t a, int32_t b) {
  return static_cast<int32_t>(static_cast<uint32_t>(a) - static_cast<uint32_t>(b));
}
inline int32_t wrap_mul(int32_t a, int32_t b) {
  return static_cast<int32_t>(static_cast<uint32_t>(a) * static_cast<uint32_t>(b));
}
inline int32_t wrap_neg(int32_t a) {
  return static_cast<int32_t>(0u - static_cast<uint32_t>(a));
}
// Truncating division; INT32_MIN / -1 wraps to INT32_MIN. Callers must reject b == 0.
inline int32_t wrap_div(int32_t a, int32_t b) {
  if (a == INT32_MIN && b == -1) return INT32_MIN;
  return a / b;
}
inline int32_t wrap_mod(int32_t a, int32_t b) {
  if (a == INT32_MIN && b == -1) return 0;
  return a % b;
}

}  // namespace specsift
