#pragma once

#include <stdexcept>

namespace lpflow {

/// Half-integer angular momentum label, stored as twice its value so that
/// 1/2, 1, 3/2, ... are all exact.  Construct with HalfInt::from_twice or
/// from an integer.
class HalfInt {
 public:
  constexpr HalfInt() : twice_(0) {}
  constexpr HalfInt(int whole) : twice_(2 * whole) {}  // NOLINT: implicit by design
  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a) { return from_twice(-a.twice_); }
  friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice_ == b.twice_; }
  friend constexpr bool operator<(HalfInt a, HalfInt b) { return a.twice_ < b.twice_; }
  friend constexpr bool operator<=(HalfInt a, HalfInt b) { return a.twice_ <= b.twice_; }

 private:
  int twice_;
};

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3) via the Racah single-sum formula.
///
/// Factorials are taken from a precomputed long double table and each
/// alternating term is accumulated with compensated summation, which keeps
/// the relative error near 1e-17 for the moderate j used here.
///
/// Selection rules (m1+m2+m3 != 0, triangle violation, |m| > j) return 0.
/// Throws std::domain_error if any j is negative, any j-m is not an
/// integer, or the arguments exceed the supported factorial range.
double wigner3j(HalfInt j1, HalfInt j2, HalfInt j3,
                HalfInt m1, HalfInt m2, HalfInt m3);

}  // namespace lpflow
