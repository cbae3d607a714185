#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdbl {

using Rat = boost::rational<long long>;

// Parses "p/q", "17", "-3/2" or a plain decimal like "1.5".
Rat rat_from_string(const std::string& s);

// "p/q" when q != 1, otherwise just "p".
std::string rat_to_string(const Rat& r);

// Exact conversion of a binary floating point value.
Rat rat_from_double(double x);

double rat_to_double(const Rat& r);

// Nonnegative extended real: a rational distance or +infinity.
// Addition saturates at infinity, min treats infinity as maximal,
// and the order is total with infinity on top.
class ExtValue {
 public:
  ExtValue() : finite_(true), v_(0) {}
  ExtValue(Rat v) : finite_(true), v_(std::move(v)) {
    if (v_ < Rat(0)) throw std::invalid_argument("ExtValue: negative value");
  }
  ExtValue(long long v) : ExtValue(Rat(v)) {}

  static ExtValue inf() {
    ExtValue e;
    e.finite_ = false;
    return e;
  }

  bool is_inf() const { return !finite_; }
  bool is_zero() const { return finite_ && v_.numerator() == 0; }

  const Rat& finite() const {
    if (!finite_) throw std::logic_error("ExtValue: finite() on infinity");
    return v_;
  }

  friend ExtValue operator+(const ExtValue& a, const ExtValue& b) {
    if (a.is_inf() || b.is_inf()) return inf();
    return ExtValue(a.v_ + b.v_);
  }

  friend bool operator==(const ExtValue& a, const ExtValue& b) {
    if (a.finite_ != b.finite_) return false;
    return a.is_inf() || a.v_ == b.v_;
  }

  friend bool operator<(const ExtValue& a, const ExtValue& b) {
    if (a.is_inf()) return false;
    if (b.is_inf()) return true;
    return a.v_ < b.v_;
  }
  friend bool operator>(const ExtValue& a, const ExtValue& b) { return b < a; }
  friend bool operator<=(const ExtValue& a, const ExtValue& b) { return !(b < a); }
  friend bool operator>=(const ExtValue& a, const ExtValue& b) { return !(a < b); }

  friend const ExtValue& min(const ExtValue& a, const ExtValue& b) {
    return b < a ? b : a;
  }

  // Scaling by a nonnegative rational; t * inf = inf even for t = 0,
  // callers never scale infinite entries by zero.
  friend ExtValue operator*(const Rat& t, const ExtValue& a) {
    if (t < Rat(0)) throw std::invalid_argument("ExtValue: negative scale");
    if (a.is_inf()) return inf();
    return ExtValue(t * a.v_);
  }

  std::string str() const { return finite_ ? rat_to_string(v_) : "inf"; }

 private:
  bool finite_;
  Rat v_;
};

// Dense row-major matrix of extended values.
struct ExtMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<ExtValue> a;

  ExtMatrix() = default;
  ExtMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  ExtValue& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const ExtValue& at(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }

  ExtMatrix transposed() const {
    ExtMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend bool operator==(const ExtMatrix& x, const ExtMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

}  // namespace mdbl
