#pragma once

// Max-plus semiring scalars: the reals extended by -Inf, with oplus = max and
// odot = +. -Inf is a distinguished variant, not a floating sentinel, so the
// absorbing/neutral laws hold structurally and no IEEE corner case (such as
// -inf + inf) can leak in.

#include <charconv>
#include <cmath>
#include <compare>
#include <string>
#include <string_view>
#include <system_error>

#include "tropibary/errors.hpp"

namespace tropibary {

class Scalar {
 public:
  // Default is the semiring zero (-Inf).
  constexpr Scalar() : finite_(false), v_(0.0) {}

  // Finite value; rejects NaN and +/-inf.
  explicit Scalar(double v) : finite_(true), v_(v) {
    if (!std::isfinite(v)) throw invalid_input("scalar payload must be finite (use Scalar::bottom() for -Inf)");
  }

  static constexpr Scalar bottom() { return Scalar(); }

  constexpr bool is_bottom() const { return !finite_; }
  constexpr bool is_finite() const { return finite_; }

  // Finite payload. Calling this on -Inf is a logic error.
  double value() const {
    if (!finite_) throw error("value() called on -Inf scalar");
    return v_;
  }

  friend constexpr bool operator==(Scalar a, Scalar b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.v_ == b.v_;
  }

  // Total order with -Inf below every finite value. No NaN can occur.
  friend constexpr std::strong_ordering operator<=>(Scalar a, Scalar b) {
    if (!a.finite_ && !b.finite_) return std::strong_ordering::equal;
    if (!a.finite_) return std::strong_ordering::less;
    if (!b.finite_) return std::strong_ordering::greater;
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  bool finite_;
  double v_;
};

// oplus = max. Idempotent; -Inf is neutral.
inline Scalar oplus(Scalar a, Scalar b) { return a >= b ? a : b; }

// odot = +. -Inf is absorbing. Overflow past the finite range is a bug in the
// caller's data, not a representable scalar, so it throws.
inline Scalar odot(Scalar a, Scalar b) {
  if (a.is_bottom() || b.is_bottom()) return Scalar::bottom();
  double s = a.value() + b.value();
  if (!std::isfinite(s)) throw error("odot overflow");
  return Scalar(s);
}

// rho(x, y) = |e^x - e^y| with e^-Inf = 0. Metrizes the scalar line.
inline double rho_metric(Scalar x, Scalar y) {
  auto ex = [](Scalar s) {
    if (s.is_bottom()) return 0.0;
    if (s.value() > 700.0) throw error("rho_metric overflow");
    return std::exp(s.value());
  };
  return std::abs(ex(x) - ex(y));
}

inline bool approx_equal(Scalar a, Scalar b, double tol) {
  if (a.is_bottom() || b.is_bottom()) return a.is_bottom() && b.is_bottom();
  return std::abs(a.value() - b.value()) <= tol;
}

// Serialized form: "-Inf" or a finite decimal (shortest round-trip).
inline std::string format_scalar(Scalar s) {
  if (s.is_bottom()) return "-Inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, s.value());
  return std::string(buf, res.ptr);
}

inline Scalar parse_scalar(std::string_view tok) {
  if (tok == "-Inf") return Scalar::bottom();
  double v = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(v))
    throw invalid_input("bad scalar token '" + std::string(tok) + "' (expected finite decimal or \"-Inf\")");
  return Scalar(v);
}

// A point of the arc J: weights (t, p) with t, p <= 0 and t oplus p = 0.
// Exactly the weight pairs that keep two-point combinations normalized.
class JPair {
 public:
  JPair(Scalar t, Scalar p) : t_(t), p_(p) {
    Scalar zero(0.0);
    if (t > zero || p > zero) throw invalid_input("JPair weights must be <= 0");
    if (oplus(t, p) != zero) throw invalid_input("JPair must satisfy t oplus p = 0");
  }
  Scalar t() const { return t_; }
  Scalar p() const { return p_; }

 private:
  Scalar t_, p_;
};

}  // namespace tropibary
