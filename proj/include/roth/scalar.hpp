#pragma once

#include "roth/error.hpp"
#include "roth/numeric.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace roth {

enum class ScalarKind : std::uint8_t { Real, Complex, Quaternion };

// Number of real components per scalar: 1, 2 or 4.
constexpr std::size_t arity(ScalarKind k) {
  switch (k) {
  case ScalarKind::Real: return 1;
  case ScalarKind::Complex: return 2;
  case ScalarKind::Quaternion: return 4;
  }
  return 0;
}

constexpr std::string_view kind_name(ScalarKind k) {
  switch (k) {
  case ScalarKind::Real: return "R";
  case ScalarKind::Complex: return "C";
  case ScalarKind::Quaternion: return "H";
  }
  return "?";
}

constexpr std::optional<ScalarKind> parse_kind(std::string_view s) {
  if (s == "R") return ScalarKind::Real;
  if (s == "C") return ScalarKind::Complex;
  if (s == "H") return ScalarKind::Quaternion;
  return std::nullopt;
}

inline ScalarKind kind_from_name(std::string_view s) {
  if (auto k = parse_kind(s)) return *k;
  throw Error("unknown scalar kind '" + std::string(s) + "', expected R, C or H");
}

inline void require_same_kind(ScalarKind a, ScalarKind b) {
  if (a != b)
    throw KindMismatch("scalar kinds differ: " + std::string(kind_name(a)) +
                       " vs " + std::string(kind_name(b)));
}

/// The four matrix maps X, X^∁, X^†, X^⁎. The bit pattern makes the group
/// product an XOR: bit 0 is the automorphism part, bit 1 the transpose part.
enum class SigmaOp : std::uint8_t { Identity = 0, Conj = 1, Dagger = 2, Star = 3 };

inline constexpr std::array<SigmaOp, 4> all_sigmas{SigmaOp::Identity, SigmaOp::Conj,
                                                   SigmaOp::Dagger, SigmaOp::Star};

constexpr SigmaOp sigma_compose(SigmaOp a, SigmaOp b) {
  return static_cast<SigmaOp>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

constexpr bool transposes(SigmaOp s) { return (static_cast<std::uint8_t>(s) & 2u) != 0; }

/// s = alpha · lambda with alpha ∈ {1, ∁} and lambda ∈ {1, †}.
struct SigmaSplit {
  SigmaOp alpha;
  SigmaOp lambda;
  friend constexpr bool operator==(SigmaSplit, SigmaSplit) = default;
};

constexpr SigmaSplit sigma_decompose(SigmaOp s) {
  auto bits = static_cast<std::uint8_t>(s);
  return {static_cast<SigmaOp>(bits & 1u), static_cast<SigmaOp>(bits & 2u)};
}

constexpr std::string_view sigma_name(SigmaOp s) {
  switch (s) {
  case SigmaOp::Identity: return "id";
  case SigmaOp::Conj: return "conj";
  case SigmaOp::Dagger: return "dagger";
  case SigmaOp::Star: return "star";
  }
  return "?";
}

constexpr std::optional<SigmaOp> parse_sigma(std::string_view s) {
  for (auto op : all_sigmas)
    if (sigma_name(op) == s) return op;
  return std::nullopt;
}

inline SigmaOp sigma_from_name(std::string_view s) {
  if (auto op = parse_sigma(s)) return *op;
  throw Error("unknown involution '" + std::string(s) + "', expected id, conj, dagger or star");
}

/// Signs the entrywise part of σ applies to the real components (1, i, j, k).
/// ∁ and ∘ are the identity on ℝ; ∘ is the identity on ℂ as well.
constexpr std::array<int, 4> component_signs(ScalarKind kind, SigmaOp s) {
  switch (kind) {
  case ScalarKind::Real: return {1, 1, 1, 1};
  case ScalarKind::Complex:
    return (static_cast<std::uint8_t>(s) & 1u) ? std::array{1, -1, 1, 1}
                                               : std::array{1, 1, 1, 1};
  case ScalarKind::Quaternion:
    switch (s) {
    case SigmaOp::Identity: return {1, 1, 1, 1};
    case SigmaOp::Conj: return {1, 1, -1, -1};
    case SigmaOp::Dagger: return {1, -1, 1, 1};
    case SigmaOp::Star: return {1, -1, -1, -1};
    }
  }
  return {1, 1, 1, 1};
}

/// A real, complex or quaternion value stored as its real components over the
/// basis 1 / 1,i / 1,i,j,k. Components beyond the kind's arity are kept zero.
template <class T> class Scalar {
public:
  using value_type = T;

  explicit Scalar(ScalarKind kind = ScalarKind::Real) : kind_(kind), c_{} {
    for (auto &x : c_) x = T(0);
  }

  Scalar(ScalarKind kind, const std::array<T, 4> &components) : kind_(kind), c_(components) {
    for (std::size_t p = 0; p < 4; ++p) {
      if (!NumTraits<T>::is_finite(c_[p])) throw Error("non-finite scalar component");
      if (p >= arity(kind) && !NumTraits<T>::is_zero(c_[p]))
        throw Error("component " + std::to_string(p) + " set on a " +
                    std::string(kind_name(kind)) + " scalar");
    }
  }

  static Scalar real(ScalarKind kind, const T &v) {
    Scalar s(kind);
    s.c_[0] = v;
    return s;
  }

  static Scalar unit(ScalarKind kind, std::size_t p) {
    Scalar s(kind);
    s.c_[p] = T(1);
    return s;
  }

  ScalarKind kind() const { return kind_; }
  const T &operator[](std::size_t p) const { return c_[p]; }
  const std::array<T, 4> &components() const { return c_; }

  bool is_zero() const {
    for (std::size_t p = 0; p < arity(kind_); ++p)
      if (!NumTraits<T>::is_zero(c_[p])) return false;
    return true;
  }

  /// Sum of squared components (the reduced norm).
  T norm2() const {
    T n(0);
    for (std::size_t p = 0; p < arity(kind_); ++p) n += c_[p] * c_[p];
    return n;
  }

  Scalar &operator+=(const Scalar &o) {
    require_same_kind(kind_, o.kind_);
    for (std::size_t p = 0; p < arity(kind_); ++p) c_[p] += o.c_[p];
    return *this;
  }
  Scalar &operator-=(const Scalar &o) {
    require_same_kind(kind_, o.kind_);
    for (std::size_t p = 0; p < arity(kind_); ++p) c_[p] -= o.c_[p];
    return *this;
  }
  Scalar operator-() const {
    Scalar r(*this);
    for (std::size_t p = 0; p < arity(kind_); ++p) r.c_[p] = -r.c_[p];
    return r;
  }
  friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }

  /// Multiplication by a real (central) factor.
  Scalar scaled(const T &f) const {
    Scalar r(*this);
    for (std::size_t p = 0; p < arity(kind_); ++p) r.c_[p] *= f;
    return r;
  }

  /// Flips component signs as given; `signs` comes from component_signs().
  Scalar with_signs(const std::array<int, 4> &signs) const {
    Scalar r(*this);
    for (std::size_t p = 0; p < arity(kind_); ++p)
      if (signs[p] < 0) r.c_[p] = -r.c_[p];
    return r;
  }

  friend Scalar operator*(const Scalar &x, const Scalar &y) {
    require_same_kind(x.kind_, y.kind_);
    Scalar r(x.kind_);
    const auto &a = x.c_;
    const auto &b = y.c_;
    switch (x.kind_) {
    case ScalarKind::Real:
      r.c_[0] = a[0] * b[0];
      break;
    case ScalarKind::Complex:
      r.c_[0] = a[0] * b[0] - a[1] * b[1];
      r.c_[1] = a[0] * b[1] + a[1] * b[0];
      break;
    case ScalarKind::Quaternion:
      r.c_[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
      r.c_[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
      r.c_[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
      r.c_[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
      break;
    }
    return r;
  }

  friend bool operator==(const Scalar &x, const Scalar &y) {
    return x.kind_ == y.kind_ && x.c_ == y.c_;
  }

private:
  ScalarKind kind_;
  std::array<T, 4> c_;
};

template <class T> Scalar<T> mul(const Scalar<T> &a, const Scalar<T> &b) { return a * b; }

/// h ↦ h^∁: identity on ℝ, complex conjugation on ℂ, a+bi+cj+dk ↦ a+bi−cj−dk on ℍ.
template <class T> Scalar<T> conj_auto(const Scalar<T> &h) {
  return h.with_signs(component_signs(h.kind(), SigmaOp::Conj));
}

/// h ↦ h^∘: identity on ℝ and ℂ, a+bi+cj+dk ↦ a−bi+cj+dk on ℍ.
template <class T> Scalar<T> anti_auto(const Scalar<T> &h) {
  return h.with_signs(component_signs(h.kind(), SigmaOp::Dagger));
}

/// h̄ = (h^∁)^∘.
template <class T> Scalar<T> bar(const Scalar<T> &h) { return anti_auto(conj_auto(h)); }

/// Entrywise part of σ: 1 ↦ h, ∁ ↦ h^∁, † ↦ h^∘, ⁎ ↦ h̄.
template <class T> Scalar<T> entry_sigma(const Scalar<T> &h, SigmaOp s) {
  return h.with_signs(component_signs(h.kind(), s));
}

template <class T> Scalar<T> inverse(const Scalar<T> &h) {
  T n = h.norm2();
  if (NumTraits<T>::is_zero(n)) throw SingularMatrix("inverse of zero scalar");
  T inv = T(1) / n;
  return bar(h).scaled(inv);
}

} // namespace roth
