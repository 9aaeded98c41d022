#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace rankred {

/// Thrown when two scalars from different fields meet in one operation.
class FieldMismatch : public std::runtime_error {
 public:
  explicit FieldMismatch(const std::string& what) : std::runtime_error(what) {}
};

enum class FieldKind : std::uint8_t { prime, rationals };

/// A scalar domain: GF(p) for a prime p < 2^16, or the rationals.
/// Cheap value type; every Scalar carries its Field.
class Field {
 public:
  static Field gf(std::uint32_t p);
  static Field rationals();

  FieldKind kind() const { return kind_; }
  bool is_prime_field() const { return kind_ == FieldKind::prime; }

  /// Prime fields only.
  std::uint32_t modulus() const;

  bool operator==(const Field&) const = default;

  std::string str() const;

 private:
  Field(FieldKind kind, std::uint32_t p) : kind_(kind), p_(p) {}

  FieldKind kind_;
  std::uint32_t p_;
};

bool is_prime_u32(std::uint32_t n);

/// a^(-1) mod p for a in [1, p).
std::uint32_t gf_inverse(std::uint32_t a, std::uint32_t p);

/// An exact field element.  GF(p) values are residues in [0, p); rational
/// values are GMP rationals kept in lowest terms with positive denominator.
/// No implicit conversions between fields; mixing fields throws.
class Scalar {
 public:
  static Scalar zero(const Field& f) { return of_int(f, 0); }
  static Scalar one(const Field& f) { return of_int(f, 1); }
  static Scalar of_int(const Field& f, long long v);

  /// Maps num/den into the field.  In GF(p) this is num * den^(-1) mod p and
  /// throws if p divides den.
  static Scalar of_rational(const Field& f, const mpq_class& q);

  /// Accepts "3", "-4" and "num/den" forms.
  static Scalar parse(const Field& f, const std::string& text);

  static Scalar gf_residue(const Field& f, std::uint32_t residue);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& rhs) const;
  Scalar operator-(const Scalar& rhs) const;
  Scalar operator*(const Scalar& rhs) const;
  Scalar operator/(const Scalar& rhs) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs) { return *this = *this + rhs; }
  Scalar& operator-=(const Scalar& rhs) { return *this = *this - rhs; }

  /// Throws on zero.
  Scalar inverse() const;

  bool operator==(const Scalar& rhs) const;
  bool operator!=(const Scalar& rhs) const { return !(*this == rhs); }

  /// Prime fields only.
  std::uint32_t residue() const;
  /// Rationals only.
  const mpq_class& rational() const;

  std::string str() const;

 private:
  explicit Scalar(const Field& f) : field_(f) {}
  void check_same_field(const Scalar& rhs) const;

  Field field_;
  std::uint32_t res_ = 0;  // GF(p) payload
  mpq_class rat_ = 0;      // rationals payload
};

}  // namespace rankred
