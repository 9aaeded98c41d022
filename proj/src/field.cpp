#include "rankred/field.hpp"

#include <sstream>

namespace rankred {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t gf_inverse(std::uint32_t a, std::uint32_t p) {
  // extended Euclid on (a, p); p prime, 0 < a < p
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::invalid_argument("gf_inverse: not invertible");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Field Field::gf(std::uint32_t p) {
  if (p >= (1u << 16)) throw std::invalid_argument("Field::gf: modulus must be < 2^16");
  if (!is_prime_u32(p)) throw std::invalid_argument("Field::gf: modulus must be prime");
  return Field(FieldKind::prime, p);
}

Field Field::rationals() { return Field(FieldKind::rationals, 0); }

std::uint32_t Field::modulus() const {
  if (kind_ != FieldKind::prime) throw std::logic_error("Field::modulus: not a prime field");
  return p_;
}

std::string Field::str() const {
  if (kind_ == FieldKind::rationals) return "Q";
  std::ostringstream os;
  os << "GF(" << p_ << ")";
  return os.str();
}

Scalar Scalar::of_int(const Field& f, long long v) {
  Scalar s(f);
  if (f.is_prime_field()) {
    long long p = f.modulus();
    long long r = v % p;
    if (r < 0) r += p;
    s.res_ = static_cast<std::uint32_t>(r);
  } else {
    s.rat_ = mpq_class(static_cast<long>(v));
  }
  return s;
}

Scalar Scalar::of_rational(const Field& f, const mpq_class& q) {
  Scalar s(f);
  if (f.is_prime_field()) {
    const std::uint32_t p = f.modulus();
    mpz_class num_mod = q.get_num() % p;
    mpz_class den_mod = q.get_den() % p;
    long num = num_mod.get_si();
    long den = den_mod.get_si();
    if (num < 0) num += p;
    if (den == 0) throw std::invalid_argument("Scalar::of_rational: denominator vanishes mod p");
    s.res_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(num) *
                                         gf_inverse(static_cast<std::uint32_t>(den), p)) %
                                        p);
  } else {
    s.rat_ = q;
    s.rat_.canonicalize();
  }
  return s;
}

Scalar Scalar::parse(const Field& f, const std::string& text) {
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("Scalar::parse: bad scalar literal '" + text + "'");
  q.canonicalize();
  return of_rational(f, q);
}

Scalar Scalar::gf_residue(const Field& f, std::uint32_t residue) {
  if (!f.is_prime_field()) throw std::logic_error("Scalar::gf_residue: not a prime field");
  Scalar s(f);
  s.res_ = residue % f.modulus();
  return s;
}

bool Scalar::is_zero() const {
  return field_.is_prime_field() ? res_ == 0 : rat_ == 0;
}

bool Scalar::is_one() const {
  return field_.is_prime_field() ? res_ == 1 % field_.modulus() : rat_ == 1;
}

void Scalar::check_same_field(const Scalar& rhs) const {
  if (!(field_ == rhs.field_))
    throw FieldMismatch("scalar fields differ: " + field_.str() + " vs " + rhs.field_.str());
}

Scalar Scalar::operator+(const Scalar& rhs) const {
  check_same_field(rhs);
  Scalar out(field_);
  if (field_.is_prime_field()) {
    out.res_ = (res_ + rhs.res_) % field_.modulus();
  } else {
    out.rat_ = rat_ + rhs.rat_;
  }
  return out;
}

Scalar Scalar::operator-(const Scalar& rhs) const {
  check_same_field(rhs);
  Scalar out(field_);
  if (field_.is_prime_field()) {
    const std::uint32_t p = field_.modulus();
    out.res_ = (res_ + p - rhs.res_) % p;
  } else {
    out.rat_ = rat_ - rhs.rat_;
  }
  return out;
}

Scalar Scalar::operator*(const Scalar& rhs) const {
  check_same_field(rhs);
  Scalar out(field_);
  if (field_.is_prime_field()) {
    out.res_ = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(res_) * rhs.res_) % field_.modulus());
  } else {
    out.rat_ = rat_ * rhs.rat_;
  }
  return out;
}

Scalar Scalar::operator/(const Scalar& rhs) const { return *this * rhs.inverse(); }

Scalar Scalar::operator-() const {
  Scalar out(field_);
  if (field_.is_prime_field()) {
    const std::uint32_t p = field_.modulus();
    out.res_ = res_ == 0 ? 0 : p - res_;
  } else {
    out.rat_ = -rat_;
  }
  return out;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("Scalar::inverse: division by zero");
  Scalar out(field_);
  if (field_.is_prime_field()) {
    out.res_ = gf_inverse(res_, field_.modulus());
  } else {
    out.rat_ = 1 / rat_;
  }
  return out;
}

bool Scalar::operator==(const Scalar& rhs) const {
  check_same_field(rhs);
  return field_.is_prime_field() ? res_ == rhs.res_ : rat_ == rhs.rat_;
}

std::uint32_t Scalar::residue() const {
  if (!field_.is_prime_field()) throw std::logic_error("Scalar::residue: not a prime field");
  return res_;
}

const mpq_class& Scalar::rational() const {
  if (field_.is_prime_field()) throw std::logic_error("Scalar::rational: not over Q");
  return rat_;
}

std::string Scalar::str() const {
  if (field_.is_prime_field()) return std::to_string(res_);
  return rat_.get_str();
}

}  // namespace rankred
