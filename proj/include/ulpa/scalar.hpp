#ifndef ULPA_SCALAR_HPP
#define ULPA_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace ulpa {

// A coefficient field: the rationals, or integers mod a prime.
struct FieldDescriptor {
  enum class Kind { rationals, prime };
  Kind kind = Kind::rationals;
  std::uint64_t p = 0;  // set for Kind::prime

  static FieldDescriptor rationals() { return {}; }
  static FieldDescriptor prime_field(std::uint64_t p);  // validates primality
  std::string to_string() const;  // "Q", "F2"
  bool operator==(const FieldDescriptor&) const = default;
};

// A semisimple commutative coefficient ring, given as its decomposition into
// a finite product of fields.
struct RingDescriptor {
  std::vector<FieldDescriptor> factors;  // nonempty

  static RingDescriptor field(FieldDescriptor f) { return {{std::move(f)}}; }
  std::string to_string() const;  // "Q x F2"
  bool positive_definite() const;
  bool operator==(const RingDescriptor&) const = default;
};

// Exact field element.  Arithmetic between different fields is a logic error;
// the involution on scalars is the identity throughout.
class Scalar {
 public:
  Scalar() = default;  // rational zero
  static Scalar zero(const FieldDescriptor& f);
  static Scalar one(const FieldDescriptor& f);
  static Scalar of_int(const FieldDescriptor& f, long v);
  static Scalar of_rational(long num, long den);

  const FieldDescriptor& field() const { return f_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // division by zero throws
  Scalar operator-() const;
  Scalar inverse() const;
  bool operator==(const Scalar& o) const;

  std::string to_string() const;  // "3/4", "2 mod 5"

 private:
  FieldDescriptor f_;
  mpq_class q_ = 0;       // rationals
  std::uint64_t r_ = 0;   // residue, kind == prime
};

// A field is positive definite when a vanishing sum of squares forces every
// term to vanish.  Characteristic zero qualifies; no prime field does.
bool field_positive_definite(const FieldDescriptor& f);
// Nonzero scalars whose squares sum to zero; empty exactly when the field is
// positive definite.
std::vector<Scalar> field_pd_witness(const FieldDescriptor& f);

}  // namespace ulpa

#endif
