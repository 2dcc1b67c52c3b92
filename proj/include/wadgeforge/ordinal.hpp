#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wadgeforge {

/// Display tag of an ordinal: base omega (Wadge degrees of omega-languages
/// indexed below eps_omega) or base omega_1 (conciliating degrees). The
/// arithmetic is identical; mixing tags in one operation is an error.
enum class Base : std::uint8_t { Omega, Omega1 };

enum class Cofinality : std::uint8_t { Zero, One, Omega, Omega1 };

class Ordinal;

/// Leading factor of a Cantor normal form term: either the i-th epsilon
/// number of the base or base^exponent.
struct Head {
  bool is_eps = false;
  std::uint32_t eps_index = 0;
  std::shared_ptr<const Ordinal> exponent; // set iff !is_eps
};

struct Term {
  Head head;
  std::uint64_t coeff = 1;
};

/// An ordinal below the omega-th epsilon number of its base, kept in
/// hereditary Cantor normal form. Normal form is unique, so structural
/// equality is ordinal equality.
class Ordinal {
public:
  explicit Ordinal(Base base = Base::Omega1) : base_(base) {}

  static Ordinal zero(Base base) { return Ordinal(base); }
  static Ordinal finite(std::uint64_t n, Base base);
  /// The base itself (omega or omega_1).
  static Ordinal omega(Base base);
  static Ordinal epsilon(std::uint32_t index, Base base);

  Base base() const { return base_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  /// Value of a finite ordinal; throws PreconditionError otherwise.
  std::uint64_t finite_value() const;
  bool is_successor() const;
  bool is_limit() const { return !is_zero() && !is_successor(); }
  /// Single epsilon atom with coefficient one.
  bool is_epsilon() const;

  /// Writes this ordinal as limit + n with n finite.
  std::pair<Ordinal, std::uint64_t> split_finite() const;

  /// The same ordinal under another display tag (recursively).
  Ordinal with_base(Base base) const;

  friend bool operator==(const Ordinal& a, const Ordinal& b);

private:
  friend Ordinal add(const Ordinal&, const Ordinal&);
  friend Ordinal mul_nat(const Ordinal&, std::uint64_t);
  friend Ordinal base_pow(const Ordinal&);
  friend Ordinal from_terms(Base, std::vector<Term>);

  Base base_;
  std::vector<Term> terms_;
};

/// Builds an ordinal from terms already in strictly decreasing head order.
/// Validates the ordering and canonicalizes base^(eps_i) to eps_i.
Ordinal from_terms(Base base, std::vector<Term> terms);

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);
std::strong_ordering compare_heads(const Head& a, const Head& b);

inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  return compare(a, b);
}

Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal mul_nat(const Ordinal& a, std::uint64_t m);
Ordinal base_pow(const Ordinal& exponent);

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add(a, b); }
inline Ordinal operator*(const Ordinal& a, std::uint64_t m) { return mul_nat(a, m); }

/// a - 1 for a successor ordinal.
Ordinal predecessor(const Ordinal& a);

Cofinality cofinality(const Ordinal& a);
bool is_fixed_point(const Ordinal& a);

/// Smallest epsilon number >= a (strict = false) or > a (strict = true).
Ordinal next_fixed_point(const Ordinal& a, bool strict);

/// Hereditary base change omega -> omega_1 applied to every exponent
/// through h_map; epsilon atoms map to the omega_1 atoms of equal index.
Ordinal h_prime(const Ordinal& a);
/// Strictly increasing embedding of eps_omega into 1eps_omega that avoids
/// limits of countable cofinality other than epsilon atoms.
Ordinal h_map(const Ordinal& a);
/// Inverse of h_map; nullopt when the argument is not in the image.
std::optional<Ordinal> h_preimage(const Ordinal& d);

std::string to_string(const Ordinal& a);
/// Unicode rendering (ω, ω₁, ε, ¹ε) used by --pretty output.
std::string to_pretty(const Ordinal& a);

enum class OrdinalSyntax {
  /// Input must already be written in Cantor normal form.
  Normal,
  /// Input is an arbitrary expression evaluated with ordinal arithmetic.
  Arithmetic,
};

Ordinal parse_ordinal(std::string_view text, Base base,
                      OrdinalSyntax syntax = OrdinalSyntax::Normal);

std::string to_string(Cofinality c);

} // namespace wadgeforge
