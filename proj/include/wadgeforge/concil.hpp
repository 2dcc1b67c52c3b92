#pragma once

#include "wadgeforge/ordinal.hpp"
#include "wadgeforge/words.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wadgeforge {

enum class Membership : std::uint8_t { Out, In, Unsupported };

inline Membership negate(Membership m) {
  if (m == Membership::In) return Membership::Out;
  if (m == Membership::Out) return Membership::In;
  return m;
}

std::string to_string(Membership m);

/// A language referenced by an ATOM node. Words passed to member() are
/// over alphabet().
class AtomLanguage {
public:
  virtual ~AtomLanguage() = default;
  virtual std::vector<Letter> alphabet() const = 0;
  virtual Membership member(const Word& w) const = 0;
};

using AtomPtr = std::shared_ptr<const AtomLanguage>;

enum class Node : std::uint8_t { Empty, Atom, Sum, Scalar, Tilde, Approx, Bullet, DFlag, Complement };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression node. Build through the make_* functions, which
/// compute the alphabet and allocate fresh letters.
struct Expr {
  Node node = Node::Empty;
  /// Operand (or the big operand of a sum).
  ExprPtr base;
  /// Small operand of a sum.
  ExprPtr small;

  std::string atom_id;
  AtomPtr lang;
  std::optional<Ordinal> degree_note;

  /// Declared sides of a sum. Letters of big that are in neither small nor
  /// minus behave as plus letters, so {plus, minus} partitions X_B - X_A.
  std::vector<Letter> plus, minus;
  std::uint64_t times = 1;
  Letter d;
  /// Eraser used by tilde/approx.
  unsigned eraser = 0;
  /// Bullet nesting level and the eraser index offset of its codes.
  unsigned level = 0;
  unsigned offset = 0;
  /// Scalar multiples are evaluated through this equivalent sum chain.
  ExprPtr unfolded;

  /// Sorted and duplicate-free.
  std::vector<Letter> alphabet;
};

ExprPtr make_empty();
ExprPtr make_atom(std::string id, AtomPtr lang, std::optional<Ordinal> degree = std::nullopt);
/// Empty plus/minus request the deterministic fresh letters {+k}, {-k}
/// with k one above any such index already in use.
ExprPtr make_sum(ExprPtr big, ExprPtr small, std::vector<Letter> plus = {},
                 std::vector<Letter> minus = {});
ExprPtr make_scalar(ExprPtr base, std::uint64_t n);
ExprPtr make_tilde(ExprPtr base);
ExprPtr make_approx(ExprPtr base);
ExprPtr make_bullet(ExprPtr base);
ExprPtr make_dflag(ExprPtr base, Letter d);
/// Complement of a complement returns the inner expression.
ExprPtr make_complement(ExprPtr base);

/// Conciliating degree (base omega_1).
Ordinal degree(const ExprPtr& e);

/// An expression of degree d for every d reached from the image of the H
/// map. Throws CaseHError on an exponent of countable cofinality that is
/// not an epsilon atom.
ExprPtr build_omega(const Ordinal& d);

/// Membership of a finite or UP word. Throws AlphabetError when w uses a
/// letter outside e's alphabet.
Membership member(const ExprPtr& e, const Word& w, const EvalOptions& opts = {});

/// A set of the dual degree: for a bullet, the union of the bullet with
/// a^{<=omega}; otherwise the complement.
ExprPtr complement_witness(const ExprPtr& e);

/// Resolves atom ids when parsing; may return null for unknown ids.
using AtomResolver = std::function<AtomPtr(const std::string& id)>;

ExprPtr parse_expr(std::string_view text, const AtomResolver& resolve = {});
std::string serialize(const ExprPtr& e);

/// The language of the bullet's dual witness.
AtomPtr bullet_dual_language(const ExprPtr& bullet);

} // namespace wadgeforge
