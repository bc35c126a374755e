#pragma once

#include "fluentc/automata.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fluentc
{

/*! \brief A Boolean vector ⟨b_n, ..., b_2, b_1⟩ packed into an integer.

  Bit b_1 is the least significant bit of `value`.
*/
struct bit_vec
{
  unsigned length = 0;
  std::uint32_t value = 0;

  /// The i-th bit, 1-based from the right.
  bool bit( unsigned i ) const { return ( value >> ( i - 1 ) ) & 1u; }

  bool operator==( const bit_vec& ) const = default;
};

/*! \brief Boolean function on n bits stored as a truth table.

  Entry `v` of the table holds g(v).  The canonical label of a function is
  g^k with k = Σ_v g(v)·2^(2^n − 1 − v), so the function that is true only
  on the all-zero vector of two bits is g^8, and b_2 ∧ b_1 is g^1.
*/
class bool_fn
{
public:
  explicit bool_fn( unsigned arity = 0 );

  static bool_fn constant( unsigned arity, bool value );

  /// Builds the function whose label is g^k; requires 2^arity ≤ 64.
  static bool_fn from_label( unsigned arity, std::uint64_t k );

  unsigned arity() const { return arity_; }
  std::size_t table_size() const { return std::size_t{ 1 } << arity_; }

  bool operator()( std::uint32_t v ) const { return ( bits_[v >> 6] >> ( v & 63u ) ) & 1u; }
  void set( std::uint32_t v, bool value );

  bool is_constant() const;
  /// True if flipping input bit i (1-based) can change the output.
  bool depends_on( unsigned i ) const;

  /// Decimal label "g<k>".
  std::string name() const;

  bool operator==( const bool_fn& other ) const = default;

  std::size_t hash() const;

private:
  unsigned arity_;
  std::vector<std::uint64_t> bits_;
};

struct bool_fn_hash
{
  std::size_t operator()( const bool_fn& g ) const { return g.hash(); }
};

/*! \brief Boolean vector function {0,1}^n → {0,1}^n, stored as its image table. */
class vec_fn
{
public:
  vec_fn() = default;
  vec_fn( unsigned arity, std::vector<std::uint32_t> image );

  static vec_fn identity( unsigned arity );
  /// Components are given as ⟨f_n, ..., f_1⟩, i.e. `components[0]` computes bit n.
  static vec_fn from_components( const std::vector<bool_fn>& components );

  unsigned arity() const { return arity_; }
  std::uint32_t operator()( std::uint32_t v ) const { return image_[v]; }
  const std::vector<std::uint32_t>& image() const { return image_; }

  /// The function computing bit i (1-based from the right).
  bool_fn component( unsigned i ) const;
  /// ⟨f_n, ..., f_1⟩
  std::vector<bool_fn> components() const;

  /// (this ∘ inner)(v) = this(inner(v))
  vec_fn after( const vec_fn& inner ) const;

  bool operator==( const vec_fn& ) const = default;

private:
  unsigned arity_ = 0;
  std::vector<std::uint32_t> image_;
};

/*! \brief Injective assignment of bit vectors to the states of an automaton. */
struct beta_map
{
  unsigned bits = 0;
  std::vector<std::uint32_t> code;

  /// States map to 0, 1, 2, ... in declaration order; requires |Q| = 2^n.
  static beta_map declaration_order( const fsm& m );

  /// Throws semantic_error unless the map is a bijection onto {0,1}^bits.
  void require_bijective() const;
};

bool eval_boolfn( const bool_fn& g, const bit_vec& v );

vec_fn transition_vecfn( const fsm& m, const beta_map& beta, std::size_t letter_index );

bool_fn compose( const bool_fn& g, const vec_fn& f );

/// Largest n accepted by all_boolfns; FLUENTC_GUARD_BITS overrides the default of 4.
unsigned default_guard_bits();

/// All 2^(2^n) functions ordered by ascending label.
std::vector<bool_fn> all_boolfns( unsigned n, unsigned guard_bits = default_guard_bits() );

/// g(β(q)) = 1 ⇔ q ∈ s
bool_fn acceptor_fn( const beta_map& beta, const state_set& s );

/*! \brief Smallest superset of `seeds` closed under precomposition with every
  letter's transition function.

  Seeds come first (duplicates dropped), then functions in the order a
  breadth-first traversal over (function, letter) pairs discovers them.
*/
std::vector<bool_fn> sparse_closure( const std::vector<bool_fn>& seeds, const std::vector<vec_fn>& fs );

} // namespace fluentc
