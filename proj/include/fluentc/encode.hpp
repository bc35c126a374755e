#pragma once

#include "fluentc/automata.hpp"
#include "fluentc/ir.hpp"
#include "fluentc/rewrite.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace fluentc
{

enum class encoding
{
  shuffle,
  sparse,
  church,
  tabulation
};

encoding parse_encoding( std::string_view name );
std::string to_string( encoding e );

struct encode_options
{
  /// Early failure: sparse seeds with g^R, tabulation prunes dead states.
  bool early_failure = false;
  /// Largest bit count for the exhaustive shuffle and for Church circuits.
  unsigned guard_bits = default_guard_bits();
  /// Lifts the guard up to the hard limit.
  bool force = false;
};

/// Full bit shuffling over every Boolean function of n bits.
encoded_api encode_shuffle( const fsm& m, const encode_options& opts = {} );

/// Bit shuffling over the closure of g^F (and g^R with early failure).
encoded_api encode_sparse( const fsm& m, const encode_options& opts = {} );

/// State bits as Church Booleans, transitions as linear circuits.
encoded_api encode_church( const fsm& m, const encode_options& opts = {} );

/// Transition table of rows and projection functions.
encoded_api encode_tabulation( const fsm& m, const encode_options& opts = {} );

encoded_api encode( const fsm& m, encoding e, const encode_options& opts = {} );

/// Tabulation of a deterministic tree-rewrite API.
encoded_api encode_rewrite_tabulation( const rewrite_system& rs );

/*! \brief Pairs the states of several APIs over the same alphabet.

  The product accepts the intersection of the parts' languages.
*/
encoded_api encode_product( const std::vector<encoded_api>& parts );

} // namespace fluentc
