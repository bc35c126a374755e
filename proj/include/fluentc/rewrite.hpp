#pragma once

#include "fluentc/automata.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fluentc
{

/// A ground or open term over type symbols; variables are leaves with `is_var`.
struct term
{
  std::string head;
  std::vector<term> children;
  bool is_var = false;

  bool operator==( const term& ) const = default;
};

std::string to_string( const term& t );

struct type_symbol
{
  std::string name;
  std::size_t arity = 0;
  bool accepting = false;
};

/// σ: γ(x1, ..., xk) → τ
struct rewrite_rule
{
  std::size_t letter = 0;
  std::size_t head = 0;
  std::vector<std::string> vars;
  term rhs;
};

/*! \brief Deterministic tree-rewrite description of a fluent API.

  The state of a chain is a ground term.  Calling letter σ on a term whose
  root is γ applies the unique rule for (σ, γ), substituting the root's
  children for the rule variables.  A chain is accepted when the root of the
  final term is an accepting type symbol.
*/
struct rewrite_system
{
  std::string name;
  alphabet letters;
  std::vector<type_symbol> types;
  term initial;
  std::vector<rewrite_rule> rules;

  std::optional<std::size_t> find_type( std::string_view type_name ) const;
  std::optional<std::size_t> find_rule( std::size_t letter, std::size_t head ) const;

  /// Throws semantic_error on nondeterminism, arity errors or unknown names.
  void validate() const;
};

/// Parses `name(child, ...)`; identifiers listed in `vars` become variables.
term parse_term( std::string_view text, const std::vector<std::string>& vars = {} );

rewrite_system parse_rewrite_spec( std::string_view text );

/// The Dyck language over L/R: z accepting, s of arity 1.
rewrite_system dyck_system();

struct rewrite_run
{
  word input;
  /// Term after each completed step, starting with the initial term.
  std::vector<term> terms;
  std::optional<std::size_t> stuck_at;
  bool accepted = false;
};

rewrite_run rewrite_accepts( const rewrite_system& rs, std::span<const std::size_t> w );

} // namespace fluentc
