#pragma once

#include "fluentc/ir.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fluentc
{

enum class backend
{
  sml,
  elm
};

backend parse_backend( std::string_view name );
std::string to_string( backend b );
std::string file_extension( backend b );

struct render_options
{
  /// Apply with_tokens before rendering (no-op if the API already has tokens).
  bool tokens = false;
  /// Emit the subchaining helper `sc a b = b a`.
  bool subchain_helper = false;
};

/// IR names that are printed differently in the backend, in first-use order.
std::vector<std::pair<std::string, std::string>> alias_table( const encoded_api& api, backend b );

/*! \brief Renders the API as a source file.

  Throws render_error if an identifier has no representation in the backend
  (reserved words, predefined infix operators of SML).
*/
std::string render_target( const encoded_api& api, backend b, const render_options& opts = {} );

struct chain_case
{
  word w;
  bool accept = true;
};

/*! \brief The API followed by one chain per word.

  Chains expected to be rejected are commented out behind an `@reject` marker
  so that a compile-fail harness can enable them one at a time.  Letters with
  arguments receive placeholder values.
*/
std::string emit_chain_file( const encoded_api& api, const std::vector<chain_case>& cases, backend b,
                             const render_options& opts = {} );

/// Placeholder literal for an argument type ("" for strings, 0 otherwise).
std::string placeholder_argument( const std::string& type, backend b );

} // namespace fluentc
