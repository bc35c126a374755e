#pragma once

#include "fluentc/encode.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fluentc
{

/// One row of the size benchmark.
struct bench_row
{
  std::string encoding;
  std::size_t ring_states = 0;
  std::size_t padded_states = 0;
  std::size_t definition_count = 0;
  std::size_t tuple_width = 0;
  std::size_t rendered_bytes = 0;
  /// Set when the bit guard refused the encoding.
  bool skipped = false;
};

/// Encodes and renders ring(n) to sml; guard errors give a skipped row.
bench_row bench_ring( encoding e, std::size_t n, const encode_options& opts );

/// `encoding,ring_states,padded_states,definition_count,tuple_width,rendered_bytes` plus one line per row.
std::string bench_csv( const std::vector<bench_row>& rows );

/*! \brief Entry point of the command-line tool.

  Exit status: 0 on success, 1 when a verification finds mismatches, 2 on
  usage and specification errors.
*/
int run_cli( int argc, const char* const* argv, std::ostream& out, std::ostream& err );

} // namespace fluentc
