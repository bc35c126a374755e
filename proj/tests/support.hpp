#pragma once

#include "fluentc/automata.hpp"
#include "fluentc/encode.hpp"
#include "fluentc/rewrite.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fluentc::test
{

inline std::string data_path( const std::string& file )
{
  return std::string( FLUENTC_TEST_DIR ) + "/data/" + file;
}

inline std::string golden_path( const std::string& file )
{
  return std::string( FLUENTC_TEST_DIR ) + "/golden/" + file;
}

inline std::string read_text( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Membership by a direct walk over the transition list, independent of fsm_accepts.
inline bool walk_accepts( const fsm& m, const word& w )
{
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edges;
  for ( std::size_t q = 0; q < m.num_states(); ++q )
    for ( std::size_t s = 0; s < m.num_letters(); ++s )
      if ( m.delta[q][s] )
        edges[{ q, s }] = *m.delta[q][s];
  std::size_t q = m.initial;
  for ( auto s : w )
  {
    auto it = edges.find( { q, s } );
    if ( it == edges.end() )
      return false;
    q = it->second;
  }
  return m.accepting[q];
}

/// Whether some extension of w (up to `horizon` more letters) is accepted, by exhaustive search.
inline bool completable( const fsm& m, const word& w, std::size_t horizon )
{
  std::set<std::size_t> frontier;
  {
    std::size_t q = m.initial;
    for ( auto s : w )
    {
      if ( !m.delta[q][s] )
        return false;
      q = *m.delta[q][s];
    }
    frontier.insert( q );
  }
  std::set<std::size_t> seen = frontier;
  for ( std::size_t step = 0; step <= horizon; ++step )
  {
    std::set<std::size_t> next;
    for ( auto q : frontier )
    {
      if ( m.accepting[q] )
        return true;
      for ( std::size_t s = 0; s < m.num_letters(); ++s )
        if ( m.delta[q][s] && seen.insert( *m.delta[q][s] ).second )
          next.insert( *m.delta[q][s] );
    }
    frontier = std::move( next );
  }
  return false;
}

/// Balanced brackets by a running counter, with L = 0 and R = 1.
inline bool balanced( const word& w )
{
  long depth = 0;
  for ( auto s : w )
  {
    depth += s == 0 ? 1 : -1;
    if ( depth < 0 )
      return false;
  }
  return depth == 0;
}

/*! \brief Seeded random FSM: up to `max_states` states and `max_letters`
  letters, partial transitions, and an initial state that can reach an
  accepting one. */
inline fsm random_fsm( std::uint32_t seed, std::size_t max_states = 8, std::size_t max_letters = 3 )
{
  std::mt19937 rng( seed );
  const auto pick = [&]( std::size_t lo, std::size_t hi ) {
    return std::uniform_int_distribution<std::size_t>( lo, hi )( rng );
  };
  for ( ;; )
  {
    fsm m;
    m.name = "random" + std::to_string( seed );
    const auto n = pick( 1, max_states );
    const auto k = pick( 1, max_letters );
    for ( std::size_t q = 0; q < n; ++q )
      m.states.push_back( "q" + std::to_string( q ) );
    const char* names[] = { "a", "b", "c", "d" };
    for ( std::size_t s = 0; s < k; ++s )
      m.letters.push_back( letter{ names[s], {} } );
    m.initial = pick( 0, n - 1 );
    m.accepting.assign( n, false );
    for ( std::size_t q = 0; q < n; ++q )
      m.accepting[q] = pick( 0, 2 ) == 0;
    m.delta.assign( n, std::vector<std::optional<std::size_t>>( k ) );
    for ( std::size_t q = 0; q < n; ++q )
      for ( std::size_t s = 0; s < k; ++s )
        if ( pick( 0, 4 ) != 0 )
          m.delta[q][s] = pick( 0, n - 1 );
    if ( completable( m, {}, n ) )
      return m;
  }
}

/// The corpus shared by the oracle tests: rings 1..9 and 50 random machines.
inline std::vector<fsm> fsm_corpus()
{
  std::vector<fsm> out;
  for ( std::size_t n = 1; n <= 9; ++n )
    out.push_back( ring( n ) );
  for ( std::uint32_t seed = 1; seed <= 50; ++seed )
    out.push_back( random_fsm( seed ) );
  return out;
}

/*! \brief Normalizes SML text for golden comparison: drops comments and
  statement semicolons, collapses whitespace, removes spaces next to
  brackets and commas. */
inline std::string normalize_sml( std::string text )
{
  text = std::regex_replace( text, std::regex( R"(\(\*[\s\S]*?\*\))" ), " " );
  text = std::regex_replace( text, std::regex( R"(;\s*\n)" ), "\n" );
  text = std::regex_replace( text, std::regex( R"(;\s*$)" ), "" );
  text = std::regex_replace( text, std::regex( R"(\s+)" ), " " );
  text = std::regex_replace( text, std::regex( R"(\s*([(),])\s*)" ), "$1" );
  while ( !text.empty() && text.front() == ' ' )
    text.erase( text.begin() );
  while ( !text.empty() && text.back() == ' ' )
    text.pop_back();
  return text;
}

} // namespace fluentc::test
