#include "fluentc/automata.hpp"

#include "fluentc/error.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace fluentc
{

std::size_t fsm::num_transitions() const
{
  std::size_t count = 0;
  for ( const auto& row : delta )
  {
    count += static_cast<std::size_t>( std::count_if( row.begin(), row.end(), []( const auto& t ) { return t.has_value(); } ) );
  }
  return count;
}

bool fsm::is_total() const
{
  return num_transitions() == num_states() * num_letters();
}

std::optional<std::size_t> fsm::find_state( std::string_view state_name ) const
{
  for ( std::size_t q = 0; q < states.size(); ++q )
  {
    if ( states[q] == state_name )
      return q;
  }
  return std::nullopt;
}

std::optional<std::size_t> fsm::find_letter( std::string_view symbol ) const
{
  for ( std::size_t s = 0; s < letters.size(); ++s )
  {
    if ( letters[s].symbol == symbol )
      return s;
  }
  return std::nullopt;
}

void fsm::validate() const
{
  if ( states.empty() )
    throw semantic_error( "fsm '" + name + "' has no states" );
  if ( initial >= states.size() )
    throw semantic_error( "initial state index out of range" );
  if ( accepting.size() != states.size() )
    throw semantic_error( "accepting set does not match the state count" );
  if ( delta.size() != states.size() )
    throw semantic_error( "transition table does not match the state count" );

  std::unordered_set<std::string> seen;
  for ( const auto& q : states )
  {
    if ( !seen.insert( q ).second )
      throw semantic_error( "duplicate state '" + q + "'" );
  }
  seen.clear();
  for ( const auto& l : letters )
  {
    if ( l.symbol.empty() )
      throw semantic_error( "empty letter symbol" );
    if ( !seen.insert( l.symbol ).second )
      throw semantic_error( "duplicate symbol '" + l.symbol + "'" );
  }
  for ( std::size_t q = 0; q < delta.size(); ++q )
  {
    if ( delta[q].size() != letters.size() )
      throw semantic_error( "transition row of state '" + states[q] + "' does not match the alphabet" );
    for ( const auto& t : delta[q] )
    {
      if ( t && *t >= states.size() )
        throw semantic_error( "transition of state '" + states[q] + "' targets an undeclared state" );
    }
  }
}

fsm ring( std::size_t n )
{
  if ( n == 0 )
    throw semantic_error( "ring size must be at least 1" );
  fsm m;
  m.name = "ring" + std::to_string( n );
  m.letters = { letter{ "a", {} } };
  for ( std::size_t q = 0; q < n; ++q )
  {
    m.states.push_back( "q" + std::to_string( q ) );
    m.delta.push_back( { ( q + 1 ) % n } );
  }
  m.accepting.assign( n, false );
  m.accepting[0] = true;
  return m;
}

namespace
{

std::string fresh_state_name( const fsm& m, const std::string& base )
{
  for ( std::size_t i = 0;; ++i )
  {
    auto candidate = base + std::to_string( i );
    if ( !m.find_state( candidate ) )
      return candidate;
  }
}

void add_sink( fsm& m )
{
  const auto sink = m.num_states();
  m.states.push_back( fresh_state_name( m, "sink" ) );
  m.accepting.push_back( false );
  m.delta.emplace_back( m.num_letters(), sink );
}

} // namespace

fsm totalize_and_pad( const fsm& m )
{
  m.validate();
  fsm out = m;
  if ( !out.is_total() )
  {
    const auto sink = out.num_states();
    for ( auto& row : out.delta )
    {
      for ( auto& t : row )
      {
        if ( !t )
          t = sink;
      }
    }
    add_sink( out );
  }

  std::size_t target = 2;
  while ( target < out.num_states() )
    target *= 2;
  while ( out.num_states() < target )
    add_sink( out );
  return out;
}

state_set coaccessible( const fsm& m )
{
  std::vector<std::vector<std::size_t>> reverse( m.num_states() );
  for ( std::size_t q = 0; q < m.num_states(); ++q )
  {
    for ( const auto& t : m.delta[q] )
    {
      if ( t )
        reverse[*t].push_back( q );
    }
  }

  state_set result( m.num_states(), false );
  std::deque<std::size_t> queue;
  for ( std::size_t q = 0; q < m.num_states(); ++q )
  {
    if ( m.accepting[q] )
    {
      result[q] = true;
      queue.push_back( q );
    }
  }
  while ( !queue.empty() )
  {
    const auto p = queue.front();
    queue.pop_front();
    for ( auto q : reverse[p] )
    {
      if ( !result[q] )
      {
        result[q] = true;
        queue.push_back( q );
      }
    }
  }
  return result;
}

fsm prune_dead( const fsm& m )
{
  m.validate();
  const auto live = coaccessible( m );
  if ( !live[m.initial] )
    throw empty_language_error( "fsm '" + m.name + "' accepts no word: initial state '" + m.states[m.initial] + "' cannot reach an accepting state" );

  std::vector<std::optional<std::size_t>> remap( m.num_states() );
  fsm out;
  out.name = m.name;
  out.letters = m.letters;
  for ( std::size_t q = 0; q < m.num_states(); ++q )
  {
    if ( live[q] )
    {
      remap[q] = out.states.size();
      out.states.push_back( m.states[q] );
      out.accepting.push_back( m.accepting[q] );
    }
  }
  out.initial = *remap[m.initial];
  for ( std::size_t q = 0; q < m.num_states(); ++q )
  {
    if ( !live[q] )
      continue;
    std::vector<std::optional<std::size_t>> row( m.num_letters() );
    for ( std::size_t s = 0; s < m.num_letters(); ++s )
    {
      if ( m.delta[q][s] )
        row[s] = remap[*m.delta[q][s]];
    }
    out.delta.push_back( std::move( row ) );
  }
  return out;
}

run fsm_accepts( const fsm& m, std::span<const std::size_t> w )
{
  run r;
  r.input.assign( w.begin(), w.end() );
  auto q = m.initial;
  r.states_visited.push_back( q );
  for ( std::size_t i = 0; i < w.size(); ++i )
  {
    if ( w[i] >= m.num_letters() )
      throw semantic_error( "letter index " + std::to_string( w[i] ) + " is not in the alphabet" );
    const auto& t = m.delta[q][w[i]];
    if ( !t )
    {
      r.stuck_at = i + 1;
      return r;
    }
    q = *t;
    r.states_visited.push_back( q );
  }
  r.accepted = m.accepting[q];
  return r;
}

run fsm_accepts( const fsm& m, std::span<const std::string> symbols )
{
  word w;
  for ( const auto& s : symbols )
  {
    auto idx = m.find_letter( s );
    if ( !idx )
      throw semantic_error( "unknown symbol '" + s + "'" );
    w.push_back( *idx );
  }
  return fsm_accepts( m, w );
}

word parse_word( const alphabet& sigma, std::string_view text )
{
  std::istringstream in{ std::string( text ) };
  word w;
  std::string token;
  while ( in >> token )
  {
    auto it = std::find_if( sigma.begin(), sigma.end(), [&]( const letter& l ) { return l.symbol == token; } );
    if ( it == sigma.end() )
      throw semantic_error( "unknown symbol '" + token + "'" );
    w.push_back( static_cast<std::size_t>( it - sigma.begin() ) );
  }
  return w;
}

std::string word_to_string( const alphabet& sigma, const word& w )
{
  std::string out;
  for ( auto s : w )
  {
    if ( !out.empty() )
      out += ' ';
    out += sigma.at( s ).symbol;
  }
  return out;
}

word_stream::word_stream( std::size_t alphabet_size, std::size_t max_len )
    : k_( alphabet_size ), max_len_( max_len )
{
}

bool word_stream::next( word& out )
{
  if ( done_ )
    return false;
  if ( !started_ )
  {
    started_ = true;
    current_.clear();
    out = current_;
    return true;
  }
  if ( k_ == 0 )
  {
    done_ = true;
    return false;
  }

  // odometer increment, last position fastest
  std::size_t i = current_.size();
  while ( i > 0 )
  {
    --i;
    if ( ++current_[i] < k_ )
    {
      out = current_;
      return true;
    }
    current_[i] = 0;
  }
  if ( current_.size() == max_len_ )
  {
    done_ = true;
    return false;
  }
  current_.assign( current_.size() + 1, 0 );
  out = current_;
  return true;
}

std::size_t word_stream::total() const
{
  std::size_t sum = 0;
  std::size_t power = 1;
  for ( std::size_t len = 0; len <= max_len_; ++len )
  {
    sum += power;
    power *= k_;
    if ( k_ == 0 )
      break;
  }
  return sum;
}

std::vector<word> enumerate_words( std::size_t alphabet_size, std::size_t max_len )
{
  std::vector<word> result;
  word_stream stream( alphabet_size, max_len );
  word w;
  while ( stream.next( w ) )
    result.push_back( w );
  return result;
}

} // namespace fluentc
