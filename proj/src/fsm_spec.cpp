#include "fluentc/automata.hpp"

#include "json_util.hpp"

#include <cctype>

namespace fluentc
{

bool is_letter_symbol( std::string_view symbol )
{
  if ( symbol.empty() )
    return false;
  const auto c0 = static_cast<unsigned char>( symbol[0] );
  if ( std::isalpha( c0 ) || symbol[0] == '_' )
  {
    return std::all_of( symbol.begin(), symbol.end(), []( char c ) {
      return std::isalnum( static_cast<unsigned char>( c ) ) || c == '_' || c == '\'';
    } );
  }
  constexpr std::string_view operator_chars = "!%&$#+-/:<=>?@\\~`^|*";
  return std::all_of( symbol.begin(), symbol.end(), [&]( char c ) { return operator_chars.find( c ) != std::string_view::npos; } );
}

fsm parse_fsm_spec( std::string_view text )
{
  using namespace detail;
  const auto doc = parse_document( text );
  require_keys( doc, "spec", { "name", "alphabet", "states", "initial", "accepting", "transitions" } );

  fsm m;
  m.name = get_string( doc, "name", "spec" );
  m.letters = parse_alphabet( doc );
  m.states = get_string_list( doc, "states", "spec" );
  if ( m.states.empty() )
    throw semantic_error( "states: at least one state is required" );
  for ( std::size_t i = 0; i < m.states.size(); ++i )
  {
    for ( std::size_t j = 0; j < i; ++j )
    {
      if ( m.states[i] == m.states[j] )
        throw semantic_error( "states[" + std::to_string( i ) + "]: duplicate state '" + m.states[i] + "'" );
    }
  }

  const auto lookup_state = [&]( const std::string& q, const std::string& where ) {
    auto idx = m.find_state( q );
    if ( !idx )
      throw semantic_error( where + ": undeclared state '" + q + "'" );
    return *idx;
  };

  m.initial = lookup_state( get_string( doc, "initial", "spec" ), "initial" );
  m.accepting.assign( m.num_states(), false );
  const auto accepting = get_string_list( doc, "accepting", "spec" );
  for ( std::size_t i = 0; i < accepting.size(); ++i )
    m.accepting[lookup_state( accepting[i], "accepting[" + std::to_string( i ) + "]" )] = true;

  m.delta.assign( m.num_states(), std::vector<std::optional<std::size_t>>( m.num_letters() ) );
  const auto& transitions = get_array( doc, "transitions", "spec" );
  for ( std::size_t i = 0; i < transitions.size(); ++i )
  {
    const auto where = "transitions[" + std::to_string( i ) + "]";
    require_keys( transitions[i], where, { "from", "on", "to" } );
    const auto from = lookup_state( get_string( transitions[i], "from", where ), where + ".from" );
    const auto to = lookup_state( get_string( transitions[i], "to", where ), where + ".to" );
    const auto symbol = get_string( transitions[i], "on", where );
    const auto s = m.find_letter( symbol );
    if ( !s )
      throw semantic_error( where + ".on: undeclared symbol '" + symbol + "'" );
    if ( m.delta[from][*s] )
      throw semantic_error( where + ": duplicate transition from '" + m.states[from] + "' on '" + symbol + "'" );
    m.delta[from][*s] = to;
  }
  m.validate();
  return m;
}

std::string fsm_to_json( const fsm& m )
{
  using detail::json;
  json doc;
  doc["name"] = m.name;
  doc["alphabet"] = detail::alphabet_to_json( m.letters );
  doc["states"] = m.states;
  doc["initial"] = m.states[m.initial];
  json accepting = json::array();
  for ( std::size_t q = 0; q < m.num_states(); ++q )
  {
    if ( m.accepting[q] )
      accepting.push_back( m.states[q] );
  }
  doc["accepting"] = accepting;
  json transitions = json::array();
  for ( std::size_t q = 0; q < m.num_states(); ++q )
  {
    for ( std::size_t s = 0; s < m.num_letters(); ++s )
    {
      if ( m.delta[q][s] )
        transitions.push_back( json{ { "from", m.states[q] }, { "on", m.letters[s].symbol }, { "to", m.states[*m.delta[q][s]] } } );
    }
  }
  doc["transitions"] = transitions;
  return doc.dump( 2 ) + "\n";
}

} // namespace fluentc
