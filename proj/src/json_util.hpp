#pragma once

#include "fluentc/automata.hpp"
#include "fluentc/error.hpp"

#include <json.hpp>

#include <initializer_list>
#include <string>
#include <string_view>

namespace fluentc::detail
{

using json = nlohmann::ordered_json;

inline json parse_document( std::string_view text )
{
  try
  {
    return json::parse( text.begin(), text.end() );
  }
  catch ( const json::parse_error& e )
  {
    std::size_t line = 1;
    const auto limit = std::min<std::size_t>( e.byte, text.size() );
    for ( std::size_t i = 0; i + 1 < limit; ++i )
    {
      if ( text[i] == '\n' )
        ++line;
    }
    throw parse_error( "line " + std::to_string( line ) + ": malformed JSON (" + e.what() + ")" );
  }
}

inline void require_keys( const json& obj, std::string_view where, std::initializer_list<std::string_view> required,
                          std::initializer_list<std::string_view> optional = {} )
{
  if ( !obj.is_object() )
    throw parse_error( std::string( where ) + ": expected an object" );
  for ( const auto& [key, _] : obj.items() )
  {
    bool known = std::find( required.begin(), required.end(), key ) != required.end() ||
                 std::find( optional.begin(), optional.end(), key ) != optional.end();
    if ( !known )
      throw parse_error( std::string( where ) + ": unknown key '" + key + "'" );
  }
  for ( auto key : required )
  {
    if ( !obj.contains( key ) )
      throw parse_error( std::string( where ) + ": missing field '" + std::string( key ) + "'" );
  }
}

inline std::string get_string( const json& obj, std::string_view key, std::string_view where )
{
  const auto& v = obj.at( std::string( key ) );
  if ( !v.is_string() )
    throw parse_error( std::string( where ) + "." + std::string( key ) + ": expected a string" );
  return v.get<std::string>();
}

inline const json& get_array( const json& obj, std::string_view key, std::string_view where )
{
  const auto& v = obj.at( std::string( key ) );
  if ( !v.is_array() )
    throw parse_error( std::string( where ) + "." + std::string( key ) + ": expected an array" );
  return v;
}

inline std::vector<std::string> get_string_list( const json& obj, std::string_view key, std::string_view where )
{
  std::vector<std::string> out;
  const auto& arr = get_array( obj, key, where );
  for ( std::size_t i = 0; i < arr.size(); ++i )
  {
    if ( !arr[i].is_string() )
      throw parse_error( std::string( where ) + "." + std::string( key ) + "[" + std::to_string( i ) + "]: expected a string" );
    out.push_back( arr[i].get<std::string>() );
  }
  return out;
}

inline alphabet parse_alphabet( const json& doc )
{
  alphabet sigma;
  const auto& arr = get_array( doc, "alphabet", "spec" );
  for ( std::size_t i = 0; i < arr.size(); ++i )
  {
    const auto where = "alphabet[" + std::to_string( i ) + "]";
    require_keys( arr[i], where, { "symbol" }, { "args" } );
    letter l;
    l.symbol = get_string( arr[i], "symbol", where );
    if ( arr[i].contains( "args" ) )
      l.arg_types = get_string_list( arr[i], "args", where );
    if ( !is_letter_symbol( l.symbol ) )
      throw semantic_error( where + ": symbol '" + l.symbol + "' is neither an identifier nor an operator token" );
    for ( const auto& prev : sigma )
    {
      if ( prev.symbol == l.symbol )
        throw semantic_error( where + ": duplicate symbol '" + l.symbol + "'" );
    }
    sigma.push_back( std::move( l ) );
  }
  return sigma;
}

inline json alphabet_to_json( const alphabet& sigma )
{
  json arr = json::array();
  for ( const auto& l : sigma )
    arr.push_back( json{ { "symbol", l.symbol }, { "args", l.arg_types } } );
  return arr;
}

} // namespace fluentc::detail
