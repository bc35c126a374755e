#include "fluentc/rewrite.hpp"

#include "fluentc/error.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace fluentc
{

std::string to_string( const term& t )
{
  if ( t.children.empty() )
    return t.head;
  std::string out = t.head + "(";
  for ( std::size_t i = 0; i < t.children.size(); ++i )
    out += ( i ? ", " : "" ) + to_string( t.children[i] );
  return out + ")";
}

std::optional<std::size_t> rewrite_system::find_type( std::string_view type_name ) const
{
  for ( std::size_t i = 0; i < types.size(); ++i )
  {
    if ( types[i].name == type_name )
      return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> rewrite_system::find_rule( std::size_t l, std::size_t head ) const
{
  for ( std::size_t i = 0; i < rules.size(); ++i )
  {
    if ( rules[i].letter == l && rules[i].head == head )
      return i;
  }
  return std::nullopt;
}

namespace
{

bool is_identifier( std::string_view s )
{
  if ( s.empty() || !( std::isalpha( static_cast<unsigned char>( s[0] ) ) || s[0] == '_' ) )
    return false;
  return std::all_of( s.begin(), s.end(), []( char c ) {
    return std::isalnum( static_cast<unsigned char>( c ) ) || c == '_' || c == '\'';
  } );
}

void check_term( const rewrite_system& rs, const term& t, const std::vector<std::string>& vars, const std::string& where )
{
  if ( t.is_var )
  {
    if ( std::find( vars.begin(), vars.end(), t.head ) == vars.end() )
      throw semantic_error( where + ": unbound variable '" + t.head + "'" );
    return;
  }
  const auto idx = rs.find_type( t.head );
  if ( !idx )
    throw semantic_error( where + ": unknown type symbol '" + t.head + "'" );
  if ( rs.types[*idx].arity != t.children.size() )
    throw semantic_error( where + ": arity error, '" + t.head + "' takes " + std::to_string( rs.types[*idx].arity ) +
                          " arguments but got " + std::to_string( t.children.size() ) );
  for ( const auto& c : t.children )
    check_term( rs, c, vars, where );
}

class term_parser
{
public:
  term_parser( std::string_view text, const std::vector<std::string>& vars ) : text_( text ), vars_( vars ) {}

  term parse()
  {
    auto t = parse_term();
    skip_space();
    if ( pos_ != text_.size() )
      fail( "trailing input" );
    return t;
  }

private:
  [[noreturn]] void fail( const std::string& what ) const
  {
    throw parse_error( "term '" + std::string( text_ ) + "': " + what + " at position " + std::to_string( pos_ ) );
  }

  void skip_space()
  {
    while ( pos_ < text_.size() && std::isspace( static_cast<unsigned char>( text_[pos_] ) ) )
      ++pos_;
  }

  term parse_term()
  {
    skip_space();
    const auto start = pos_;
    while ( pos_ < text_.size() && ( std::isalnum( static_cast<unsigned char>( text_[pos_] ) ) || text_[pos_] == '_' || text_[pos_] == '\'' ) )
      ++pos_;
    if ( start == pos_ )
      fail( "expected a symbol" );
    term t;
    t.head = std::string( text_.substr( start, pos_ - start ) );
    if ( !is_identifier( t.head ) )
      fail( "invalid symbol '" + t.head + "'" );
    t.is_var = std::find( vars_.begin(), vars_.end(), t.head ) != vars_.end();
    skip_space();
    if ( pos_ < text_.size() && text_[pos_] == '(' )
    {
      if ( t.is_var )
        fail( "variable '" + t.head + "' cannot take arguments" );
      ++pos_;
      skip_space();
      if ( pos_ < text_.size() && text_[pos_] == ')' )
      {
        ++pos_;
        return t;
      }
      for ( ;; )
      {
        t.children.push_back( parse_term() );
        skip_space();
        if ( pos_ < text_.size() && text_[pos_] == ',' )
        {
          ++pos_;
          continue;
        }
        if ( pos_ < text_.size() && text_[pos_] == ')' )
        {
          ++pos_;
          break;
        }
        fail( "expected ',' or ')'" );
      }
    }
    return t;
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

term substitute( const term& t, const std::map<std::string, const term*>& binding )
{
  if ( t.is_var )
    return *binding.at( t.head );
  term out{ t.head, {}, false };
  out.children.reserve( t.children.size() );
  for ( const auto& c : t.children )
    out.children.push_back( substitute( c, binding ) );
  return out;
}

} // namespace

void rewrite_system::validate() const
{
  for ( std::size_t i = 0; i < types.size(); ++i )
  {
    if ( !is_identifier( types[i].name ) )
      throw semantic_error( "types[" + std::to_string( i ) + "]: '" + types[i].name + "' is not an identifier" );
    for ( std::size_t j = 0; j < i; ++j )
    {
      if ( types[j].name == types[i].name )
        throw semantic_error( "types[" + std::to_string( i ) + "]: duplicate type symbol '" + types[i].name + "'" );
    }
  }
  check_term( *this, initial, {}, "initial" );
  for ( std::size_t i = 0; i < rules.size(); ++i )
  {
    const auto where = "rules[" + std::to_string( i ) + "]";
    const auto& r = rules[i];
    if ( r.letter >= letters.size() || r.head >= types.size() )
      throw semantic_error( where + ": unknown symbol" );
    if ( r.vars.size() != types[r.head].arity )
      throw semantic_error( where + ": arity error, '" + types[r.head].name + "' takes " +
                            std::to_string( types[r.head].arity ) + " variables but got " + std::to_string( r.vars.size() ) );
    for ( std::size_t v = 0; v < r.vars.size(); ++v )
    {
      if ( !is_identifier( r.vars[v] ) )
        throw semantic_error( where + ": variable '" + r.vars[v] + "' is not an identifier" );
      if ( find_type( r.vars[v] ) )
        throw semantic_error( where + ": variable '" + r.vars[v] + "' shadows a type symbol" );
      for ( std::size_t u = 0; u < v; ++u )
      {
        if ( r.vars[u] == r.vars[v] )
          throw semantic_error( where + ": duplicate variable '" + r.vars[v] + "'" );
      }
    }
    check_term( *this, r.rhs, r.vars, where + ".rhs" );
    for ( std::size_t j = 0; j < i; ++j )
    {
      if ( rules[j].letter == r.letter && rules[j].head == r.head )
        throw semantic_error( where + ": nondeterminism, rules " + std::to_string( j ) + " and " + std::to_string( i ) +
                              " both handle ('" + letters[r.letter].symbol + "', '" + types[r.head].name + "')" );
    }
  }
}

term parse_term( std::string_view text, const std::vector<std::string>& vars )
{
  return term_parser( text, vars ).parse();
}

rewrite_system parse_rewrite_spec( std::string_view text )
{
  using namespace detail;
  const auto doc = parse_document( text );
  require_keys( doc, "spec", { "name", "alphabet", "types", "initial", "rules" } );

  rewrite_system rs;
  rs.name = get_string( doc, "name", "spec" );
  rs.letters = parse_alphabet( doc );

  const auto& types = get_array( doc, "types", "spec" );
  for ( std::size_t i = 0; i < types.size(); ++i )
  {
    const auto where = "types[" + std::to_string( i ) + "]";
    require_keys( types[i], where, { "name", "arity", "accepting" } );
    type_symbol ts;
    ts.name = get_string( types[i], "name", where );
    const auto& arity = types[i].at( "arity" );
    if ( !arity.is_number_unsigned() && !( arity.is_number_integer() && arity.get<long long>() >= 0 ) )
      throw parse_error( where + ".arity: expected a non-negative integer" );
    ts.arity = arity.get<std::size_t>();
    if ( !types[i].at( "accepting" ).is_boolean() )
      throw parse_error( where + ".accepting: expected a Boolean" );
    ts.accepting = types[i].at( "accepting" ).get<bool>();
    rs.types.push_back( std::move( ts ) );
  }

  rs.initial = parse_term( get_string( doc, "initial", "spec" ) );

  const auto& rules = get_array( doc, "rules", "spec" );
  for ( std::size_t i = 0; i < rules.size(); ++i )
  {
    const auto where = "rules[" + std::to_string( i ) + "]";
    require_keys( rules[i], where, { "symbol", "head", "vars", "rhs" } );
    rewrite_rule r;
    const auto symbol = get_string( rules[i], "symbol", where );
    const auto head = get_string( rules[i], "head", where );
    bool found = false;
    for ( std::size_t s = 0; s < rs.letters.size(); ++s )
    {
      if ( rs.letters[s].symbol == symbol )
      {
        r.letter = s;
        found = true;
      }
    }
    if ( !found )
      throw semantic_error( where + ".symbol: unknown symbol '" + symbol + "'" );
    const auto h = rs.find_type( head );
    if ( !h )
      throw semantic_error( where + ".head: unknown type symbol '" + head + "'" );
    r.head = *h;
    r.vars = get_string_list( rules[i], "vars", where );
    r.rhs = parse_term( get_string( rules[i], "rhs", where ), r.vars );
    rs.rules.push_back( std::move( r ) );
  }
  rs.validate();
  return rs;
}

rewrite_system dyck_system()
{
  rewrite_system rs;
  rs.name = "dyck";
  rs.letters = { letter{ "L", {} }, letter{ "R", {} } };
  rs.types = { type_symbol{ "z", 0, true }, type_symbol{ "s", 1, false } };
  rs.initial = term{ "z", {}, false };
  const term x{ "x", {}, true };
  rs.rules.push_back( rewrite_rule{ 0, 0, {}, term{ "s", { term{ "z", {}, false } }, false } } );
  rs.rules.push_back( rewrite_rule{ 0, 1, { "x" }, term{ "s", { term{ "s", { x }, false } }, false } } );
  rs.rules.push_back( rewrite_rule{ 1, 1, { "x" }, x } );
  rs.validate();
  return rs;
}

rewrite_run rewrite_accepts( const rewrite_system& rs, std::span<const std::size_t> w )
{
  rewrite_run r;
  r.input.assign( w.begin(), w.end() );
  r.terms.push_back( rs.initial );
  for ( std::size_t i = 0; i < w.size(); ++i )
  {
    if ( w[i] >= rs.letters.size() )
      throw semantic_error( "unknown letter index " + std::to_string( w[i] ) );
    const auto& current = r.terms.back();
    const auto head = *rs.find_type( current.head );
    const auto rule = rs.find_rule( w[i], head );
    if ( !rule )
    {
      r.stuck_at = i + 1;
      return r;
    }
    const auto& rl = rs.rules[*rule];
    std::map<std::string, const term*> binding;
    for ( std::size_t v = 0; v < rl.vars.size(); ++v )
      binding[rl.vars[v]] = &current.children[v];
    r.terms.push_back( substitute( rl.rhs, binding ) );
  }
  r.accepted = rs.types[*rs.find_type( r.terms.back().head )].accepting;
  return r;
}

} // namespace fluentc
