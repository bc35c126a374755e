#include "fluentc/ir.hpp"

#include "fluentc/error.hpp"

#include <cctype>
#include <map>

namespace fluentc
{

namespace ir
{

pattern pattern::var( std::string name )
{
  return pattern{ kind::var, std::move( name ), {} };
}

pattern pattern::wildcard()
{
  return pattern{ kind::wildcard, {}, {} };
}

pattern pattern::con( std::string name )
{
  return pattern{ kind::con, std::move( name ), {} };
}

pattern pattern::tuple( std::vector<pattern> items )
{
  return pattern{ kind::tuple, {}, std::move( items ) };
}

namespace
{

expr_ptr make( expr::kind k, std::string name = {}, std::vector<expr_ptr> items = {} )
{
  auto e = std::make_shared<expr>();
  e->k = k;
  e->name = std::move( name );
  e->items = std::move( items );
  return e;
}

} // namespace

expr_ptr var( std::string name )
{
  return make( expr::kind::var, std::move( name ) );
}

expr_ptr ref( std::string name )
{
  return make( expr::kind::ref, std::move( name ) );
}

expr_ptr con( std::string name, std::vector<expr_ptr> args )
{
  return make( expr::kind::con, std::move( name ), std::move( args ) );
}

expr_ptr tuple( std::vector<expr_ptr> items )
{
  return make( expr::kind::tuple, {}, std::move( items ) );
}

expr_ptr app( expr_ptr fn, std::vector<expr_ptr> args )
{
  std::vector<expr_ptr> items{ std::move( fn ) };
  for ( auto& a : args )
    items.push_back( std::move( a ) );
  return make( expr::kind::app, {}, std::move( items ) );
}

expr_ptr lambda( pattern param, expr_ptr body )
{
  auto e = std::make_shared<expr>();
  e->k = expr::kind::lambda;
  e->param = std::move( param );
  e->items = { std::move( body ) };
  return e;
}

expr_ptr force_true( expr_ptr e )
{
  return make( expr::kind::force_true, {}, { std::move( e ) } );
}

expr_ptr list_nil()
{
  return make( expr::kind::list_nil );
}

expr_ptr list_snoc( expr_ptr list, expr_ptr item )
{
  return make( expr::kind::list_snoc, {}, { std::move( list ), std::move( item ) } );
}

expr_ptr seq( expr_ptr first, expr_ptr second )
{
  return make( expr::kind::seq, {}, { std::move( first ), std::move( second ) } );
}

bool equal( const expr_ptr& a, const expr_ptr& b )
{
  if ( a == b )
    return true;
  if ( !a || !b || a->k != b->k || a->name != b->name || !( a->param == b->param ) || a->items.size() != b->items.size() )
    return false;
  for ( std::size_t i = 0; i < a->items.size(); ++i )
  {
    if ( !equal( a->items[i], b->items[i] ) )
      return false;
  }
  return true;
}

bool equal( const def& a, const def& b )
{
  return a.name == b.name && a.role == b.role && a.letter == b.letter && a.is_value == b.is_value &&
         a.params == b.params && equal( a.body, b.body );
}

def make_helper( std::string name, std::vector<pattern> params, expr_ptr body )
{
  def d;
  d.name = std::move( name );
  d.params = std::move( params );
  d.body = std::move( body );
  return d;
}

def make_value( std::string name, expr_ptr body )
{
  def d;
  d.name = std::move( name );
  d.is_value = true;
  d.body = std::move( body );
  return d;
}

def make_initial( expr_ptr payload )
{
  def d;
  d.name = "^^";
  d.role = def_role::initial;
  d.params = { pattern::var( continuation ) };
  d.body = app( var( continuation ), { std::move( payload ) } );
  return d;
}

def make_letter( std::size_t index, std::string symbol, pattern state, std::vector<std::string> arg_names, expr_ptr next )
{
  def d;
  d.name = std::move( symbol );
  d.role = def_role::letter;
  d.letter = index;
  d.params.push_back( std::move( state ) );
  for ( auto& a : arg_names )
    d.params.push_back( pattern::var( std::move( a ) ) );
  d.params.push_back( pattern::var( continuation ) );
  d.body = app( var( continuation ), { std::move( next ) } );
  return d;
}

def make_terminal( pattern state, expr_ptr body )
{
  def d;
  d.name = "$";
  d.role = def_role::terminal;
  d.params = { std::move( state ) };
  d.body = std::move( body );
  return d;
}

namespace
{

void require_continuation_body( const def& d )
{
  if ( d.params.empty() || d.params.back().k != pattern::kind::var || d.params.back().name != continuation ||
       d.body->k != expr::kind::app || d.body->items.size() != 2 || d.body->items[0]->k != expr::kind::var ||
       d.body->items[0]->name != continuation )
    throw semantic_error( "definition '" + d.name + "' is not in continuation-passing form" );
}

} // namespace

const expr_ptr& initial_payload( const def& d )
{
  require_continuation_body( d );
  return d.body->items[1];
}

const pattern& letter_state( const def& d )
{
  require_continuation_body( d );
  return d.params.front();
}

std::vector<std::string> letter_args( const def& d )
{
  require_continuation_body( d );
  std::vector<std::string> out;
  for ( std::size_t i = 1; i + 1 < d.params.size(); ++i )
    out.push_back( d.params[i].name );
  return out;
}

const expr_ptr& letter_next( const def& d )
{
  require_continuation_body( d );
  return d.body->items[1];
}

} // namespace ir

const ir::def& encoded_api::initial() const
{
  for ( const auto& d : defs )
  {
    if ( d.role == ir::def_role::initial )
      return d;
  }
  throw semantic_error( "api '" + name + "' has no initial definition" );
}

const ir::def& encoded_api::terminal() const
{
  for ( const auto& d : defs )
  {
    if ( d.role == ir::def_role::terminal )
      return d;
  }
  throw semantic_error( "api '" + name + "' has no terminal definition" );
}

const ir::def& encoded_api::letter_def( std::size_t index ) const
{
  for ( const auto& d : defs )
  {
    if ( d.role == ir::def_role::letter && d.letter == index )
      return d;
  }
  throw semantic_error( "api '" + name + "' has no definition for letter " + std::to_string( index ) );
}

namespace
{

using namespace ir;

class validator
{
public:
  explicit validator( const encoded_api& api ) : api_( api )
  {
    for ( const auto& g : api.datatypes )
    {
      for ( const auto& t : g.types )
      {
        for ( const auto& c : t.ctors )
        {
          if ( !ctors_.emplace( c.name, c.arg_types.size() ).second )
            throw semantic_error( "constructor '" + c.name + "' declared twice" );
        }
      }
    }
  }

  void run()
  {
    std::size_t initials = 0, terminals = 0;
    std::vector<std::size_t> per_letter( api_.letters.size(), 0 );
    for ( const auto& d : api_.defs )
    {
      where_ = d.name;
      if ( ctors_.count( d.name ) )
        throw semantic_error( "definition '" + d.name + "' clashes with a constructor" );
      switch ( d.role )
      {
      case def_role::initial:
        ++initials;
        if ( d.name != "^^" )
          throw semantic_error( "the initial definition must be named ^^" );
        initial_payload( d );
        break;
      case def_role::terminal:
        ++terminals;
        if ( d.name != "$" || d.params.size() != 1 )
          throw semantic_error( "the terminal definition must be named $ and take the state" );
        break;
      case def_role::letter:
        if ( d.letter >= api_.letters.size() || api_.letters[d.letter].symbol != d.name )
          throw semantic_error( "letter definition '" + d.name + "' does not match the alphabet" );
        if ( letter_args( d ).size() != api_.letters[d.letter].arg_types.size() )
          throw semantic_error( "letter definition '" + d.name + "' has the wrong number of arguments" );
        ++per_letter[d.letter];
        break;
      case def_role::helper:
        break;
      }
      if ( d.is_value && !d.params.empty() )
        throw semantic_error( "value '" + d.name + "' has parameters" );

      std::set<std::string> scope;
      for ( const auto& p : d.params )
        bind( p, scope );
      check( d.body, scope );
      if ( !defined_.insert( d.name ).second )
        throw semantic_error( "definition '" + d.name + "' appears twice" );
    }
    if ( initials != 1 || terminals != 1 )
      throw semantic_error( "api must have exactly one initial and one terminal definition" );
    for ( std::size_t s = 0; s < per_letter.size(); ++s )
    {
      if ( per_letter[s] != 1 )
        throw semantic_error( "letter '" + api_.letters[s].symbol + "' must have exactly one definition" );
    }
  }

private:
  void bind( const pattern& p, std::set<std::string>& scope )
  {
    switch ( p.k )
    {
    case pattern::kind::var:
      if ( ctors_.count( p.name ) )
        throw semantic_error( where_ + ": binder '" + p.name + "' clashes with a constructor" );
      if ( !scope.insert( p.name ).second )
        throw semantic_error( where_ + ": binder '" + p.name + "' is not unique" );
      break;
    case pattern::kind::con:
      if ( !ctors_.count( p.name ) )
        throw semantic_error( where_ + ": undeclared constructor '" + p.name + "' in pattern" );
      break;
    case pattern::kind::tuple:
      for ( const auto& i : p.items )
        bind( i, scope );
      break;
    case pattern::kind::wildcard:
      break;
    }
  }

  void check( const expr_ptr& e, const std::set<std::string>& scope )
  {
    switch ( e->k )
    {
    case expr::kind::var:
      if ( !scope.count( e->name ) )
        throw semantic_error( where_ + ": free variable '" + e->name + "'" );
      return;
    case expr::kind::ref:
      if ( !defined_.count( e->name ) )
        throw semantic_error( where_ + ": reference to '" + e->name + "' before its definition" );
      return;
    case expr::kind::con:
    {
      auto it = ctors_.find( e->name );
      if ( it == ctors_.end() )
        throw semantic_error( where_ + ": undeclared constructor '" + e->name + "'" );
      if ( it->second != e->items.size() )
        throw semantic_error( where_ + ": constructor '" + e->name + "' applied to the wrong number of arguments" );
      break;
    }
    case expr::kind::lambda:
    {
      auto inner = scope;
      bind( e->param, inner );
      check( e->items[0], inner );
      return;
    }
    default:
      break;
    }
    for ( const auto& i : e->items )
      check( i, scope );
  }

  const encoded_api& api_;
  std::map<std::string, std::size_t> ctors_;
  std::set<std::string> defined_;
  std::string where_;
};

} // namespace

void encoded_api::validate() const
{
  validator( *this ).run();
}

name_pool::name_pool( const alphabet& letters )
{
  for ( const auto& l : letters )
    taken_.insert( l.symbol );
  for ( const auto& n : reserved_locals() )
    taken_.insert( n );
  taken_.insert( "^^" );
  taken_.insert( "$" );
}

std::string name_pool::fresh( const std::string& base )
{
  if ( taken_.insert( base ).second )
    return base;
  const bool symbolic = !base.empty() && !std::isalnum( static_cast<unsigned char>( base[0] ) ) && base[0] != '_';
  for ( std::size_t k = 2;; ++k )
  {
    // operator names can only grow by operator characters
    auto candidate = symbolic ? base + std::string( k - 1, base.back() ) : base + "_" + std::to_string( k );
    if ( taken_.insert( candidate ).second )
      return candidate;
  }
}

const std::set<std::string>& reserved_locals()
{
  static const std::set<std::string> names{ ir::continuation, "I", "X", "b", "toks" };
  return names;
}

namespace
{

void collect_binders( const pattern& p, std::set<std::string>& out )
{
  if ( p.k == pattern::kind::var )
    out.insert( p.name );
  for ( const auto& i : p.items )
    collect_binders( i, out );
}

void collect_binders( const expr_ptr& e, std::set<std::string>& out )
{
  if ( e->k == expr::kind::lambda )
    collect_binders( e->param, out );
  for ( const auto& i : e->items )
    collect_binders( i, out );
}

std::string fresh_local( const def& d, const std::string& base )
{
  std::set<std::string> used;
  for ( const auto& p : d.params )
    collect_binders( p, used );
  collect_binders( d.body, used );
  std::string name = base;
  for ( std::size_t k = 2; used.count( name ); ++k )
    name = base + "_" + std::to_string( k );
  return name;
}

std::string token_base( const std::string& symbol )
{
  if ( std::isalpha( static_cast<unsigned char>( symbol[0] ) ) || symbol[0] == '_' )
  {
    auto out = symbol;
    out[0] = static_cast<char>( std::toupper( static_cast<unsigned char>( out[0] ) ) );
    return out;
  }
  return "@" + symbol;
}

} // namespace

encoded_api with_tokens( const encoded_api& api )
{
  if ( api.meta.tokens )
    throw semantic_error( "api '" + api.name + "' is already in token mode" );

  name_pool globals( api.letters );
  std::set<std::string> type_names;
  for ( const auto& g : api.datatypes )
  {
    for ( const auto& t : g.types )
    {
      type_names.insert( t.name );
      for ( const auto& c : t.ctors )
        globals.reserve( c.name );
    }
  }
  for ( const auto& d : api.defs )
    globals.reserve( d.name );

  encoded_api out = api;
  out.meta.tokens = true;
  out.meta.encoding += "+tokens";

  std::string type_name = "call";
  for ( std::size_t k = 2; type_names.count( type_name ); ++k )
    type_name = "call_" + std::to_string( k );
  out.meta.token_type = type_name;

  ir::type_decl tokens{ type_name, {} };
  for ( const auto& l : api.letters )
  {
    auto c = globals.fresh( token_base( l.symbol ) );
    out.meta.token_cons.push_back( c );
    tokens.ctors.push_back( ir::constructor{ c, l.arg_types } );
  }
  out.datatypes.push_back( ir::datatype_group{ { tokens } } );

  for ( auto& d : out.defs )
  {
    switch ( d.role )
    {
    case def_role::initial:
      d = make_initial( tuple( { initial_payload( d ), list_nil() } ) );
      break;
    case def_role::letter:
    {
      const auto toks = fresh_local( d, "toks" );
      std::vector<expr_ptr> args;
      for ( const auto& a : letter_args( d ) )
        args.push_back( var( a ) );
      auto token = con( out.meta.token_cons[d.letter], std::move( args ) );
      auto next = tuple( { letter_next( d ), list_snoc( var( toks ), std::move( token ) ) } );
      d = make_letter( d.letter, d.name, pattern::tuple( { letter_state( d ), pattern::var( toks ) } ), letter_args( d ),
                       std::move( next ) );
      break;
    }
    case def_role::terminal:
    {
      const auto toks = fresh_local( d, "toks" );
      d = make_terminal( pattern::tuple( { d.params.front(), pattern::var( toks ) } ), seq( d.body, var( toks ) ) );
      break;
    }
    case def_role::helper:
      break;
    }
  }
  return out;
}

} // namespace fluentc
