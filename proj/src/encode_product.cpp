#include "fluentc/encode.hpp"

#include "fluentc/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace fluentc
{

using namespace ir;

namespace
{

/// Renames top-level references and constructors of one part.
struct global_renaming
{
  std::map<std::string, std::string> values;

  const std::string& operator()( const std::string& name ) const
  {
    auto it = values.find( name );
    return it == values.end() ? name : it->second;
  }
};

/// Renames the local binders of a part: `primes` apostrophes, or an explicit mapping.
struct local_renaming
{
  std::size_t primes = 0;
  std::map<std::string, std::string> explicit_names;

  std::string operator()( const std::string& name ) const
  {
    auto it = explicit_names.find( name );
    return it == explicit_names.end() ? name + std::string( primes, '\'' ) : it->second;
  }
};

pattern rename( const pattern& p, const global_renaming& g, const local_renaming& l )
{
  switch ( p.k )
  {
  case pattern::kind::var: return pattern::var( l( p.name ) );
  case pattern::kind::con: return pattern::con( g( p.name ) );
  case pattern::kind::wildcard: return p;
  case pattern::kind::tuple:
  {
    std::vector<pattern> items;
    for ( const auto& i : p.items )
      items.push_back( rename( i, g, l ) );
    return pattern::tuple( std::move( items ) );
  }
  }
  return p;
}

expr_ptr rename( const expr_ptr& e, const global_renaming& g, const local_renaming& l )
{
  std::vector<expr_ptr> items;
  for ( const auto& i : e->items )
    items.push_back( rename( i, g, l ) );
  switch ( e->k )
  {
  case expr::kind::var: return var( l( e->name ) );
  case expr::kind::ref: return ref( g( e->name ) );
  case expr::kind::con: return con( g( e->name ), std::move( items ) );
  case expr::kind::lambda: return lambda( rename( e->param, g, l ), items.front() );
  default: break;
  }
  auto out = std::make_shared<expr>( *e );
  out->items = std::move( items );
  return out;
}

bool is_unit( const expr_ptr& e )
{
  return e->k == expr::kind::tuple && e->items.empty();
}

class product_builder
{
public:
  explicit product_builder( const std::vector<encoded_api>& parts ) : parts_( parts ), pool_( parts.front().letters ) {}

  encoded_api run()
  {
    check_alphabets();
    out_.name = parts_.front().name;
    out_.letters = parts_.front().letters;

    std::vector<global_renaming> renamings;
    for ( std::size_t i = 0; i < parts_.size(); ++i )
      renamings.push_back( merge_globals( i ) );

    std::vector<expr_ptr> payloads;
    std::vector<pattern> accept_patterns;
    std::vector<expr_ptr> accept_bodies;
    for ( std::size_t i = 0; i < parts_.size(); ++i )
    {
      const local_renaming l{ i, {} };
      payloads.push_back( rename( initial_payload( parts_[i].initial() ), renamings[i], l ) );
      accept_patterns.push_back( rename( parts_[i].terminal().params.front(), renamings[i], l ) );
      accept_bodies.push_back( rename( parts_[i].terminal().body, renamings[i], l ) );
    }
    out_.defs.push_back( make_initial( tuple( std::move( payloads ) ) ) );

    for ( std::size_t s = 0; s < out_.letters.size(); ++s )
    {
      std::vector<std::string> args;
      for ( std::size_t a = 1; a <= out_.letters[s].arg_types.size(); ++a )
        args.push_back( "arg" + std::to_string( a ) );
      std::vector<pattern> states;
      std::vector<expr_ptr> nexts;
      for ( std::size_t i = 0; i < parts_.size(); ++i )
      {
        const auto& d = parts_[i].letter_def( s );
        local_renaming l{ i, {} };
        const auto part_args = letter_args( d );
        for ( std::size_t a = 0; a < part_args.size(); ++a )
          l.explicit_names[part_args[a]] = args[a];
        states.push_back( rename( letter_state( d ), renamings[i], l ) );
        nexts.push_back( rename( letter_next( d ), renamings[i], l ) );
      }
      out_.defs.push_back( make_letter( s, out_.letters[s].symbol, pattern::tuple( std::move( states ) ), args,
                                        tuple( std::move( nexts ) ) ) );
    }

    const bool all_unit = std::all_of( accept_bodies.begin(), accept_bodies.end(), is_unit );
    out_.defs.push_back( make_terminal( pattern::tuple( std::move( accept_patterns ) ),
                                        all_unit ? unit() : tuple( std::move( accept_bodies ) ) ) );

    out_.meta.encoding = "product(";
    for ( std::size_t i = 0; i < parts_.size(); ++i )
    {
      out_.meta.encoding += ( i ? "," : "" ) + parts_[i].meta.encoding;
      out_.meta.source += ( i ? "*" : "" ) + parts_[i].meta.source;
      out_.meta.tuple_width += parts_[i].meta.tuple_width;
    }
    out_.meta.encoding += ")";
    return out_;
  }

private:
  void check_alphabets() const
  {
    if ( parts_.size() < 2 )
      throw semantic_error( "a product needs at least two parts" );
    const auto& sigma = parts_.front().letters;
    for ( std::size_t i = 1; i < parts_.size(); ++i )
    {
      const auto& other = parts_[i].letters;
      if ( other.size() != sigma.size() )
        throw semantic_error( "product: part " + std::to_string( i + 1 ) + " has " + std::to_string( other.size() ) +
                              " letters, part 1 has " + std::to_string( sigma.size() ) );
      for ( std::size_t s = 0; s < sigma.size(); ++s )
      {
        if ( other[s].symbol != sigma[s].symbol )
          throw semantic_error( "product: letter " + std::to_string( s + 1 ) + " is '" + other[s].symbol + "' in part " +
                                std::to_string( i + 1 ) + " but '" + sigma[s].symbol + "' in part 1" );
        if ( other[s].arg_types != sigma[s].arg_types )
          throw semantic_error( "product: letter '" + sigma[s].symbol + "' has different argument types in part " +
                                std::to_string( i + 1 ) );
      }
    }
  }

  std::string rename_global( const std::string& name, std::size_t part )
  {
    if ( !pool_.taken( name ) )
      return pool_.fresh( name );
    const bool symbolic = !std::isalnum( static_cast<unsigned char>( name[0] ) ) && name[0] != '_';
    return pool_.fresh( symbolic ? name : name + "_" + std::to_string( part + 1 ) );
  }

  /// Adds the datatypes and helpers of part i, sharing identical ones.
  global_renaming merge_globals( std::size_t i )
  {
    global_renaming g;
    const auto& part = parts_[i];
    for ( const auto& group : part.datatypes )
    {
      if ( std::find( out_.datatypes.begin(), out_.datatypes.end(), group ) != out_.datatypes.end() )
        continue;
      datatype_group renamed;
      for ( const auto& t : group.types )
      {
        type_decl td{ t.name, {} };
        const bool symbolic = !std::isalnum( static_cast<unsigned char>( t.name[0] ) ) && t.name[0] != '_';
        for ( std::size_t k = 2; type_names_.count( td.name ); ++k )
          td.name = symbolic ? td.name + t.name.back() : t.name + "_" + std::to_string( k );
        type_names_.insert( td.name );
        for ( const auto& c : t.ctors )
        {
          auto name = rename_global( c.name, i );
          if ( name != c.name )
            g.values[c.name] = name;
          td.ctors.push_back( constructor{ name, c.arg_types } );
        }
        renamed.types.push_back( std::move( td ) );
      }
      out_.datatypes.push_back( std::move( renamed ) );
    }

    for ( const auto& d : part.defs )
    {
      if ( d.role != def_role::helper )
        continue;
      def candidate = d;
      const local_renaming keep{ 0, {} };
      for ( auto& p : candidate.params )
        p = rename( p, g, keep );
      candidate.body = rename( d.body, g, keep );

      const def* shared = nullptr;
      for ( const auto& existing : out_.defs )
      {
        if ( equal( existing, candidate ) )
          shared = &existing;
      }
      if ( shared )
        continue;
      candidate.name = rename_global( d.name, i );
      if ( candidate.name != d.name )
        g.values[d.name] = candidate.name;
      out_.defs.push_back( std::move( candidate ) );
    }
    return g;
  }

  const std::vector<encoded_api>& parts_;
  encoded_api out_;
  name_pool pool_;
  std::set<std::string> type_names_;
};

} // namespace

encoded_api encode_product( const std::vector<encoded_api>& parts )
{
  return product_builder( parts ).run();
}

} // namespace fluentc
