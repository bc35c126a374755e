#include "fluentc/encode.hpp"

#include "fluentc/error.hpp"

#include <map>

namespace fluentc
{

using namespace ir;

namespace
{

std::vector<std::string> type_var_names( std::size_t arity )
{
  if ( arity == 1 )
    return { "x" };
  std::vector<std::string> out;
  for ( std::size_t i = 1; i <= arity; ++i )
    out.push_back( "x" + std::to_string( i ) );
  return out;
}

class rewrite_encoder
{
public:
  explicit rewrite_encoder( const rewrite_system& rs ) : rs_( rs ), pool_( rs.letters ) {}

  encoded_api run()
  {
    rs_.validate();
    // type symbols keep their names unless they clash with a letter
    for ( const auto& t : rs_.types )
      type_names_.push_back( pool_.fresh( t.name ) );
    accept_ = pool_.fresh( "$$" );
    for ( std::size_t i = 1; i <= rs_.rules.size(); ++i )
      index_names_.push_back( pool_.fresh( "I" + std::to_string( i ) ) );
    for ( std::size_t i = 1; i <= rs_.rules.size(); ++i )
      rule_names_.push_back( pool_.fresh( "r" + std::to_string( i ) ) );
    table_ = pool_.fresh( "r" );

    encoded_api api;
    api.name = rs_.name;
    api.letters = rs_.letters;
    api.datatypes.push_back( datatype_group{ { type_decl{ accept_, { constructor{ accept_, {} } } } } } );

    const auto n = rs_.rules.size();
    std::vector<pattern> xs;
    for ( std::size_t i = 1; i <= n; ++i )
      xs.push_back( pattern::var( "x" + std::to_string( i ) ) );
    for ( std::size_t i = 0; i < n; ++i )
      api.defs.push_back( make_helper( index_names_[i], { pattern::tuple( xs ) }, var( "x" + std::to_string( i + 1 ) ) ) );

    for ( std::size_t t = 0; t < rs_.types.size(); ++t )
      api.defs.push_back( type_def( t ) );

    for ( std::size_t i = 0; i < n; ++i )
      api.defs.push_back( rule_def( i ) );

    std::vector<expr_ptr> rules;
    for ( const auto& r : rule_names_ )
      rules.push_back( ref( r ) );
    api.defs.push_back( make_value( table_, tuple( std::move( rules ) ) ) );

    api.defs.push_back( make_initial( term_expr( rs_.initial, {} ) ) );

    const auto m = rs_.letters.size();
    for ( std::size_t s = 0; s < m; ++s )
    {
      std::vector<pattern> cols( m, pattern::wildcard() );
      cols[s] = pattern::var( "I" );
      auto column = m == 1 ? cols.front() : pattern::tuple( std::move( cols ) );
      std::vector<std::string> args;
      for ( std::size_t a = 1; a <= rs_.letters[s].arg_types.size(); ++a )
        args.push_back( "arg" + std::to_string( a ) );
      api.defs.push_back( make_letter( s, rs_.letters[s].symbol,
                                       pattern::tuple( { pattern::wildcard(), column, pattern::var( "X" ) } ), args,
                                       app( var( "I" ), { ref( table_ ), var( "X" ) } ) ) );
    }
    api.defs.push_back(
        make_terminal( pattern::tuple( { pattern::con( accept_ ), pattern::wildcard(), pattern::wildcard() } ), unit() ) );

    api.meta.encoding = "rewrite-tabulation";
    api.meta.source = rs_.name;
    api.meta.states = rs_.types.size();
    api.meta.tuple_width = n;
    api.meta.type_names = type_names_;
    api.meta.accept_con = accept_;
    return api;
  }

private:
  /// `val z = (a, (I..), ())` or `fun s x = (a, (I..), (x))`
  def type_def( std::size_t t )
  {
    const auto& ts = rs_.types[t];
    const auto m = rs_.letters.size();
    std::vector<expr_ptr> cols;
    for ( std::size_t s = 0; s < m; ++s )
    {
      const auto r = rs_.find_rule( s, t );
      cols.push_back( r ? ref( index_names_[*r] ) : unit() );
    }
    auto column = m == 1 ? cols.front() : tuple( std::move( cols ) );
    auto marker = ts.accepting ? con( accept_ ) : unit();

    const auto vars = type_var_names( ts.arity );
    std::vector<expr_ptr> children;
    std::vector<pattern> binders;
    for ( const auto& v : vars )
    {
      children.push_back( var( v ) );
      binders.push_back( pattern::var( v ) );
    }
    auto body = tuple( { marker, column, tuple( std::move( children ) ) } );
    if ( ts.arity == 0 )
      return make_value( type_names_[t], body );
    auto param = ts.arity == 1 ? binders.front() : pattern::tuple( std::move( binders ) );
    return make_helper( type_names_[t], { param }, body );
  }

  /// `fun ri (x..) = rhs`
  def rule_def( std::size_t i )
  {
    const auto& r = rs_.rules[i];
    std::map<std::string, std::string> renamed;
    std::vector<pattern> binders;
    for ( const auto& v : r.vars )
    {
      auto local = v;
      for ( std::size_t k = 2; pool_.taken( local ) || reserved_locals().count( local ); ++k )
        local = v + "_" + std::to_string( k );
      renamed[v] = local;
      binders.push_back( pattern::var( local ) );
    }
    return make_helper( rule_names_[i], { pattern::tuple( std::move( binders ) ) }, term_expr( r.rhs, renamed ) );
  }

  expr_ptr term_expr( const term& t, const std::map<std::string, std::string>& renamed ) const
  {
    if ( t.is_var )
      return var( renamed.at( t.head ) );
    const auto idx = *rs_.find_type( t.head );
    if ( rs_.types[idx].arity == 0 )
      return ref( type_names_[idx] );
    std::vector<expr_ptr> children;
    for ( const auto& c : t.children )
      children.push_back( term_expr( c, renamed ) );
    return app( ref( type_names_[idx] ), { tuple( std::move( children ) ) } );
  }

  const rewrite_system& rs_;
  name_pool pool_;
  std::vector<std::string> type_names_;
  std::string accept_;
  std::vector<std::string> index_names_;
  std::vector<std::string> rule_names_;
  std::string table_;
};

} // namespace

encoded_api encode_rewrite_tabulation( const rewrite_system& rs )
{
  return rewrite_encoder( rs ).run();
}

} // namespace fluentc
