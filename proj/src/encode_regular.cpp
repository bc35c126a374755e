#include "fluentc/encode.hpp"

#include "fluentc/circuit.hpp"
#include "fluentc/error.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace fluentc
{

using namespace ir;

encoding parse_encoding( std::string_view name )
{
  if ( name == "shuffle" )
    return encoding::shuffle;
  if ( name == "sparse" )
    return encoding::sparse;
  if ( name == "church" )
    return encoding::church;
  if ( name == "tabulation" )
    return encoding::tabulation;
  throw semantic_error( "unknown encoding '" + std::string( name ) + "' (expected shuffle, sparse, church or tabulation)" );
}

std::string to_string( encoding e )
{
  switch ( e )
  {
  case encoding::shuffle: return "shuffle";
  case encoding::sparse: return "sparse";
  case encoding::church: return "church";
  case encoding::tabulation: return "tabulation";
  }
  return {};
}

namespace
{

/// The totalized, padded machine with its β and per-letter transition functions.
struct bit_model
{
  fsm machine;
  beta_map beta;
  std::vector<vec_fn> fs;
};

bit_model make_bit_model( const fsm& m )
{
  m.validate();
  bit_model bm;
  bm.machine = totalize_and_pad( m );
  bm.beta = beta_map::declaration_order( bm.machine );
  for ( std::size_t s = 0; s < bm.machine.num_letters(); ++s )
    bm.fs.push_back( transition_vecfn( bm.machine, bm.beta, s ) );
  return bm;
}

/// Label k of a function on at most 4 bits.
std::uint64_t small_label( const bool_fn& g )
{
  std::uint64_t k = 0;
  const auto size = g.table_size();
  for ( std::size_t v = 0; v < size; ++v )
  {
    if ( g( static_cast<std::uint32_t>( v ) ) )
      k |= std::uint64_t{ 1 } << ( size - 1 - v );
  }
  return k;
}

/// Ascending label order without materializing the label.
bool label_less( const bool_fn& a, const bool_fn& b )
{
  for ( std::uint32_t v = 0; v < a.table_size(); ++v )
  {
    if ( a( v ) != b( v ) )
      return !a( v );
  }
  return false;
}

struct bool_datatype
{
  std::string true_con;
  std::string false_con;
  datatype_group group;
};

bool_datatype make_bool_datatype( name_pool& pool )
{
  bool_datatype bd;
  bd.true_con = pool.fresh( "T" );
  bd.false_con = pool.fresh( "F" );
  bd.group.types = { type_decl{ "t", { constructor{ bd.true_con, {} } } }, type_decl{ "f", { constructor{ bd.false_con, {} } } } };
  return bd;
}

std::vector<std::string> arg_names( const letter& l )
{
  std::vector<std::string> out;
  for ( std::size_t i = 1; i <= l.arg_types.size(); ++i )
    out.push_back( "arg" + std::to_string( i ) );
  return out;
}

void fill_machine_metadata( api_metadata& meta, const fsm& source, const fsm& encoded )
{
  meta.source = source.name;
  meta.states = source.num_states();
  meta.padded_states = encoded.num_states();
  meta.state_names = encoded.states;
}

/*! \brief Emits a shuffling API over the given function vector.

  `functions[j]` sits at tuple position j.  With `early_pos` set, every letter
  checks that the position holding g^R ∘ f^σ is true.
*/
encoded_api emit_shuffle( const fsm& source, const bit_model& bm, std::vector<bool_fn> functions,
                          const std::function<std::size_t( const bool_fn& )>& position_of, const bool_fn& g_final,
                          const bool_fn* g_reach, std::string kind )
{
  name_pool pool( source.letters );
  const auto bd = make_bool_datatype( pool );
  const unsigned n = bm.beta.bits;
  const auto width = functions.size();

  std::vector<std::string> names;
  names.reserve( width );
  for ( std::size_t j = 0; j < width; ++j )
    names.push_back( n <= 4 ? functions[j].name() : "h" + std::to_string( j ) );

  encoded_api api;
  api.name = source.name;
  api.letters = source.letters;
  api.datatypes.push_back( bd.group );

  const auto q0 = bm.beta.code[bm.machine.initial];
  std::vector<expr_ptr> payload;
  payload.reserve( width );
  for ( const auto& g : functions )
    payload.push_back( con( g( q0 ) ? bd.true_con : bd.false_con ) );
  api.defs.push_back( make_initial( tuple( std::move( payload ) ) ) );

  for ( std::size_t s = 0; s < source.num_letters(); ++s )
  {
    const auto& f = bm.fs[s];
    std::vector<pattern> params;
    params.reserve( width );
    for ( const auto& nm : names )
      params.push_back( pattern::var( nm ) );
    std::optional<std::size_t> checked;
    if ( g_reach )
    {
      checked = position_of( compose( *g_reach, f ) );
      params[*checked] = pattern::con( bd.true_con );
    }
    std::vector<expr_ptr> next;
    next.reserve( width );
    for ( const auto& g : functions )
    {
      const auto src = position_of( compose( g, f ) );
      next.push_back( checked && src == *checked ? con( bd.true_con ) : var( names[src] ) );
    }
    api.defs.push_back( make_letter( s, source.letters[s].symbol, pattern::tuple( std::move( params ) ),
                                     arg_names( source.letters[s] ), tuple( std::move( next ) ) ) );
  }

  std::vector<pattern> accept( width, pattern::wildcard() );
  accept[position_of( g_final )] = pattern::con( bd.true_con );
  api.defs.push_back( make_terminal( pattern::tuple( std::move( accept ) ), unit() ) );

  api.meta.encoding = std::move( kind );
  fill_machine_metadata( api.meta, source, bm.machine );
  api.meta.bits = n;
  api.meta.tuple_width = width;
  api.meta.functions = std::move( functions );
  api.meta.true_name = bd.true_con;
  api.meta.false_name = bd.false_con;
  return api;
}

unsigned effective_guard( const encode_options& opts, unsigned hard_cap )
{
  return opts.force ? hard_cap : std::min( opts.guard_bits, hard_cap );
}

} // namespace

encoded_api encode_shuffle( const fsm& m, const encode_options& opts )
{
  const auto bm = make_bit_model( m );
  auto functions = all_boolfns( bm.beta.bits, effective_guard( opts, 4 ) );
  const auto g_final = acceptor_fn( bm.beta, bm.machine.accepting );
  // all_boolfns is ordered by label, so the label is the position
  const auto position_of = []( const bool_fn& g ) { return static_cast<std::size_t>( small_label( g ) ); };
  return emit_shuffle( m, bm, std::move( functions ), position_of, g_final, nullptr, "shuffle" );
}

encoded_api encode_sparse( const fsm& m, const encode_options& opts )
{
  const auto bm = make_bit_model( m );
  const auto g_final = acceptor_fn( bm.beta, bm.machine.accepting );
  const auto g_reach = acceptor_fn( bm.beta, coaccessible( bm.machine ) );
  std::vector<bool_fn> seeds{ g_final };
  if ( opts.early_failure )
    seeds.push_back( g_reach );

  auto functions = sparse_closure( seeds, bm.fs );
  std::stable_sort( functions.begin(), functions.end(), label_less );
  std::unordered_map<bool_fn, std::size_t, bool_fn_hash> index;
  for ( std::size_t j = 0; j < functions.size(); ++j )
    index.emplace( functions[j], j );
  const auto position_of = [&index]( const bool_fn& g ) { return index.at( g ); };

  return emit_shuffle( m, bm, std::move( functions ), position_of, g_final, opts.early_failure ? &g_reach : nullptr,
                       opts.early_failure ? "sparse+early" : "sparse" );
}

namespace
{

struct church_names
{
  std::string t, f, not_, or_, and_, pair, copy;
};

expr_ptr gate_to_expr( const gate_ptr& g, const church_names& cn )
{
  switch ( g->kind )
  {
  case gate::op::variable: return var( g->var );
  case gate::op::constant: return ref( g->value ? cn.t : cn.f );
  case gate::op::not_: return app( ref( cn.not_ ), { gate_to_expr( g->lhs, cn ) } );
  case gate::op::and_:
    return app( ref( cn.and_ ), { tuple( { gate_to_expr( g->lhs, cn ), gate_to_expr( g->rhs, cn ) } ) } );
  case gate::op::or_:
    return app( ref( cn.or_ ), { tuple( { gate_to_expr( g->lhs, cn ), gate_to_expr( g->rhs, cn ) } ) } );
  }
  return nullptr;
}

/// `Copy b (fn b_1 => fn b_2 => ...)` around the output tuple.
expr_ptr circuit_to_expr( const circuit& c, const church_names& cn )
{
  std::vector<expr_ptr> outs;
  for ( const auto& o : c.outputs )
    outs.push_back( gate_to_expr( o, cn ) );
  auto e = outs.size() == 1 ? outs.front() : tuple( std::move( outs ) );
  for ( auto it = c.copies.rbegin(); it != c.copies.rend(); ++it )
    e = app( ref( cn.copy ), { var( it->source ), lambda( pattern::var( it->first ), lambda( pattern::var( it->second ), e ) ) } );
  return e;
}

pattern bits_pattern( const std::vector<std::string>& inputs )
{
  std::vector<pattern> items;
  for ( const auto& i : inputs )
    items.push_back( pattern::var( i ) );
  return pattern::tuple( std::move( items ) );
}

} // namespace

encoded_api encode_church( const fsm& m, const encode_options& opts )
{
  const auto bm = make_bit_model( m );
  const unsigned n = bm.beta.bits;
  const auto guard = effective_guard( opts, 8 );
  if ( n > guard )
    throw guard_error( "church encoding of " + std::to_string( bm.machine.num_states() ) + " states needs " +
                       std::to_string( n ) + " bits; the bit guard is " + std::to_string( guard ) +
                       " (use --force or FLUENTC_GUARD_BITS)" );

  name_pool pool( m.letters );
  church_names cn{ pool.fresh( "T" ), pool.fresh( "F" ), pool.fresh( "Not" ), pool.fresh( "Or" ),
                   pool.fresh( "And" ), pool.fresh( "Pair" ), pool.fresh( "Copy" ) };

  encoded_api api;
  api.name = m.name;
  api.letters = m.letters;

  const auto x = pattern::var( "x" ), y = pattern::var( "y" ), z = pattern::var( "z" ), b = pattern::var( "b" ),
             p = pattern::var( "p" );
  const auto b2b1 = pattern::tuple( { pattern::var( "b2" ), pattern::var( "b1" ) } );
  api.defs.push_back( make_helper( cn.t, { x, y }, var( "x" ) ) );
  api.defs.push_back( make_helper( cn.f, { x, y }, var( "y" ) ) );
  api.defs.push_back( make_helper( cn.not_, { b }, app( var( "b" ), { ref( cn.f ), ref( cn.t ) } ) ) );
  api.defs.push_back( make_helper( cn.or_, { b2b1 }, app( var( "b2" ), { ref( cn.t ), var( "b1" ) } ) ) );
  api.defs.push_back( make_helper( cn.and_, { b2b1 }, app( var( "b2" ), { var( "b1" ), ref( cn.f ) } ) ) );
  api.defs.push_back( make_helper( cn.pair, { x, y, z }, app( var( "z" ), { var( "x" ), var( "y" ) } ) ) );
  api.defs.push_back( make_helper(
      cn.copy, { p },
      app( var( "p" ), { app( ref( cn.pair ), { ref( cn.t ), ref( cn.t ) } ), app( ref( cn.pair ), { ref( cn.f ), ref( cn.f ) } ) } ) ) );
  const auto prelude = api.defs.size();

  const auto inputs = default_input_names( n );
  const auto q0 = bm.beta.code[bm.machine.initial];
  std::vector<expr_ptr> payload;
  for ( unsigned i = n; i >= 1; --i )
    payload.push_back( ref( ( q0 >> ( i - 1 ) ) & 1u ? cn.t : cn.f ) );
  api.defs.push_back( make_initial( tuple( std::move( payload ) ) ) );

  for ( std::size_t s = 0; s < m.num_letters(); ++s )
  {
    const auto c = synth_vector_circuit( bm.fs[s], inputs );
    api.defs.push_back( make_letter( s, m.letters[s].symbol, bits_pattern( inputs ), arg_names( m.letters[s] ),
                                     circuit_to_expr( c, cn ) ) );
  }

  const auto accept = synth_circuit( acceptor_fn( bm.beta, bm.machine.accepting ), inputs );
  api.defs.push_back( make_terminal( bits_pattern( inputs ), force_true( circuit_to_expr( accept, cn ) ) ) );

  api.meta.encoding = "church";
  fill_machine_metadata( api.meta, m, bm.machine );
  api.meta.bits = n;
  api.meta.tuple_width = n;
  api.meta.true_name = cn.t;
  api.meta.false_name = cn.f;
  api.meta.prelude_defs = prelude;
  return api;
}

encoded_api encode_tabulation( const fsm& source, const encode_options& opts )
{
  source.validate();
  const auto m = opts.early_failure ? prune_dead( source ) : source;
  const auto n = m.num_states();
  const auto k = m.num_letters();

  name_pool pool( m.letters );
  const auto accept = pool.fresh( "$$" );

  encoded_api api;
  api.name = source.name;
  api.letters = m.letters;
  api.datatypes.push_back( datatype_group{ { type_decl{ accept, { constructor{ accept, {} } } } } } );

  std::vector<std::string> index_names;
  std::vector<pattern> xs;
  for ( std::size_t i = 0; i < n; ++i )
  {
    index_names.push_back( pool.fresh( "I" + std::to_string( i ) ) );
    xs.push_back( pattern::var( "x" + std::to_string( i ) ) );
  }
  for ( std::size_t i = 0; i < n; ++i )
    api.defs.push_back( make_helper( index_names[i], { pattern::tuple( xs ) }, var( "x" + std::to_string( i ) ) ) );

  std::vector<std::string> row_names;
  for ( std::size_t q = 0; q < n; ++q )
    row_names.push_back( pool.fresh( "e" + std::to_string( q ) ) );
  const auto table = pool.fresh( "e" );

  for ( std::size_t q = 0; q < n; ++q )
  {
    std::vector<expr_ptr> entries;
    for ( std::size_t s = 0; s < k; ++s )
    {
      const auto& t = m.delta[q][s];
      entries.push_back( t ? ref( index_names[*t] ) : unit() );
    }
    auto inner = entries.size() == 1 ? entries.front() : tuple( std::move( entries ) );
    api.defs.push_back( make_value( row_names[q], tuple( { m.accepting[q] ? con( accept ) : unit(), inner } ) ) );
  }
  std::vector<expr_ptr> rows;
  for ( const auto& r : row_names )
    rows.push_back( ref( r ) );
  api.defs.push_back( make_value( table, rows.size() == 1 ? rows.front() : tuple( std::move( rows ) ) ) );

  api.defs.push_back( make_initial( ref( row_names[m.initial] ) ) );
  for ( std::size_t s = 0; s < k; ++s )
  {
    std::vector<pattern> cols( k, pattern::wildcard() );
    cols[s] = pattern::var( "I" );
    auto column = k == 1 ? cols.front() : pattern::tuple( std::move( cols ) );
    api.defs.push_back( make_letter( s, m.letters[s].symbol, pattern::tuple( { pattern::wildcard(), column } ),
                                     arg_names( m.letters[s] ), app( var( "I" ), { ref( table ) } ) ) );
  }
  api.defs.push_back( make_terminal( pattern::tuple( { pattern::con( accept ), pattern::wildcard() } ), unit() ) );

  api.meta.encoding = opts.early_failure ? "tabulation+pruned" : "tabulation";
  fill_machine_metadata( api.meta, source, m );
  api.meta.tuple_width = n;
  api.meta.row_names = std::move( row_names );
  api.meta.accept_con = accept;
  return api;
}

encoded_api encode( const fsm& m, encoding e, const encode_options& opts )
{
  switch ( e )
  {
  case encoding::shuffle: return encode_shuffle( m, opts );
  case encoding::sparse: return encode_sparse( m, opts );
  case encoding::church: return encode_church( m, opts );
  case encoding::tabulation: return encode_tabulation( m, opts );
  }
  throw semantic_error( "unknown encoding" );
}

} // namespace fluentc
