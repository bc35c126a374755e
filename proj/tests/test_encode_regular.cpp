#include "support.hpp"

#include "fluentc/emit.hpp"
#include "fluentc/encode.hpp"
#include "fluentc/error.hpp"
#include "fluentc/simulate.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace fluentc;
using namespace fluentc::test;

namespace
{

const std::vector<encoding> all_encodings = { encoding::shuffle, encoding::sparse, encoding::church,
                                              encoding::tabulation };

word a_power( std::size_t k )
{
  return word( k, 0 );
}

fsm cli_builder()
{
  return parse_fsm_spec( read_text( data_path( "cli_builder.json" ) ) );
}

/// q0 -a-> q1 -b-> q0, q0 accepting, no `a` out of q1 and no `b` out of q0.
fsm alternating()
{
  return parse_fsm_spec( R"({"name": "alt", "alphabet": [{"symbol": "a", "args": []}, {"symbol": "b", "args": []}],
    "states": ["q0", "q1"], "initial": "q0", "accepting": ["q0"],
    "transitions": [{"from": "q0", "on": "a", "to": "q1"}, {"from": "q1", "on": "b", "to": "q0"}]})" );
}

std::size_t index_of( const std::vector<std::string>& names, const std::string& name )
{
  return static_cast<std::size_t>( std::find( names.begin(), names.end(), name ) - names.begin() );
}

/// State names visited by the machine on w, stopping where δ is undefined.
std::vector<std::string> state_walk( const fsm& m, const word& w )
{
  std::vector<std::string> out{ m.states[m.initial] };
  std::size_t q = m.initial;
  for ( auto s : w )
  {
    if ( !m.delta[q][s] )
      break;
    q = *m.delta[q][s];
    out.push_back( m.states[q] );
  }
  return out;
}

} // namespace

TEST( encode_shuffle, ring4_initial_tuple_and_width )
{
  const auto api = encode_shuffle( ring( 4 ) );
  api.validate();
  EXPECT_EQ( api.meta.tuple_width, 16u );
  EXPECT_EQ( api.meta.bits, 2u );
  const auto& payload = ir::initial_payload( api.initial() );
  ASSERT_EQ( payload->items.size(), 16u );
  EXPECT_EQ( payload->items[1]->name, "F" );
  EXPECT_EQ( payload->items[2]->name, "F" );
  EXPECT_EQ( payload->items[4]->name, "F" );
  EXPECT_EQ( payload->items[8]->name, "T" );
  const auto& terminal = api.terminal().params.at( 0 );
  for ( std::size_t j = 0; j < 16; ++j )
    EXPECT_EQ( terminal.items[j].k, j == 8 ? ir::pattern::kind::con : ir::pattern::kind::wildcard );
}

TEST( encode_shuffle, ring4_matches_frozen_rendering )
{
  const auto text = render_target( encode_shuffle( ring( 4 ) ), backend::sml );
  EXPECT_EQ( normalize_sml( text ), normalize_sml( read_text( golden_path( "shuffle_ring4.sml" ) ) ) );
}

TEST( encode_shuffle, tuple_is_a_composition_permutation )
{
  for ( const auto& m : { ring( 4 ), random_fsm( 3 ), random_fsm( 7 ), alternating() } )
  {
    const auto api = encode_shuffle( m );
    const auto total = totalize_and_pad( m );
    const auto beta = beta_map::declaration_order( total );
    const auto& fns = api.meta.functions;
    for ( std::size_t s = 0; s < m.num_letters(); ++s )
    {
      const auto f = transition_vecfn( total, beta, s );
      const auto& d = api.letter_def( s );
      const auto& params = ir::letter_state( d ).items;
      const auto& next = ir::letter_next( d )->items;
      ASSERT_EQ( next.size(), fns.size() );
      for ( std::size_t j = 0; j < fns.size(); ++j )
      {
        const auto src = index_of( [&] {
          std::vector<std::string> names;
          for ( const auto& p : params )
            names.push_back( p.name );
          return names;
        }(), next[j]->name );
        ASSERT_LT( src, fns.size() );
        ASSERT_EQ( fns[src], compose( fns[j], f ) ) << m.name << " position " << j;
      }
    }
  }
}

TEST( encode_shuffle, widths_for_rings )
{
  EXPECT_EQ( encode_shuffle( ring( 2 ) ).meta.tuple_width, 4u );
  EXPECT_EQ( encode_shuffle( ring( 4 ) ).meta.tuple_width, 16u );
  EXPECT_EQ( encode_shuffle( ring( 8 ) ).meta.tuple_width, 256u );
  EXPECT_EQ( encode_shuffle( ring( 16 ) ).meta.tuple_width, 65536u );
  EXPECT_THROW( encode_shuffle( ring( 17 ) ), guard_error );
  encode_options forced;
  forced.force = true;
  EXPECT_THROW( encode_shuffle( ring( 17 ), forced ), guard_error );
  encode_options low;
  low.guard_bits = 2;
  EXPECT_THROW( encode_shuffle( ring( 8 ), low ), guard_error );
}

TEST( encode_shuffle, ring2_matches_oracle )
{
  const auto m = ring( 2 );
  const auto api = encode_shuffle( m );
  EXPECT_EQ( api.meta.padded_states, 2u );
  EXPECT_EQ( api.meta.bits, 1u );
  const auto r = check_equivalence( api, m, 8 );
  EXPECT_EQ( r.checked, 9u );
  EXPECT_TRUE( r.passed() );
}

TEST( encode_sparse, ring4_matches_reference )
{
  const auto api = encode_sparse( ring( 4 ) );
  EXPECT_EQ( api.meta.tuple_width, 4u );
  const auto text = render_target( api, backend::sml );
  EXPECT_EQ( normalize_sml( text ), normalize_sml( read_text( golden_path( "sparse_ring4.sml" ) ) ) );
}

TEST( encode_sparse, ring4_early_failure_adds_constant_true )
{
  encode_options opts;
  opts.early_failure = true;
  const auto m = ring( 4 );
  const auto api = encode_sparse( m, opts );
  EXPECT_EQ( api.meta.tuple_width, 5u );
  const auto& fns = api.meta.functions;
  EXPECT_NE( std::find( fns.begin(), fns.end(), bool_fn::constant( 2, true ) ), fns.end() );
  for ( std::size_t k = 0; k <= 8; ++k )
  {
    const auto o = simulate_chain( api, a_power( k ) );
    EXPECT_NE( o.verdict, sim_verdict::stuck_at_step ) << k;
    EXPECT_EQ( o.accepted(), k % 4 == 0 );
  }
  EXPECT_TRUE( check_early_failure( api, m, 8 ).passed() );
}

TEST( encode_sparse, cli_builder_fails_at_first_illegal_call )
{
  encode_options opts;
  opts.early_failure = true;
  const auto m = cli_builder();
  const auto api = encode_sparse( m, opts );
  const auto o = simulate_chain( api, std::vector<std::string>{ "name", "description", "description" } );
  EXPECT_EQ( o.verdict, sim_verdict::stuck_at_step );
  EXPECT_EQ( o.position, 3u );
  EXPECT_EQ( o.symbol, "description" );
  EXPECT_LE( api.meta.tuple_width, 2 * api.meta.padded_states );

  // without the flag the same chain only fails at the terminal
  const auto late = simulate_chain( encode_sparse( m ), std::vector<std::string>{ "name", "description", "description" } );
  EXPECT_EQ( late.verdict, sim_verdict::rejected_at_terminal );
  EXPECT_EQ( late.position, 4u );
}

TEST( encode_church, ring4_definitions_and_terminal )
{
  const auto api = encode_church( ring( 4 ) );
  api.validate();
  EXPECT_EQ( api.definition_count(), 10u );
  EXPECT_EQ( api.meta.prelude_defs, 7u );
  EXPECT_TRUE( simulate_chain( api, a_power( 0 ) ).accepted() );
  const auto one = simulate_chain( api, a_power( 1 ) );
  EXPECT_EQ( one.verdict, sim_verdict::rejected_at_terminal );
  EXPECT_EQ( one.reason, "Church Boolean is false" );
  EXPECT_EQ( simulate_chain( api, a_power( 2 ) ).verdict, sim_verdict::rejected_at_terminal );
}

TEST( encode_church, ring8_matches_oracle_to_length_10 )
{
  const auto m = ring( 8 );
  const auto r = check_equivalence( encode_church( m ), m, 10 );
  EXPECT_EQ( r.checked, 11u );
  EXPECT_TRUE( r.passed() );
}

TEST( encode_church, guard )
{
  EXPECT_THROW( encode_church( ring( 17 ) ), guard_error );
  encode_options forced;
  forced.force = true;
  const auto api = encode_church( ring( 17 ), forced );
  EXPECT_EQ( api.meta.bits, 5u );
  EXPECT_TRUE( check_equivalence( api, ring( 17 ), 18 ).passed() );
  EXPECT_THROW( encode_church( ring( 257 ), forced ), guard_error );
}

TEST( encode_tabulation, ring4_matches_reference )
{
  const auto api = encode_tabulation( ring( 4 ) );
  api.validate();
  const auto text = render_target( api, backend::sml );
  EXPECT_EQ( normalize_sml( text ), normalize_sml( read_text( golden_path( "tabulation_ring4.sml" ) ) ) );
  EXPECT_EQ( api.meta.row_names, ( std::vector<std::string>{ "e0", "e1", "e2", "e3" } ) );
}

TEST( encode_tabulation, undefined_transition_is_a_step_failure )
{
  const auto api = encode_tabulation( alternating() );
  const auto o = simulate_chain( api, std::vector<std::string>{ "a", "a" } );
  EXPECT_EQ( o.verdict, sim_verdict::stuck_at_step );
  EXPECT_EQ( o.position, 2u );
  EXPECT_EQ( o.symbol, "a" );
  EXPECT_EQ( o.reason, "unit where index expected" );
  EXPECT_EQ( to_string( o ), "stuck_at_step(2,a)" );
  EXPECT_TRUE( simulate_chain( api, std::vector<std::string>{ "a", "b" } ).accepted() );
}

TEST( encode_tabulation, pruned_cli_builder_agrees_with_sparse_early_failure )
{
  encode_options opts;
  opts.early_failure = true;
  const auto m = cli_builder();
  const auto sparse = encode_sparse( m, opts );
  const auto table = encode_tabulation( m, opts );
  EXPECT_TRUE( check_early_failure( sparse, m, 8 ).passed() );
  EXPECT_TRUE( check_early_failure( table, m, 8 ).passed() );
  simulator a( sparse ), b( table );
  for ( const auto& w : enumerate_words( m.num_letters(), 5 ) )
  {
    const auto x = a.run( w ), y = b.run( w );
    ASSERT_EQ( x.verdict, y.verdict ) << word_to_string( m.letters, w );
    ASSERT_EQ( x.position, y.position ) << word_to_string( m.letters, w );
  }
}

TEST( encode_tabulation, pruned_ring_never_fails_early )
{
  encode_options opts;
  opts.early_failure = true;
  const auto r = check_early_failure( encode_tabulation( ring( 4 ), opts ), ring( 4 ), 8 );
  EXPECT_TRUE( r.passed() );
  EXPECT_EQ( r.checked, 8u );
}

TEST( encoders, state_trace_follows_the_automaton )
{
  encode_options early;
  early.early_failure = true;
  for ( const auto& m : fsm_corpus() )
  {
    if ( m.num_states() > 8 )
      continue;
    const auto total = totalize_and_pad( m );
    for ( const auto* opts : { static_cast<const encode_options*>( nullptr ), static_cast<const encode_options*>( &early ) } )
    {
      const auto o = opts ? *opts : encode_options{};
      std::vector<std::pair<encoded_api, const fsm*>> apis;
      apis.emplace_back( encode_shuffle( m, o ), &total );
      apis.emplace_back( encode_sparse( m, o ), &total );
      apis.emplace_back( encode_church( m, o ), &total );
      const auto pruned = prune_dead( m );
      apis.emplace_back( encode_tabulation( m, o ), opts ? &pruned : &m );
      for ( auto& [api, walk_machine] : apis )
      {
        simulator sim( api );
        for ( const auto& w : enumerate_words( m.num_letters(), 4 ) )
        {
          const auto names = state_walk( *walk_machine, w );
          auto state = sim.start();
          for ( std::size_t i = 0;; ++i )
          {
            const auto code = index_of( api.meta.state_names, names[i] );
            ASSERT_LT( code, api.meta.state_names.size() ) << api.meta.encoding << " " << names[i];
            if ( api.meta.encoding == "tabulation" || api.meta.encoding == "tabulation+pruned" )
            {
              // rows with equal entries are equal values, so compare row contents
              const auto row = sim.row_index( state );
              ASSERT_TRUE( row ) << m.name;
              ASSERT_EQ( walk_machine->accepting[*row], walk_machine->accepting[code] ) << m.name;
              ASSERT_EQ( walk_machine->delta[*row], walk_machine->delta[code] ) << m.name;
            }
            else if ( api.meta.encoding == "church" )
            {
              const auto bits = sim.as_bits( state );
              ASSERT_EQ( bits.size(), api.meta.bits );
              for ( unsigned b = 0; b < api.meta.bits; ++b )
                ASSERT_EQ( bits[b], ( ( code >> ( api.meta.bits - 1 - b ) ) & 1u ) != 0 ) << m.name;
            }
            else
            {
              const auto bits = sim.as_bits( state );
              ASSERT_EQ( bits.size(), api.meta.functions.size() );
              for ( std::size_t j = 0; j < bits.size(); ++j )
                ASSERT_EQ( bits[j], api.meta.functions[j]( static_cast<std::uint32_t>( code ) ) )
                    << m.name << " " << api.meta.encoding << " position " << j;
            }
            if ( i == w.size() )
              break;
            const auto next = sim.step( state, w[i] );
            if ( !next.state )
            {
              // only early-failure builds and partial tabulation stop here
              ASSERT_TRUE( opts || api.meta.encoding == "tabulation" ) << m.name << " " << api.meta.encoding;
              break;
            }
            state = *next.state;
            ASSERT_LT( i + 1, names.size() ) << m.name << " " << api.meta.encoding;
          }
        }
      }
    }
  }
}

TEST( encoders, corpus_equivalence_to_length_6 )
{
  encode_options early;
  early.early_failure = true;
  for ( const auto& m : fsm_corpus() )
  {
    for ( auto e : all_encodings )
    {
      check_options co;
      co.workers = 1;
      const auto r = check_equivalence( encode( m, e ), m, 6, co );
      ASSERT_TRUE( r.passed() ) << m.name << " " << to_string( e ) << "\n" << format_report( r, m.letters );
    }
    for ( auto e : { encoding::sparse, encoding::tabulation } )
    {
      const auto api = encode( m, e, early );
      ASSERT_TRUE( check_equivalence( api, m, 6 ).passed() ) << m.name << " early " << to_string( e );
      ASSERT_TRUE( check_early_failure( api, m, 6 ).passed() ) << m.name << " early " << to_string( e );
    }
  }
}

TEST( encoders, deterministic_ir )
{
  for ( const auto& m : { ring( 5 ), random_fsm( 4 ), cli_builder() } )
  {
    for ( auto e : all_encodings )
    {
      const auto a = encode( m, e ), b = encode( m, e );
      ASSERT_EQ( a.defs.size(), b.defs.size() );
      for ( std::size_t i = 0; i < a.defs.size(); ++i )
        ASSERT_TRUE( ir::equal( a.defs[i], b.defs[i] ) ) << to_string( e ) << " " << a.defs[i].name;
      EXPECT_EQ( a.datatypes, b.datatypes );
    }
  }
}

TEST( encoders, letters_with_arguments_take_them_after_the_state )
{
  const auto api = encode_tabulation( cli_builder() );
  const auto& d = api.letter_def( 0 );
  EXPECT_EQ( ir::letter_args( d ), std::vector<std::string>{ "arg1" } );
  const auto& optional_def = api.letter_def( 2 );
  EXPECT_TRUE( ir::letter_args( optional_def ).empty() );
}

TEST( encoders, empty_language_is_reported_for_early_failure )
{
  auto m = ring( 3 );
  m.accepting.assign( 3, false );
  encode_options early;
  early.early_failure = true;
  EXPECT_THROW( encode_tabulation( m, early ), empty_language_error );
}
