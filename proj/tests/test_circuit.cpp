#include "fluentc/circuit.hpp"
#include "fluentc/error.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace fluentc;

namespace
{

/// Reference evaluation that ignores linearity: copies simply alias their source.
bool reference_eval( const gate_ptr& g, const std::map<std::string, bool>& env )
{
  switch ( g->kind )
  {
  case gate::op::variable: return env.at( g->var );
  case gate::op::constant: return g->value;
  case gate::op::not_: return !reference_eval( g->lhs, env );
  case gate::op::and_: return reference_eval( g->lhs, env ) && reference_eval( g->rhs, env );
  case gate::op::or_: return reference_eval( g->lhs, env ) || reference_eval( g->rhs, env );
  }
  return false;
}

std::vector<bool> reference_outputs( const circuit& c, std::uint32_t v )
{
  std::map<std::string, bool> env;
  const auto n = c.inputs.size();
  for ( std::size_t i = 0; i < n; ++i )
    env[c.inputs[i]] = ( v >> ( n - 1 - i ) ) & 1u;
  for ( const auto& cp : c.copies )
  {
    env[cp.first] = env.at( cp.source );
    env[cp.second] = env.at( cp.source );
  }
  std::vector<bool> out;
  for ( const auto& g : c.outputs )
    out.push_back( reference_eval( g, env ) );
  return out;
}

bool_fn xor2()
{
  bool_fn g( 2 );
  for ( std::uint32_t v = 0; v < 4; ++v )
    g.set( v, ( ( v >> 1 ) ^ v ) & 1u );
  return g;
}

} // namespace

TEST( synth_circuit, xor_examples )
{
  const auto c = synth_circuit( xor2() );
  EXPECT_TRUE( eval_circuit( c, bit_vec{ 2, 0b10 } ) );
  EXPECT_FALSE( eval_circuit( c, bit_vec{ 2, 0b00 } ) );
  EXPECT_TRUE( eval_circuit( c, bit_vec{ 2, 0b01 } ) );
  EXPECT_FALSE( eval_circuit( c, bit_vec{ 2, 0b11 } ) );
  EXPECT_TRUE( linearity_violations( c ).empty() );
  // each input feeds two minterms, so each is copied once
  EXPECT_EQ( count_copies( c ), 2u );
  EXPECT_EQ( c.inputs, ( std::vector<std::string>{ "b2", "b1" } ) );
}

TEST( synth_circuit, single_minterm_needs_no_copy )
{
  const auto g8 = bool_fn::from_label( 2, 8 );
  const auto c = synth_circuit( g8 );
  EXPECT_EQ( count_copies( c ), 0u );
  EXPECT_EQ( to_string( c.outputs.front() ), "And (Not b2, Not b1)" );
  for ( std::uint32_t v = 0; v < 4; ++v )
    EXPECT_EQ( eval_circuit( c, bit_vec{ 2, v } ), v == 0 );
}

TEST( synth_circuit, constants_consume_every_input )
{
  for ( bool value : { false, true } )
  {
    const auto c = synth_circuit( bool_fn::constant( 3, value ) );
    EXPECT_TRUE( linearity_violations( c ).empty() ) << to_string( c );
    for ( std::uint32_t v = 0; v < 8; ++v )
      EXPECT_EQ( eval_circuit( c, bit_vec{ 3, v } ), value );
  }
}

TEST( synth_circuit, ignored_inputs_are_absorbed )
{
  // b1 alone on three bits: b3 and b2 are irrelevant but must still be consumed
  bool_fn g( 3 );
  for ( std::uint32_t v = 0; v < 8; ++v )
    g.set( v, v & 1u );
  const auto c = synth_circuit( g );
  EXPECT_TRUE( linearity_violations( c ).empty() ) << to_string( c );
  EXPECT_EQ( count_copies( c ), 0u );
  for ( std::uint32_t v = 0; v < 8; ++v )
    EXPECT_EQ( eval_circuit( c, bit_vec{ 3, v } ), g( v ) );
}

TEST( synth_circuit, every_function_up_to_three_bits )
{
  std::size_t checked = 0;
  for ( unsigned n = 1; n <= 3; ++n )
  {
    for ( const auto& g : all_boolfns( n ) )
    {
      const auto c = synth_circuit( g );
      ASSERT_TRUE( linearity_violations( c ).empty() ) << g.name() << ": " << to_string( c );
      for ( std::uint32_t v = 0; v < g.table_size(); ++v )
      {
        ASSERT_EQ( eval_circuit( c, bit_vec{ n, v } ), g( v ) ) << g.name() << " at " << v;
        ASSERT_EQ( reference_outputs( c, v ).front(), g( v ) ) << g.name() << " at " << v;
      }
      ++checked;
    }
  }
  EXPECT_EQ( checked, 276u );
}

TEST( synth_circuit, sampled_four_bit_functions )
{
  std::mt19937_64 rng( 5 );
  for ( int trial = 0; trial < 300; ++trial )
  {
    const auto g = bool_fn::from_label( 4, rng() & 0xffffu );
    const auto c = synth_circuit( g );
    ASSERT_TRUE( linearity_violations( c ).empty() ) << g.name();
    for ( std::uint32_t v = 0; v < 16; ++v )
      ASSERT_EQ( eval_circuit( c, bit_vec{ 4, v } ), g( v ) ) << g.name();
  }
}

TEST( synth_vector_circuit, ring_successor_and_random_maps )
{
  const vec_fn succ( 2, { 1, 2, 3, 0 } );
  const auto c = synth_vector_circuit( succ );
  EXPECT_TRUE( linearity_violations( c ).empty() ) << to_string( c );
  for ( std::uint32_t v = 0; v < 4; ++v )
  {
    const auto out = eval_circuit_outputs( c, bit_vec{ 2, v } );
    ASSERT_EQ( out.size(), 2u );
    EXPECT_EQ( out[0], ( ( v + 1 ) >> 1 & 1u ) != 0 );
    EXPECT_EQ( out[1], ( ( v + 1 ) & 1u ) != 0 );
  }

  std::mt19937 rng( 9 );
  for ( unsigned n = 1; n <= 4; ++n )
  {
    for ( int trial = 0; trial < 40; ++trial )
    {
      std::vector<std::uint32_t> image( 1u << n );
      for ( auto& x : image )
        x = std::uniform_int_distribution<std::uint32_t>( 0, ( 1u << n ) - 1 )( rng );
      const vec_fn f( n, image );
      const auto vc = synth_vector_circuit( f );
      ASSERT_TRUE( linearity_violations( vc ).empty() ) << to_string( vc );
      for ( std::uint32_t v = 0; v < image.size(); ++v )
      {
        const auto out = eval_circuit_outputs( vc, bit_vec{ n, v } );
        std::uint32_t packed = 0;
        for ( bool b : out )
          packed = packed << 1 | ( b ? 1u : 0u );
        ASSERT_EQ( packed, f( v ) );
      }
    }
  }
}

TEST( eval_circuit, rejects_free_and_reused_variables )
{
  circuit free_var{ { "b1" }, {}, { gate::variable( "b9" ) } };
  EXPECT_THROW( eval_circuit( free_var, bit_vec{ 1, 0 } ), semantic_error );
  EXPECT_FALSE( linearity_violations( free_var ).empty() );

  circuit reused{ { "b1" }, {}, { gate::and_( gate::variable( "b1" ), gate::variable( "b1" ) ) } };
  EXPECT_THROW( eval_circuit( reused, bit_vec{ 1, 1 } ), semantic_error );
  EXPECT_FALSE( linearity_violations( reused ).empty() );

  circuit copied{ { "b1" }, { { "b1", "x", "y" } }, { gate::and_( gate::variable( "x" ), gate::variable( "y" ) ) } };
  EXPECT_TRUE( eval_circuit( copied, bit_vec{ 1, 1 } ) );
  EXPECT_TRUE( linearity_violations( copied ).empty() );

  circuit dropped{ { "b2", "b1" }, {}, { gate::variable( "b1" ) } };
  EXPECT_EQ( linearity_violations( dropped ), std::vector<std::string>{ "b2 (used 0 times)" } );
  EXPECT_THROW( eval_circuit( copied, bit_vec{ 2, 1 } ), semantic_error );
}
