#include "fluentc/boolfn.hpp"

#include "fluentc/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <unordered_set>

namespace fluentc
{

bool_fn::bool_fn( unsigned arity )
    : arity_( arity ), bits_( ( ( std::size_t{ 1 } << arity ) + 63 ) / 64, 0u )
{
  if ( arity > 24 )
    throw guard_error( "truth tables above 24 inputs are not supported" );
}

bool_fn bool_fn::constant( unsigned arity, bool value )
{
  bool_fn g( arity );
  if ( value )
  {
    for ( std::uint32_t v = 0; v < g.table_size(); ++v )
      g.set( v, true );
  }
  return g;
}

bool_fn bool_fn::from_label( unsigned arity, std::uint64_t k )
{
  if ( arity > 6 )
    throw guard_error( "from_label requires at most 6 inputs" );
  bool_fn g( arity );
  const auto size = static_cast<std::uint32_t>( g.table_size() );
  for ( std::uint32_t v = 0; v < size; ++v )
    g.set( v, ( k >> ( size - 1 - v ) ) & 1u );
  return g;
}

void bool_fn::set( std::uint32_t v, bool value )
{
  const auto mask = std::uint64_t{ 1 } << ( v & 63u );
  if ( value )
    bits_[v >> 6] |= mask;
  else
    bits_[v >> 6] &= ~mask;
}

bool bool_fn::is_constant() const
{
  const bool first = ( *this )( 0 );
  for ( std::uint32_t v = 1; v < table_size(); ++v )
  {
    if ( ( *this )( v ) != first )
      return false;
  }
  return true;
}

bool bool_fn::depends_on( unsigned i ) const
{
  const std::uint32_t flip = 1u << ( i - 1 );
  for ( std::uint32_t v = 0; v < table_size(); ++v )
  {
    if ( ( *this )( v ) != ( *this )( v ^ flip ) )
      return true;
  }
  return false;
}

std::string bool_fn::name() const
{
  // k as little-endian 32-bit limbs: bit j of k is table[2^n - 1 - j]
  const auto size = table_size();
  std::vector<std::uint32_t> limbs( ( size + 31 ) / 32, 0u );
  for ( std::size_t j = 0; j < size; ++j )
  {
    if ( ( *this )( static_cast<std::uint32_t>( size - 1 - j ) ) )
      limbs[j / 32] |= 1u << ( j % 32 );
  }

  std::string digits;
  auto nonzero = [&] { return std::any_of( limbs.begin(), limbs.end(), []( auto l ) { return l != 0; } ); };
  while ( nonzero() )
  {
    std::uint64_t rem = 0;
    for ( auto it = limbs.rbegin(); it != limbs.rend(); ++it )
    {
      const auto cur = ( rem << 32 ) | *it;
      *it = static_cast<std::uint32_t>( cur / 10 );
      rem = cur % 10;
    }
    digits.push_back( static_cast<char>( '0' + rem ) );
  }
  if ( digits.empty() )
    digits = "0";
  std::reverse( digits.begin(), digits.end() );
  return "g" + digits;
}

std::size_t bool_fn::hash() const
{
  std::size_t h = arity_;
  for ( auto w : bits_ )
    h ^= std::hash<std::uint64_t>{}( w ) + 0x9e3779b97f4a7c15ull + ( h << 6 ) + ( h >> 2 );
  return h;
}

vec_fn::vec_fn( unsigned arity, std::vector<std::uint32_t> image )
    : arity_( arity ), image_( std::move( image ) )
{
  if ( image_.size() != ( std::size_t{ 1 } << arity ) )
    throw semantic_error( "vector function image has the wrong size" );
  for ( auto v : image_ )
  {
    if ( v >= image_.size() )
      throw semantic_error( "vector function image out of range" );
  }
}

vec_fn vec_fn::identity( unsigned arity )
{
  std::vector<std::uint32_t> image( std::size_t{ 1 } << arity );
  for ( std::uint32_t v = 0; v < image.size(); ++v )
    image[v] = v;
  return vec_fn( arity, std::move( image ) );
}

vec_fn vec_fn::from_components( const std::vector<bool_fn>& components )
{
  const auto n = static_cast<unsigned>( components.size() );
  std::vector<std::uint32_t> image( std::size_t{ 1 } << n, 0u );
  for ( unsigned c = 0; c < n; ++c )
  {
    if ( components[c].arity() != n )
      throw semantic_error( "vector function component has the wrong arity" );
    const unsigned bit = n - 1 - c;
    for ( std::uint32_t v = 0; v < image.size(); ++v )
    {
      if ( components[c]( v ) )
        image[v] |= 1u << bit;
    }
  }
  return vec_fn( n, std::move( image ) );
}

bool_fn vec_fn::component( unsigned i ) const
{
  bool_fn g( arity_ );
  for ( std::uint32_t v = 0; v < image_.size(); ++v )
    g.set( v, ( image_[v] >> ( i - 1 ) ) & 1u );
  return g;
}

std::vector<bool_fn> vec_fn::components() const
{
  std::vector<bool_fn> out;
  for ( unsigned i = arity_; i >= 1; --i )
    out.push_back( component( i ) );
  return out;
}

vec_fn vec_fn::after( const vec_fn& inner ) const
{
  if ( inner.arity_ != arity_ )
    throw semantic_error( "vector function arity mismatch" );
  std::vector<std::uint32_t> image( image_.size() );
  for ( std::uint32_t v = 0; v < image.size(); ++v )
    image[v] = image_[inner.image_[v]];
  return vec_fn( arity_, std::move( image ) );
}

beta_map beta_map::declaration_order( const fsm& m )
{
  beta_map beta;
  while ( ( std::size_t{ 1 } << beta.bits ) < m.num_states() )
    ++beta.bits;
  if ( ( std::size_t{ 1 } << beta.bits ) != m.num_states() )
    throw semantic_error( "state count " + std::to_string( m.num_states() ) + " is not a power of two" );
  for ( std::uint32_t q = 0; q < m.num_states(); ++q )
    beta.code.push_back( q );
  return beta;
}

void beta_map::require_bijective() const
{
  const auto size = std::size_t{ 1 } << bits;
  if ( code.size() != size )
    throw semantic_error( "beta does not cover all " + std::to_string( size ) + " bit vectors" );
  std::vector<bool> hit( size, false );
  for ( auto c : code )
  {
    if ( c >= size || hit[c] )
      throw semantic_error( "beta is not injective" );
    hit[c] = true;
  }
}

bool eval_boolfn( const bool_fn& g, const bit_vec& v )
{
  if ( g.arity() != v.length )
    throw semantic_error( "arity mismatch: function on " + std::to_string( g.arity() ) + " bits applied to " +
                          std::to_string( v.length ) + " bits" );
  return g( v.value );
}

vec_fn transition_vecfn( const fsm& m, const beta_map& beta, std::size_t letter_index )
{
  beta.require_bijective();
  if ( beta.code.size() != m.num_states() )
    throw semantic_error( "beta does not match the state count" );
  std::vector<std::uint32_t> image( beta.code.size() );
  for ( std::size_t q = 0; q < m.num_states(); ++q )
  {
    const auto& t = m.delta[q].at( letter_index );
    if ( !t )
      throw semantic_error( "transition function is partial at state '" + m.states[q] + "' on '" +
                            m.letters[letter_index].symbol + "'" );
    image[beta.code[q]] = beta.code[*t];
  }
  return vec_fn( beta.bits, std::move( image ) );
}

bool_fn compose( const bool_fn& g, const vec_fn& f )
{
  if ( g.arity() != f.arity() )
    throw semantic_error( "arity mismatch in composition" );
  bool_fn out( g.arity() );
  for ( std::uint32_t v = 0; v < out.table_size(); ++v )
    out.set( v, g( f( v ) ) );
  return out;
}

unsigned default_guard_bits()
{
  if ( const char* env = std::getenv( "FLUENTC_GUARD_BITS" ) )
  {
    char* end = nullptr;
    const auto value = std::strtoul( env, &end, 10 );
    if ( end != env && *end == '\0' )
      return static_cast<unsigned>( value );
  }
  return 4;
}

std::vector<bool_fn> all_boolfns( unsigned n, unsigned guard_bits )
{
  if ( n == 0 )
    throw semantic_error( "all_boolfns requires at least one bit" );
  if ( n > guard_bits )
    throw guard_error( "the full function set on " + std::to_string( n ) + " bits has 2^" +
                       std::to_string( 1u << n ) + " members; the bit guard is " + std::to_string( guard_bits ) +
                       " (use --force or FLUENTC_GUARD_BITS)" );
  if ( n > 4 )
    throw guard_error( "the full function set on more than 4 bits (2^32 functions) cannot be enumerated" );
  const std::uint64_t count = std::uint64_t{ 1 } << ( 1u << n );
  std::vector<bool_fn> out;
  out.reserve( count );
  for ( std::uint64_t k = 0; k < count; ++k )
    out.push_back( bool_fn::from_label( n, k ) );
  return out;
}

bool_fn acceptor_fn( const beta_map& beta, const state_set& s )
{
  beta.require_bijective();
  bool_fn g( beta.bits );
  for ( std::size_t q = 0; q < beta.code.size(); ++q )
    g.set( beta.code[q], q < s.size() && s[q] );
  return g;
}

std::vector<bool_fn> sparse_closure( const std::vector<bool_fn>& seeds, const std::vector<vec_fn>& fs )
{
  std::vector<bool_fn> out;
  std::unordered_set<bool_fn, bool_fn_hash> seen;
  for ( const auto& g : seeds )
  {
    for ( const auto& f : fs )
    {
      if ( f.arity() != g.arity() )
        throw semantic_error( "arity mismatch in sparse closure" );
    }
    if ( seen.insert( g ).second )
      out.push_back( g );
  }
  for ( std::size_t i = 0; i < out.size(); ++i )
  {
    for ( const auto& f : fs )
    {
      auto h = compose( out[i], f );
      if ( seen.insert( h ).second )
        out.push_back( std::move( h ) );
    }
  }
  return out;
}

} // namespace fluentc
