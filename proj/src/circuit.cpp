#include "fluentc/circuit.hpp"

#include "fluentc/error.hpp"

#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace fluentc
{

gate_ptr gate::variable( std::string name )
{
  auto g = std::make_shared<gate>();
  g->kind = op::variable;
  g->var = std::move( name );
  return g;
}

gate_ptr gate::constant( bool value )
{
  auto g = std::make_shared<gate>();
  g->kind = op::constant;
  g->value = value;
  return g;
}

gate_ptr gate::not_( gate_ptr x )
{
  auto g = std::make_shared<gate>();
  g->kind = op::not_;
  g->lhs = std::move( x );
  return g;
}

gate_ptr gate::and_( gate_ptr x, gate_ptr y )
{
  auto g = std::make_shared<gate>();
  g->kind = op::and_;
  g->lhs = std::move( x );
  g->rhs = std::move( y );
  return g;
}

gate_ptr gate::or_( gate_ptr x, gate_ptr y )
{
  auto g = std::make_shared<gate>();
  g->kind = op::or_;
  g->lhs = std::move( x );
  g->rhs = std::move( y );
  return g;
}

std::vector<std::string> default_input_names( unsigned n )
{
  std::vector<std::string> names;
  for ( unsigned i = n; i >= 1; --i )
    names.push_back( "b" + std::to_string( i ) );
  return names;
}

namespace
{

gate_ptr right_nested( std::vector<gate_ptr> items, gate_ptr ( *combine )( gate_ptr, gate_ptr ) )
{
  auto acc = items.back();
  for ( auto i = items.size() - 1; i-- > 0; )
    acc = combine( items[i], acc );
  return acc;
}

gate_ptr balanced_and( const std::vector<std::string>& names, std::size_t lo, std::size_t hi )
{
  if ( hi - lo == 1 )
    return gate::variable( names[lo] );
  const auto mid = lo + ( hi - lo + 1 ) / 2;
  return gate::and_( balanced_and( names, lo, mid ), balanced_and( names, mid, hi ) );
}

/// DNF over the support of g; marks the inputs it reads in `used`.
gate_ptr core_gate( const bool_fn& g, const std::vector<std::string>& names, std::vector<bool>& used )
{
  const unsigned n = g.arity();
  if ( g.is_constant() )
    return gate::constant( g( 0 ) );

  std::uint32_t support_mask = 0;
  for ( unsigned i = 1; i <= n; ++i )
  {
    if ( g.depends_on( i ) )
    {
      support_mask |= 1u << ( i - 1 );
      used[n - i] = true;
    }
  }

  std::vector<gate_ptr> minterms;
  for ( auto v = static_cast<std::int64_t>( g.table_size() ) - 1; v >= 0; --v )
  {
    const auto value = static_cast<std::uint32_t>( v );
    if ( ( value & ~support_mask ) != 0 || !g( value ) )
      continue;
    std::vector<gate_ptr> literals;
    for ( unsigned i = n; i >= 1; --i )
    {
      if ( !( support_mask >> ( i - 1 ) & 1u ) )
        continue;
      auto var = gate::variable( names[n - i] );
      literals.push_back( ( value >> ( i - 1 ) ) & 1u ? var : gate::not_( var ) );
    }
    minterms.push_back( right_nested( std::move( literals ), &gate::and_ ) );
  }
  return right_nested( std::move( minterms ), &gate::or_ );
}

gate_ptr absorb( gate_ptr core, const std::vector<std::string>& unused )
{
  if ( unused.empty() )
    return core;
  auto tree = balanced_and( unused, 0, unused.size() );
  if ( core->kind == gate::op::constant )
  {
    return core->value ? gate::or_( tree, gate::constant( true ) ) : gate::and_( tree, gate::constant( false ) );
  }
  return gate::or_( core, gate::and_( tree, gate::constant( false ) ) );
}

void count_uses( const gate_ptr& g, std::unordered_map<std::string, std::size_t>& uses )
{
  if ( !g )
    return;
  if ( g->kind == gate::op::variable )
    ++uses[g->var];
  count_uses( g->lhs, uses );
  count_uses( g->rhs, uses );
}

gate_ptr rename_occurrences( const gate_ptr& g, const std::unordered_map<std::string, std::size_t>& uses,
                             std::unordered_map<std::string, std::size_t>& seen )
{
  switch ( g->kind )
  {
  case gate::op::variable:
  {
    auto it = uses.find( g->var );
    if ( it == uses.end() || it->second < 2 )
      return g;
    return gate::variable( g->var + "_" + std::to_string( ++seen[g->var] ) );
  }
  case gate::op::constant:
    return g;
  case gate::op::not_:
    return gate::not_( rename_occurrences( g->lhs, uses, seen ) );
  case gate::op::and_:
    return gate::and_( rename_occurrences( g->lhs, uses, seen ), rename_occurrences( g->rhs, uses, seen ) );
  case gate::op::or_:
    return gate::or_( rename_occurrences( g->lhs, uses, seen ), rename_occurrences( g->rhs, uses, seen ) );
  }
  return g;
}

/// Adds the COPY chains for every input read more than once.
circuit fan_out( std::vector<std::string> inputs, std::vector<gate_ptr> outputs )
{
  std::unordered_map<std::string, std::size_t> uses;
  for ( const auto& out : outputs )
    count_uses( out, uses );

  circuit c;
  c.inputs = std::move( inputs );
  for ( const auto& name : c.inputs )
  {
    const auto u = uses[name];
    if ( u < 2 )
      continue;
    std::string source = name;
    for ( std::size_t k = 1; k < u; ++k )
    {
      const auto leaf = name + "_" + std::to_string( k );
      const auto rest = k + 1 == u ? name + "_" + std::to_string( u ) : name + "_r" + std::to_string( k );
      c.copies.push_back( copy_gate{ source, leaf, rest } );
      source = rest;
    }
  }
  std::unordered_map<std::string, std::size_t> seen;
  for ( const auto& out : outputs )
    c.outputs.push_back( rename_occurrences( out, uses, seen ) );
  return c;
}

std::vector<std::string> unused_inputs( const std::vector<std::string>& names, const std::vector<bool>& used )
{
  std::vector<std::string> out;
  for ( std::size_t i = 0; i < names.size(); ++i )
  {
    if ( !used[i] )
      out.push_back( names[i] );
  }
  return out;
}

} // namespace

circuit synth_circuit( const bool_fn& g, std::vector<std::string> input_names )
{
  if ( input_names.empty() )
    input_names = default_input_names( g.arity() );
  if ( input_names.size() != g.arity() )
    throw semantic_error( "input name count does not match the function arity" );
  std::vector<bool> used( g.arity(), false );
  auto core = core_gate( g, input_names, used );
  auto out = absorb( core, unused_inputs( input_names, used ) );
  return fan_out( std::move( input_names ), { out } );
}

circuit synth_vector_circuit( const vec_fn& f, std::vector<std::string> input_names )
{
  if ( input_names.empty() )
    input_names = default_input_names( f.arity() );
  if ( input_names.size() != f.arity() )
    throw semantic_error( "input name count does not match the function arity" );
  std::vector<bool> used( f.arity(), false );
  std::vector<gate_ptr> outputs;
  for ( const auto& component : f.components() )
    outputs.push_back( core_gate( component, input_names, used ) );
  outputs.front() = absorb( outputs.front(), unused_inputs( input_names, used ) );
  return fan_out( std::move( input_names ), std::move( outputs ) );
}

namespace
{

class circuit_evaluator
{
public:
  bool take( const std::string& name )
  {
    auto it = values_.find( name );
    if ( it == values_.end() )
      throw semantic_error( "circuit: free variable '" + name + "'" );
    if ( !consumed_.insert( name ).second )
      throw semantic_error( "circuit: variable '" + name + "' consumed twice" );
    return it->second;
  }

  void bind( const std::string& name, bool value )
  {
    if ( !values_.emplace( name, value ).second )
      throw semantic_error( "circuit: variable '" + name + "' bound twice" );
  }

  bool eval( const gate_ptr& g )
  {
    switch ( g->kind )
    {
    case gate::op::variable: return take( g->var );
    case gate::op::constant: return g->value;
    case gate::op::not_: return !eval( g->lhs );
    case gate::op::and_:
    {
      // both operands are always evaluated: each consumes its variables
      const bool x = eval( g->lhs );
      const bool y = eval( g->rhs );
      return x && y;
    }
    case gate::op::or_:
    {
      const bool x = eval( g->lhs );
      const bool y = eval( g->rhs );
      return x || y;
    }
    }
    return false;
  }

private:
  std::unordered_map<std::string, bool> values_;
  std::unordered_set<std::string> consumed_;
};

} // namespace

std::vector<bool> eval_circuit_outputs( const circuit& c, const bit_vec& v )
{
  if ( c.inputs.size() != v.length )
    throw semantic_error( "circuit has " + std::to_string( c.inputs.size() ) + " inputs but got " +
                          std::to_string( v.length ) + " bits" );
  circuit_evaluator ev;
  const auto n = static_cast<unsigned>( c.inputs.size() );
  for ( unsigned idx = 0; idx < n; ++idx )
    ev.bind( c.inputs[idx], v.bit( n - idx ) );
  for ( const auto& cp : c.copies )
  {
    const bool b = ev.take( cp.source );
    ev.bind( cp.first, b );
    ev.bind( cp.second, b );
  }
  std::vector<bool> out;
  for ( const auto& g : c.outputs )
    out.push_back( ev.eval( g ) );
  return out;
}

bool eval_circuit( const circuit& c, const bit_vec& v )
{
  if ( c.outputs.size() != 1 )
    throw semantic_error( "eval_circuit expects a single-output circuit" );
  return eval_circuit_outputs( c, v ).front();
}

std::vector<std::string> linearity_violations( const circuit& c )
{
  std::map<std::string, std::size_t> uses;
  std::vector<std::string> problems;
  for ( const auto& in : c.inputs )
    uses[in] = 0;
  for ( const auto& cp : c.copies )
  {
    if ( !uses.count( cp.source ) )
      problems.push_back( cp.source + " (free)" );
    ++uses[cp.source];
    uses.emplace( cp.first, 0 );
    uses.emplace( cp.second, 0 );
  }
  std::unordered_map<std::string, std::size_t> occurrences;
  for ( const auto& g : c.outputs )
    count_uses( g, occurrences );
  for ( const auto& [name, count] : occurrences )
  {
    if ( !uses.count( name ) )
      problems.push_back( name + " (free)" );
    uses[name] += count;
  }
  for ( const auto& [name, count] : uses )
  {
    if ( count != 1 )
      problems.push_back( name + " (used " + std::to_string( count ) + " times)" );
  }
  return problems;
}

std::size_t count_copies( const circuit& c )
{
  return c.copies.size();
}

std::string to_string( const gate_ptr& g )
{
  switch ( g->kind )
  {
  case gate::op::variable: return g->var;
  case gate::op::constant: return g->value ? "TRUE" : "FALSE";
  case gate::op::not_: return "Not " + ( g->lhs->kind == gate::op::variable || g->lhs->kind == gate::op::constant ? to_string( g->lhs ) : "(" + to_string( g->lhs ) + ")" );
  case gate::op::and_: return "And (" + to_string( g->lhs ) + ", " + to_string( g->rhs ) + ")";
  case gate::op::or_: return "Or (" + to_string( g->lhs ) + ", " + to_string( g->rhs ) + ")";
  }
  return {};
}

std::string to_string( const circuit& c )
{
  std::ostringstream out;
  out << "fn (";
  for ( std::size_t i = 0; i < c.inputs.size(); ++i )
    out << ( i ? ", " : "" ) << c.inputs[i];
  out << ") =>";
  for ( const auto& cp : c.copies )
    out << " let (" << cp.first << ", " << cp.second << ") = Copy " << cp.source << " in";
  out << ' ';
  if ( c.outputs.size() == 1 )
  {
    out << to_string( c.outputs.front() );
  }
  else
  {
    out << '(';
    for ( std::size_t i = 0; i < c.outputs.size(); ++i )
      out << ( i ? ", " : "" ) << to_string( c.outputs[i] );
    out << ')';
  }
  return out.str();
}

} // namespace fluentc
