#pragma once

#include "fluentc/boolfn.hpp"

#include <memory>
#include <string>
#include <vector>

namespace fluentc
{

struct gate;
using gate_ptr = std::shared_ptr<const gate>;

/// A node of a Boolean expression tree; variables refer to circuit binders.
struct gate
{
  enum class op
  {
    variable,
    constant,
    not_,
    and_,
    or_
  };

  op kind = op::constant;
  std::string var;
  bool value = false;
  gate_ptr lhs;
  gate_ptr rhs;

  static gate_ptr variable( std::string name );
  static gate_ptr constant( bool value );
  static gate_ptr not_( gate_ptr x );
  static gate_ptr and_( gate_ptr x, gate_ptr y );
  static gate_ptr or_( gate_ptr x, gate_ptr y );
};

/// Fanout gate: consumes `source` and binds two copies of it.
struct copy_gate
{
  std::string source;
  std::string first;
  std::string second;
};

/*! \brief A linear Boolean circuit.

  Inputs and copy outputs are binders.  In a well-formed circuit every binder
  is consumed exactly once, either as the source of a later copy or as a
  variable occurrence in one of the output trees, so COPY is the only way to
  use a bit twice.  Copies are applied in order before the outputs are read.
*/
struct circuit
{
  std::vector<std::string> inputs;
  std::vector<copy_gate> copies;
  std::vector<gate_ptr> outputs;
};

/// Input names ⟨b_n, ..., b_1⟩ rendered as "b<n>", ..., "b1".
std::vector<std::string> default_input_names( unsigned n );

/*! \brief Synthesizes a single-output linear circuit for g.

  The core is the disjunction of g's minterms over the inputs g depends on
  (minterms in descending order, literals from b_n down to b_1).  Inputs g
  ignores are consumed by a balanced AND tree that is absorbed: OR with TRUE
  or AND with FALSE for constants, otherwise OR-ed with (tree AND FALSE).
  Every input used more than once is fanned out by a right-nested COPY chain.
*/
circuit synth_circuit( const bool_fn& g, std::vector<std::string> input_names = {} );

/// Multi-output variant: one output per component ⟨f_n, ..., f_1⟩, sharing one fanout plan.
circuit synth_vector_circuit( const vec_fn& f, std::vector<std::string> input_names = {} );

/// Evaluates a single-output circuit; throws on free or twice-consumed variables.
bool eval_circuit( const circuit& c, const bit_vec& v );

std::vector<bool> eval_circuit_outputs( const circuit& c, const bit_vec& v );

/// Names of binders that are not consumed exactly once (empty for a linear circuit).
std::vector<std::string> linearity_violations( const circuit& c );

std::size_t count_copies( const circuit& c );

/// Nested let-binding rendering, for diagnostics.
std::string to_string( const circuit& c );
std::string to_string( const gate_ptr& g );

} // namespace fluentc
