#pragma once

#include "fluentc/automata.hpp"
#include "fluentc/ir.hpp"
#include "fluentc/rewrite.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fluentc
{

/// Argument values of one call, as literal text (`""` and `0` are used when absent).
using call_args = std::vector<std::string>;

enum class sim_verdict
{
  accepted,
  rejected_at_terminal,
  stuck_at_step
};

struct sim_outcome
{
  sim_verdict verdict = sim_verdict::accepted;
  /// 1-based call position of the failure; the terminal is |w|+1.
  std::size_t position = 0;
  std::string symbol;
  std::string reason;
  /// Rendered state after `^^` and after each completed letter call.
  std::vector<std::string> trace;
  /// Token list returned by the terminal in token mode.
  std::optional<std::vector<std::string>> tokens;

  bool accepted() const { return verdict == sim_verdict::accepted; }
};

/// `accepted`, `rejected_at_terminal` or `stuck_at_step(i,σ)`.
std::string to_string( const sim_outcome& o );

/*! \brief Interpreter for the definitions of an encoded API.

  Values are hash-consed, so equal values have equal handles, and saturated
  applications of top-level definitions are memoized.  A failed pattern match
  (or applying a unit where an index is expected) is a rejection; ill-formed
  IR (free names, tuple size mismatches) raises ir_runtime_error.
*/
class simulator
{
public:
  using value = std::uint32_t;

  explicit simulator( const encoded_api& api );
  ~simulator();
  simulator( const simulator& ) = delete;
  simulator& operator=( const simulator& ) = delete;

  const encoded_api& api() const;

  /// Outcome of one call: the next state, or the reason it was rejected.
  struct step_result
  {
    std::optional<value> state;
    std::string reason;
  };

  value start();
  step_result step( value state, std::size_t letter, const call_args& args = {} );
  /// Result of the terminal call; `state` holds its return value.
  step_result finish( value state );

  sim_outcome run( const word& w, const std::vector<call_args>& args = {}, bool record_trace = false );

  /// Bits of a tuple of T/F constructors or Church Booleans (leftmost first).
  std::vector<bool> as_bits( value v ) const;
  /// Index of the row value this state equals (tabulation).
  std::optional<std::size_t> row_index( value v );
  /// Term encoded by a rewrite-tabulation state.
  term as_term( value v, const rewrite_system& rs );
  /// Token list returned by a token-mode terminal.
  std::vector<std::string> as_tokens( value v ) const;
  std::string show( value v ) const;

private:
  struct impl;
  std::unique_ptr<impl> p_;
};

sim_outcome simulate_chain( const encoded_api& api, const word& w, const std::vector<call_args>& args = {},
                            bool record_trace = false );
sim_outcome simulate_chain( const encoded_api& api, const std::vector<std::string>& symbols,
                            const std::vector<call_args>& args = {}, bool record_trace = false );

struct mismatch
{
  word w;
  std::string simulated;
  std::string oracle;
};

struct check_report
{
  std::size_t checked = 0;
  std::vector<mismatch> mismatches;

  bool passed() const { return mismatches.empty(); }
};

struct check_options
{
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned workers = 0;
  /// Stop at the first mismatch in word order.
  bool fail_fast = false;
};

/// Simulated acceptance against the automaton on every word up to `max_len`.
check_report check_equivalence( const encoded_api& api, const fsm& oracle, std::size_t max_len,
                                const check_options& opts = {} );
/// Simulated acceptance against the rewrite system on every word up to `max_len`.
check_report check_equivalence( const encoded_api& api, const rewrite_system& oracle, std::size_t max_len,
                                const check_options& opts = {} );

/*! \brief Checks that a call fails exactly when the chain can no longer be completed.

  For every prefix u that the API survives and every letter σ with
  |uσ| <= max_len, the step σ must fail iff no extension of uσ is in the
  oracle's language.  Each such pair counts as one checked word.
*/
check_report check_early_failure( const encoded_api& api, const fsm& oracle, std::size_t max_len );

/// `word<TAB>simulated<TAB>oracle` per mismatch, then `checked=<n> mismatches=<m>`.
std::string format_report( const check_report& r, const alphabet& sigma );

} // namespace fluentc
